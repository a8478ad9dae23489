#pragma once

// Fibers of f = F^p / G^q as closed polylines: critical data, seeding of
// vanishing and residue cycles, and continuation along paths of levels.

#include "mkit/foliation.hpp"
#include "mkit/numeric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mkit {

/// Floating-point evaluator for f = F^p / G^q (f = F in the Hamiltonian case).
class Fibration {
public:
    explicit Fibration(const PencilSpec& spec);

    cplx value(const Point& z) const;
    /// Value and holomorphic gradient.
    cplx eval(const Point& z, Point& grad) const;
    /// Rounding-error estimate of value(z); large near the base points where F and G cancel.
    double rounding(const Point& z) const;
    /// |f(z) - t| <= tol * (1 + |t|), or within rounding of it.
    bool on_fiber(const Point& z, cplx t, double tol) const;
    /// One minimal-norm Newton step towards f = t; returns the update size.
    double newton_step(Point& z, cplx t) const;
    /// Newton onto f = t until |f - t| <= tol * (1 + |t|).  False on failure.
    bool project(Point& z, cplx t, double tol = 1e-13, int iters = 40) const;

    const PencilSpec& spec() const { return spec_; }
    const NumPoly& F() const { return F_; }
    const NumPoly& G() const { return G_; }

private:
    PencilSpec spec_;
    NumPoly F_, G_;
};

struct CriticalPoint {
    Point location;
    cplx value;
    cplx hessian[2][2];
    bool nondegenerate = true;
};

struct IndeterminacyPoint {
    Point location;
    bool transversal = true;
    cplx jacobian;  // det of (grad F; grad G)
};

struct CriticalData {
    std::vector<CriticalPoint> points;
    std::vector<IndeterminacyPoint> indeterminacy;
    bool distinct_values = true;
    std::vector<std::string> warnings;

    std::vector<cplx> values() const;
};

CriticalData critical_data(const PencilSpec& spec, const SingularOptions& opt = {});

struct CycleProvenance {
    std::string kind;  // "critical", "indeterminacy" or "file"
    int index = -1;
    Point source;
    cplx source_value = 0.0;
    std::vector<cplx> path;  // levels visited, seed level first
};

/// A closed polyline on {f = level}.  The last vertex connects back to the first.
struct Cycle {
    cplx level = 0.0;
    std::vector<Point> vertices;
    std::string orientation = "ccw-seed";
    CycleProvenance provenance;

    double diameter() const;
    Cycle reversed() const;
    /// max |f(v) - level| over vertices
    double fiber_residual(const Fibration& fib) const;
};

/// A polyline in the value plane; closed loops repeat the first point at the end.
struct TPath {
    std::vector<cplx> points;
};

struct TransportOptions {
    double fiber_tol = 1e-13;      // relative Newton target
    double spacing_factor = 2.0;   // split a segment longer than this times the mean seed spacing
    double max_turn = 0.35;        // split where consecutive segments turn by more (radians)
    int max_vertices = 20000;
    int max_halvings = 40;
    double initial_step = 0.05;    // fraction of the remaining path segment
    /// Points of the value plane the path must keep away from, with the margin.
    std::vector<cplx> avoid;
    double margin = 0.0;
};

/// Safety margin: 5% of the minimal pairwise distance among the given values
/// (or of 1 + |c| when there is a single one).
double safety_margin(const std::vector<cplx>& values);

/// Values a path must avoid: the critical values, plus 0 for a genuine pencil.
std::vector<cplx> forbidden_values(const PencilSpec& spec, const CriticalData& data);

/// Straight path from a to b with a detour on the left of every forbidden value
/// that comes within margin.  `exempt` values are ignored (a cycle's own source).
TPath plan_path(cplx a, cplx b, const std::vector<cplx>& avoid, double margin, const std::vector<cplx>& exempt = {});

/// Circle of the given radius around c, based at c + radius * e^{i arg0}, counterclockwise.
TPath circle_path(cplx c, double radius, double arg0 = 0.0, int sides = 64);

struct SeedOptions {
    int vertices = 64;
    /// The quadratic model is accepted at a level when Newton moves no seed
    /// vertex by more than this fraction of the seed radius; otherwise the
    /// seed level is pulled towards the critical value and the cycle is
    /// transported out to the requested level.
    double model_tol = 0.02;
    TransportOptions transport;
};

Cycle seed_vanishing_cycle(const Fibration& fib, const CriticalData& data, int index, cplx t, const SeedOptions& opt = {});

/// Small loop on {f = t} around an indeterminacy point, from the local model
/// F^p = t G^q in the coordinates (F, G).  `radius` bounds |F|, |G| on the loop;
/// it is halved until the linear model of (F, G) is accurate.
Cycle seed_indeterminacy_cycle(const Fibration& fib, const CriticalData& data, int index, cplx t, double radius = 1e-2,
                               int vertices = 64);

Cycle transport(const Fibration& fib, const Cycle& cycle, const TPath& path, const TransportOptions& opt = {});

/// Transport around a closed loop based at the cycle's level.
Cycle monodromy_loop(const Fibration& fib, const Cycle& cycle, const TPath& loop, const TransportOptions& opt = {});

}  // namespace mkit
