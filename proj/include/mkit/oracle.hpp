#pragma once

// Direct holonomy of the perturbed foliation by following leaves around a guide
// cycle, and Melnikov functions from finite differences in eps.

#include "mkit/melnikov.hpp"

#include <string>
#include <vector>

namespace mkit {

struct HolonomyOptions {
    double ode_tol = 1e-13;   // absolute and relative error per step
    double tube = 0.05;       // max distance from the guide, relative to its diameter
    double section = 0.1;     // radius of the transversal, relative to the diameter
    double pull = 4.0;        // rate at which the leaf point is pulled back along the leaf to the guide
    int max_steps = 200000;
};

struct HolonomySample {
    cplx t = 0.0;
    cplx eps = 0.0;
    cplx h = 0.0;
    int steps = 0;
    int rejected = 0;
    double leaf_residual = 0.0;  // max |omega_eps(z')| / (|(A, B)| |z'|)
    double tube_max = 0.0;       // max distance from the guide, relative to its diameter
    Point start;
    Point end;
};

/// Follows the leaf of omega_0 + eps omega_1 + eps^2 omega_2 + ... through the
/// point of the transversal at vertex 0 of the guide with f = t, once around,
/// back to the transversal.  The guide is transported to t first when needed.
HolonomySample holonomy(const DeformationSpec& def, const Cycle& guide, cplx t, cplx eps, const HolonomyOptions& opt = {});

struct FdOptions {
    double eps_max = 0.05;  // halved until the leaf stays in the tube
    int grid = 8;
    double ratio = 0.5;
    /// M_1 .. M_{k-1} at t when they are not zero
    std::vector<cplx> lower;
    HolonomyOptions holonomy;
};

struct FdEstimate {
    cplx t = 0.0;
    int order = 1;
    cplx value = 0.0;
    double error = 0.0;
    bool converged = false;
    std::vector<double> eps;
    std::vector<HolonomySample> samples;  // +eps and -eps for each grid value
    std::vector<std::string> warnings;
};

/// Richardson-extrapolated eps^k coefficient of H(h_eps(t)) - H(t), with H = f
/// or log f according to the normalization of the deformation.
FdEstimate melnikov_fd(const DeformationSpec& def, const Cycle& guide, cplx t, int k, const FdOptions& opt = {});

struct FixedPoint {
    double t = 0.0;
    double displacement = 0.0;  // |h(t) - t| at the returned level
};

/// Real levels in [a, b] where h_eps(t) = t, from a scan of n levels and secant refinement.
std::vector<FixedPoint> holonomy_fixed_points(const DeformationSpec& def, const Cycle& guide, double eps, double a, double b,
                                              int n = 24, const HolonomyOptions& opt = {});

}  // namespace mkit
