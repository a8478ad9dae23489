#pragma once

// Melnikov functions of omega_0 + eps omega_1 + eps^2 omega_2 + ... along a
// family of cycles, the recursion for higher orders, and zero counting.

#include "mkit/relexact.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mkit {

struct DeformationSpec {
    PencilSpec base;
    std::vector<OneForm> forms;  // omega_1, omega_2, ...
    Normalization normalization = Normalization::df;
    std::vector<std::string> warnings;

    /// omega_i, zero beyond the given forms (i >= 1)
    OneForm form(int i) const;
    /// m * omega_i
    RationalForm normalized(int i) const;
};

/// Validates the forms and picks the default normalization when none is given.
DeformationSpec deformation(const PencilSpec& base, std::vector<OneForm> forms,
                            std::optional<Normalization> normalization = std::nullopt);

/// Which cycle to follow: a vanishing cycle ("critical") or a residue loop
/// around a base point ("indeterminacy").
struct CycleChoice {
    std::string kind = "critical";
    int index = 0;
};

/// The cycle seeded at levels[0] and transported level to level.
std::vector<Cycle> cycle_family(const Fibration& fib, const CriticalData& data, const CycleChoice& choice,
                                const std::vector<cplx>& levels, const SeedOptions& seed = {}, double residue_radius = 0.1);

struct MelnikovSample {
    cplx t;
    cplx value;
    double error = 0.0;
    double scale = 0.0;  // integral of |integrand|
};

struct ChainStep {
    int order = 0;  // i
    RationalFunction g;
    RationalFunction p;
    bool exact = false;  // omega_i + p_i dH + dg_i + sum p_j omega_{i-j} == 0 verified
    Decomposition info;
};

struct MelnikovResult {
    int order = 1;
    Normalization normalization = Normalization::df;
    std::vector<MelnikovSample> samples;
    std::vector<ChainStep> chain;
    /// samples of M_1 .. M_{order-1}, all tested identically zero
    std::vector<std::vector<MelnikovSample>> lower;
    bool identically_zero = false;
    double zero_tol = 0.0;
    std::string convention;
    std::vector<std::string> warnings;
};

struct MelnikovOptions {
    double zero_tol = 1e-8;  // relative to the largest integral of |integrand|
    QuadratureOptions quad;
    DecompositionBounds bounds;
};

MelnikovResult first_melnikov(const DeformationSpec& def, const std::vector<Cycle>& cycles, const MelnikovOptions& opt = {});

/// Runs the recursion up to M_{k_max}; stops early at the first order that
/// does not vanish and returns that order.
MelnikovResult higher_melnikov(const DeformationSpec& def, const std::vector<Cycle>& cycles, int k_max,
                               const MelnikovOptions& opt = {});

/// -integral of phi over each cycle.
std::vector<MelnikovSample> melnikov_samples(const Fibration& fib, const RationalForm& phi, const std::vector<Cycle>& cycles,
                                             const QuadratureOptions& quad = {});

struct ZeroBracket {
    double lo = 0.0;
    double hi = 0.0;
    double estimate = 0.0;
};

struct MultiplicityFit {
    double t0 = 0.0;
    int multiplicity = 0;
    std::vector<double> coefficients;  // of (t - t0)^k, k = 0 .. order
    double condition = 0.0;
};

struct ZeroOptions {
    double zero_tol = 1e-8;   // identically zero: max |M| <= zero_tol * max(1, largest sample scale)
    double max_gap = -1.0;    // widest acceptable bracket; default a quarter of the segment
    int fit_order = 4;
    double max_condition = 1e12;
    double fit_tol = 1e-6;    // relative size below which a fitted coefficient counts as zero
};

struct ZeroReport {
    double a = 0.0;
    double b = 0.0;
    std::size_t samples_used = 0;
    bool identically_zero = false;
    std::vector<ZeroBracket> zeros;
    std::optional<MultiplicityFit> fit;
    std::string note;
    std::vector<std::string> warnings;
};

/// Sign changes of Re M on the real levels in [a, b], plus an optional local
/// multiplicity fit at t0.
ZeroReport count_zeros(const std::vector<MelnikovSample>& samples, double a, double b,
                       std::optional<double> t0 = std::nullopt, const ZeroOptions& opt = {});

}  // namespace mkit
