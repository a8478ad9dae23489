#pragma once

// Integrals of rational 1-forms over cycles on the fibers.

#include "mkit/fibration.hpp"

#include <functional>
#include <string>
#include <vector>

namespace mkit {

/// numerator / denominator, e.g. omega_1 / (F G).
struct RationalForm {
    OneForm numerator;
    BivarPoly denominator = BivarPoly(Scalar(1));
};

/// Evaluates a denominator with the powers of F and G of the pencil split off,
/// so that it stays accurate near the base points where F and G both vanish.
class DenominatorEval {
public:
    DenominatorEval(const PencilSpec& spec, const BivarPoly& den);
    cplx operator()(const Point& z) const;

private:
    int a_ = 0;
    int b_ = 0;
    NumPoly F_, G_, rest_;
};

struct IntegralValue {
    cplx value = 0.0;
    double error = 0.0;
};

struct QuadratureOptions {
    double tol = 1e-12;         // absolute target per segment, scaled by the integrand size
    int max_depth = 14;
    double pole_tol = 1e-6;     // min |den| on the cycle, relative to the cycle diameter
    double fiber_tol = 1e-13;
};

/// Vector-valued integrand: given a point on the fiber and a tangent vector,
/// write one value per component.
using FormBundle = std::function<void(const Point& z, const Point& dz, std::vector<cplx>& out)>;

std::vector<IntegralValue> integrate_bundle(const Fibration& fib, const Cycle& cycle, std::size_t components,
                                            const FormBundle& integrand, const QuadratureOptions& opt = {});

IntegralValue integrate(const Fibration& fib, const RationalForm& phi, const Cycle& cycle, const QuadratureOptions& opt = {});
std::vector<IntegralValue> integrate(const Fibration& fib, const std::vector<RationalForm>& phis, const Cycle& cycle,
                                     const QuadratureOptions& opt = {});

struct PeriodVector {
    int bound = 0;
    std::vector<std::string> labels;  // "x^i*y^j dx" / "x^i*y^j dy"
    std::vector<OneForm> basis;
    std::vector<IntegralValue> values;
};

/// The monomial basis x^i y^j dx, x^i y^j dy with i + j <= B: by degree, then
/// dx before dy, then decreasing power of x.
std::vector<OneForm> monomial_basis(int B, std::vector<std::string>* labels = nullptr);

PeriodVector periods(const Fibration& fib, const Cycle& cycle, int B, const QuadratureOptions& opt = {});

struct ResidueEntry {
    Point location;
    IntegralValue integral;
    bool vanishes = false;
};

std::vector<ResidueEntry> residue_vanishing(const Fibration& fib, const CriticalData& data, const RationalForm& phi, cplx t,
                                            double tol = 1e-8, double radius = 1e-2, const QuadratureOptions& opt = {});

}  // namespace mkit
