#pragma once

#include "mkit/numeric.hpp"
#include "mkit/poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mkit {

/// The integrable foliation pG dF - qF dG with first integral F^p / G^q.
/// A constant G is the Hamiltonian case, stored as G = 1, p = q = 1.
struct PencilSpec {
    BivarPoly F;
    BivarPoly G;
    int p = 1;
    int q = 1;
    OneForm omega0;
    int degree = 0;
    bool hamiltonian = false;
    std::vector<std::string> warnings;
};

PencilSpec pencil_form(const BivarPoly& F, const BivarPoly& G, int p, int q);

/// Any polynomial 1-form together with its declared projective degree.
struct FoliationForm {
    OneForm omega;
    int degree = 0;
    std::vector<std::string> warnings;
};

FoliationForm foliation_form(const OneForm& omega, int degree);
FoliationForm foliation_form(const PencilSpec& pencil);

/// f_1 ... f_r sum lambda_i df_i / f_i, requiring sum deg(f_i) lambda_i = 0.
FoliationForm logarithmic_form(const std::vector<BivarPoly>& factors, const std::vector<Scalar>& lambdas);

/// Number of centers predicted for a generic logarithmic foliation.
int logarithmic_center_count(const std::vector<BivarPoly>& factors);

/// True when the two polynomials share a non-constant factor.
bool share_factor(const BivarPoly& a, const BivarPoly& b);

enum class SingularKind { MorseCenterCandidate, NonDegenerateOther, Degenerate, Indeterminacy };
std::string to_string(SingularKind k);

struct SingularPoint {
    Point location;
    SingularKind kind = SingularKind::NonDegenerateOther;
    double residual = 0.0;
    bool converged = true;
    cplx trace = 0.0;        // of the linearized dual vector field
    cplx determinant = 0.0;
    double center_defect = -1.0;  // max |P_n| of the local first-integral test (-1 if not run)
};

struct SingularOptions {
    double box = 0.0;           // if > 0, keep only points with |x|, |y| <= box
    bool real_only = false;
    double real_tol = 1e-9;
    double newton_tol = 1e-12;
    int newton_iters = 60;
    double degeneracy_tol = 1e-9;
    double trace_tol = 1e-8;
    int center_test_order = 6;
    double center_test_tol = 1e-6;
    double indeterminacy_tol = 1e-8;
};

std::vector<SingularPoint> singular_points(const FoliationForm& f, const SingularOptions& opt = {});
/// Pencil variant: points on F = G = 0 are classified as indeterminacy.
std::vector<SingularPoint> singular_points(const PencilSpec& pencil, const SingularOptions& opt = {});

}  // namespace mkit
