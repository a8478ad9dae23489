#pragma once

#include "mkit/poly.hpp"

#include <string>

namespace mkit {

/// Parses the polynomial grammar: signed terms, each a product of a
/// coefficient (integer, a/b, decimal, or "(a+bi)") and powers of x, y.
/// Throws Error("syntax") with the 0-based character position on failure.
BivarPoly parse_poly(const std::string& text);

/// Canonical printing in descending graded-lex order, e.g. "x^2 + y^2 - 1".
std::string to_string(const BivarPoly& p);
std::string to_string(const BasicPoly<cplx>& p);

/// "A dx + B dy" rendered as the pair of canonical polynomials.
std::string to_string(const OneForm& w);

}  // namespace mkit
