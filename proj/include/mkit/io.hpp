#pragma once

// File formats: model specs and cycles as JSON, Melnikov samples as CSV.
// Floats are written with 17 significant digits so output is reproducible.

#include "mkit/melnikov.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mkit {

using json = nlohmann::ordered_json;

/// A model file: one of {"pencil": {F, G, p, q}}, {"logarithmic": {factors,
/// lambdas}} or {"form": {dx, dy, degree}}, with optional "perturbation"
/// (a list of {dx, dy}) and "normalization" ("df" or "dlogf").
struct ModelSpec {
    std::string kind;
    std::optional<PencilSpec> pencil;
    FoliationForm foliation;
    std::vector<BivarPoly> factors;
    std::vector<Scalar> lambdas;
    std::vector<OneForm> perturbation;
    std::optional<Normalization> normalization;

    int max_degree() const;
    const PencilSpec& require_pencil() const;
    std::vector<std::string> warnings() const;
};

ModelSpec parse_model(const json& j);
ModelSpec load_model(const std::string& path);

json cycle_to_json(const Cycle& c);
Cycle cycle_from_json(const json& j);
Cycle load_cycle(const std::string& path);

/// "1.5", "-2i", "0.3+0.4i", "(0.3,0.4)"
cplx parse_complex(const std::string& text);
/// "a:b:n" (n real levels, endpoints included) or a comma separated list of complex levels
std::vector<cplx> parse_levels(const std::string& text);

std::string format_double(double v);
json to_json(cplx z);
json to_json(const std::vector<std::string>& v);

/// Serializes with every float printed as %.17g; keys keep insertion order.
std::string dump(const json& j, int indent = 2);

/// Columns t_re, t_im, M_re, M_im, quad_err
void write_samples_csv(std::ostream& os, const std::vector<MelnikovSample>& samples);
std::vector<MelnikovSample> read_samples_csv(std::istream& is);
/// Two columns "t M" (real parts) for plotting.
void write_samples_plot(std::ostream& os, const std::vector<MelnikovSample>& samples);

}  // namespace mkit
