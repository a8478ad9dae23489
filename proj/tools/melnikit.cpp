// melnikit: command line front end for the Melnikov kit.
//
// Exit status: 0 success, 2 a negative verdict (infeasible decomposition, not
// tangent, not relatively exact), 1 any error.

#include "mkit/center.hpp"
#include "mkit/io.hpp"
#include "mkit/oracle.hpp"
#include "mkit/parse.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace mkit;

namespace {

struct RunConfig {
    std::string command;
    std::string spec;
    std::string cycle;
    std::string levels;
    std::string out;
    std::string format = "json";
    int order = 1;
    int grid = 8;
    std::string eps = "1e-3";
    std::string t = "1";
    unsigned seed = 0;
    int max_degree = 24;

    double tol_fiber = 1e-13;
    double tol_quad = 1e-12;
    double tol_zero = 1e-8;
    double tol_pole = 1e-6;
    double tol_newton = 1e-12;
    double tol_exact = 1e-8;
    double tol_ode = 1e-13;

    int from_critical = -1;
    int from_indeterminacy = -1;
    double residue_radius = 0.1;

    json to_json() const
    {
        json j;
        j["command"] = command;
        if (!spec.empty())
            j["spec"] = spec;
        if (!cycle.empty())
            j["cycle"] = cycle;
        j["seed"] = seed;
        j["max_degree"] = max_degree;
        j["tolerances"] = {{"fiber", tol_fiber},  {"quadrature", tol_quad}, {"zero", tol_zero}, {"pole", tol_pole},
                           {"newton", tol_newton}, {"exactness", tol_exact}, {"ode", tol_ode}};
        return j;
    }

    QuadratureOptions quad() const
    {
        QuadratureOptions q;
        q.tol = tol_quad;
        q.pole_tol = tol_pole;
        q.fiber_tol = tol_fiber;
        return q;
    }

    SeedOptions seeding() const
    {
        SeedOptions s;
        s.transport.fiber_tol = tol_fiber;
        return s;
    }
};

void emit(const RunConfig& cfg, const std::string& text)
{
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(cfg.out);
    if (!os)
        throw Error("io", "cannot write " + cfg.out);
    os << text;
}

std::string report_text(json j) { return dump(j) + "\n"; }

void check_positive(const RunConfig& c)
{
    for (double v : {c.tol_fiber, c.tol_quad, c.tol_zero, c.tol_pole, c.tol_newton, c.tol_exact, c.tol_ode})
        if (!(v > 0.0))
            throw Error("config", "tolerances must be positive");
    if (c.format != "json" && c.format != "csv" && c.format != "plot")
        throw Error("config", "format must be json, csv or plot");
}

ModelSpec model(const RunConfig& cfg)
{
    if (cfg.spec.empty())
        throw Error("config", "--spec is required");
    ModelSpec m = load_model(cfg.spec);
    if (m.max_degree() > cfg.max_degree)
        throw Error("cap", "model degree " + std::to_string(m.max_degree()) + " exceeds the cap " + std::to_string(cfg.max_degree) +
                               " (MELNIKOV_KIT_MAXDEG)");
    return m;
}

json base_report(const RunConfig& cfg) { return json{{"config", cfg.to_json()}}; }

void finish(json& rep, std::vector<std::string> warnings)
{
    std::sort(warnings.begin(), warnings.end());
    warnings.erase(std::unique(warnings.begin(), warnings.end()), warnings.end());
    rep["warnings"] = mkit::to_json(warnings);
}

json point_json(const Point& p) { return json::array({p.x.real(), p.x.imag(), p.y.real(), p.y.imag()}); }

/// "dx,dy[,den]"
RationalForm parse_form(const std::string& text)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        parts.push_back(item);
    if (parts.size() < 2 || parts.size() > 3)
        throw Error("syntax", "form must be \"dx,dy\" or \"dx,dy,den\"");
    RationalForm f{OneForm{parse_poly(parts[0]), parse_poly(parts[1])}};
    if (parts.size() == 3)
        f.denominator = parse_poly(parts[2]);
    if (f.denominator.is_zero())
        throw Error("syntax", "denominator is zero");
    return f;
}

OneForm polynomial_form(const std::string& text)
{
    RationalForm f = parse_form(text);
    if (f.denominator.degree() != 0)
        throw Error("syntax", "this command takes a polynomial form \"dx,dy\"");
    return Scalar(1) / f.denominator.coeff(0, 0) * f.numerator;
}

/// The starting cycle: a cycle file, a vanishing cycle or a residue loop.
Cycle start_cycle(const RunConfig& cfg, const Fibration& fib, const CriticalData& data, cplx level)
{
    if (!cfg.cycle.empty())
        return load_cycle(cfg.cycle);
    if (cfg.from_indeterminacy >= 0) {
        if (cfg.from_indeterminacy >= static_cast<int>(data.indeterminacy.size()))
            throw Error("config", "no indeterminacy point with that index");
        return seed_indeterminacy_cycle(fib, data, cfg.from_indeterminacy, level, cfg.residue_radius);
    }
    const int i = std::max(cfg.from_critical, 0);
    if (i >= static_cast<int>(data.points.size()))
        throw Error("config", "no critical point with that index");
    return seed_vanishing_cycle(fib, data, i, level, cfg.seeding());
}

Cycle move_to(const Fibration& fib, const CriticalData& data, const Cycle& c, cplx level, const RunConfig& cfg)
{
    if (std::abs(level - c.level) <= 1e-14 * (1.0 + std::abs(level)))
        return c;
    TransportOptions topt = cfg.seeding().transport;
    topt.avoid = forbidden_values(fib.spec(), data);
    topt.margin = safety_margin(topt.avoid);
    std::vector<cplx> exempt;
    if (c.provenance.kind == "critical")
        exempt.push_back(c.provenance.source_value);
    Cycle next = transport(fib, c, plan_path(c.level, level, topt.avoid, topt.margin, exempt), topt);
    next.level = level;
    return next;
}

std::vector<Cycle> family(const RunConfig& cfg, const Fibration& fib, const CriticalData& data, const std::vector<cplx>& levels)
{
    std::vector<Cycle> out;
    out.push_back(move_to(fib, data, start_cycle(cfg, fib, data, levels[0]), levels[0], cfg));
    for (std::size_t k = 1; k < levels.size(); ++k)
        out.push_back(move_to(fib, data, out.back(), levels[k], cfg));
    return out;
}

DeformationSpec deformation_of(const ModelSpec& m)
{
    if (m.perturbation.empty())
        throw Error("spec", "the model has no \"perturbation\" forms");
    return deformation(m.require_pencil(), m.perturbation, m.normalization);
}

json sample_json(const MelnikovSample& s)
{
    return json{{"t", mkit::to_json(s.t)}, {"M", mkit::to_json(s.value)}, {"quad_err", s.error}, {"scale", s.scale}};
}

json holonomy_json(const HolonomySample& h)
{
    return json{{"t", mkit::to_json(h.t)},
                {"eps", mkit::to_json(h.eps)},
                {"h", mkit::to_json(h.h)},
                {"displacement", mkit::to_json(h.h - h.t)},
                {"steps", h.steps},
                {"rejected", h.rejected},
                {"leaf_residual", h.leaf_residual},
                {"tube_max", h.tube_max}};
}

// ---- commands

int cmd_critical_values(const RunConfig& cfg)
{
    ModelSpec m = model(cfg);
    CriticalData d = critical_data(m.require_pencil());
    json rep = base_report(cfg);
    json pts = json::array();
    for (std::size_t k = 0; k < d.points.size(); ++k)
        pts.push_back({{"index", k},
                       {"location", point_json(d.points[k].location)},
                       {"value", mkit::to_json(d.points[k].value)},
                       {"nondegenerate", d.points[k].nondegenerate}});
    rep["critical_points"] = std::move(pts);
    json ind = json::array();
    for (std::size_t k = 0; k < d.indeterminacy.size(); ++k)
        ind.push_back({{"index", k}, {"location", point_json(d.indeterminacy[k].location)}, {"transversal", d.indeterminacy[k].transversal}});
    rep["indeterminacy_points"] = std::move(ind);
    rep["distinct_values"] = d.distinct_values;
    auto w = m.warnings();
    w.insert(w.end(), d.warnings.begin(), d.warnings.end());
    finish(rep, w);
    emit(cfg, report_text(rep));
    return 0;
}

int cmd_singular_points(const RunConfig& cfg, bool real_only, double box)
{
    ModelSpec m = model(cfg);
    SingularOptions opt;
    opt.real_only = real_only;
    opt.box = box;
    opt.newton_tol = cfg.tol_newton;
    auto pts = m.pencil ? singular_points(*m.pencil, opt) : singular_points(m.foliation, opt);
    json rep = base_report(cfg);
    json arr = json::array();
    int centers = 0;
    for (auto& p : pts) {
        centers += p.kind == SingularKind::MorseCenterCandidate;
        json e{{"location", point_json(p.location)},
               {"kind", to_string(p.kind)},
               {"residual", p.residual},
               {"converged", p.converged},
               {"trace", mkit::to_json(p.trace)},
               {"determinant", mkit::to_json(p.determinant)}};
        if (p.center_defect >= 0.0)
            e["center_defect"] = p.center_defect;
        arr.push_back(std::move(e));
    }
    rep["points"] = std::move(arr);
    rep["morse_center_candidates"] = centers;
    if (m.kind == "logarithmic") {
        const int predicted = logarithmic_center_count(m.factors);
        rep["predicted_centers"] = predicted;
        rep["count_matches"] = predicted == centers;
    }
    finish(rep, m.warnings());
    emit(cfg, report_text(rep));
    return 0;
}

int cmd_trace_cycle(const RunConfig& cfg, const std::string& level, const std::string& path)
{
    ModelSpec m = model(cfg);
    Fibration fib(m.require_pencil());
    CriticalData data = critical_data(*m.pencil);
    const cplx t0 = parse_complex(level);
    Cycle c = cfg.cycle.empty() ? start_cycle(cfg, fib, data, t0) : move_to(fib, data, load_cycle(cfg.cycle), t0, cfg);
    std::vector<std::string> warnings = m.warnings();
    if (!path.empty()) {
        const auto colon = path.find(':');
        const std::string kind = path.substr(0, colon);
        const std::string arg = colon == std::string::npos ? "" : path.substr(colon + 1);
        if (kind == "segment") {
            for (auto t : parse_levels(arg))
                c = move_to(fib, data, c, t, cfg);
        } else if (kind == "loop") {
            const cplx centre = parse_complex(arg);
            const cplx r = c.level - centre;
            if (std::abs(r) == 0.0)
                throw Error("config", "loop centre equals the cycle level");
            c = monodromy_loop(fib, c, circle_path(centre, std::abs(r), std::arg(r)), cfg.seeding().transport);
        } else {
            throw Error("syntax", "path must be segment:t1,t2,... or loop:c");
        }
    }
    json rep = cycle_to_json(c);
    rep["diameter"] = c.diameter();
    rep["fiber_residual"] = c.fiber_residual(fib);
    rep["config"] = cfg.to_json();
    finish(rep, warnings);
    emit(cfg, report_text(rep));
    return 0;
}

int cmd_integrate(const RunConfig& cfg, const std::string& form)
{
    ModelSpec m = model(cfg);
    if (cfg.cycle.empty())
        throw Error("config", "--cycle is required");
    Fibration fib(m.require_pencil());
    Cycle c = load_cycle(cfg.cycle);
    IntegralValue v = integrate(fib, parse_form(form), c, cfg.quad());
    json rep = base_report(cfg);
    rep["level"] = mkit::to_json(c.level);
    rep["value"] = mkit::to_json(v.value);
    rep["error"] = v.error;
    finish(rep, m.warnings());
    emit(cfg, report_text(rep));
    return 0;
}

int cmd_melnikov(const RunConfig& cfg)
{
    ModelSpec m = model(cfg);
    DeformationSpec def = deformation_of(m);
    Fibration fib(def.base);
    CriticalData data = critical_data(def.base);
    const auto levels = parse_levels(cfg.levels.empty() ? "0.1:1:10" : cfg.levels);
    auto cycles = family(cfg, fib, data, levels);
    MelnikovOptions opt;
    opt.zero_tol = cfg.tol_zero;
    opt.quad = cfg.quad();
    opt.bounds.cap = cfg.max_degree;
    MelnikovResult r = higher_melnikov(def, cycles, cfg.order, opt);

    json rep = base_report(cfg);
    rep["requested_order"] = cfg.order;
    rep["order"] = r.order;
    rep["normalization"] = to_string(r.normalization);
    rep["convention"] = r.convention;
    rep["orientation"] = cycles.front().orientation;
    rep["identically_zero"] = r.identically_zero;
    rep["zero_tol"] = r.zero_tol;
    json chain = json::array();
    for (auto& s : r.chain)
        chain.push_back({{"order", s.order},
                         {"g", {{"num", to_string(s.g.num)}, {"den", to_string(s.g.den)}}},
                         {"p", {{"num", to_string(s.p.num)}, {"den", to_string(s.p.den)}}},
                         {"exact", s.exact}});
    rep["chain"] = std::move(chain);
    auto warnings = r.warnings;
    warnings.insert(warnings.end(), data.warnings.begin(), data.warnings.end());

    if (cfg.format == "json") {
        json samples = json::array();
        for (auto& s : r.samples)
            samples.push_back(sample_json(s));
        rep["samples"] = std::move(samples);
        finish(rep, warnings);
        emit(cfg, report_text(rep));
        return 0;
    }
    std::ostringstream data_out;
    if (cfg.format == "csv")
        write_samples_csv(data_out, r.samples);
    else
        write_samples_plot(data_out, r.samples);
    emit(cfg, data_out.str());
    finish(rep, warnings);
    // the report goes next to the data: stdout when the data went to a file
    (cfg.out.empty() ? std::cerr : std::cout) << report_text(rep);
    return 0;
}

int cmd_count_zeros(const RunConfig& cfg, const std::string& in, std::vector<double> segment, std::optional<double> t0,
                    double max_gap, int fit_order)
{
    std::ifstream is(in);
    if (!is)
        throw Error("io", "cannot open " + in);
    auto samples = read_samples_csv(is);
    if (segment.size() != 2)
        throw Error("config", "--segment takes two numbers");
    ZeroOptions opt;
    opt.zero_tol = cfg.tol_zero;
    opt.max_gap = max_gap;
    opt.fit_order = fit_order;
    ZeroReport z = count_zeros(samples, segment[0], segment[1], t0, opt);
    json rep = base_report(cfg);
    rep["segment"] = json::array({z.a, z.b});
    rep["samples_used"] = z.samples_used;
    rep["identically_zero"] = z.identically_zero;
    rep["zero_tol"] = opt.zero_tol;
    rep["note"] = z.note;
    json zs = json::array();
    for (auto& b : z.zeros)
        zs.push_back({{"bracket", json::array({b.lo, b.hi})}, {"estimate", b.estimate}, {"error", 0.5 * (b.hi - b.lo)}});
    rep["zeros"] = std::move(zs);
    rep["count"] = z.zeros.size();
    if (z.fit) {
        json c = json::array();
        for (double v : z.fit->coefficients)
            c.push_back(v);
        rep["fit"] = {{"t0", z.fit->t0}, {"multiplicity", z.fit->multiplicity}, {"coefficients", c}, {"condition", z.fit->condition}};
    }
    finish(rep, z.warnings);
    emit(cfg, report_text(rep));
    return 0;
}

int cmd_holonomy(const RunConfig& cfg, bool grid_given)
{
    ModelSpec m = model(cfg);
    DeformationSpec def = deformation_of(m);
    Fibration fib(def.base);
    CriticalData data = critical_data(def.base);
    const cplx t = parse_complex(cfg.t);
    const cplx eps = parse_complex(cfg.eps);
    Cycle guide = move_to(fib, data, start_cycle(cfg, fib, data, t), t, cfg);
    HolonomyOptions hopt;
    hopt.ode_tol = cfg.tol_ode;
    json rep = base_report(cfg);
    json arr = json::array();
    const int n = grid_given ? cfg.grid : 1;
    for (int j = 0; j < n; ++j)
        arr.push_back(holonomy_json(holonomy(def, guide, t, eps * std::pow(0.5, j), hopt)));
    rep["samples"] = std::move(arr);
    rep["section"] = "f-parameterized transversal at vertex 0 of the guide";
    finish(rep, def.warnings);
    emit(cfg, report_text(rep));
    return 0;
}

int cmd_melnikov_fd(const RunConfig& cfg, const std::string& lower)
{
    ModelSpec m = model(cfg);
    DeformationSpec def = deformation_of(m);
    Fibration fib(def.base);
    CriticalData data = critical_data(def.base);
    const auto levels = parse_levels(cfg.levels.empty() ? cfg.t : cfg.levels);
    FdOptions opt;
    opt.eps_max = parse_complex(cfg.eps).real();
    opt.grid = cfg.grid;
    opt.holonomy.ode_tol = cfg.tol_ode;
    if (!lower.empty())
        opt.lower = parse_levels(lower);
    auto guides = family(cfg, fib, data, levels);
    json rep = base_report(cfg);
    rep["order"] = cfg.order;
    rep["normalization"] = to_string(def.normalization);
    json arr = json::array();
    std::vector<std::string> warnings = def.warnings;
    for (std::size_t k = 0; k < levels.size(); ++k) {
        FdEstimate e = melnikov_fd(def, guides[k], levels[k], cfg.order, opt);
        json eps = json::array();
        for (double v : e.eps)
            eps.push_back(v);
        arr.push_back({{"t", mkit::to_json(e.t)}, {"M", mkit::to_json(e.value)}, {"error", e.error}, {"converged", e.converged}, {"eps", eps}});
        warnings.insert(warnings.end(), e.warnings.begin(), e.warnings.end());
    }
    rep["estimates"] = std::move(arr);
    finish(rep, warnings);
    emit(cfg, report_text(rep));
    return 0;
}

json function_json(const RationalFunction& f) { return {{"num", to_string(f.num)}, {"den", to_string(f.den)}}; }

int cmd_decompose(const RunConfig& cfg, const std::string& form, int gbound, int pbound, const std::string& norm)
{
    ModelSpec m = model(cfg);
    const PencilSpec& s = m.require_pencil();
    Normalization kind = default_normalization(s);
    if (!norm.empty())
        kind = norm == "df" ? Normalization::df : norm == "dlogf" ? Normalization::dlogf : throw Error("config", "normalization must be df or dlogf");
    auto n = leaf_normalization(s, kind);
    RationalForm eta = normalize(n, polynomial_form(form));
    DecompositionBounds b;
    b.g_degree = gbound;
    b.p_degree = pbound;
    b.cap = cfg.max_degree;
    Decomposition d = decompose(eta, s, n, b);
    json rep = base_report(cfg);
    rep["normalization"] = to_string(kind);
    rep["eta"] = {{"dx", to_string(eta.numerator.A)}, {"dy", to_string(eta.numerator.B)}, {"den", to_string(eta.denominator)}};
    rep["feasible"] = d.feasible;
    rep["rounds"] = d.rounds;
    rep["unknowns"] = d.unknowns;
    rep["equations"] = d.equations;
    rep["g_degree"] = d.g_degree;
    rep["p_degree"] = d.p_degree;
    std::vector<std::string> warnings = m.warnings();
    bool ok = d.feasible;
    if (d.feasible) {
        rep["g"] = function_json(d.g);
        rep["p"] = function_json(d.p);
        rep["exact"] = check_decomposition(eta, n, d);
    } else {
        rep["least_squares_residual"] = d.least_squares_residual;
        rep["certificate_size"] = d.certificate_size;
    }
    if (!cfg.levels.empty()) {
        RelExactOptions ro;
        ro.tol = cfg.tol_exact;
        ro.quad = cfg.quad();
        ro.seed = cfg.seeding();
        RelExactReport r = is_relatively_exact(eta, s, parse_levels(cfg.levels), ro);
        json ev = json::array();
        for (auto& e : r.evidence)
            ev.push_back({{"kind", e.kind},
                          {"index", e.index},
                          {"level", mkit::to_json(e.level)},
                          {"integral", mkit::to_json(e.integral.value)},
                          {"error", e.integral.error},
                          {"scale", e.scale}});
        rep["integral_test"] = {{"relatively_exact", r.relatively_exact}, {"tol", r.tol}, {"witness", r.witness}, {"evidence", ev}};
        warnings.insert(warnings.end(), r.warnings.begin(), r.warnings.end());
        ok = ok && r.relatively_exact;
    }
    finish(rep, warnings);
    emit(cfg, report_text(rep));
    return ok ? 0 : 2;
}

int cmd_tangent_test(const RunConfig& cfg, const std::string& form)
{
    ModelSpec m = model(cfg);
    TangentResult r = tangent_membership(polynomial_form(form), m.require_pencil());
    json rep = base_report(cfg);
    rep["tangent"] = r.witness.has_value();
    rep["unknowns"] = r.unknowns;
    if (r.witness) {
        rep["witness"] = {{"P", to_string(r.witness->P)}, {"Q", to_string(r.witness->Q)}};
    } else {
        json c = json::array();
        for (auto& f : r.certificate)
            c.push_back({{"component", f.component}, {"monomial", to_string(BivarPoly::monomial(f.mono.i, f.mono.j))}, {"weight", to_string(f.weight)}});
        rep["certificate"] = std::move(c);
    }
    finish(rep, m.warnings());
    emit(cfg, report_text(rep));
    return r.witness ? 0 : 2;
}

int cmd_center_obstructions(const RunConfig& cfg, int max_order, bool symbolic, const std::string& at, int degree)
{
    ModelSpec m = model(cfg);
    if (max_order > cfg.max_degree)
        throw Error("cap", "max order exceeds the cap (MELNIKOV_KIT_MAXDEG)");
    CenterCaps caps;
    json rep = base_report(cfg);
    rep["max_order"] = max_order;
    std::vector<std::string> warnings = m.warnings();
    if (symbolic) {
        const int d = degree > 0 ? degree : m.foliation.degree;
        SymbolicReport s = symbolic_obstructions(d, max_order, caps);
        rep["mode"] = "symbolic";
        rep["degree"] = d;
        rep["indeterminates"] = mkit::to_json(s.germ.names);
        json ps;
        for (auto& [n, p] : s.cleared)
            ps["P" + std::to_string(n)] = p.to_string(s.germ.names);
        rep["obstructions"] = std::move(ps);
        finish(rep, warnings);
        emit(cfg, report_text(rep));
        return 0;
    }
    Scalar px(0), py(0);
    if (!at.empty()) {
        const auto comma = at.find(',');
        if (comma == std::string::npos)
            throw Error("syntax", "--at takes \"x,y\"");
        px = parse_scalar(at.substr(0, comma));
        py = parse_scalar(at.substr(comma + 1));
    }
    OneForm w = translate(m.foliation.omega, px, py);
    try {
        NormalizedGerm g = normalize_linear_part(w);
        ObstructionReport r = center_obstructions(g, max_order, caps);
        rep["mode"] = "exact";
        rep["k"] = to_string(g.k);
        json ps, jets = json::array();
        bool all_zero = true;
        for (auto& [n, p] : r.obstructions) {
            ps["P" + std::to_string(n)] = to_string(p);
            all_zero = all_zero && p.is_zero();
        }
        for (auto& f : r.jets)
            jets.push_back(to_string(f));
        rep["obstructions"] = std::move(ps);
        rep["all_zero"] = all_zero;
        rep["jets"] = std::move(jets);
    } catch (const Error& e) {
        if (e.kind() != "irrational")
            throw;
        auto g = normalize_linear_part(to_float(w));
        auto r = obstructions(g.omega, max_order);
        rep["mode"] = "float";
        rep["tol"] = cfg.tol_zero;
        json ps;
        bool all_zero = true;
        for (auto& [n, p] : r.obstructions) {
            ps["P" + std::to_string(n)] = mkit::to_json(p);
            all_zero = all_zero && std::abs(p) < cfg.tol_zero;
        }
        rep["obstructions"] = std::move(ps);
        rep["all_zero"] = all_zero;
        warnings.push_back("normalization is irrational: obstructions computed in floating point");
    }
    finish(rep, warnings);
    emit(cfg, report_text(rep));
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    RunConfig cfg;
    if (const char* cap = std::getenv("MELNIKOV_KIT_MAXDEG")) {
        try {
            cfg.max_degree = std::stoi(cap);
        } catch (const std::exception&) {
            std::cerr << "error: MELNIKOV_KIT_MAXDEG must be an integer\n";
            return 1;
        }
        if (cfg.max_degree < 1) {
            std::cerr << "error: MELNIKOV_KIT_MAXDEG must be positive\n";
            return 1;
        }
    }

    CLI::App app{"Melnikov functions, relative exactness and center obstructions for polynomial foliations"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    auto common = [&](CLI::App* c) {
        c->add_option("--spec", cfg.spec, "model file (JSON)");
        c->add_option("--out", cfg.out, "output file (default stdout)");
        c->add_option("--format", cfg.format, "json, csv or plot");
        c->add_option("--seed", cfg.seed, "seed for randomized data");
        c->add_option("--tol-fiber", cfg.tol_fiber);
        c->add_option("--tol-quad", cfg.tol_quad);
        c->add_option("--tol-zero", cfg.tol_zero);
        c->add_option("--tol-pole", cfg.tol_pole);
        c->add_option("--tol-newton", cfg.tol_newton);
        c->add_option("--tol-exact", cfg.tol_exact);
        c->add_option("--tol-ode", cfg.tol_ode);
    };
    auto cycle_source = [&](CLI::App* c) {
        c->add_option("--cycle", cfg.cycle, "cycle file (JSON)");
        c->add_option("--from-critical", cfg.from_critical, "seed the vanishing cycle of this critical point");
        c->add_option("--from-indeterminacy", cfg.from_indeterminacy, "seed a residue loop at this base point");
        c->add_option("--residue-radius", cfg.residue_radius);
    };

    auto* crit = app.add_subcommand("critical-values", "critical points, values and base points of a pencil");
    common(crit);

    bool real_only = false;
    double box = 0.0;
    auto* sing = app.add_subcommand("singular-points", "singular points of the foliation with their types");
    common(sing);
    sing->add_flag("--real-only", real_only);
    sing->add_option("--box", box);

    std::string level = "0.5", path;
    auto* trace = app.add_subcommand("trace-cycle", "seed a cycle and transport it along a path of levels");
    common(trace);
    cycle_source(trace);
    trace->add_option("--level", level);
    trace->add_option("--path", path, "segment:t1,t2,... or loop:c");

    std::string form;
    auto* integ = app.add_subcommand("integrate", "integral of a rational 1-form over a cycle");
    common(integ);
    integ->add_option("--cycle", cfg.cycle)->required();
    integ->add_option("--form", form, "dx,dy[,den]")->required();

    auto* mel = app.add_subcommand("melnikov", "Melnikov function of the given order along a cycle family");
    common(mel);
    cycle_source(mel);
    mel->add_option("--order", cfg.order);
    mel->add_option("--levels", cfg.levels, "a:b:n or a comma separated list");

    std::string lower;
    auto* fd = app.add_subcommand("melnikov-fd", "Melnikov function from finite differences of the holonomy");
    common(fd);
    cycle_source(fd);
    fd->add_option("--order", cfg.order);
    fd->add_option("--t", cfg.t);
    fd->add_option("--levels", cfg.levels);
    fd->add_option("--eps", cfg.eps, "largest eps of the grid");
    fd->add_option("--grid", cfg.grid);
    fd->add_option("--lower", lower, "nonzero lower order values M_1,...");

    auto* hol = app.add_subcommand("holonomy", "holonomy of the perturbed foliation along a cycle");
    common(hol);
    cycle_source(hol);
    hol->add_option("--t", cfg.t);
    hol->add_option("--eps", cfg.eps);
    auto* grid_opt = hol->add_option("--grid", cfg.grid, "also eps/2, eps/4, ...");

    int gbound = -1, pbound = -1;
    std::string norm;
    auto* dec = app.add_subcommand("decompose", "omega = -p dH - dg with the integral test");
    common(dec);
    dec->add_option("--form", form, "dx,dy")->required();
    dec->add_option("--gbound", gbound);
    dec->add_option("--pbound", pbound);
    dec->add_option("--normalization", norm, "df or dlogf");
    dec->add_option("--levels", cfg.levels, "levels for the integral test");

    auto* tan = app.add_subcommand("tangent-test", "membership in the tangent directions of the pencil");
    common(tan);
    tan->add_option("--form", form, "dx,dy")->required();

    int max_order = 8, degree = 0;
    bool symbolic = false;
    std::string at;
    auto* cen = app.add_subcommand("center-obstructions", "obstructions P_4, P_6, ... to a formal first integral");
    common(cen);
    cen->add_option("--max-order", max_order);
    cen->add_flag("--symbolic", symbolic);
    cen->add_option("--at", at, "x,y of the singular point (exact)");
    cen->add_option("--degree", degree, "foliation degree in symbolic mode");

    std::string in;
    std::vector<double> segment;
    double t0 = 0.0, max_gap = -1.0;
    int fit_order = 4;
    auto* cz = app.add_subcommand("count-zeros", "sign changes and local multiplicity of sampled M");
    common(cz);
    cz->add_option("--in", in)->required();
    cz->add_option("--segment", segment)->expected(2)->required();
    auto* t0_opt = cz->add_option("--t0", t0);
    cz->add_option("--max-gap", max_gap);
    cz->add_option("--fit-order", fit_order);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        cfg.command = sub->get_name();
        check_positive(cfg);
        if (sub == crit)
            return cmd_critical_values(cfg);
        if (sub == sing)
            return cmd_singular_points(cfg, real_only, box);
        if (sub == trace)
            return cmd_trace_cycle(cfg, level, path);
        if (sub == integ)
            return cmd_integrate(cfg, form);
        if (sub == mel)
            return cmd_melnikov(cfg);
        if (sub == fd)
            return cmd_melnikov_fd(cfg, lower);
        if (sub == hol)
            return cmd_holonomy(cfg, grid_opt->count() > 0);
        if (sub == dec)
            return cmd_decompose(cfg, form, gbound, pbound, norm);
        if (sub == tan)
            return cmd_tangent_test(cfg, form);
        if (sub == cen)
            return cmd_center_obstructions(cfg, max_order, symbolic, at, degree);
        if (sub == cz)
            return cmd_count_zeros(cfg, in, segment, t0_opt->count() ? std::optional<double>(t0) : std::nullopt, max_gap, fit_order);
    } catch (const Error& e) {
        if (e.kind() == "infeasible") {
            std::cerr << "infeasible: " << e.what() << "\n";
            return 2;
        }
        std::cerr << "error (" << e.kind() << "): " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
