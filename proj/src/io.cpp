#include "mkit/io.hpp"

#include "mkit/parse.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mkit {

namespace {

const json& field(const json& j, const char* key, const char* where)
{
    if (!j.is_object() || !j.contains(key))
        throw Error("spec", std::string("missing \"") + key + "\" in " + where);
    return j.at(key);
}

BivarPoly poly_field(const json& j, const char* key, const char* where)
{
    const json& v = field(j, key, where);
    if (!v.is_string())
        throw Error("spec", std::string("\"") + key + "\" in " + where + " must be a polynomial string");
    return parse_poly(v.get<std::string>());
}

int int_field(const json& j, const char* key, const char* where, int fallback)
{
    if (!j.contains(key))
        return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer())
        throw Error("spec", std::string("\"") + key + "\" in " + where + " must be an integer");
    return v.get<int>();
}

json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("io", "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error("spec", path + ": " + e.what());
    }
}

cplx complex_from(const json& v)
{
    if (v.is_number())
        return v.get<double>();
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return {v[0].get<double>(), v[1].get<double>()};
    throw Error("spec", "expected a complex number [re, im]");
}

Point point_from(const json& v)
{
    if (!v.is_array() || v.size() != 4)
        throw Error("spec", "a vertex is [x_re, x_im, y_re, y_im]");
    return {cplx(v[0].get<double>(), v[1].get<double>()), cplx(v[2].get<double>(), v[3].get<double>())};
}

json point_json(const Point& p) { return json::array({p.x.real(), p.x.imag(), p.y.real(), p.y.imag()}); }

void dump_to(std::string& out, const json& j, int indent, int depth)
{
    auto newline = [&](int d) {
        if (indent >= 0) {
            out += '\n';
            out.append(static_cast<std::size_t>(indent * d), ' ');
        }
    };
    switch (j.type()) {
    case json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += '{';
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first)
                out += ',';
            first = false;
            newline(depth + 1);
            out += json(it.key()).dump();
            out += indent >= 0 ? ": " : ":";
            dump_to(out, it.value(), indent, depth + 1);
        }
        newline(depth);
        out += '}';
        return;
    }
    case json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        // arrays of scalars stay on one line
        bool flat = true;
        for (auto& v : j)
            flat = flat && !v.is_structured();
        out += '[';
        for (std::size_t k = 0; k < j.size(); ++k) {
            if (k)
                out += flat ? ", " : ",";
            if (!flat)
                newline(depth + 1);
            dump_to(out, j[k], indent, depth + 1);
        }
        if (!flat)
            newline(depth);
        out += ']';
        return;
    }
    case json::value_t::number_float:
        out += format_double(j.get<double>());
        return;
    default:
        out += j.dump();
    }
}

}  // namespace

int ModelSpec::max_degree() const
{
    int d = std::max(foliation.omega.degree(), 0);
    if (pencil)
        d = std::max({d, pencil->F.degree(), pencil->G.degree()});
    for (auto& f : factors)
        d = std::max(d, f.degree());
    for (auto& w : perturbation)
        d = std::max(d, w.degree());
    return d;
}

const PencilSpec& ModelSpec::require_pencil() const
{
    if (!pencil)
        throw Error("spec", "this command needs a \"pencil\" model (F, G, p, q)");
    return *pencil;
}

std::vector<std::string> ModelSpec::warnings() const
{
    std::vector<std::string> w = foliation.warnings;
    if (pencil)
        for (auto& s : pencil->warnings)
            if (std::find(w.begin(), w.end(), s) == w.end())
                w.push_back(s);
    return w;
}

ModelSpec parse_model(const json& j)
{
    if (!j.is_object())
        throw Error("spec", "model file must be a JSON object");
    ModelSpec m;
    if (j.contains("pencil")) {
        const json& p = j.at("pencil");
        m.kind = "pencil";
        BivarPoly G = p.contains("G") ? poly_field(p, "G", "pencil") : BivarPoly(Scalar(1));
        m.pencil = pencil_form(poly_field(p, "F", "pencil"), G, int_field(p, "p", "pencil", 1), int_field(p, "q", "pencil", 1));
        m.foliation = foliation_form(*m.pencil);
    } else if (j.contains("logarithmic")) {
        const json& l = j.at("logarithmic");
        m.kind = "logarithmic";
        const json& fs = field(l, "factors", "logarithmic");
        const json& ls = field(l, "lambdas", "logarithmic");
        if (!fs.is_array() || !ls.is_array() || fs.size() != ls.size())
            throw Error("spec", "logarithmic factors and lambdas must be arrays of equal length");
        for (std::size_t k = 0; k < fs.size(); ++k) {
            m.factors.push_back(parse_poly(fs[k].get<std::string>()));
            m.lambdas.push_back(ls[k].is_string() ? parse_scalar(ls[k].get<std::string>())
                                                  : Scalar(Rational(ls[k].get<long long>())));
        }
        m.foliation = logarithmic_form(m.factors, m.lambdas);
    } else if (j.contains("form")) {
        const json& f = j.at("form");
        m.kind = "form";
        OneForm w{poly_field(f, "dx", "form"), poly_field(f, "dy", "form")};
        m.foliation = foliation_form(w, int_field(f, "degree", "form", std::max(w.degree(), 1)));
    } else {
        throw Error("spec", "model file needs one of \"pencil\", \"logarithmic\" or \"form\"");
    }
    if (j.contains("perturbation")) {
        const json& ps = j.at("perturbation");
        if (!ps.is_array())
            throw Error("spec", "\"perturbation\" must be a list of {\"dx\", \"dy\"} forms");
        for (auto& w : ps)
            m.perturbation.push_back({w.contains("dx") ? poly_field(w, "dx", "perturbation") : BivarPoly{},
                                      w.contains("dy") ? poly_field(w, "dy", "perturbation") : BivarPoly{}});
    }
    if (j.contains("normalization")) {
        const std::string n = j.at("normalization").get<std::string>();
        if (n == "df")
            m.normalization = Normalization::df;
        else if (n == "dlogf")
            m.normalization = Normalization::dlogf;
        else
            throw Error("spec", "normalization must be \"df\" or \"dlogf\"");
    }
    return m;
}

ModelSpec load_model(const std::string& path) { return parse_model(read_json(path)); }

json cycle_to_json(const Cycle& c)
{
    json j;
    j["level"] = to_json(c.level);
    json v = json::array();
    for (auto& p : c.vertices)
        v.push_back(point_json(p));
    j["vertices"] = std::move(v);
    j["orientation"] = c.orientation;
    json prov;
    prov["kind"] = c.provenance.kind;
    prov["index"] = c.provenance.index;
    prov["source"] = point_json(c.provenance.source);
    prov["source_value"] = to_json(c.provenance.source_value);
    json path = json::array();
    for (auto t : c.provenance.path)
        path.push_back(to_json(t));
    prov["path"] = std::move(path);
    j["provenance"] = std::move(prov);
    return j;
}

Cycle cycle_from_json(const json& j)
{
    Cycle c;
    c.level = complex_from(field(j, "level", "cycle"));
    for (auto& v : field(j, "vertices", "cycle"))
        c.vertices.push_back(point_from(v));
    if (c.vertices.size() < 3)
        throw Error("spec", "a cycle needs at least 3 vertices");
    if (j.contains("orientation"))
        c.orientation = j.at("orientation").get<std::string>();
    c.provenance.kind = "file";
    if (j.contains("provenance")) {
        const json& p = j.at("provenance");
        if (p.contains("kind"))
            c.provenance.kind = p.at("kind").get<std::string>();
        if (p.contains("index"))
            c.provenance.index = p.at("index").get<int>();
        if (p.contains("source"))
            c.provenance.source = point_from(p.at("source"));
        if (p.contains("source_value"))
            c.provenance.source_value = complex_from(p.at("source_value"));
        if (p.contains("path"))
            for (auto& t : p.at("path"))
                c.provenance.path.push_back(complex_from(t));
    }
    return c;
}

Cycle load_cycle(const std::string& path) { return cycle_from_json(read_json(path)); }

cplx parse_complex(const std::string& text)
{
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            s += ch;
    auto number = [&](const std::string& part) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(part, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (part.empty() || used != part.size())
            throw Error("syntax", "bad complex number '" + text + "'");
        return v;
    };
    if (s.size() > 2 && s.front() == '(' && s.back() == ')' && s.find(',') != std::string::npos) {
        const auto comma = s.find(',');
        return {number(s.substr(1, comma - 1)), number(s.substr(comma + 1, s.size() - comma - 2))};
    }
    if (s.empty())
        throw Error("syntax", "empty complex number");
    if (s.back() != 'i')
        return number(s);
    s.pop_back();
    // split at the last sign that is not an exponent sign
    std::size_t cut = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;)
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            cut = k;
            break;
        }
    auto imag = [&](const std::string& part) {
        if (part.empty() || part == "+")
            return 1.0;
        if (part == "-")
            return -1.0;
        return number(part);
    };
    if (cut == std::string::npos)
        return {0.0, imag(s)};
    return {number(s.substr(0, cut)), imag(s.substr(cut))};
}

std::vector<cplx> parse_levels(const std::string& text)
{
    std::vector<cplx> out;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ':'))
            parts.push_back(item);
        if (parts.size() != 3)
            throw Error("syntax", "levels must be a:b:n");
        const double a = parse_complex(parts[0]).real(), b = parse_complex(parts[1]).real();
        int n = 0;
        try {
            n = std::stoi(parts[2]);
        } catch (const std::exception&) {
            n = 0;
        }
        if (n < 1)
            throw Error("syntax", "levels a:b:n needs n >= 1");
        for (int k = 0; k < n; ++k)
            out.emplace_back(n == 1 ? a : a + (b - a) * k / (n - 1));
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_complex(item));
    if (out.empty())
        throw Error("syntax", "no levels given");
    return out;
}

std::string format_double(double v)
{
    if (std::isnan(v))
        return "NaN";
    if (std::isinf(v))
        return v > 0 ? "Infinity" : "-Infinity";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const std::vector<std::string>& v)
{
    json a = json::array();
    for (auto& s : v)
        a.push_back(s);
    return a;
}

std::string dump(const json& j, int indent)
{
    std::string out;
    dump_to(out, j, indent, 0);
    return out;
}

void write_samples_csv(std::ostream& os, const std::vector<MelnikovSample>& samples)
{
    os << "t_re,t_im,M_re,M_im,quad_err\n";
    for (auto& s : samples)
        os << format_double(s.t.real()) << ',' << format_double(s.t.imag()) << ',' << format_double(s.value.real()) << ','
           << format_double(s.value.imag()) << ',' << format_double(s.error) << '\n';
}

std::vector<MelnikovSample> read_samples_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line) || line.rfind("t_re,t_im,M_re,M_im,quad_err", 0) != 0)
        throw Error("spec", "CSV header must be t_re,t_im,M_re,M_im,quad_err");
    std::vector<MelnikovSample> out;
    int row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (line.empty() || line == "\r")
            continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> v;
        while (std::getline(ss, cell, ','))
            try {
                v.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw Error("spec", "CSV row " + std::to_string(row) + ": bad number '" + cell + "'");
            }
        if (v.size() != 5)
            throw Error("spec", "CSV row " + std::to_string(row) + " needs 5 columns");
        out.push_back({cplx(v[0], v[1]), cplx(v[2], v[3]), v[4], 0.0});
    }
    return out;
}

void write_samples_plot(std::ostream& os, const std::vector<MelnikovSample>& samples)
{
    for (auto& s : samples)
        os << format_double(s.t.real()) << ' ' << format_double(s.value.real()) << '\n';
}

}  // namespace mkit
