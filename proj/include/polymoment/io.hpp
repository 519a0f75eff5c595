#ifndef POLYMOMENT_IO_HPP
#define POLYMOMENT_IO_HPP

#include <cstdlib>
#include <sstream>
#include <string>

#include <json.hpp>

#include "polymoment/cactus.hpp"
#include "polymoment/circle_sets.hpp"
#include "polymoment/classify.hpp"
#include "polymoment/decompose.hpp"
#include "polymoment/moments.hpp"

namespace polymoment {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Complex entries: `re`, `re+imi`, `re-imi`, `imi`, `i`
// ---------------------------------------------------------------------------

namespace detail {

inline bool parse_float(const char*& s, double& out) {
    char* end = nullptr;
    double v = std::strtod(s, &end);
    if (end == s) return false;
    s = end;
    out = v;
    return true;
}

} // namespace detail

template <class R = double>
Cx<R> parse_complex(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace((unsigned char)c)) t += c;
    if (t.empty()) throw ParseError("empty complex entry");
    const char* s = t.c_str();

    auto bare_i = [&](const char*& p, double& sign) -> bool {
        const char* q = p;
        double sg = 1;
        if (*q == '+') ++q;
        else if (*q == '-') { sg = -1; ++q; }
        if (*q == 'i' && q[1] == '\0') { p = q + 1; sign = sg; return true; }
        return false;
    };

    double re = 0, im = 0, sg = 0;
    if (bare_i(s, sg)) { // "i", "+i", "-i"
        if (*s) throw ParseError("bad complex entry: " + text);
        return Cx<R>(0, (R)sg);
    }
    double first = 0;
    if (!detail::parse_float(s, first)) throw ParseError("bad complex entry: " + text);
    if (*s == '\0') return Cx<R>((R)first, 0);
    if (*s == 'i' && s[1] == '\0') return Cx<R>(0, (R)first);
    re = first;
    if (bare_i(s, sg)) { // "re+i" / "re-i"
        if (*s) throw ParseError("bad complex entry: " + text);
        return Cx<R>((R)re, (R)sg);
    }
    if (!detail::parse_float(s, im) || *s != 'i' || s[1] != '\0')
        throw ParseError("bad complex entry: " + text);
    return Cx<R>((R)re, (R)im);
}

template <class R>
std::string format_real(R v) {
    std::ostringstream os;
    os.precision(17);
    os << (double)v;
    return os.str();
}

template <class R>
std::string format_complex(const Cx<R>& z) {
    if (z.imag() == R(0)) return format_real(z.real());
    std::string s = format_real(z.real());
    s += (z.imag() < R(0)) ? "-" : "+";
    s += format_real(std::abs(z.imag()));
    s += "i";
    return s;
}

// ---------------------------------------------------------------------------
// Polynomial text format: comma-separated coefficients lowest degree first,
// plus the preset `chebyshev:N`.
// ---------------------------------------------------------------------------

template <class R = double>
Polynomial<R> parse_polynomial(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace((unsigned char)c)) t += c;
    if (t.rfind("chebyshev:", 0) == 0) {
        const std::string arg = t.substr(10);
        char* end = nullptr;
        long n = std::strtol(arg.c_str(), &end, 10);
        if (end == arg.c_str() || *end || n < 0 || n > 64)
            throw ParseError("bad chebyshev preset: " + text);
        return chebyshev<R>((int)n);
    }
    if (t.empty()) throw ParseError("empty polynomial");
    std::vector<Cx<R>> coeffs;
    size_t pos = 0;
    while (pos <= t.size()) {
        size_t comma = t.find(',', pos);
        std::string entry = t.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        coeffs.push_back(parse_complex<R>(entry));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return Polynomial<R>(std::move(coeffs));
}

template <class R>
std::string format_polynomial(const Polynomial<R>& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int i = 0; i <= p.degree(); ++i) {
        if (i) out += ',';
        out += format_complex(p.coeff(i));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Endpoint expressions: +, -, *, /, sqrt of non-negative reals, i, numbers.
// Example: `-sqrt(3)/2`, `1/2+i/3`.
// ---------------------------------------------------------------------------

namespace detail {

template <class R>
class ExprParser {
  public:
    explicit ExprParser(const std::string& text) {
        for (char c : text)
            if (!std::isspace((unsigned char)c)) t_ += c;
        p_ = t_.c_str();
    }

    Cx<R> run() {
        Cx<R> v = expr();
        if (*p_) throw ParseError("trailing input in expression: " + t_);
        return v;
    }

  private:
    Cx<R> expr() {
        Cx<R> v = term();
        while (*p_ == '+' || *p_ == '-') {
            char op = *p_++;
            Cx<R> w = term();
            v = (op == '+') ? v + w : v - w;
        }
        return v;
    }
    Cx<R> term() {
        Cx<R> v = unary();
        while (*p_ == '*' || *p_ == '/') {
            char op = *p_++;
            Cx<R> w = unary();
            if (op == '/') {
                if (std::abs(w) == R(0)) throw ParseError("division by zero in expression");
                v = v / w;
            } else {
                v = v * w;
            }
        }
        return v;
    }
    Cx<R> unary() {
        if (*p_ == '-') { ++p_; return -unary(); }
        if (*p_ == '+') { ++p_; return unary(); }
        return atom();
    }
    Cx<R> atom() {
        if (std::strncmp(p_, "sqrt(", 5) == 0) {
            p_ += 5;
            Cx<R> v = expr();
            if (*p_ != ')') throw ParseError("missing ) after sqrt");
            ++p_;
            if (std::abs(v.imag()) > R(0) || v.real() < R(0))
                throw ParseError("sqrt argument must be a non-negative real");
            return Cx<R>(std::sqrt(v.real()), 0);
        }
        if (*p_ == '(') {
            ++p_;
            Cx<R> v = expr();
            if (*p_ != ')') throw ParseError("missing )");
            ++p_;
            return v;
        }
        if (*p_ == 'i') { ++p_; return Cx<R>(0, 1); }
        double num = 0;
        if (!parse_float(p_, num)) throw ParseError("expected a number in expression");
        if (*p_ == 'i') { ++p_; return Cx<R>(0, (R)num); }
        return Cx<R>((R)num, 0);
    }

    std::string t_;
    const char* p_ = nullptr;
};

} // namespace detail

template <class R = double>
Cx<R> parse_point(const std::string& text) {
    return detail::ExprParser<R>(text).run();
}

// ---------------------------------------------------------------------------
// JSON serialization ([re, im] pairs for complex values)
// ---------------------------------------------------------------------------

template <class R>
json to_json(const Cx<R>& z) {
    return json::array({(double)z.real(), (double)z.imag()});
}

template <class R>
json to_json(const std::vector<Cx<R>>& v) {
    json a = json::array();
    for (const auto& z : v) a.push_back(to_json(z));
    return a;
}

template <class R>
json to_json(const Polynomial<R>& p) {
    return json{{"coeffs", to_json(p.coeffs())}, {"degree", p.degree()}, {"text", format_polynomial(p)}};
}

template <class R>
json to_json(const MonodromyData<R>& md) {
    json gens = json::array();
    for (const auto& g : md.generators) gens.push_back(cycle_notation(g));
    return json{{"base", to_json(md.base)},
                {"crit_values", to_json(md.crit_values)},
                {"generators", gens},
                {"fiber", to_json(md.fiber)}};
}

template <class R>
json to_json(const PuiseuxExpansion<R>& ex) {
    return json{{"ramification", ex.ramification}, {"start", ex.start}, {"K", ex.K},
                {"coeffs", to_json(ex.coeffs)}};
}

template <class R>
json to_json(const Cactus<R>& cx) {
    json verts = json::array();
    for (const auto& v : cx.vertices) {
        json stars = json::array();
        for (int s : v.stars) stars.push_back(s + 1);
        json jv{{"color", v.color}, {"stars", stars}};
        if (v.point) jv["point"] = to_json(*v.point);
        verts.push_back(jv);
    }
    json out{{"stars", cx.n}, {"colors", cx.colors}, {"edges", cx.edge_count()}, {"vertices", verts}};
    if (cx.mark_a) out["mark_a"] = *cx.mark_a;
    if (cx.mark_b) out["mark_b"] = *cx.mark_b;
    return out;
}

template <class R>
json to_json(const PathAB<R>& p) {
    json f = json::array();
    for (const auto& row : p.f) f.push_back(row);
    json w = json::array();
    for (R x : weights(p)) w.push_back((double)x);
    json sk = json::array();
    for (int s : p.stars) sk.push_back(s + 1);
    json colors = json::array();
    for (int c : p.vertex_colors) colors.push_back(c);
    return json{{"f", f}, {"weights", w}, {"skeleton", sk},
                {"skeleton_length", (int)p.stars.size()}, {"vertex_colors", colors}};
}

template <class R>
json to_json(const MomentReport<R>& r) {
    json out{{"M", r.M},
             {"values", to_json(r.values)},
             {"max_abs", (double)r.max_abs},
             {"verdict", r.verdict == MomentVerdict::VANISHES ? "VANISHES" : "NONZERO"},
             {"tol", (double)r.tol},
             {"scale", (double)r.scale}};
    if (r.verdict == MomentVerdict::NONZERO) out["first_nonzero"] = r.first_nonzero;
    return out;
}

template <class R>
json to_json(const CriterionReport<R>& r) {
    json res = json::array();
    for (R x : r.max_residual) res.push_back((double)x);
    json cp = json::array();
    for (bool b : r.color_pass) cp.push_back(b);
    return json{{"max_residual", res}, {"color_pass", cp}, {"samples", to_json(r.samples)},
                {"pass", r.pass}, {"tol", (double)r.tol}};
}

template <class R>
json to_json(const NecessaryReport<R>& r) {
    json out{{"same_endpoint_value", r.same_endpoint_value}, {"pass", r.pass}, {"tol", (double)r.tol}};
    if (r.same_endpoint_value) out["residual"] = (double)r.residual;
    else {
        out["residual_a"] = (double)r.residual_a;
        out["residual_b"] = (double)r.residual_b;
    }
    return out;
}

inline json to_json(const VanishingRowReport& r) {
    return json{{"violations", r.violations}, {"vanishing_residues", r.vanishing_residues},
                {"pass", r.pass}};
}

template <class R>
json to_json(const GcdReport<R>& r) {
    json v = json::array();
    for (const auto& viol : r.violations)
        v.push_back(json{{"k", viol.k}, {"magnitude", (double)viol.magnitude}});
    return json{{"violations", v}, {"pass", r.pass}};
}

template <class R>
json to_json(const CircleSets<R>& cs) {
    return json{{"n", cs.n},
                {"a_indices", cs.a_indices},
                {"b_indices", cs.b_indices},
                {"Va", to_json(cs.Va)},
                {"Vb", to_json(cs.Vb)},
                {"center_a", to_json(cs.center_a)},
                {"center_b", to_json(cs.center_b)},
                {"verdict", to_string(cs.verdict)}};
}

template <class R>
json to_json(const CompositionCertificate<R>& c) {
    json ws = json::array();
    for (const auto& w : c.witnesses) {
        ws.push_back(json{{"P_outer", format_polynomial(w.P_outer)},
                          {"Q_outer", format_polynomial(w.Q_outer)},
                          {"W", format_polynomial(w.W)},
                          {"endpoints_match", w.endpoints_match}});
    }
    json out{{"kind", to_string(c.kind)}, {"witnesses", ws}, {"degenerate", c.degenerate},
             {"residual", (double)c.residual}};
    if (!c.solver_note.empty()) out["solver_note"] = c.solver_note;
    return out;
}

template <class R>
json to_json(const ReductionTrail<R>& t) {
    json steps = json::array();
    for (const auto& s : t.steps) {
        steps.push_back(json{{"W", format_polynomial(s.W)},
                             {"P_next", format_polynomial(s.P_next)},
                             {"Q_next", format_polynomial(s.Q_next)},
                             {"a_next", to_json(s.a_next)},
                             {"b_next", to_json(s.b_next)},
                             {"endpoints_matched", s.endpoints_matched}});
    }
    return json{{"steps", steps}, {"condition2_achieved", t.condition2_achieved}};
}

template <class R>
json to_json(const DefinitenessVerdict<R>& v) {
    json out{{"verdict", to_string(v.kind)}, {"reasons", v.reasons}};
    if (v.normalization) {
        out["L1"] = format_polynomial(v.normalization->first);
        out["L2"] = format_polynomial(v.normalization->second);
    }
    if (!v.trail.empty()) {
        ReductionTrail<R> t;
        t.steps = v.trail;
        out["reduction_trail"] = to_json(t)["steps"];
    }
    return out;
}

// ---------------------------------------------------------------------------
// DOT export of the (extended) cactus: stars as white points, colored
// vertices shaped by color, marks a and b highlighted.
// ---------------------------------------------------------------------------

template <class R>
std::string to_dot(const Cactus<R>& cx) {
    static const char* shapes[] = {"circle", "box", "diamond", "triangle",
                                   "pentagon", "hexagon", "septagon", "octagon"};
    std::ostringstream os;
    os << "graph cactus {\n";
    os << "  layout=neato;\n  overlap=false;\n";
    for (int i = 0; i < cx.n; ++i)
        os << "  s" << i << " [shape=point, width=0.12, label=\"\", xlabel=\"S" << (i + 1) << "\"];\n";
    for (size_t v = 0; v < cx.vertices.size(); ++v) {
        const auto& vert = cx.vertices[v];
        os << "  v" << v << " [shape=" << shapes[vert.color % 8] << ", label=\"c" << (vert.color + 1)
           << "\", fontsize=10";
        const bool is_a = cx.mark_a && (int)v == *cx.mark_a;
        const bool is_b = cx.mark_b && (int)v == *cx.mark_b;
        if (is_a || is_b) {
            os << ", peripheries=2, style=bold, xlabel=\"" << (is_a && is_b ? "a,b" : (is_a ? "a" : "b"))
               << "\"";
        }
        if (vert.point) os << ", tooltip=\"" << format_complex(*vert.point) << "\"";
        os << "];\n";
    }
    for (size_t v = 0; v < cx.vertices.size(); ++v)
        for (int s : cx.vertices[v].stars) os << "  s" << s << " -- v" << v << ";\n";
    os << "}\n";
    return os.str();
}

} // namespace polymoment

#endif
