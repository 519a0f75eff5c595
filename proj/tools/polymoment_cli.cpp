// Command-line front door: parses polynomials and endpoints, orchestrates the
// moment/criterion/series/decomposition pipeline, and emits JSON, DOT, or
// plain-text reports.
//
// Exit codes: 0 = completed with a verdict, 2 = input error, 3 = numeric failure.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "polymoment/polymoment.hpp"

namespace pm = polymoment;
using pm::json;

namespace {

struct Options {
    std::string precision = "double";
    std::string format = "text";
    std::string out;
    int trunc = -1;
    int moments = -1;
    int samples = 8;
    double tol = -1;
    unsigned seed = 0x5eed;

    std::string poly, integrand, point_a, point_b;
    std::string command;
};

void emit(const Options& opt, const std::string& text) {
    if (opt.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream f(opt.out);
    if (!f) throw pm::Error("cannot open output file: " + opt.out);
    f << text;
}

template <class R>
struct Parsed {
    pm::Polynomial<R> P;
    pm::Polynomial<R> q;
    std::complex<R> a{}, b{};
    bool has_q = false, has_a = false, has_b = false;
};

template <class R>
Parsed<R> parse_inputs(const Options& opt) {
    Parsed<R> in;
    if (opt.poly.empty()) throw pm::ParseError("missing polynomial (-p)");
    in.P = pm::parse_polynomial<R>(opt.poly);
    if (!opt.integrand.empty()) {
        in.q = pm::parse_polynomial<R>(opt.integrand);
        in.has_q = true;
    }
    if (!opt.point_a.empty()) {
        in.a = pm::parse_point<R>(opt.point_a);
        in.has_a = true;
    }
    if (!opt.point_b.empty()) {
        in.b = pm::parse_point<R>(opt.point_b);
        in.has_b = true;
    }
    return in;
}

template <class R>
void require_segment(const Parsed<R>& in) {
    if (!in.has_a || !in.has_b) throw pm::ParseError("endpoints -a and -b are required");
    if (std::abs(in.a - in.b) == R(0)) throw pm::ParseError("endpoints a and b must be distinct");
}

template <class R>
R tol_or(const Options& opt, R fallback) {
    return opt.tol > 0 ? R(opt.tol) : fallback;
}

// ---------------------------------------------------------------------------

template <class R>
int cmd_monodromy(const Options& opt) {
    auto in = parse_inputs<R>(opt);
    if (in.P.degree() < 2) throw pm::ParseError("monodromy needs deg P >= 2");
    auto md = pm::monodromy_avoiding(in.P, {}, opt.seed);
    if (opt.format == "json") {
        emit(opt, pm::to_json(md).dump(2));
    } else {
        std::ostringstream os;
        os << "base: " << pm::format_complex(md.base) << "\n";
        for (size_t s = 0; s < md.generators.size(); ++s)
            os << "c" << (s + 1) << " = " << pm::format_complex(md.crit_values[s]) << "  g" << (s + 1)
               << " = " << pm::cycle_notation(md.generators[s]) << "\n";
        os << "product: " << pm::cycle_notation(md.infinity_permutation()) << "\n";
        emit(opt, os.str());
    }
    return 0;
}

template <class R>
int cmd_cactus(const Options& opt) {
    auto in = parse_inputs<R>(opt);
    require_segment(in);
    if (in.P.degree() < 2) throw pm::ParseError("cactus needs deg P >= 2");
    auto md = pm::monodromy_avoiding(in.P, {pm::eval(in.P, in.a), pm::eval(in.P, in.b)}, opt.seed);
    auto [cx, ext] = pm::extend(in.P, md, in.a, in.b, opt.seed);
    auto path = pm::path_ab(cx);
    if (opt.format == "dot") {
        emit(opt, pm::to_dot(cx));
    } else if (opt.format == "json") {
        json out{{"monodromy", pm::to_json(ext)}, {"cactus", pm::to_json(cx)},
                 {"path", pm::to_json(path)}};
        emit(opt, out.dump(2));
    } else {
        std::ostringstream os;
        auto w = pm::weights(path);
        auto sk = pm::skeleton(path);
        os << "stars: " << cx.n << ", colors: " << cx.colors << ", edges: " << cx.edge_count() << "\n";
        os << "skeleton length " << sk.length << ", stars:";
        for (int s : sk.stars) os << " S" << (s + 1);
        os << "\nweights:";
        for (size_t s = 0; s < w.size(); ++s) os << " w(" << (s + 1) << ")=" << (double)w[s];
        os << "\n";
        emit(opt, os.str());
    }
    return 0;
}

template <class R>
int cmd_moments(const Options& opt) {
    auto in = parse_inputs<R>(opt);
    require_segment(in);
    if (!in.has_q) throw pm::ParseError("moments needs an integrand (-q)");
    const int m = std::max(in.q.degree() + 1, 1);
    const int M = opt.moments > 0 ? opt.moments : 2 * (std::max(in.P.degree(), 1) + m) + 8;
    auto rep = pm::moment_sequence(in.P, in.q, in.a, in.b, M, tol_or<R>(opt, R(1e-9)));
    if (opt.format == "json") {
        emit(opt, pm::to_json(rep).dump(2));
    } else {
        std::ostringstream os;
        os << "moments m_0..m_" << rep.M << ": max |m_i| = " << (double)rep.max_abs << "\n";
        os << "verdict: "
           << (rep.verdict == pm::MomentVerdict::VANISHES
                   ? "VANISHES"
                   : "NONZERO at i = " + std::to_string(rep.first_nonzero))
           << "\n";
        emit(opt, os.str());
    }
    return 0;
}

template <class R>
int cmd_criterion(const Options& opt) {
    auto in = parse_inputs<R>(opt);
    require_segment(in);
    if (!in.has_q) throw pm::ParseError("criterion needs an integrand (-q)");
    if (in.P.degree() < 2) throw pm::ParseError("criterion needs deg P >= 2");
    auto Q = pm::antiderivative(in.q, in.a);
    auto md = pm::monodromy_avoiding(in.P, {pm::eval(in.P, in.a), pm::eval(in.P, in.b)}, opt.seed);
    auto [cx, ext] = pm::extend(in.P, md, in.a, in.b, opt.seed);
    auto path = pm::path_ab(cx);
    auto rep = pm::criterion_residuals(in.P, Q, in.a, in.b, path, ext, opt.samples, tol_or<R>(opt, R(1e-8)));
    auto nec = pm::necessary_residuals(in.P, Q, in.a, in.b, ext, opt.samples, tol_or<R>(opt, R(1e-8)), opt.seed);
    if (opt.format == "json") {
        json out{{"criterion", pm::to_json(rep)}, {"necessary", pm::to_json(nec)},
                 {"path", pm::to_json(path)}};
        emit(opt, out.dump(2));
    } else {
        std::ostringstream os;
        os << "criterion: " << (rep.pass ? "PASS" : "FAIL") << " (";
        for (size_t s = 0; s < rep.max_residual.size(); ++s)
            os << (s ? ", " : "") << "|phi_" << (s + 1) << "| <= " << (double)rep.max_residual[s];
        os << ")\n";
        os << "averaged-branch necessary condition: " << (nec.pass ? "PASS" : "FAIL") << "\n";
        emit(opt, os.str());
    }
    return 0;
}

template <class R>
int cmd_puiseux(const Options& opt) {
    auto in = parse_inputs<R>(opt);
    const int n = in.P.degree();
    if (n < 1) throw pm::ParseError("puiseux needs deg P >= 1");
    const int m = in.has_q ? std::max(in.q.degree() + 1, 1) : 0;
    const int K = opt.trunc > 0 ? opt.trunc : 2 * (n + std::max(m, 1)) + 8;
    auto inv = pm::inverse_puiseux(in.P, K + m);
    json out{{"inverse", pm::to_json(inv)}};
    std::ostringstream text;
    text << "inverse branch coefficients v_{-1}..v_" << inv.K << " computed\n";
    if (in.has_q) {
        auto Q = pm::antiderivative(in.q, in.has_a ? in.a : std::complex<R>(0));
        auto u = pm::compose_puiseux(Q, inv);
        auto gcd_rep = pm::gcd_vanishing_report(u);
        out["composed"] = pm::to_json(u);
        out["gcd_vanishing"] = pm::to_json(gcd_rep);
        out["truncation_bound"] = [&]() -> std::string {
            try {
                return pm::truncation_bound(n, Q.degree()).str();
            } catch (const pm::Error&) {
                return "not representable";
            }
        }();
        text << "composed series u_{-" << -u.start << "}..u_" << u.K << "\n";
        text << "coprime-index vanishing: " << (gcd_rep.pass ? "PASS" : "FAIL") << " up to K = " << u.K
             << " (rigorous depth: " << out["truncation_bound"].get<std::string>() << ")\n";
    }
    emit(opt, opt.format == "json" ? out.dump(2) : text.str());
    return 0;
}

template <class R>
int cmd_decompose(const Options& opt) {
    auto in = parse_inputs<R>(opt);
    if (in.P.degree() < 2) throw pm::ParseError("decompose needs deg P >= 2");
    auto divisors = pm::right_divisors(in.P);
    json jd = json::array();
    std::ostringstream text;
    for (const auto& [W, outer] : divisors) {
        jd.push_back(json{{"W", pm::format_polynomial(W)}, {"outer", pm::format_polynomial(outer)},
                          {"degree", W.degree()}});
        text << "deg " << W.degree() << ": W = " << pm::format_polynomial(W) << "\n";
    }
    json out{{"right_divisors", jd}};
    if (in.has_q && in.has_a && in.has_b) {
        require_segment(in);
        auto Q = pm::antiderivative(in.q, in.a);
        auto c2 = pm::condition_2(in.P, Q, in.a, in.b);
        auto c3 = pm::condition_3(in.P, Q, in.a, in.b);
        auto trail = in.q.is_zero() ? pm::ReductionTrail<R>{} : pm::reduce(in.P, Q, in.a, in.b);
        out["condition_2"] = pm::to_json(c2);
        out["condition_3"] = pm::to_json(c3);
        out["reduction"] = pm::to_json(trail);
        text << "condition (2): " << pm::to_string(c2.kind) << "\n";
        text << "condition (3): " << pm::to_string(c3.kind) << "\n";
    }
    emit(opt, opt.format == "json" ? out.dump(2) : text.str());
    return 0;
}

template <class R>
int cmd_classify(const Options& opt) {
    auto in = parse_inputs<R>(opt);
    require_segment(in);
    if (in.P.degree() < 2) throw pm::ParseError("classify needs deg P >= 2");
    auto md = pm::monodromy_avoiding(in.P, {pm::eval(in.P, in.a), pm::eval(in.P, in.b)}, opt.seed);
    auto [cx, ext] = pm::extend(in.P, md, in.a, in.b, opt.seed);
    auto path = pm::path_ab(cx);
    auto verdict = pm::classify(in.P, in.a, in.b, ext, cx, path, opt.seed);
    if (opt.format == "json") {
        emit(opt, pm::to_json(verdict).dump(2));
    } else {
        std::ostringstream os;
        os << "verdict: " << pm::to_string(verdict.kind) << "\n";
        for (const auto& r : verdict.reasons) os << "  - " << r << "\n";
        if (verdict.normalization)
            os << "  L1 = " << pm::format_polynomial(verdict.normalization->first)
               << ", L2 = " << pm::format_polynomial(verdict.normalization->second) << "\n";
        emit(opt, os.str());
    }
    return 0;
}

template <class R>
int cmd_check(const Options& opt) {
    auto in = parse_inputs<R>(opt);
    require_segment(in);
    if (!in.has_q) throw pm::ParseError("check needs an integrand (-q)");
    const bool q_zero = in.q.is_zero();
    auto Q = pm::antiderivative(in.q, in.a);
    const int n = in.P.degree();
    const int m = std::max(Q.degree(), 1);
    const int M = opt.moments > 0 ? opt.moments : 2 * (std::max(n, 1) + m) + 8;
    const R tol_mom = tol_or<R>(opt, R(1e-9));
    const R tol_crit = tol_or<R>(opt, R(1e-8));

    auto mrep = pm::moment_sequence(in.P, in.q, in.a, in.b, M, tol_mom);
    const bool orthogonal = mrep.verdict == pm::MomentVerdict::VANISHES;

    json out{{"P", pm::format_polynomial(in.P)},
             {"q", pm::format_polynomial(in.q)},
             {"a", pm::to_json(in.a)},
             {"b", pm::to_json(in.b)},
             {"q_is_zero", q_zero},
             {"moments", pm::to_json(mrep)},
             {"verdict", orthogonal ? "ORTHOGONAL" : "NOT_ORTHOGONAL"}};
    std::ostringstream text;
    text << "verdict: " << (orthogonal ? "ORTHOGONAL" : "NOT_ORTHOGONAL");
    if (q_zero) text << " (q = 0, degenerate)";
    text << "\nmoments: max |m_i| = " << (double)mrep.max_abs << " over i <= " << M << "\n";

    if (n >= 2 && !q_zero) {
        auto md = pm::monodromy_avoiding(in.P, {pm::eval(in.P, in.a), pm::eval(in.P, in.b)}, opt.seed);
        auto [cx, ext] = pm::extend(in.P, md, in.a, in.b, opt.seed);
        auto path = pm::path_ab(cx);
        auto crep = pm::criterion_residuals(in.P, Q, in.a, in.b, path, ext, opt.samples, tol_crit);
        auto nec = pm::necessary_residuals(in.P, Q, in.a, in.b, ext, opt.samples, tol_crit, opt.seed);
        auto align_res = pm::infinity_alignment_detail(in.P, ext);
        const int K = opt.trunc > 0 ? opt.trunc : 2 * (m + n) + 8;
        auto inv = pm::inverse_puiseux(in.P, K + m);
        auto u = pm::compose_puiseux(Q, inv);
        auto gcd_rep = pm::gcd_vanishing_report(u);
        auto cs = pm::circle_sets(in.P, ext, align_res.sigma, in.a, in.b, opt.seed);

        json rows = json::array();
        for (int s = 0; s < path.colors; ++s) {
            bool nonzero = false;
            std::vector<std::complex<R>> f_canon(path.n, std::complex<R>(0));
            for (int i = 0; i < path.n; ++i) {
                if (path.f[s][i] == 0) continue;
                nonzero = true;
                f_canon[align_res.sigma(i)] = std::complex<R>(R(path.f[s][i]), 0);
            }
            if (!nonzero) continue;
            auto vrep = pm::vanishing_row_check(f_canon, u);
            json jv = pm::to_json(vrep);
            jv["color"] = s;
            rows.push_back(jv);
        }

        out["monodromy"] = pm::to_json(ext);
        out["cactus"] = pm::to_json(cx);
        out["path"] = pm::to_json(path);
        out["criterion"] = pm::to_json(crep);
        out["necessary"] = pm::to_json(nec);
        out["gcd_vanishing"] = pm::to_json(gcd_rep);
        out["vanishing_rows"] = rows;
        out["circle_sets"] = pm::to_json(cs);
        out["truncation_bound"] = [&]() -> std::string {
            try {
                return pm::truncation_bound(n, Q.degree()).str();
            } catch (const pm::Error&) {
                return "not representable";
            }
        }();

        text << "criterion: " << (crep.pass ? "PASS" : "FAIL") << "\n";
        text << "necessary (averaged branches): " << (nec.pass ? "PASS" : "FAIL") << "\n";
        text << "coprime-index vanishing: " << (gcd_rep.pass ? "PASS" : "FAIL") << "\n";
        text << "circle sets: " << pm::to_string(cs.verdict) << "\n";

        auto verdict = pm::classify(in.P, in.a, in.b, ext, cx, path, opt.seed);
        auto trail = pm::reduce(in.P, Q, in.a, in.b);
        verdict.trail = trail.steps;
        out["classification"] = pm::to_json(verdict);
        text << "classification: " << pm::to_string(verdict.kind) << "\n";
    }

    if (n >= 2) {
        auto c2 = pm::condition_2(in.P, Q, in.a, in.b);
        auto c3 = pm::condition_3(in.P, Q, in.a, in.b);
        out["condition_2"] = pm::to_json(c2);
        out["condition_3"] = pm::to_json(c3);
        text << "condition (2): " << pm::to_string(c2.kind) << "\n";
        text << "condition (3): " << pm::to_string(c3.kind) << "\n";
    }

    emit(opt, opt.format == "json" ? out.dump(2) : text.str());
    return 0;
}

template <class R>
int dispatch(const Options& opt) {
    if (opt.command == "monodromy") return cmd_monodromy<R>(opt);
    if (opt.command == "cactus") return cmd_cactus<R>(opt);
    if (opt.command == "criterion") return cmd_criterion<R>(opt);
    if (opt.command == "moments") return cmd_moments<R>(opt);
    if (opt.command == "puiseux") return cmd_puiseux<R>(opt);
    if (opt.command == "decompose") return cmd_decompose<R>(opt);
    if (opt.command == "check") return cmd_check<R>(opt);
    if (opt.command == "classify") return cmd_classify<R>(opt);
    throw pm::ParseError("unknown command: " + opt.command);
}

} // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"polymoment: orthogonality of a polynomial to the powers of another on a segment"};
    app.require_subcommand(1);

    app.add_option("--precision", opt.precision, "working precision: double | extended")
        ->check(CLI::IsMember({"double", "extended"}));
    app.add_option("--trunc", opt.trunc, "series truncation depth K")->check(CLI::PositiveNumber);
    app.add_option("--moments", opt.moments, "highest moment index M")->check(CLI::PositiveNumber);
    app.add_option("--samples", opt.samples, "sample points for branch relations")
        ->check(CLI::PositiveNumber);
    app.add_option("--tol", opt.tol, "verdict tolerance override")->check(CLI::PositiveNumber);
    app.add_option("--format", opt.format, "output format: json | text | dot")
        ->check(CLI::IsMember({"json", "text", "dot"}));
    app.add_option("--out", opt.out, "write the report to a file");
    app.add_option("--seed", opt.seed, "seed for root-finder initial perturbations");

    const char* descs[] = {"monodromy generators of P",
                           "extended cactus, path, weights and skeleton",
                           "branch-relation criterion residuals",
                           "moment sequence over the segment",
                           "Puiseux expansions at infinity",
                           "right divisors and composition certificates",
                           "full orthogonality check with certificates",
                           "definiteness classification of (P, a, b)"};
    const char* names[] = {"monodromy", "cactus", "criterion", "moments",
                           "puiseux", "decompose", "check", "classify"};
    for (int i = 0; i < 8; ++i) {
        auto* sub = app.add_subcommand(names[i], descs[i]);
        sub->fallthrough(); // global flags may follow the subcommand
        sub->add_option("-p,--poly", opt.poly, "polynomial P (coefficients low->high, or chebyshev:N)");
        sub->add_option("-q,--integrand", opt.integrand, "integrand polynomial q");
        sub->add_option("-a,--left", opt.point_a, "left endpoint (expression)");
        sub->add_option("-b,--right", opt.point_b, "right endpoint (expression)");
        sub->callback([&opt, i, names]() { opt.command = names[i]; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (opt.precision == "extended") return dispatch<long double>(opt);
        return dispatch<double>(opt);
    } catch (const pm::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const pm::DegreeError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    }
}
