#ifndef POLYMOMENT_CLASSIFY_HPP
#define POLYMOMENT_CLASSIFY_HPP

#include "polymoment/cactus.hpp"
#include "polymoment/decompose.hpp"
#include "polymoment/moments.hpp"

namespace polymoment {

enum class DefinitenessKind { DEFINITE, EXCEPTIONAL_T6, UNKNOWN };

inline const char* to_string(DefinitenessKind k) {
    switch (k) {
        case DefinitenessKind::DEFINITE: return "DEFINITE";
        case DefinitenessKind::EXCEPTIONAL_T6: return "EXCEPTIONAL_T6";
        default: return "UNKNOWN";
    }
}

// Verdict on whether moment vanishing forces the single-divisor composition
// condition for the collection (P, a, b). Every reason listed was machine
// checked on the instance. The exceptional verdict carries the linear maps
// normalizing the collection to the degree-6 Chebyshev one.
template <class R = double>
struct DefinitenessVerdict {
    DefinitenessKind kind = DefinitenessKind::UNKNOWN;
    std::vector<std::string> reasons;
    std::optional<std::pair<Polynomial<R>, Polynomial<R>>> normalization; // (L1, L2)
    std::vector<ReductionStep<R>> trail; // substitutions recorded by callers that know Q
};

namespace detail {

inline std::optional<std::pair<int, int>> prime_power(int n) {
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int r = 0, m = n;
        while (m % p == 0) { m /= p; ++r; }
        if (m == 1) return std::make_pair(p, r);
        return std::nullopt;
    }
    return std::make_pair(n, 1); // n itself prime
}

template <class R>
bool is_critical_point(const Polynomial<R>& P, const Cx<R>& z) {
    const Polynomial<R> dP = derivative(P);
    return std::abs(eval(dP, z)) <= R(1e-7) * std::max(R(1), eval_scale(dP, std::abs(z)));
}

// Two-point linear fit L with L(x1) = y1, L(x2) = y2.
template <class R>
Polynomial<R> linear_through(const Cx<R>& x1, const Cx<R>& y1, const Cx<R>& x2, const Cx<R>& y2) {
    const Cx<R> slope = (y2 - y1) / (x2 - x1);
    return Polynomial<R>({y1 - slope * x1, slope});
}

} // namespace detail

// Applies the machine-checkable definiteness criteria in order:
// non-critical endpoint, prime-power degree, indecomposability, weight-one
// colors (recorded), shared-fiber conditions, and the full small-degree
// analysis with the degree-6 chain normalization as the only exception.
template <class R>
DefinitenessVerdict<R> classify(const Polynomial<R>& P, const Cx<R>& a, const Cx<R>& b,
                                const MonodromyData<R>& md, const Cactus<R>& cx,
                                const PathAB<R>& path, unsigned seed = 0x5eed) {
    DefinitenessVerdict<R> out;
    const int n = P.degree();
    if (n < 2) throw DegreeError("classify: deg P must be >= 2");

    const bool a_critical = detail::is_critical_point(P, a);
    const bool b_critical = detail::is_critical_point(P, b);
    if (!a_critical || !b_critical) {
        out.kind = DefinitenessKind::DEFINITE;
        out.reasons.push_back(std::string("noncritical-endpoint(") + (!a_critical ? "a" : "b") + ")");
        return out;
    }

    if (auto pr = detail::prime_power(n)) {
        out.kind = DefinitenessKind::DEFINITE;
        out.reasons.push_back("prime-power-degree(" + std::to_string(pr->first) + "^" +
                              std::to_string(pr->second) + ")");
        return out;
    }

    auto divisors = right_divisors(P);
    bool decomposable = false;
    for (const auto& [W, outer] : divisors)
        if (W.degree() > 1 && W.degree() < n) decomposable = true;
    if (!decomposable) {
        out.kind = DefinitenessKind::DEFINITE;
        out.reasons.push_back("indecomposable");
        return out;
    }

    auto w = weights(path);
    for (size_t s = 0; s < w.size(); ++s) {
        if (std::abs(w[s] - R(1)) < R(0.25)) {
            out.reasons.push_back("weight-one-color(" + std::to_string(s) + "): common right divisor forced");
        }
    }

    const Cx<R> Pa = eval(P, a), Pb = eval(P, b);
    const bool same_value = std::abs(Pa - Pb) <= R(1e-9) * (R(1) + std::abs(Pa) + std::abs(Pb));
    auto cd = critical_data(P, seed);
    if (same_value) {
        // shared fiber regular except possibly at the endpoints
        bool fiber_regular = true;
        for (const auto& cp : cd.points) {
            if (std::abs(eval(P, cp.z) - Pa) > R(1e-6) * (R(1) + std::abs(Pa))) continue;
            const R tol = R(1e-6) * (R(1) + std::abs(cp.z));
            if (std::abs(cp.z - a) > tol && std::abs(cp.z - b) > tol) fiber_regular = false;
        }
        if (fiber_regular) {
            out.kind = DefinitenessKind::DEFINITE;
            out.reasons.push_back("shared-fiber-regular-away-from-endpoints");
            return out;
        }
        // every other critical value has a single critical point above it
        bool single = true;
        for (const auto& v : cd.values) {
            if (std::abs(v - Pa) <= R(1e-6) * (R(1) + std::abs(Pa))) continue;
            int count = 0;
            for (const auto& cp : cd.points)
                if (std::abs(eval(P, cp.z) - v) <= R(1e-6) * (R(1) + std::abs(v))) ++count;
            if (count != 1) single = false;
        }
        if (single) {
            out.kind = DefinitenessKind::DEFINITE;
            out.reasons.push_back("single-critical-point-per-other-value");
            return out;
        }
    }

    if (n < 10) {
        // only n = 6 reaches this point (all other n < 10 are prime powers)
        bool chain = (cx.colors == 2) && ((int)skeleton(path).length == 4);
        for (const auto& v : cx.vertices)
            if ((int)v.stars.size() > 2) chain = false;
        if (n == 6 && chain) {
            const R s3 = std::sqrt(R(3)) / R(2);
            Polynomial<R> L1 = detail::linear_through(Cx<R>(-s3), a, Cx<R>(s3), b);
            const Polynomial<R> T6 = chebyshev<R>(6);
            const Polynomial<R> PL1 = compose(P, L1);
            for (int order = 0; order < 2; ++order) {
                if (md.crit_values.size() != 2) break;
                const Cx<R> cx1 = md.crit_values[order], cx2 = md.crit_values[1 - order];
                Polynomial<R> L2 = detail::linear_through(cx1, Cx<R>(-1), cx2, Cx<R>(1));
                if (max_coeff_dist(compose(L2, PL1), T6) <= R(1e-7)) {
                    out.kind = DefinitenessKind::EXCEPTIONAL_T6;
                    out.reasons.push_back("chebyshev6-equivalent-collection");
                    out.normalization = std::make_pair(L1, L2);
                    return out;
                }
            }
            out.kind = DefinitenessKind::UNKNOWN;
            out.reasons.push_back("six-chain-detected-but-normalization-failed");
            return out;
        }
        out.kind = DefinitenessKind::DEFINITE;
        out.reasons.push_back("small-degree(" + std::to_string(n) + ")");
        return out;
    }

    out.kind = DefinitenessKind::UNKNOWN;
    out.reasons.push_back("no-applicable-criterion");
    return out;
}

} // namespace polymoment

#endif
