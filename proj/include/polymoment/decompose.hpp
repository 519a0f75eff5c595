#ifndef POLYMOMENT_DECOMPOSE_HPP
#define POLYMOMENT_DECOMPOSE_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "polymoment/polynomial.hpp"

namespace polymoment {

// Digits of Q in base W: Q = sum_i c_i(z) W(z)^i with deg c_i < deg W,
// by repeated euclidean division. Q is a polynomial in W exactly when every
// digit is constant.
template <class R>
std::vector<Polynomial<R>> w_adic(const Polynomial<R>& Q, const Polynomial<R>& W) {
    if (W.degree() < 1) throw DegreeError("w_adic: deg W must be >= 1");
    std::vector<Polynomial<R>> digits;
    Polynomial<R> cur = Q;
    while (!cur.is_zero()) {
        auto [quo, rem] = divmod(cur, W);
        digits.push_back(rem);
        cur = std::move(quo);
    }
    return digits;
}

namespace detail {

template <class R>
R nonconstant_part(const Polynomial<R>& p) {
    R m(0);
    for (int i = 1; i <= p.degree(); ++i) m = std::max(m, std::abs(p.coeff(i)));
    return m;
}

template <class R>
bool digits_constant(const std::vector<Polynomial<R>>& digits, R scale) {
    for (const auto& d : digits)
        if (nonconstant_part(d) > R(1e-8) * std::max(R(1), scale)) return false;
    return true;
}

template <class R>
Polynomial<R> outer_from_digits(const std::vector<Polynomial<R>>& digits) {
    std::vector<Cx<R>> c(digits.size(), Cx<R>(0));
    for (size_t i = 0; i < digits.size(); ++i) c[i] = digits[i].coeff(0);
    return Polynomial<R>(std::move(c));
}

// Truncated e-th root of a power series with s_0 = 1, by triangular
// coefficient matching.
template <class R>
std::vector<Cx<R>> series_root(const std::vector<Cx<R>>& s, int e, int terms) {
    std::vector<Cx<R>> sigma(terms, Cx<R>(0));
    sigma[0] = Cx<R>(1);
    for (int t = 1; t < terms; ++t) {
        // coefficient of w^t in sigma^e with sigma_t = 0
        std::vector<Cx<R>> pw(t + 1, Cx<R>(0));
        pw[0] = Cx<R>(1);
        for (int rep = 0; rep < e; ++rep) {
            std::vector<Cx<R>> nxt(t + 1, Cx<R>(0));
            for (int i = 0; i <= t; ++i) {
                if (pw[i] == Cx<R>(0)) continue;
                for (int j = 0; i + j <= t && j < t; ++j) nxt[i + j] += pw[i] * sigma[j];
            }
            pw = std::move(nxt);
        }
        Cx<R> st = (t < (int)s.size()) ? s[t] : Cx<R>(0);
        sigma[t] = (st - pw[t]) / R(e);
    }
    return sigma;
}

} // namespace detail

// Right divisors of P in the composition algebra: for each divisor d of
// n = deg P with 1 < d <= n, the monic candidate W with W(0) = 0 of degree d
// (unique when it exists) such that P = outer(W). The candidate is read off
// the top coefficients of P as a truncated e-th root and verified by W-adic
// expansion; absence at a given degree is a normal empty result. Returned in
// ascending degree; the last entry is always the normalization of P itself.
template <class R>
std::vector<std::pair<Polynomial<R>, Polynomial<R>>> right_divisors(const Polynomial<R>& P) {
    const int n = P.degree();
    if (n < 2) throw DegreeError("right_divisors: deg P must be >= 2");
    std::vector<std::pair<Polynomial<R>, Polynomial<R>>> out; // (W, outer)
    // monic reversal: P / lead = z^n (1 + a_{n-1} w + ...) with w = 1/z
    std::vector<Cx<R>> s(n + 1, Cx<R>(0));
    for (int i = 0; i <= n; ++i) s[i] = P.coeff(n - i) / P.lead();
    for (int d = 2; d <= n; ++d) {
        if (n % d != 0) continue;
        const int e = n / d;
        auto sigma = detail::series_root(s, e, d + 1);
        std::vector<Cx<R>> wc(d + 1, Cx<R>(0));
        for (int t = 0; t <= d; ++t) wc[d - t] = sigma[t];
        Polynomial<R> W(std::move(wc));
        W -= Polynomial<R>::constant(W.coeff(0)); // normalization W(0) = 0
        auto digits = w_adic(P, W);
        if (!detail::digits_constant(digits, P.max_abs_coeff())) continue;
        Polynomial<R> outer = detail::outer_from_digits(digits);
        if (max_coeff_dist(compose(outer, W), P) > R(1e-8) * std::max(R(1), P.max_abs_coeff())) continue;
        out.emplace_back(std::move(W), std::move(outer));
    }
    return out;
}

// First common right divisor of P and Q scanning the divisors of P from the
// highest degree down; empty when the pair is compositionally coprime.
template <class R>
std::optional<std::tuple<Polynomial<R>, Polynomial<R>, Polynomial<R>>>
common_right_divisor(const Polynomial<R>& P, const Polynomial<R>& Q) {
    if (Q.is_zero()) throw DegreeError("common_right_divisor: Q must be nonzero");
    auto divisors = right_divisors(P);
    for (auto it = divisors.rbegin(); it != divisors.rend(); ++it) {
        const auto& [W, outerP] = *it;
        auto digits = w_adic(Q, W);
        if (!detail::digits_constant(digits, Q.max_abs_coeff())) continue;
        return std::make_tuple(W, outerP, detail::outer_from_digits(digits));
    }
    return std::nullopt;
}

enum class CertificateKind { NONE, CONDITION_2, CONDITION_3 };

inline const char* to_string(CertificateKind k) {
    switch (k) {
        case CertificateKind::CONDITION_2: return "CONDITION_2";
        case CertificateKind::CONDITION_3: return "CONDITION_3";
        default: return "NONE";
    }
}

template <class R = double>
struct Witness {
    Polynomial<R> P_outer; // P = P_outer(W)
    Polynomial<R> Q_outer; // summand = Q_outer(W)
    Polynomial<R> W;
    bool endpoints_match = false; // |W(a) - W(b)| below tolerance
};

template <class R = double>
struct CompositionCertificate {
    CertificateKind kind = CertificateKind::NONE;
    std::vector<Witness<R>> witnesses;
    bool degenerate = false; // Q identically zero
    R residual = 0;          // coefficient-space reconstruction residual
    std::string solver_note;
};

namespace detail {

template <class R>
bool endpoints_match(const Polynomial<R>& W, const Cx<R>& a, const Cx<R>& b) {
    const Cx<R> wa = eval(W, a), wb = eval(W, b);
    return std::abs(wa - wb) <= R(1e-8) * (R(1) + std::abs(wa) + std::abs(wb));
}

} // namespace detail

// Single-divisor certificate: some right divisor W of P with W(a) = W(b) and
// Q a polynomial in W.
template <class R>
CompositionCertificate<R> condition_2(const Polynomial<R>& P, const Polynomial<R>& Q,
                                      const Cx<R>& a, const Cx<R>& b) {
    CompositionCertificate<R> cert;
    auto divisors = right_divisors(P);
    if (Q.is_zero()) {
        cert.degenerate = true;
        for (auto it = divisors.rbegin(); it != divisors.rend(); ++it) {
            if (detail::endpoints_match(it->first, a, b)) {
                cert.kind = CertificateKind::CONDITION_2;
                cert.witnesses.push_back({it->second, Polynomial<R>(), it->first, true});
                break;
            }
        }
        return cert;
    }
    for (auto it = divisors.rbegin(); it != divisors.rend(); ++it) {
        const auto& [W, outerP] = *it;
        if (!detail::endpoints_match(W, a, b)) continue;
        auto digits = w_adic(Q, W);
        if (!detail::digits_constant(digits, Q.max_abs_coeff())) continue;
        cert.kind = CertificateKind::CONDITION_2;
        cert.witnesses.push_back({outerP, detail::outer_from_digits(digits), W, true});
        return cert;
    }
    return cert;
}

// Sum-of-compositions certificate: Q expressed in the span of the powers of
// all right divisors W_j of P with W_j(a) = W_j(b), by a QR least-squares
// solve in coefficient space. Rank deficiency is reported, not failed.
template <class R>
CompositionCertificate<R> condition_3(const Polynomial<R>& P, const Polynomial<R>& Q,
                                      const Cx<R>& a, const Cx<R>& b) {
    CompositionCertificate<R> cert;
    if (Q.is_zero()) {
        cert = condition_2(P, Q, a, b);
        if (cert.kind == CertificateKind::CONDITION_2) cert.kind = CertificateKind::CONDITION_3;
        return cert;
    }
    const int m = Q.degree();
    std::vector<std::pair<Polynomial<R>, Polynomial<R>>> usable;
    for (auto& [W, outerP] : right_divisors(P))
        if (detail::endpoints_match(W, a, b)) usable.emplace_back(W, outerP);
    if (usable.empty()) return cert;

    using Mat = Eigen::Matrix<Cx<R>, Eigen::Dynamic, Eigen::Dynamic>;
    using Vec = Eigen::Matrix<Cx<R>, Eigen::Dynamic, 1>;
    std::vector<std::pair<int, int>> col_meta; // (divisor index, power); (-1, 0) = constant
    std::vector<Polynomial<R>> col_polys;
    col_meta.push_back({-1, 0});
    col_polys.push_back(Polynomial<R>::one());
    for (size_t j = 0; j < usable.size(); ++j) {
        Polynomial<R> pw = Polynomial<R>::one();
        for (int i = 1; i * usable[j].first.degree() <= m; ++i) {
            pw = pw * usable[j].first;
            col_meta.push_back({(int)j, i});
            col_polys.push_back(pw);
        }
    }
    Mat A = Mat::Zero(m + 1, (int)col_polys.size());
    for (size_t c = 0; c < col_polys.size(); ++c)
        for (int r = 0; r <= col_polys[c].degree() && r <= m; ++r) A(r, (int)c) = col_polys[c].coeff(r);
    Vec rhs(m + 1);
    for (int r = 0; r <= m; ++r) rhs(r) = Q.coeff(r);

    Eigen::ColPivHouseholderQR<Mat> qr(A);
    Vec x = qr.solve(rhs);
    for (int c = 0; c < x.size(); ++c)
        if (!is_finite(Cx<R>(x(c)))) throw SolverError("condition_3: least-squares solve produced non-finite values");
    const R resid = (A * x - rhs).norm();
    const R qnorm = std::max(R(1), rhs.norm());
    cert.residual = resid;
    if (qr.rank() < A.cols())
        cert.solver_note = "rank-deficient system (rank " + std::to_string((long long)qr.rank()) +
                           " of " + std::to_string((long long)A.cols()) + "), minimum-residual solution reported";
    if (resid > R(1e-8) * qnorm) return cert; // kind stays NONE

    cert.kind = CertificateKind::CONDITION_3;
    std::vector<std::vector<Cx<R>>> outer_coeffs(usable.size());
    Cx<R> constant(0);
    for (size_t c = 0; c < col_meta.size(); ++c) {
        auto [j, i] = col_meta[c];
        if (j < 0) { constant = x((int)c); continue; }
        auto& oc = outer_coeffs[j];
        if ((int)oc.size() <= i) oc.resize(i + 1, Cx<R>(0));
        oc[i] = x((int)c);
    }
    bool constant_placed = false;
    for (size_t j = 0; j < usable.size(); ++j) {
        if (outer_coeffs[j].empty()) continue;
        if (!constant_placed) {
            if (outer_coeffs[j].size() < 1) outer_coeffs[j].resize(1, Cx<R>(0));
            outer_coeffs[j][0] += constant;
            constant_placed = true;
        }
        cert.witnesses.push_back(
            {usable[j].second, Polynomial<R>(std::move(outer_coeffs[j])), usable[j].first, true});
    }
    if (!constant_placed && std::abs(constant) > R(0) && !cert.witnesses.empty())
        cert.witnesses.front().Q_outer += Polynomial<R>::constant(constant);
    return cert;
}

template <class R = double>
struct ReductionStep {
    Polynomial<R> W, P_next, Q_next;
    Cx<R> a_next, b_next;
    bool endpoints_matched = false;
};

template <class R = double>
struct ReductionTrail {
    std::vector<ReductionStep<R>> steps;
    bool condition2_achieved = false;
    Polynomial<R> final_P, final_Q;
    Cx<R> final_a, final_b;
};

// Repeated change of variable z -> W(z) through common right divisors,
// until the substituted endpoints collide (single-divisor condition reached)
// or no divisor remains.
template <class R>
ReductionTrail<R> reduce(const Polynomial<R>& P, const Polynomial<R>& Q, const Cx<R>& a,
                         const Cx<R>& b) {
    ReductionTrail<R> trail;
    trail.final_P = P;
    trail.final_Q = Q;
    trail.final_a = a;
    trail.final_b = b;
    while (trail.final_P.degree() >= 2 && !trail.final_Q.is_zero()) {
        auto crd = common_right_divisor(trail.final_P, trail.final_Q);
        if (!crd) break;
        auto& [W, Pt, Qt] = *crd;
        ReductionStep<R> step;
        step.W = W;
        step.P_next = Pt;
        step.Q_next = Qt;
        step.a_next = eval(W, trail.final_a);
        step.b_next = eval(W, trail.final_b);
        step.endpoints_matched = detail::endpoints_match(W, trail.final_a, trail.final_b);
        trail.steps.push_back(step);
        if (step.endpoints_matched) {
            trail.condition2_achieved = true;
            break;
        }
        trail.final_P = step.P_next;
        trail.final_Q = step.Q_next;
        trail.final_a = step.a_next;
        trail.final_b = step.b_next;
    }
    return trail;
}

} // namespace polymoment

#endif
