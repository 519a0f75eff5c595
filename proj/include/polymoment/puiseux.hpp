#ifndef POLYMOMENT_PUISEUX_HPP
#define POLYMOMENT_PUISEUX_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>
#include <vector>

#include "polymoment/polynomial.hpp"

namespace polymoment {

namespace series {

// Dense truncated power series in t, coefficient of t^k at index k.
template <class R>
using Ser = std::vector<Cx<R>>;

template <class R>
Ser<R> mul(const Ser<R>& a, const Ser<R>& b, int len) {
    Ser<R> out(len, Cx<R>(0));
    for (int i = 0; i < (int)a.size() && i < len; ++i) {
        if (a[i] == Cx<R>(0)) continue;
        for (int j = 0; j < (int)b.size() && i + j < len; ++j)
            out[i + j] += a[i] * b[j];
    }
    return out;
}

// Reciprocal of a series with nonzero constant term, by direct recurrence.
template <class R>
Ser<R> inv(const Ser<R>& a, int len) {
    Ser<R> out(len, Cx<R>(0));
    out[0] = Cx<R>(1) / a[0];
    for (int k = 1; k < len; ++k) {
        Cx<R> acc(0);
        for (int j = 1; j <= k && j < (int)a.size(); ++j) acc += a[j] * out[k - j];
        out[k] = -acc / a[0];
    }
    return out;
}

} // namespace series

// Truncated Puiseux expansion at infinity: sum of coeffs[k - start] * e^{jk} * z^{-k/n}
// over k = start..K for the canonical branch j, where e = exp(2*pi*i/n) and
// n = ramification. start = -1 stores an inverse branch, start = -deg(Q) a
// composition Q(P^{-1}).
template <class R = double>
struct PuiseuxExpansion {
    int ramification = 1;
    int start = -1;
    std::vector<Cx<R>> coeffs; // index k - start holds u_k
    int K = -1;                // highest stored index

    Cx<R> at(int k) const {
        int idx = k - start;
        return (idx >= 0 && idx < (int)coeffs.size()) ? coeffs[idx] : Cx<R>(0);
    }
};

// Coefficients v_{-1}..v_K of the canonical branch of P^{-1} at infinity.
// With the substitution z = t^{-n} the branch is y(t) = t^{-1} u(t) where
// u solves sum_d a_d t^{n-d} u^d = 1; u is found by Newton iteration in the
// power-series ring, starting from u(0) = lead(P)^{-1/n} (principal root).
template <class R>
PuiseuxExpansion<R> inverse_puiseux(const Polynomial<R>& P, int K) {
    const int n = P.degree();
    if (n < 1) throw DegreeError("inverse_puiseux: degree must be >= 1");
    if (K < -1) K = -1;
    const int T = K + 2;

    const Cx<R> u0 = std::exp(-std::log(P.lead()) / R(n));

    series::Ser<R> u{u0};
    int prec = 1;
    while (prec < T) {
        int next = std::min(2 * prec, T);
        // powers of u, then G = sum_d a_d t^{n-d} u^d - 1 and G' = dG/du
        series::Ser<R> G(next, Cx<R>(0)), Gp(next, Cx<R>(0));
        series::Ser<R> upow{Cx<R>(1)}; // u^0
        for (int d = 0; d <= n; ++d) {
            const Cx<R> ad = P.coeff(d);
            if (ad != Cx<R>(0)) {
                const int shift = n - d;
                for (int j = 0; j + shift < next && j < (int)upow.size(); ++j)
                    G[j + shift] += ad * upow[j];
            }
            if (d < n) upow = series::mul(upow, u, next);
        }
        G[0] -= Cx<R>(1);
        series::Ser<R> upow2{Cx<R>(1)}; // u^{d-1} for the derivative pass
        for (int d = 1; d <= n; ++d) {
            const Cx<R> ad = P.coeff(d);
            if (ad != Cx<R>(0)) {
                const int shift = n - d;
                for (int j = 0; j + shift < next && j < (int)upow2.size(); ++j)
                    Gp[j + shift] += R(d) * ad * upow2[j];
            }
            if (d < n) upow2 = series::mul(upow2, u, next);
        }
        series::Ser<R> corr = series::mul(G, series::inv(Gp, next), next);
        u.resize(next, Cx<R>(0));
        for (int j = 0; j < next; ++j) u[j] -= corr[j];
        prec = next;
    }

    PuiseuxExpansion<R> out;
    out.ramification = n;
    out.start = -1;
    out.K = K;
    out.coeffs.assign(u.begin(), u.begin() + std::min<int>(T, (int)u.size()));
    out.coeffs.resize(T, Cx<R>(0));
    return out;
}

// Substitute the inverse branch into Q: coefficients u_{-m}..u_K of Q(P^{-1})
// for the canonical branch, m = deg Q. The result is truncated at
// K = inv.K - m, the order to which the substitution is reliable.
template <class R>
PuiseuxExpansion<R> compose_puiseux(const Polynomial<R>& Q, const PuiseuxExpansion<R>& inv) {
    if (Q.is_zero()) throw DegreeError("compose_puiseux: Q must be nonzero");
    const int m = Q.degree();
    const int T = (int)inv.coeffs.size(); // series length in t
    // S(t) = sum_d q_d t^{m-d} u(t)^d; coefficient of t^{k+m} is u_k
    series::Ser<R> u(inv.coeffs.begin(), inv.coeffs.end());
    series::Ser<R> S(T, Cx<R>(0));
    series::Ser<R> upow{Cx<R>(1)};
    for (int d = 0; d <= m; ++d) {
        const Cx<R> qd = Q.coeff(d);
        if (qd != Cx<R>(0)) {
            const int shift = m - d;
            for (int j = 0; j + shift < T && j < (int)upow.size(); ++j)
                S[j + shift] += qd * upow[j];
        }
        if (d < m) upow = series::mul(upow, u, T);
    }
    PuiseuxExpansion<R> out;
    out.ramification = inv.ramification;
    out.start = -m;
    out.K = inv.K - m;
    out.coeffs.assign(S.begin(), S.begin() + (out.K + m + 1));
    return out;
}

namespace detail {

// e_n^{j*k} with exact index reduction mod n (avoids large-angle phase loss).
template <class R>
Cx<R> root_of_unity_power(int n, long long jk) {
    long long r = jk % n;
    if (r < 0) r += n;
    return unit_phase(R(2) * pi_v<R>() * R(r) / R(n));
}

} // namespace detail

// Numeric value of canonical branch j at z, using the principal branch of
// z^{-1/n}. Throws RadiusError when the truncated tail estimate at |z| is not
// small relative to the leading terms.
template <class R>
Cx<R> branch_series(const PuiseuxExpansion<R>& ex, int j, const Cx<R>& z) {
    const int n = ex.ramification;
    if (std::abs(z) == R(0)) throw RadiusError("branch_series: z = 0");
    const Cx<R> w = std::exp(-std::log(z) / R(n)); // z^{-1/n}, principal

    // terms t_k = |u_k| |z|^{-k/n}
    const R aw = std::abs(w);
    R wk = std::pow(aw, R(ex.start));
    R head(0), tail(0);
    std::vector<R> mags(ex.coeffs.size());
    for (int k = ex.start; k <= ex.K; ++k) {
        mags[k - ex.start] = std::abs(ex.at(k)) * wk;
        wk *= aw;
    }
    for (int k = ex.start; k <= ex.K; ++k) {
        if (k <= ex.start + std::max(2 * n, 4)) head = std::max(head, mags[k - ex.start]);
        if (k > ex.K - n) tail = std::max(tail, mags[k - ex.start]);
    }
    if (tail > R(1e-7) * std::max(head, R(1e-300)))
        throw RadiusError("branch_series: |z| below validity radius for this truncation");

    Cx<R> wpow = std::pow(w, Cx<R>(R(ex.start)));
    Cx<R> acc(0);
    for (int k = ex.start; k <= ex.K; ++k) {
        acc += ex.at(k) * detail::root_of_unity_power<R>(n, (long long)j * k) * wpow;
        wpow *= w;
    }
    return acc;
}

struct VanishingRowReport {
    std::vector<int> violations;           // indices k with |u_k| and |F(e^k)| both above tolerance
    std::vector<int> vanishing_residues;   // r with u_k ~ 0 for all stored k = r (mod n)
    bool pass = true;
};

// Checks the compatibility of a branch relation row with the expansion of
// Q(P^{-1}): for every k either u_k = 0 or F(e_n^k) = 0, where
// F(x) = sum_j f_j x^j over canonical branch indices j.
template <class R>
VanishingRowReport vanishing_row_check(const std::vector<Cx<R>>& f_row, const PuiseuxExpansion<R>& u) {
    const int n = u.ramification;
    R fmax(0);
    for (const auto& f : f_row) fmax += std::abs(f);
    if (fmax == R(0)) throw Error("vanishing_row_check: row is identically zero");
    R umax(0);
    for (const auto& c : u.coeffs) umax = std::max(umax, std::abs(c));
    const R tol_u = R(1e-8) * std::max(R(1), umax);
    const R tol_f = R(1e-9) * fmax;

    VanishingRowReport rep;
    std::vector<bool> residue_clean(n, true);
    for (int k = u.start; k <= u.K; ++k) {
        const bool uk_zero = std::abs(u.at(k)) <= tol_u;
        if (!uk_zero) residue_clean[((k % n) + n) % n] = false;
        Cx<R> F(0);
        for (int j = 0; j < (int)f_row.size(); ++j)
            F += f_row[j] * detail::root_of_unity_power<R>(n, (long long)j * k);
        if (!uk_zero && std::abs(F) > tol_f) {
            rep.violations.push_back(k);
            rep.pass = false;
        }
    }
    for (int r = 0; r < n; ++r)
        if (residue_clean[r]) rep.vanishing_residues.push_back(r);
    return rep;
}

template <class R>
struct GcdViolation {
    int k;
    R magnitude;
};

template <class R>
struct GcdReport {
    std::vector<GcdViolation<R>> violations; // k with gcd(k, n) = 1 and u_k != 0
    bool pass = true;
};

// Lists every stored index k coprime to the ramification where u_k fails to
// vanish. An empty list certifies the coprime-index vanishing up to depth K.
template <class R>
GcdReport<R> gcd_vanishing_report(const PuiseuxExpansion<R>& u) {
    const int n = u.ramification;
    R umax(0);
    for (const auto& c : u.coeffs) umax = std::max(umax, std::abs(c));
    const R tol = R(1e-8) * std::max(R(1), umax);
    GcdReport<R> rep;
    for (int k = u.start; k <= u.K; ++k) {
        if (std::gcd(std::abs(k), n) != 1) continue;
        const R mag = std::abs(u.at(k));
        if (mag > tol) {
            rep.violations.push_back({k, mag});
            rep.pass = false;
        }
    }
    return rep;
}

// ceil((m/n)^{n!}) + 1 as an exact integer: the number of initial series
// coefficients that certify a vanishing identity outright. Equals 1 when
// m < n. The value is astronomically large already for n >= 4; callers are
// expected to report it, not to iterate that far.
inline boost::multiprecision::cpp_int truncation_bound(int n, int m) {
    using boost::multiprecision::cpp_int;
    if (n < 1) throw DegreeError("truncation_bound: n must be >= 1");
    if (m < 0) throw DegreeError("truncation_bound: m must be >= 0");
    if (m < n) return 1;
    if (m == n) return 2;
    if (n > 20) // n! no longer fits a machine word and the value is astronomical anyway
        throw Error("truncation_bound: exact value needs more than 2^20000000, not representable here");
    unsigned long long fact = 1;
    for (int i = 2; i <= n; ++i) fact *= (unsigned long long)i;
    const double log2_estimate = (double)fact * std::log2((double)m / (double)n);
    if (log2_estimate > 2e7)
        throw Error("truncation_bound: exact value needs more than 2^20000000, not representable here");
    cpp_int mp = boost::multiprecision::pow(cpp_int(m), (unsigned)fact);
    cpp_int np = boost::multiprecision::pow(cpp_int(n), (unsigned)fact);
    return (mp + np - 1) / np + 1;
}

} // namespace polymoment

#endif
