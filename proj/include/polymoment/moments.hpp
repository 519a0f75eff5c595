#ifndef POLYMOMENT_MOMENTS_HPP
#define POLYMOMENT_MOMENTS_HPP

#include "polymoment/cactus.hpp"

namespace polymoment {

// Segment calculus in the Chebyshev basis of [a, b]. Moments are exact
// polynomial integrals, but monomial coefficients of P^i explode while the
// integrand itself stays the size of its values on the segment; expanding in
// the Chebyshev basis of the segment keeps every intermediate quantity at the
// natural scale of the result, so deep moment sequences stay meaningful in
// fixed precision.
namespace chebseg {

template <class R>
using Vec = std::vector<Cx<R>>;

// p(mid + half*x) as monomial coefficients in x.
template <class R>
Vec<R> affine_pullback(const Polynomial<R>& p, const Cx<R>& mid, const Cx<R>& half) {
    Vec<R> out{Cx<R>(0)};
    const auto& c = p.coeffs();
    for (size_t i = c.size(); i-- > 0;) {
        // out = out * (mid + half x) + c[i]
        Vec<R> next(out.size() + 1, Cx<R>(0));
        for (size_t j = 0; j < out.size(); ++j) {
            next[j] += out[j] * mid;
            next[j + 1] += out[j] * half;
        }
        next[0] += c[i];
        out = std::move(next);
    }
    while (out.size() > 1 && std::abs(out.back()) == R(0)) out.pop_back();
    return out;
}

// Monomial coefficients -> Chebyshev coefficients (same span, x in [-1,1]).
template <class R>
Vec<R> to_cheb(const Vec<R>& mono) {
    const size_t d = mono.size();
    Vec<R> out(d, Cx<R>(0));
    Vec<R> xk(d, Cx<R>(0)); // T-coefficients of x^k
    xk[0] = Cx<R>(1);
    for (size_t k = 0; k < d; ++k) {
        if (mono[k] != Cx<R>(0))
            for (size_t j = 0; j < d; ++j) out[j] += mono[k] * xk[j];
        if (k + 1 == d) break;
        // x * T_j = (T_{j+1} + T_{|j-1|}) / 2; indices stay below d because
        // xk only carries terms up to T_k and k+1 < d here
        Vec<R> nxt(d, Cx<R>(0));
        for (size_t j = 0; j < d; ++j) {
            if (xk[j] == Cx<R>(0)) continue;
            if (j == 0) nxt[1] += xk[j];
            else {
                nxt[j + 1] += xk[j] / R(2);
                nxt[j - 1] += xk[j] / R(2);
            }
        }
        xk = std::move(nxt);
    }
    return out;
}

// Product in the Chebyshev basis: T_i T_j = (T_{i+j} + T_{|i-j|}) / 2.
template <class R>
Vec<R> mul(const Vec<R>& a, const Vec<R>& b) {
    Vec<R> out(a.size() + b.size() - 1, Cx<R>(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == Cx<R>(0)) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j] == Cx<R>(0)) continue;
            Cx<R> half = a[i] * b[j] / R(2);
            out[i + j] += half;
            out[i >= j ? i - j : j - i] += half;
        }
    }
    return out;
}

// Integral over [-1, 1] of a Chebyshev expansion: odd modes drop out,
// int T_k = 2 / (1 - k^2) for even k.
template <class R>
Cx<R> integrate_unit(const Vec<R>& c) {
    Cx<R> acc(0);
    for (size_t k = 0; k < c.size(); k += 2)
        acc += c[k] * (R(2) / (R(1) - R(k) * R(k)));
    return acc;
}

template <class R>
R max_abs(const Vec<R>& c) {
    R m(0);
    for (const auto& z : c) m = std::max(m, std::abs(z));
    return m;
}

template <class R>
Vec<R> cheb_on_segment(const Polynomial<R>& p, const Cx<R>& a, const Cx<R>& b) {
    return to_cheb(affine_pullback(p, (a + b) / R(2), (b - a) / R(2)));
}

} // namespace chebseg

// Exact i-th moment of q against powers of P over the segment [a, b]:
// the antiderivative of P^i q on the segment, evaluated at b minus at a
// (carried out in the Chebyshev basis of the segment; no quadrature).
template <class R>
Cx<R> moment(const Polynomial<R>& P, const Polynomial<R>& q, const Cx<R>& a, const Cx<R>& b, int i) {
    if (i < 0) throw Error("moment: index must be non-negative");
    if (q.is_zero()) return Cx<R>(0);
    auto Ph = chebseg::cheb_on_segment(P, a, b);
    auto qh = chebseg::cheb_on_segment(q, a, b);
    chebseg::Vec<R> acc{Cx<R>(1)};
    for (int t = 0; t < i; ++t) acc = chebseg::mul(acc, Ph);
    return ((b - a) / R(2)) * chebseg::integrate_unit(chebseg::mul(acc, qh));
}

enum class MomentVerdict { VANISHES, NONZERO };

template <class R = double>
struct MomentReport {
    int M = 0;
    std::vector<Cx<R>> values; // m_0 .. m_M
    R max_abs = 0;
    MomentVerdict verdict = MomentVerdict::VANISHES;
    int first_nonzero = -1; // meaningful when NONZERO
    R tol = 0;              // relative tolerance used
    R scale = 0;            // largest per-index scale encountered
};

// All moments m_0..m_M. VANISHES iff every |m_i| stays below tol times the
// per-index scale |b-a| * max(1, magnitude of the integrand's coefficients).
template <class R>
MomentReport<R> moment_sequence(const Polynomial<R>& P, const Polynomial<R>& q, const Cx<R>& a,
                                const Cx<R>& b, int M, R tol = R(1e-9)) {
    if (M < 0) throw Error("moment_sequence: M must be >= 0");
    MomentReport<R> rep;
    rep.M = M;
    rep.tol = tol;
    auto Ph = chebseg::cheb_on_segment(P, a, b);
    auto qh = chebseg::cheb_on_segment(q, a, b);
    chebseg::Vec<R> acc{Cx<R>(1)};
    const Cx<R> half = (b - a) / R(2);
    for (int i = 0; i <= M; ++i) {
        auto integrand = chebseg::mul(acc, qh);
        Cx<R> m = half * chebseg::integrate_unit(integrand);
        rep.values.push_back(m);
        rep.max_abs = std::max(rep.max_abs, std::abs(m));
        R scale_i = std::abs(b - a) * std::max(R(1), chebseg::max_abs(integrand));
        rep.scale = std::max(rep.scale, scale_i);
        if (std::abs(m) > tol * scale_i && rep.first_nonzero < 0) rep.first_nonzero = i;
        if (i < M) acc = chebseg::mul(acc, Ph);
    }
    rep.verdict = rep.first_nonzero < 0 ? MomentVerdict::VANISHES : MomentVerdict::NONZERO;
    return rep;
}

// Coefficients of the generating function at infinity for the primitive form
// of the condition: m_i = integral of P^i Q P' over [a, b].
template <class R>
std::vector<Cx<R>> h_coefficients(const Polynomial<R>& P, const Polynomial<R>& Q, const Cx<R>& a,
                                  const Cx<R>& b, int M) {
    std::vector<Cx<R>> out;
    if (Q.is_zero()) {
        out.assign(M + 1, Cx<R>(0));
        return out;
    }
    auto Ph = chebseg::cheb_on_segment(P, a, b);
    auto QdPh = chebseg::mul(chebseg::cheb_on_segment(Q, a, b),
                             chebseg::cheb_on_segment(derivative(P), a, b));
    chebseg::Vec<R> acc{Cx<R>(1)};
    const Cx<R> half = (b - a) / R(2);
    for (int i = 0; i <= M; ++i) {
        out.push_back(half * chebseg::integrate_unit(chebseg::mul(acc, QdPh)));
        if (i < M) acc = chebseg::mul(acc, Ph);
    }
    return out;
}

namespace detail {

// Sample points for evaluating branch relations: a ring around the centroid
// of the critical values, nudged until each point and its straight track from
// the base clear every critical value.
template <class R>
std::vector<Cx<R>> criterion_samples(const MonodromyData<R>& md, int count) {
    Cx<R> ctr(0);
    R maxc(0);
    for (const auto& v : md.crit_values) ctr += v;
    ctr /= R(md.crit_values.size());
    for (const auto& v : md.crit_values) maxc = std::max(maxc, std::abs(v));
    R spacing = std::numeric_limits<R>::max();
    for (size_t i = 0; i < md.crit_values.size(); ++i)
        for (size_t j = i + 1; j < md.crit_values.size(); ++j)
            spacing = std::min(spacing, std::abs(md.crit_values[i] - md.crit_values[j]));
    if (!(spacing < std::numeric_limits<R>::max())) spacing = maxc + R(1);
    const R ring = R(1.5) * maxc + R(0.5);
    const R guard = R(1e-4) * (maxc + R(1));

    std::vector<Cx<R>> samples;
    for (int t = 0; t < count; ++t) {
        R theta = R(2) * pi_v<R>() * (R(t) + R(0.37)) / R(count);
        Cx<R> z;
        bool ok = false;
        for (int tries = 0; tries < 64 && !ok; ++tries, theta += R(0.03)) {
            z = ctr + ring * unit_phase(theta);
            ok = true;
            for (const auto& cv : md.crit_values) {
                if (std::abs(z - cv) < R(0.1) * spacing) ok = false;
                const Cx<R> ab = z - md.base;
                R proj = std::clamp((((cv - md.base) / ab)).real(), R(0), R(1));
                if (std::abs(md.base + proj * ab - cv) < guard) ok = false;
            }
        }
        if (!ok) throw Error("criterion_samples: could not place a clear sample point");
        samples.push_back(z);
    }
    return samples;
}

} // namespace detail

template <class R = double>
struct CriterionReport {
    std::vector<R> max_residual; // per color, relative to the branch-value scale
    std::vector<bool> color_pass;
    std::vector<Cx<R>> samples;
    bool pass = false;
    R tol = 0;
};

// Evaluates the branch relation system of the path at sample points reached
// by tracking the fiber from the base. Each color's relation
// sum_i f[s][i] Q(P_i^{-1}(z)) must vanish identically for the moment
// condition to hold.
template <class R>
CriterionReport<R> criterion_residuals(const Polynomial<R>& P, const Polynomial<R>& Q,
                                       const Cx<R>& a, const Cx<R>& b, const PathAB<R>& path,
                                       const MonodromyData<R>& md, int samples = 8,
                                       R tol = R(1e-8)) {
    if (samples < 1) throw Error("criterion_residuals: need at least one sample");
    if (std::abs(a - b) == R(0)) throw Error("criterion_residuals: endpoints must be distinct");
    R qscale = std::max(R(1), Q.max_abs_coeff());
    if (std::abs(eval(Q, a)) > R(1e-6) * qscale)
        throw Error("criterion_residuals: Q must be normalized with Q(a) = 0");
    if ((int)md.generators.size() != path.colors || md.n() != path.n)
        throw Error("criterion_residuals: path and monodromy data disagree");

    CriterionReport<R> rep;
    rep.tol = tol;
    rep.max_residual.assign(path.colors, R(0));
    rep.samples = detail::criterion_samples(md, samples);
    const Polynomial<R> dP = derivative(P);
    for (const auto& z : rep.samples) {
        std::vector<Cx<R>> fiber = md.fiber;
        detail::track_segment(P, dP, fiber, md.base, z, R(0.1));
        std::vector<Cx<R>> qv(fiber.size());
        R vscale(1);
        for (size_t i = 0; i < fiber.size(); ++i) {
            qv[i] = eval(Q, fiber[i]);
            vscale = std::max(vscale, std::abs(qv[i]));
        }
        for (int s = 0; s < path.colors; ++s) {
            Cx<R> phi(0);
            for (int i = 0; i < path.n; ++i)
                if (path.f[s][i] != 0) phi += R(path.f[s][i]) * qv[i];
            rep.max_residual[s] = std::max(rep.max_residual[s], std::abs(phi) / vscale);
        }
    }
    rep.pass = true;
    for (int s = 0; s < path.colors; ++s) {
        rep.color_pass.push_back(rep.max_residual[s] <= tol);
        if (!rep.color_pass.back()) rep.pass = false;
    }
    return rep;
}

template <class R = double>
struct NecessaryReport {
    bool same_endpoint_value = false;
    R residual = 0;   // averaged-branch identity when P(a) = P(b)
    R residual_a = 0; // individual sums when P(a) != P(b)
    R residual_b = 0;
    bool pass = false;
    R tol = 0;
};

// Residuals of the averaged-branch necessary conditions: when P(a) = P(b) the
// averages of Q over the branches meeting a and b must agree; otherwise each
// average must vanish on its own.
template <class R>
NecessaryReport<R> necessary_residuals(const Polynomial<R>& P, const Polynomial<R>& Q,
                                       const Cx<R>& a, const Cx<R>& b, const MonodromyData<R>& md,
                                       int samples = 8, R tol = R(1e-8), unsigned seed = 0x5eed) {
    NecessaryReport<R> rep;
    rep.tol = tol;
    const Cx<R> Pa = eval(P, a), Pb = eval(P, b);
    rep.same_endpoint_value = std::abs(Pa - Pb) <= R(1e-9) * (R(1) + std::abs(Pa) + std::abs(Pb));
    auto A = branches_at(P, md, a, seed);
    auto B = branches_at(P, md, b, seed);

    auto pts = detail::criterion_samples(md, samples);
    const Polynomial<R> dP = derivative(P);
    for (const auto& z : pts) {
        std::vector<Cx<R>> fiber = md.fiber;
        detail::track_segment(P, dP, fiber, md.base, z, R(0.1));
        R vscale(1);
        for (const auto& w : fiber) vscale = std::max(vscale, std::abs(eval(Q, w)));
        Cx<R> ma(0), mb(0);
        for (int i : A) ma += eval(Q, fiber[i]);
        for (int i : B) mb += eval(Q, fiber[i]);
        ma /= R(A.size());
        mb /= R(B.size());
        if (rep.same_endpoint_value) {
            rep.residual = std::max(rep.residual, std::abs(ma - mb) / vscale);
        } else {
            rep.residual_a = std::max(rep.residual_a, std::abs(ma) / vscale);
            rep.residual_b = std::max(rep.residual_b, std::abs(mb) / vscale);
        }
    }
    rep.pass = rep.same_endpoint_value ? rep.residual <= tol
                                       : (rep.residual_a <= tol && rep.residual_b <= tol);
    return rep;
}

} // namespace polymoment

#endif
