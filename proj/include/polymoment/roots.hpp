#ifndef POLYMOMENT_ROOTS_HPP
#define POLYMOMENT_ROOTS_HPP

#include <random>
#include <vector>

#include "polymoment/polynomial.hpp"

namespace polymoment {

namespace detail {

template <class R>
R eval_scale(const Polynomial<R>& p, R az) {
    // sum |c_i| |z|^i, the natural residual scale at |z| = az
    R s(0), zp(1);
    for (int i = 0; i <= p.degree(); ++i) {
        s += std::abs(p.coeff(i)) * zp;
        zp *= az;
    }
    return s;
}

// One sweep of Aberth-Ehrlich simultaneous iteration. A root stops moving
// once its residual hits the backward-stable floor (the only reachable target
// near a multiple root) or its correction becomes negligible. Returns the
// number of unsettled roots.
template <class R>
int aberth_sweep(const Polynomial<R>& p, const Polynomial<R>& dp, std::vector<Cx<R>>& z,
                 std::vector<char>& settled) {
    const int d = (int)z.size();
    const R eps = std::numeric_limits<R>::epsilon();
    int moving = 0;
    for (int j = 0; j < d; ++j) {
        if (settled[j]) continue;
        Cx<R> pv = eval(p, z[j]);
        if (std::abs(pv) <= R(8) * eps * R(d) * eval_scale(p, std::abs(z[j]))) {
            settled[j] = 1;
            continue;
        }
        Cx<R> dv = eval(dp, z[j]);
        if (std::abs(dv) == R(0)) { // sitting on a critical point, nudge
            z[j] += Cx<R>(R(1e-6), R(1e-6)) * (R(1) + std::abs(z[j]));
            ++moving;
            continue;
        }
        Cx<R> newton = pv / dv;
        Cx<R> sum(0);
        for (int k = 0; k < d; ++k) {
            if (k == j) continue;
            Cx<R> diff = z[j] - z[k];
            if (std::abs(diff) == R(0)) diff = Cx<R>(R(1e-14));
            sum += Cx<R>(1) / diff;
        }
        Cx<R> denom = Cx<R>(1) - newton * sum;
        Cx<R> step = (std::abs(denom) < R(1e-30)) ? newton : newton / denom;
        z[j] -= step;
        if (std::abs(step) <= R(1e-15) * (R(1) + std::abs(z[j]))) settled[j] = 1;
        else ++moving;
    }
    return moving;
}

} // namespace detail

// All complex roots of p with multiplicity. Aberth-Ehrlich simultaneous
// iteration from perturbed circle initializers, Newton polishing, then
// multiplicity clustering at radius 1e-7*(1+|z|). Clustered roots are
// re-polished as simple roots of the appropriate derivative. Output is
// deterministic: clusters sorted lexicographically by (re, im) on a snapped
// grid, each root repeated according to multiplicity.
template <class R>
std::vector<Cx<R>> roots(const Polynomial<R>& p, unsigned seed = 0x5eed) {
    if (p.degree() < 1) throw DegreeError("roots: polynomial must have degree >= 1");

    // peel off exact roots at the origin
    int base = 0;
    while (base <= p.degree() && std::abs(p.coeff(base)) <= Polynomial<R>::zero_threshold() * p.max_abs_coeff())
        ++base;
    std::vector<Cx<R>> reduced_coeffs(p.coeffs().begin() + base, p.coeffs().end());
    Polynomial<R> q(std::move(reduced_coeffs));
    std::vector<Cx<R>> found(base, Cx<R>(0));

    const int d = q.degree();
    if (d >= 1) {
        Polynomial<R> dq = derivative(q);
        R cauchy(0);
        for (int i = 0; i < d; ++i) cauchy = std::max(cauchy, std::abs(q.coeff(i) / q.lead()));
        cauchy += R(1);

        std::mt19937 rng(seed);
        std::uniform_real_distribution<double> jitter(-0.05, 0.05);

        std::vector<Cx<R>> z(d);
        bool converged = false;
        for (R radius : {R(1), cauchy, R(4) * cauchy}) {
            for (int j = 0; j < d; ++j) {
                R ang = R(2) * pi_v<R>() * (R(j) + R(0.37)) / R(d) + R(jitter(rng));
                z[j] = radius * unit_phase(ang);
            }
            std::vector<char> settled(d, 0);
            for (int it = 0; it < 600; ++it) {
                if (detail::aberth_sweep(q, dq, z, settled) == 0) { converged = true; break; }
            }
            if (converged) break;
        }
        if (!converged) throw ConvergenceError("roots: simultaneous iteration stalled");

        // Newton polish, accepting only residual-reducing steps (multiple
        // roots sit on a rounding plateau; clustering handles them below)
        for (auto& zj : z) {
            for (int it = 0; it < 4; ++it) {
                Cx<R> dv = eval(dq, zj);
                if (std::abs(dv) == R(0)) break;
                Cx<R> cand = zj - eval(q, zj) / dv;
                if (std::abs(eval(q, cand)) >= std::abs(eval(q, zj))) break;
                zj = cand;
            }
        }

        auto clusters = cluster_points<R>(z, [](const Cx<R>& w) { return R(1e-7) * (R(1) + std::abs(w)); });
        for (auto& [center, mult] : clusters) {
            Cx<R> root = center;
            if (mult > 1 && mult <= d) {
                // a root of multiplicity m is a simple root of the (m-1)-th derivative
                Polynomial<R> g = q;
                for (int k = 0; k < mult - 1; ++k) g = derivative(g);
                Cx<R> cand = center;
                for (int it = 0; it < 6; ++it) {
                    Cx<R> dv = eval(derivative(g), cand);
                    if (std::abs(dv) == R(0)) break;
                    cand -= eval(g, cand) / dv;
                }
                if (std::abs(cand - center) <= R(4e-7) * (R(1) + std::abs(center))) root = cand;
            }
            R resid = std::abs(eval(q, root));
            if (resid > R(1e-7) * detail::eval_scale(q, std::abs(root)))
                throw ConvergenceError("roots: residual check failed after polishing");
            for (int k = 0; k < mult; ++k) found.push_back(root);
        }
    }

    sort_lex(found, R(1e-7));
    return found;
}

template <class R>
struct CriticalPoint {
    Cx<R> z;
    int order; // multiplicity as a root of P'; local covering multiplicity is order+1
};

template <class R>
struct CriticalData {
    std::vector<CriticalPoint<R>> points;
    std::vector<Cx<R>> values; // distinct, clustered
};

// Critical points of p (roots of p' with multiplicity) and the deduplicated
// list of critical values.
template <class R>
CriticalData<R> critical_data(const Polynomial<R>& p, unsigned seed = 0x5eed) {
    if (p.degree() < 2) throw DegreeError("critical_data: polynomial must have degree >= 2");
    CriticalData<R> cd;
    auto rts = roots(derivative(p), seed);
    auto clusters = cluster_points<R>(rts, [](const Cx<R>& w) { return R(1e-7) * (R(1) + std::abs(w)); });
    std::vector<Cx<R>> vals;
    for (const auto& [center, mult] : clusters) {
        cd.points.push_back({center, mult});
        vals.push_back(eval(p, center));
    }
    auto vclusters = cluster_points<R>(vals, [](const Cx<R>& w) { return R(1e-7) * (R(1) + std::abs(w)); });
    for (const auto& [center, count] : vclusters) cd.values.push_back(center);
    return cd;
}

} // namespace polymoment

#endif
