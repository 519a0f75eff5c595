#ifndef POLYMOMENT_CONTINUATION_HPP
#define POLYMOMENT_CONTINUATION_HPP

#include <optional>

#include "polymoment/permutation.hpp"
#include "polymoment/puiseux.hpp"
#include "polymoment/roots.hpp"

namespace polymoment {

// Piecewise-linear path in the w-plane. Each consecutive waypoint pair is a
// straight segment; `refinement` bounds the initial parameter step per segment.
template <class R = double>
struct PathPlan {
    std::vector<Cx<R>> waypoints;
    R refinement = R(0.1);

    void validate() const {
        if (waypoints.size() < 2) throw PathPlanError("path plan needs at least two waypoints");
        for (size_t i = 0; i + 1 < waypoints.size(); ++i) {
            R sep = std::abs(waypoints[i + 1] - waypoints[i]);
            R scale = R(1) + std::max(std::abs(waypoints[i]), std::abs(waypoints[i + 1]));
            if (sep <= R(1e-14) * scale)
                throw PathPlanError("consecutive waypoints coincide");
        }
        if (!(refinement > R(0))) throw PathPlanError("refinement bound must be positive");
    }
};

// Monodromy of the covering P: base point c, critical values in the standard
// counterclockwise order, one branch permutation per critical value, and the
// fiber P^{-1}(c) indexed consistently with the permutations.
template <class R = double>
struct MonodromyData {
    Cx<R> base;
    std::vector<Cx<R>> crit_values;
    std::vector<Perm> generators;
    std::vector<Cx<R>> fiber;

    int n() const { return (int)fiber.size(); }
    Perm infinity_permutation() const { return product(generators, n()); }
};

namespace detail {

template <class R>
R min_pairwise_separation(const std::vector<Cx<R>>& z) {
    R m = std::numeric_limits<R>::max();
    for (size_t i = 0; i < z.size(); ++i)
        for (size_t j = i + 1; j < z.size(); ++j)
            m = std::min(m, std::abs(z[i] - z[j]));
    return m;
}

// Advance the whole fiber from w0 to w1 along the straight segment.
// Predictor: first-order step along dz/dw = 1/P'(z). Corrector: Newton on
// P(z) = w(t). The step halves whenever the fiber separation drops below
// 4x the correction size or Newton stalls; below the hard floor the segment
// is declared untrackable.
template <class R>
void track_segment(const Polynomial<R>& P, const Polynomial<R>& dP, std::vector<Cx<R>>& z,
                   const Cx<R>& w0, const Cx<R>& w1, R h_init) {
    const int n = (int)z.size();
    const Cx<R> dw = w1 - w0;
    R t(0), h = std::min(h_init, R(1));
    std::vector<Cx<R>> zt(n);
    while (t < R(1)) {
        h = std::min(h, R(1) - t);
        const R sep_before = (n > 1) ? min_pairwise_separation(z) : std::numeric_limits<R>::max();
        bool ok = true;
        R corr(0);
        for (int i = 0; i < n; ++i) {
            Cx<R> dv = eval(dP, z[i]);
            Cx<R> pred = (std::abs(dv) > R(0)) ? h * dw / dv : Cx<R>(0);
            // an exploding predictor near a branch point would hop sheets
            if (std::abs(pred) > R(0.25) * sep_before) ok = false;
            zt[i] = z[i] + pred;
        }
        const Cx<R> wt = w0 + (t + h) * dw;
        const R wscale = R(1) + std::abs(wt);
        for (int i = 0; i < n && ok; ++i) {
            bool done = false;
            Cx<R> start = zt[i];
            for (int it = 0; it < 24; ++it) {
                Cx<R> f = eval(P, zt[i]) - wt;
                if (std::abs(f) <= R(1e-12) * wscale) { done = true; break; }
                Cx<R> dv = eval(dP, zt[i]);
                if (std::abs(dv) == R(0)) break;
                zt[i] -= f / dv;
                if (std::abs(zt[i] - start) > R(0.5) * sep_before) break; // wandered off the sheet
            }
            corr = std::max(corr, std::abs(zt[i] - start));
            ok = done;
        }
        if (ok && n > 1) {
            const R sep = min_pairwise_separation(zt);
            if (sep < R(4) * corr) ok = false;
            if (sep < R(0.3) * sep_before) ok = false; // separation must not crash in one step
            R zscale(1);
            for (const auto& p : zt) zscale = std::max(zscale, std::abs(p));
            if (ok && sep < R(1e-11) * zscale)
                throw PathTooClose("track_fiber: fiber points collided along the path");
        }
        if (ok) {
            z = zt;
            t += h;
            h *= R(1.5);
        } else {
            h /= R(2);
            if (h < R(1e-12)) throw PathTooClose("track_fiber: step size underflow near a critical value");
        }
    }
}

template <class R>
std::vector<Cx<R>> fiber_at(const Polynomial<R>& P, const Cx<R>& w, unsigned seed = 0x5eed) {
    Polynomial<R> shifted = P - Polynomial<R>::constant(w);
    auto f = roots(shifted, seed);
    return f;
}

// Match each point of `moved` to its nearest point of `reference`; the match
// must be unambiguous and a bijection.
template <class R>
Perm match_to_fiber(const std::vector<Cx<R>>& reference, const std::vector<Cx<R>>& moved) {
    const int n = (int)reference.size();
    const R sep = min_pairwise_separation(reference);
    std::vector<int> img(n, -1);
    std::vector<bool> used(n, false);
    for (int i = 0; i < n; ++i) {
        int best = -1;
        R bd = std::numeric_limits<R>::max();
        for (int j = 0; j < n; ++j) {
            R d = std::abs(moved[i] - reference[j]);
            if (d < bd) { bd = d; best = j; }
        }
        if (bd > R(0.25) * sep || used[best])
            throw MatchError("fiber matching is ambiguous");
        img[i] = best;
        used[best] = true;
    }
    return Perm(std::move(img));
}

} // namespace detail

// Analytic continuation of the fiber along a piecewise-linear path. The
// returned fiber preserves index-by-index branch correspondence.
template <class R>
std::vector<Cx<R>> track_fiber(const Polynomial<R>& P, const PathPlan<R>& path,
                               std::vector<Cx<R>> start_fiber) {
    path.validate();
    if ((int)start_fiber.size() != P.degree())
        throw PathPlanError("track_fiber: start fiber size must equal deg P");
    const Polynomial<R> dP = derivative(P);
    const Cx<R> w0 = path.waypoints.front();
    for (const auto& z : start_fiber) {
        if (std::abs(eval(P, z) - w0) > R(1e-6) * (R(1) + std::abs(w0)))
            throw PathPlanError("track_fiber: start fiber does not solve P(z) = first waypoint");
    }
    for (size_t i = 0; i + 1 < path.waypoints.size(); ++i)
        detail::track_segment(P, dP, start_fiber, path.waypoints[i], path.waypoints[i + 1], path.refinement);
    return start_fiber;
}

// Base point selection: exterior to the critical values, off every special
// value, and with no two marked directions radially aligned as seen from the
// base (straight tracks out of the base then stay in the standard cut domain).
template <class R>
Cx<R> choose_base(const std::vector<Cx<R>>& crit_values, const std::vector<Cx<R>>& special = {}) {
    if (crit_values.empty()) throw Error("choose_base: no critical values");
    R maxabs(0), spread(0);
    Cx<R> ctr(0);
    for (const auto& v : crit_values) {
        maxabs = std::max(maxabs, std::abs(v));
        ctr += v;
    }
    ctr /= R(crit_values.size());
    for (const auto& u : crit_values)
        for (const auto& v : crit_values) spread = std::max(spread, std::abs(u - v));
    if (spread == R(0)) spread = R(1);
    const R scale = maxabs + R(1);
    const R guard = R(1e-3) * scale;

    std::vector<Cx<R>> marked = crit_values;
    for (const auto& s : special) marked.push_back(s);

    const Cx<R> first = Cx<R>(R(2) * maxabs + R(1), spread / R(2));
    const R rho = std::abs(first - ctr);
    const R phi0 = std::atan2((first - ctr).imag(), (first - ctr).real());

    auto segment_clearance = [](const Cx<R>& from, const Cx<R>& to, const Cx<R>& p) {
        const Cx<R> ab = to - from;
        R t = (((p - from) / ab)).real();
        t = std::clamp(t, R(0), R(1));
        return std::abs(from + t * ab - p);
    };

    for (R clearance : {R(1e-4) * scale, R(1e-6) * scale}) {
        for (int attempt = 0; attempt < 17; ++attempt) {
            const Cx<R> c = ctr + rho * unit_phase(phi0 + R(2) * pi_v<R>() * R(attempt) / R(17));
            bool ok = true;
            for (const auto& p : marked)
                if (std::abs(c - p) < guard) ok = false;
            // every radial track from c toward a marked target must clear the
            // other marked points (the segment stops one loop radius short)
            for (size_t t = 0; t < marked.size() && ok; ++t) {
                R nearest = std::numeric_limits<R>::max();
                for (size_t j = 0; j < marked.size(); ++j) {
                    R d = std::abs(marked[j] - marked[t]);
                    if (d > R(1e-9) * scale) nearest = std::min(nearest, d);
                }
                R stop = std::min(R(0.1) * scale, (nearest < std::numeric_limits<R>::max())
                                                      ? nearest / R(2)
                                                      : R(0.1) * scale);
                const Cx<R> dir = (marked[t] - c) / std::abs(marked[t] - c);
                const Cx<R> q = marked[t] - stop * dir;
                for (size_t j = 0; j < marked.size() && ok; ++j) {
                    if (std::abs(marked[j] - marked[t]) <= R(1e-9) * scale) continue;
                    if (segment_clearance(c, q, marked[j]) < clearance) ok = false;
                }
            }
            if (ok) return c;
        }
    }
    throw Error("choose_base: could not find an admissible base point");
}

namespace detail {

// Loop around cv: radial approach from c to distance r, counterclockwise
// circle, radial return.
template <class R>
PathPlan<R> loop_plan(const Cx<R>& c, const Cx<R>& cv, R r) {
    PathPlan<R> plan;
    const Cx<R> dir = (cv - c) / std::abs(cv - c);
    const Cx<R> q = cv - r * dir;
    plan.waypoints.push_back(c);
    plan.waypoints.push_back(q);
    const int segs = 24;
    for (int k = 1; k <= segs; ++k) {
        R ang = R(2) * pi_v<R>() * R(k) / R(segs);
        plan.waypoints.push_back(cv + (q - cv) * unit_phase(ang));
    }
    plan.waypoints.push_back(c);
    return plan;
}

template <class R>
R loop_radius(const std::vector<Cx<R>>& crit_values, const Cx<R>& cv, R scale) {
    R nearest = std::numeric_limits<R>::max();
    for (const auto& u : crit_values) {
        R d = std::abs(u - cv);
        if (d > R(1e-9) * scale) nearest = std::min(nearest, d);
    }
    R r = R(0.1) * scale;
    if (nearest < std::numeric_limits<R>::max()) r = std::min(r, nearest / R(2));
    return r;
}

} // namespace detail

// Monodromy data of P: critical values ordered counterclockwise around the
// base (cut taken opposite the critical-value centroid so the left-to-right
// generator product is the loop around everything), generators computed by
// fiber tracking, branches renumbered so the product is the cycle (1 2 ... n).
template <class R>
MonodromyData<R> monodromy(const Polynomial<R>& P, std::optional<Cx<R>> base_hint = std::nullopt,
                           const std::vector<Cx<R>>& avoid = {}, unsigned seed = 0x5eed) {
    const int n = P.degree();
    if (n < 2) throw DegreeError("monodromy: degree must be >= 2");
    auto cd = critical_data(P, seed);

    MonodromyData<R> md;
    md.crit_values = cd.values;
    md.base = base_hint ? *base_hint : choose_base(cd.values, avoid);

    Cx<R> ctr(0);
    for (const auto& v : md.crit_values) ctr += v;
    ctr /= R(md.crit_values.size());
    R scale(0);
    for (const auto& v : md.crit_values) scale = std::max(scale, std::abs(v));
    scale += R(1);

    // counterclockwise order with the cut pointing away from the action
    const R cut = std::atan2((md.base - ctr).imag(), (md.base - ctr).real());
    std::sort(md.crit_values.begin(), md.crit_values.end(), [&](const Cx<R>& u, const Cx<R>& v) {
        return angle_from_cut(u - md.base, cut) < angle_from_cut(v - md.base, cut);
    });

    md.fiber = detail::fiber_at(P, md.base, seed);
    if (detail::min_pairwise_separation(md.fiber) < R(1e-7) * scale)
        throw Error("monodromy: base point is too close to a critical value");

    const Polynomial<R> dP = derivative(P);
    for (const auto& cv : md.crit_values) {
        auto plan = detail::loop_plan(md.base, cv, detail::loop_radius(md.crit_values, cv, scale));
        auto moved = md.fiber;
        for (size_t i = 0; i + 1 < plan.waypoints.size(); ++i)
            detail::track_segment(P, dP, moved, plan.waypoints[i], plan.waypoints[i + 1], plan.refinement);
        md.generators.push_back(detail::match_to_fiber(md.fiber, moved));
    }

    Perm ginf = md.infinity_permutation();
    if (!ginf.is_single_cycle())
        throw ConvergenceError("monodromy: generator product is not an n-cycle (tracking inconsistency)");

    // renumber branches so the product becomes (1 2 ... n)
    std::vector<int> sigma(n);
    int j = 0;
    for (int t = 0; t < n; ++t) {
        sigma[j] = t;
        j = ginf(j);
    }
    Perm relabel(sigma);
    for (auto& g : md.generators) g = g.relabeled(relabel);
    std::vector<Cx<R>> newfiber(n);
    for (int i = 0; i < n; ++i) newfiber[relabel(i)] = md.fiber[i];
    md.fiber = std::move(newfiber);
    return md;
}

// Convenience entry point for the standard pipeline: pick a base away from
// the listed values (typically P(a), P(b)).
template <class R>
MonodromyData<R> monodromy_avoiding(const Polynomial<R>& P, const std::vector<Cx<R>>& avoid,
                                    unsigned seed = 0x5eed) {
    return monodromy(P, std::optional<Cx<R>>{}, avoid, seed);
}

// Partition of the branches by the preimage point they reach when the fiber
// is dragged from the base to value v. One entry per preimage of v, carrying
// the preimage location, its multiplicity, and the branch indices.
template <class R>
struct FiberCluster {
    Cx<R> point;
    int multiplicity = 0;
    std::vector<int> branches;
};

template <class R>
std::vector<FiberCluster<R>> fiber_partition_at(const Polynomial<R>& P, const MonodromyData<R>& md,
                                                const Cx<R>& v, unsigned seed = 0x5eed) {
    const Polynomial<R> dP = derivative(P);
    const int n = md.n();
    R scale = R(1) + std::abs(v) + std::abs(md.base);

    if (std::abs(v - md.base) < R(1e-9) * scale) {
        std::vector<FiberCluster<R>> out;
        for (int i = 0; i < n; ++i) out.push_back({md.fiber[i], 1, {i}});
        return out;
    }

    auto pre = detail::fiber_at(P, v, seed);
    auto clusters = cluster_points<R>(pre, [](const Cx<R>& w) { return R(1e-6) * (R(1) + std::abs(w)); });
    R dmin = std::numeric_limits<R>::max();
    for (size_t i = 0; i < clusters.size(); ++i)
        for (size_t j = i + 1; j < clusters.size(); ++j)
            dmin = std::min(dmin, std::abs(clusters[i].first - clusters[j].first));

    const Cx<R> toward_base = (md.base - v) / std::abs(md.base - v);
    R delta = std::min(R(1e-3) * scale, std::abs(md.base - v) / R(4));
    for (int attempt = 0; attempt < 14; ++attempt, delta /= R(8)) {
        if (delta < R(1e-13) * scale) break;
        const Cx<R> vp = v + delta * toward_base;
        std::vector<Cx<R>> moved = md.fiber;
        detail::track_segment(P, dP, moved, md.base, vp, R(0.1));
        std::vector<int> assign(n);
        R worst(0);
        for (int i = 0; i < n; ++i) {
            int best = 0;
            R bd = std::numeric_limits<R>::max();
            for (size_t k = 0; k < clusters.size(); ++k) {
                R d = std::abs(moved[i] - clusters[k].first);
                if (d < bd) { bd = d; best = (int)k; }
            }
            assign[i] = best;
            worst = std::max(worst, bd);
        }
        std::vector<int> counts(clusters.size(), 0);
        for (int a : assign) counts[a]++;
        bool consistent = worst < R(0.4) * std::min(dmin, scale);
        for (size_t k = 0; k < clusters.size(); ++k)
            if (counts[k] != clusters[k].second) consistent = false;
        if (consistent) {
            std::vector<FiberCluster<R>> out(clusters.size());
            for (size_t k = 0; k < clusters.size(); ++k) {
                out[k].point = clusters[k].first;
                out[k].multiplicity = clusters[k].second;
            }
            for (int i = 0; i < n; ++i) out[assign[i]].branches.push_back(i);
            return out;
        }
    }
    throw ConvergenceError("fiber_partition_at: could not separate branches near the target value");
}

// Branch indices whose continuation from the base toward v = P(x) converges
// to x. The cardinality equals the multiplicity of x with respect to P.
template <class R>
std::vector<int> branches_at(const Polynomial<R>& P, const MonodromyData<R>& md, const Cx<R>& x,
                             unsigned seed = 0x5eed) {
    const Cx<R> v = eval(P, x);
    auto parts = fiber_partition_at(P, md, v, seed);
    size_t best = 0;
    R bd = std::numeric_limits<R>::max();
    for (size_t k = 0; k < parts.size(); ++k) {
        R d = std::abs(parts[k].point - x);
        if (d < bd) { bd = d; best = k; }
    }
    if (bd > R(1e-4) * (R(1) + std::abs(x)))
        throw MatchError("branches_at: x is not close to any preimage of P(x)");
    return parts[best].branches;
}

// Permutation of the fiber induced by one counterclockwise tour around all
// finite critical values (radially out past the base, full circle, back).
template <class R>
Perm loop_around_all(const Polynomial<R>& P, const MonodromyData<R>& md) {
    Cx<R> ctr(0);
    for (const auto& v : md.crit_values) ctr += v;
    ctr /= R(md.crit_values.size());
    const R RR = R(3) * std::abs(md.base - ctr);
    const Cx<R> e_out = (md.base - ctr) / std::abs(md.base - ctr);
    PathPlan<R> plan;
    plan.waypoints.push_back(md.base);
    plan.waypoints.push_back(ctr + RR * e_out);
    const int segs = 48;
    for (int k = 1; k <= segs; ++k)
        plan.waypoints.push_back(ctr + RR * e_out * unit_phase(R(2) * pi_v<R>() * R(k) / R(segs)));
    plan.waypoints.push_back(md.base);
    auto moved = track_fiber(P, plan, md.fiber);
    return detail::match_to_fiber(md.fiber, moved);
}

template <class R>
struct AlignmentResult {
    Perm sigma;           // base branch index -> canonical index at infinity
    R max_match_dist = 0; // worst pointwise distance tracked-vs-series
    R radius = 0;         // real radius used for the matching
    PuiseuxExpansion<R> series;
};

// Aligns the base branch numbering with the canonical numbering at infinity:
// the fiber is tracked from the base to a large positive real radius and
// matched against the evaluated canonical branches.
template <class R>
AlignmentResult<R> infinity_alignment_detail(const Polynomial<R>& P, const MonodromyData<R>& md,
                                             int K = -1) {
    const int n = P.degree();
    if (n < 2) throw DegreeError("infinity_alignment: degree must be >= 2");
    if (K < 0) K = 12 * n + 8;
    AlignmentResult<R> out;
    out.series = inverse_puiseux(P, K);

    R maxcv(0);
    for (const auto& v : md.crit_values) maxcv = std::max(maxcv, std::abs(v));
    R Rbig = R(2) * maxcv + R(2) * std::abs(md.base) + R(1);

    const Polynomial<R> dP = derivative(P);
    for (int attempt = 0; attempt < 8; ++attempt, Rbig *= R(1.7)) {
        // keep the straight segment base -> Rbig clear of critical values
        bool clear = true;
        const Cx<R> a = md.base, b = Cx<R>(Rbig, 0);
        for (const auto& cv : md.crit_values) {
            const Cx<R> ab = b - a;
            R t = std::clamp(((cv - a) / ab).real(), R(0), R(1));
            R tol = R(1e-4) * (R(1) + std::abs(cv));
            // distance from cv to the segment
            if (std::abs(a + t * ab - cv) < tol) clear = false;
        }
        if (!clear) continue;

        std::vector<Cx<R>> moved = md.fiber;
        detail::track_segment(P, dP, moved, a, b, R(0.1));

        std::vector<Cx<R>> canon(n);
        bool radius_ok = true;
        try {
            for (int j = 0; j < n; ++j) canon[j] = branch_series(out.series, j, b);
        } catch (const RadiusError&) {
            radius_ok = false;
        }
        if (!radius_ok) continue;

        std::vector<int> img(n, -1);
        std::vector<bool> used(n, false);
        R worst(0);
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            int best = -1;
            R d1 = std::numeric_limits<R>::max(), d2 = d1;
            for (int j = 0; j < n; ++j) {
                R d = std::abs(moved[i] - canon[j]);
                if (d < d1) { d2 = d1; d1 = d; best = j; }
                else if (d < d2) d2 = d;
            }
            if (d2 < R(2) * d1 || used[best]) {
                ok = false;
                break;
            }
            img[i] = best;
            used[best] = true;
            worst = std::max(worst, d1);
        }
        R vscale(1);
        for (const auto& z : canon) vscale = std::max(vscale, std::abs(z));
        if (ok && worst <= R(1e-6) * vscale) {
            out.sigma = Perm(std::move(img));
            out.max_match_dist = worst;
            out.radius = Rbig;
            return out;
        }
    }
    throw MatchError("infinity_alignment: nearest-match assignment stayed ambiguous");
}

template <class R>
Perm infinity_alignment(const Polynomial<R>& P, const MonodromyData<R>& md, int K = -1) {
    return infinity_alignment_detail(P, md, K).sigma;
}

} // namespace polymoment

#endif
