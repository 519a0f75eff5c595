#ifndef POLYMOMENT_COMPLEXUTIL_HPP
#define POLYMOMENT_COMPLEXUTIL_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace polymoment {

template <class R>
using Cx = std::complex<R>;

template <class R>
constexpr R pi_v() { return R(3.14159265358979323846264338327950288L); }

template <class R>
bool is_finite(const Cx<R>& z) {
    return std::isfinite((double)z.real()) && std::isfinite((double)z.imag());
}

template <class R>
Cx<R> unit_phase(R angle) {
    return Cx<R>(std::cos(angle), std::sin(angle));
}

// Lexicographic (re, im) comparison after snapping to a grid of size `res`.
// Used for deterministic orderings of root lists.
template <class R>
struct LexKey {
    long long re, im;
    R re_raw, im_raw;
    LexKey(const Cx<R>& z, R res) {
        re = (long long)std::llround((double)(z.real() / res));
        im = (long long)std::llround((double)(z.imag() / res));
        re_raw = z.real();
        im_raw = z.imag();
    }
    bool operator<(const LexKey& o) const {
        if (re != o.re) return re < o.re;
        if (im != o.im) return im < o.im;
        if (re_raw != o.re_raw) return re_raw < o.re_raw;
        return im_raw < o.im_raw;
    }
};

template <class R>
void sort_lex(std::vector<Cx<R>>& zs, R res) {
    std::sort(zs.begin(), zs.end(), [res](const Cx<R>& x, const Cx<R>& y) {
        return LexKey<R>(x, res) < LexKey<R>(y, res);
    });
}

// Greedy clustering of points: two points land in the same cluster when they
// are within radius(z) of some member (single-linkage on the complete graph).
// Returns cluster centroids and sizes, ordered lexicographically by centroid.
template <class R, class RadiusFn>
std::vector<std::pair<Cx<R>, int>> cluster_points(const std::vector<Cx<R>>& pts, RadiusFn radius) {
    const int m = (int)pts.size();
    std::vector<int> label(m, -1);
    int nclusters = 0;
    for (int i = 0; i < m; ++i) {
        if (label[i] >= 0) continue;
        label[i] = nclusters++;
        // expand component
        std::vector<int> stack{i};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < m; ++v) {
                if (label[v] >= 0) continue;
                R rad = std::min(radius(pts[u]), radius(pts[v]));
                if (std::abs(pts[u] - pts[v]) <= rad) {
                    label[v] = label[i];
                    stack.push_back(v);
                }
            }
        }
    }
    std::vector<std::pair<Cx<R>, int>> out(nclusters, {Cx<R>(0), 0});
    for (int i = 0; i < m; ++i) {
        out[label[i]].first += pts[i];
        out[label[i]].second += 1;
    }
    for (auto& c : out) c.first /= R(c.second);
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        return LexKey<R>(x.first, R(1e-12)) < LexKey<R>(y.first, R(1e-12));
    });
    return out;
}

// Angle of w normalized into (0, 2*pi] relative to a cut direction.
template <class R>
R angle_from_cut(const Cx<R>& w, R cut) {
    R a = std::atan2(w.imag(), w.real()) - cut;
    const R twopi = R(2) * pi_v<R>();
    while (a <= R(0)) a += twopi;
    while (a > twopi) a -= twopi;
    return a;
}

} // namespace polymoment

#endif
