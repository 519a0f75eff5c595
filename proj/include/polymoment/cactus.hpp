#ifndef POLYMOMENT_CACTUS_HPP
#define POLYMOMENT_CACTUS_HPP

#include <deque>
#include <map>
#include <optional>

#include "polymoment/continuation.hpp"

namespace polymoment {

// One non-white vertex of the cactus: a cycle of the color's generator. Its
// valency equals the cycle length. `point` carries the preimage location when
// the cactus was built from an actual polynomial.
template <class R = double>
struct CactusVertex {
    int color = 0;
    std::vector<int> stars; // branch indices of the cycle, cycle order
    std::optional<Cx<R>> point;
};

// The (possibly extended) cactus as a combinatorial object: n stars (white
// vertices, one per branch) and one colored vertex per generator cycle, star i
// adjacent to the color-s vertex whose cycle contains i. The incidence graph
// is a tree with n * colors edges.
template <class R = double>
struct Cactus {
    int n = 0;
    int colors = 0;
    std::vector<CactusVertex<R>> vertices;
    std::vector<std::vector<int>> vertex_of; // [color][star] -> vertex id
    std::optional<int> mark_a, mark_b;

    int edge_count() const { return n * colors; }

    int vertex_at(int color, int star) const { return vertex_of[color][star]; }

    // Vertex id of the color-s cycle containing `star`, -1 when out of range.
    int find_vertex(int color, int star) const {
        if (color < 0 || color >= colors || star < 0 || star >= n) return -1;
        return vertex_of[color][star];
    }

    void set_marks(int vertex_a, int vertex_b) {
        if (vertex_a < 0 || vertex_a >= (int)vertices.size() || vertex_b < 0 ||
            vertex_b >= (int)vertices.size())
            throw StructureError("set_marks: vertex id out of range");
        mark_a = vertex_a;
        mark_b = vertex_b;
    }
};

// Builds the cactus from monodromy data and verifies the tree invariants:
// the incidence structure must be connected and acyclic (V = E + 1 with
// E = n * colors). Throws StructureError on inconsistent input.
template <class R>
Cactus<R> build_cactus(const MonodromyData<R>& md) {
    Cactus<R> cx;
    cx.n = md.n();
    cx.colors = (int)md.generators.size();
    if (cx.n < 1 || cx.colors < 1) throw StructureError("build_cactus: empty monodromy data");
    cx.vertex_of.assign(cx.colors, std::vector<int>(cx.n, -1));
    for (int s = 0; s < cx.colors; ++s) {
        if (md.generators[s].size() != cx.n)
            throw StructureError("build_cactus: generator size mismatch");
        for (const auto& cyc : md.generators[s].cycles()) {
            CactusVertex<R> v;
            v.color = s;
            v.stars = cyc;
            int id = (int)cx.vertices.size();
            for (int star : cyc) cx.vertex_of[s][star] = id;
            cx.vertices.push_back(std::move(v));
        }
    }

    // tree check on the incidence graph: V = E + 1 and connected
    const int V = (int)cx.vertices.size() + cx.n;
    const int E = cx.edge_count();
    if (V != E + 1)
        throw StructureError("build_cactus: incidence structure is not a tree (V != E+1)");
    std::vector<bool> seen_vertex(cx.vertices.size(), false), seen_star(cx.n, false);
    std::deque<std::pair<bool, int>> dq; // (is_star, id)
    dq.push_back({true, 0});
    seen_star[0] = true;
    while (!dq.empty()) {
        auto [is_star, id] = dq.front();
        dq.pop_front();
        if (is_star) {
            for (int s = 0; s < cx.colors; ++s) {
                int v = cx.vertex_of[s][id];
                if (!seen_vertex[v]) {
                    seen_vertex[v] = true;
                    dq.push_back({false, v});
                }
            }
        } else {
            for (int star : cx.vertices[id].stars) {
                if (!seen_star[star]) {
                    seen_star[star] = true;
                    dq.push_back({true, star});
                }
            }
        }
    }
    for (bool b : seen_vertex)
        if (!b) throw StructureError("build_cactus: incidence structure is disconnected");
    for (bool b : seen_star)
        if (!b) throw StructureError("build_cactus: incidence structure is disconnected");
    return cx;
}

// Extends the monodromy data by P(a) and/or P(b) when these are regular
// values (their loop generators are computed by honest tracking and must come
// out trivial), rebuilds the cactus, decorates vertices with preimage
// locations, and marks the vertices containing a and b.
template <class R>
std::pair<Cactus<R>, MonodromyData<R>> extend(const Polynomial<R>& P, const MonodromyData<R>& md,
                                              const Cx<R>& a, const Cx<R>& b,
                                              unsigned seed = 0x5eed) {
    const Cx<R> Pa = eval(P, a), Pb = eval(P, b);
    R scale(1);
    for (const auto& v : md.crit_values) scale = std::max(scale, std::abs(v));
    if (std::abs(a - b) <= R(1e-12) * (R(1) + std::abs(a) + std::abs(b)))
        throw Error("extend: endpoints a and b must be distinct");
    for (const Cx<R>& v : {Pa, Pb}) {
        if (std::abs(v - md.base) < R(1e-6) * (scale + std::abs(md.base)))
            throw BasePointCollision("extend: base point coincides with P(a) or P(b)");
    }

    MonodromyData<R> ext = md;
    auto color_of = [&](const Cx<R>& v) -> int {
        for (size_t s = 0; s < ext.crit_values.size(); ++s)
            if (std::abs(ext.crit_values[s] - v) <= R(1e-6) * (R(1) + std::abs(v))) return (int)s;
        return -1;
    };

    const Polynomial<R> dP = derivative(P);
    for (const Cx<R>& v : {Pa, Pb}) {
        if (color_of(v) >= 0) continue; // already a color (critical value, or P(a)=P(b))
        std::vector<Cx<R>> all = ext.crit_values;
        R rad = detail::loop_radius(all, v, scale + R(1));
        rad = std::min(rad, std::abs(v - ext.base) / R(4));
        auto plan = detail::loop_plan(ext.base, v, rad);
        auto moved = ext.fiber;
        for (size_t i = 0; i + 1 < plan.waypoints.size(); ++i)
            detail::track_segment(P, dP, moved, plan.waypoints[i], plan.waypoints[i + 1], plan.refinement);
        Perm g = detail::match_to_fiber(ext.fiber, moved);
        if (!g.is_identity())
            throw StructureError("extend: value declared regular has nontrivial monodromy");
        ext.crit_values.push_back(v);
        ext.generators.push_back(g);
    }

    // restore the counterclockwise order with the standard cut
    {
        Cx<R> ctr(0);
        for (const auto& v : ext.crit_values) ctr += v;
        ctr /= R(ext.crit_values.size());
        const R cut = std::atan2((ext.base - ctr).imag(), (ext.base - ctr).real());
        std::vector<size_t> order(ext.crit_values.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](size_t i, size_t j) {
            return angle_from_cut(ext.crit_values[i] - ext.base, cut) <
                   angle_from_cut(ext.crit_values[j] - ext.base, cut);
        });
        std::vector<Cx<R>> cv;
        std::vector<Perm> gen;
        for (size_t i : order) {
            cv.push_back(ext.crit_values[i]);
            gen.push_back(ext.generators[i]);
        }
        ext.crit_values = std::move(cv);
        ext.generators = std::move(gen);
    }

    Cactus<R> cx = build_cactus(ext);

    // decorate vertices with preimage locations; the branch partition at each
    // color must reproduce the generator cycles
    for (int s = 0; s < cx.colors; ++s) {
        auto parts = fiber_partition_at(P, ext, ext.crit_values[s], seed);
        for (const auto& part : parts) {
            if (part.branches.empty()) throw StructureError("extend: empty branch cluster");
            int id = cx.vertex_of[s][part.branches.front()];
            std::vector<int> sorted_cycle = cx.vertices[id].stars;
            std::sort(sorted_cycle.begin(), sorted_cycle.end());
            std::vector<int> sorted_part = part.branches;
            std::sort(sorted_part.begin(), sorted_part.end());
            if (sorted_cycle != sorted_part)
                throw StructureError("extend: branch partition disagrees with generator cycles");
            cx.vertices[id].point = part.point;
        }
    }

    auto locate = [&](const Cx<R>& x, const Cx<R>& v) {
        auto br = branches_at(P, ext, x, seed);
        int s = color_of(v);
        if (s < 0) throw StructureError("extend: endpoint value lost its color");
        return cx.vertex_of[s][br.front()];
    };
    cx.mark_a = locate(a, Pa);
    cx.mark_b = locate(b, Pb);
    return {cx, ext};
}

// The unique tree path from a to b: colored vertices and stars it traverses,
// the coefficient matrix of the branch relations it induces, and the path
// weights per color.
template <class R = double>
struct PathAB {
    int n = 0;
    int colors = 0;
    std::vector<int> vertex_ids;           // colored vertices along the path, a first
    std::vector<int> vertex_colors;        // parallel to vertex_ids
    std::vector<int> stars;                // stars between consecutive vertices
    std::vector<std::vector<int>> f;       // [color][star] in {-1, 0, +1}
};

template <class R>
PathAB<R> path_ab(const Cactus<R>& cx) {
    if (!cx.mark_a || !cx.mark_b) throw StructureError("path_ab: marks a, b are not set");
    if (*cx.mark_a == *cx.mark_b) throw StructureError("path_ab: marks coincide");

    // BFS over the incidence tree; nodes: colored vertex ids, then stars
    const int VC = (int)cx.vertices.size();
    const int total = VC + cx.n;
    std::vector<int> prev(total, -2);
    std::deque<int> dq;
    prev[*cx.mark_a] = -1;
    dq.push_back(*cx.mark_a);
    while (!dq.empty()) {
        int u = dq.front();
        dq.pop_front();
        if (u == *cx.mark_b) break;
        if (u < VC) {
            for (int star : cx.vertices[u].stars) {
                if (prev[VC + star] == -2) {
                    prev[VC + star] = u;
                    dq.push_back(VC + star);
                }
            }
        } else {
            int star = u - VC;
            for (int s = 0; s < cx.colors; ++s) {
                int v = cx.vertex_of[s][star];
                if (prev[v] == -2) {
                    prev[v] = u;
                    dq.push_back(v);
                }
            }
        }
    }
    if (prev[*cx.mark_b] == -2) throw StructureError("path_ab: marks are not connected");

    std::vector<int> nodes;
    for (int u = *cx.mark_b; u != -1; u = prev[u]) nodes.push_back(u);
    std::reverse(nodes.begin(), nodes.end());

    PathAB<R> p;
    p.n = cx.n;
    p.colors = cx.colors;
    p.f.assign(cx.colors, std::vector<int>(cx.n, 0));
    for (size_t i = 0; i < nodes.size(); ++i) {
        if (i % 2 == 0) {
            p.vertex_ids.push_back(nodes[i]);
            p.vertex_colors.push_back(cx.vertices[nodes[i]].color);
        } else {
            p.stars.push_back(nodes[i] - VC);
        }
    }
    // sign rule: when moving along the path, the vertex followed by the center
    // of S_i contributes -1 in (color, i); the vertex reached from the center
    // contributes +1. Stars met only in a single vertex stay zero.
    for (size_t k = 0; k < p.stars.size(); ++k) {
        const int star = p.stars[k];
        p.f[p.vertex_colors[k]][star] = -1;     // entry vertex
        p.f[p.vertex_colors[k + 1]][star] = +1; // exit vertex
    }
    return p;
}

// Weight of each color on the path: number of its vertices along the path,
// endpoints counted 1/2.
template <class R>
std::vector<R> weights(const PathAB<R>& p) {
    std::vector<R> w(p.colors, R(0));
    for (size_t i = 0; i < p.vertex_colors.size(); ++i) {
        const bool endpoint = (i == 0) || (i + 1 == p.vertex_colors.size());
        w[p.vertex_colors[i]] += endpoint ? R(0.5) : R(1);
    }
    return w;
}

struct Skeleton {
    std::vector<int> stars; // ordered star indices traversed by the path
    int length = 0;
};

// The path with white vertices erased: its edges are the traversed stars.
template <class R>
Skeleton skeleton(const PathAB<R>& p) {
    return Skeleton{p.stars, (int)p.stars.size()};
}

} // namespace polymoment

#endif
