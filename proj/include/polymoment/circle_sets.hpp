#ifndef POLYMOMENT_CIRCLE_SETS_HPP
#define POLYMOMENT_CIRCLE_SETS_HPP

#include <set>

#include "polymoment/continuation.hpp"

namespace polymoment {

enum class CircleVerdict { DISJOINTED, ALMOST_DISJOINTED, NEITHER };

inline const char* to_string(CircleVerdict v) {
    switch (v) {
        case CircleVerdict::DISJOINTED: return "DISJOINTED";
        case CircleVerdict::ALMOST_DISJOINTED: return "ALMOST_DISJOINTED";
        default: return "NEITHER";
    }
}

// Positions on the unit circle of the branches meeting a and b, in the
// canonical numbering at infinity: V(a) = { e_n^{j} : j canonical index of a
// branch converging to a }, likewise V(b).
template <class R = double>
struct CircleSets {
    int n = 0;
    std::vector<int> a_indices, b_indices; // canonical indices, sorted
    std::vector<Cx<R>> Va, Vb;             // corresponding roots of unity
    Cx<R> center_a, center_b;              // mass centers
    CircleVerdict verdict = CircleVerdict::NEITHER;
};

namespace detail {

// Arc-separation scan on exact index sets modulo n.
inline CircleVerdict circle_verdict(const std::vector<int>& A, const std::vector<int>& B, int n) {
    std::set<int> sa(A.begin(), A.end()), sb(B.begin(), B.end());
    std::vector<int> common;
    for (int j : sa)
        if (sb.count(j)) common.push_back(j);
    if (common.size() >= 2) return CircleVerdict::NEITHER;

    if (common.empty()) {
        // disjointed iff going around the circle the labels change exactly twice
        std::vector<char> label;
        for (int j = 0; j < n; ++j) {
            if (sa.count(j)) label.push_back('a');
            else if (sb.count(j)) label.push_back('b');
        }
        int changes = 0;
        for (size_t t = 0; t < label.size(); ++t)
            if (label[t] != label[(t + 1) % label.size()]) ++changes;
        return changes <= 2 ? CircleVerdict::DISJOINTED : CircleVerdict::NEITHER;
    }

    // one shared point: cut the circle there; the rest must split into an
    // a-block followed by a b-block (or the reverse)
    const int s1 = common.front();
    std::vector<char> label;
    for (int t = 1; t < n; ++t) {
        int j = (s1 + t) % n;
        if (sa.count(j)) label.push_back('a');
        else if (sb.count(j)) label.push_back('b');
    }
    int changes = 0;
    for (size_t t = 0; t + 1 < label.size(); ++t)
        if (label[t] != label[t + 1]) ++changes;
    return changes <= 1 ? CircleVerdict::ALMOST_DISJOINTED : CircleVerdict::NEITHER;
}

} // namespace detail

// Computes V(a), V(b) for the pair of marked points and classifies their
// mutual position on the unit circle.
template <class R>
CircleSets<R> circle_sets(const Polynomial<R>& P, const MonodromyData<R>& md, const Perm& align,
                          const Cx<R>& a, const Cx<R>& b, unsigned seed = 0x5eed) {
    if (std::abs(a - b) == R(0)) throw Error("circle_sets: a and b must be distinct");
    CircleSets<R> cs;
    cs.n = md.n();
    for (int i : branches_at(P, md, a, seed)) cs.a_indices.push_back(align(i));
    for (int i : branches_at(P, md, b, seed)) cs.b_indices.push_back(align(i));
    std::sort(cs.a_indices.begin(), cs.a_indices.end());
    std::sort(cs.b_indices.begin(), cs.b_indices.end());
    for (int j : cs.a_indices) {
        cs.Va.push_back(unit_phase(R(2) * pi_v<R>() * R(j) / R(cs.n)));
        cs.center_a += cs.Va.back();
    }
    for (int j : cs.b_indices) {
        cs.Vb.push_back(unit_phase(R(2) * pi_v<R>() * R(j) / R(cs.n)));
        cs.center_b += cs.Vb.back();
    }
    if (!cs.Va.empty()) cs.center_a /= R(cs.Va.size());
    if (!cs.Vb.empty()) cs.center_b /= R(cs.Vb.size());
    cs.verdict = detail::circle_verdict(cs.a_indices, cs.b_indices, cs.n);
    return cs;
}

} // namespace polymoment

#endif
