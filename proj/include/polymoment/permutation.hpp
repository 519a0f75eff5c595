#ifndef POLYMOMENT_PERMUTATION_HPP
#define POLYMOMENT_PERMUTATION_HPP

#include <numeric>
#include <string>
#include <vector>

#include "polymoment/errors.hpp"

namespace polymoment {

// Permutation of {0..n-1} stored as an image table. Serialized 1-based in
// cycle notation with fixed points included, e.g. "(1)(2)(37)(4)(5)(6)(8)".
class Perm {
  public:
    Perm() = default;
    explicit Perm(int n) : img_(n) { std::iota(img_.begin(), img_.end(), 0); }
    explicit Perm(std::vector<int> img) : img_(std::move(img)) {
        std::vector<bool> seen(img_.size(), false);
        for (int v : img_) {
            if (v < 0 || v >= (int)img_.size() || seen[v])
                throw StructureError("Perm: image table is not a bijection");
            seen[v] = true;
        }
    }

    int size() const { return (int)img_.size(); }
    int operator()(int i) const { return img_[i]; }
    const std::vector<int>& images() const { return img_; }

    bool is_identity() const {
        for (int i = 0; i < size(); ++i)
            if (img_[i] != i) return false;
        return true;
    }

    Perm inverse() const {
        std::vector<int> inv(img_.size());
        for (int i = 0; i < size(); ++i) inv[img_[i]] = i;
        return Perm(std::move(inv));
    }

    // this-then-other: result(i) = other(this(i))
    Perm then(const Perm& other) const {
        std::vector<int> out(img_.size());
        for (int i = 0; i < size(); ++i) out[i] = other(img_[i]);
        return Perm(std::move(out));
    }

    // conjugate by a relabeling: result(sigma(i)) = sigma(this(i))
    Perm relabeled(const Perm& sigma) const {
        std::vector<int> out(img_.size());
        for (int i = 0; i < size(); ++i) out[sigma(i)] = sigma(img_[i]);
        return Perm(std::move(out));
    }

    // Cycles ordered by smallest member; each cycle starts at its smallest.
    std::vector<std::vector<int>> cycles() const {
        std::vector<std::vector<int>> out;
        std::vector<bool> seen(img_.size(), false);
        for (int i = 0; i < size(); ++i) {
            if (seen[i]) continue;
            std::vector<int> c{i};
            seen[i] = true;
            for (int j = img_[i]; j != i; j = img_[j]) {
                c.push_back(j);
                seen[j] = true;
            }
            out.push_back(std::move(c));
        }
        return out;
    }

    bool is_single_cycle() const { return size() > 0 && (int)cycles().size() == 1; }

    bool operator==(const Perm& o) const { return img_ == o.img_; }

  private:
    std::vector<int> img_;
};

// Left-to-right product: apply gens[0] first.
inline Perm product(const std::vector<Perm>& gens, int n) {
    Perm r(n);
    for (const auto& g : gens) r = r.then(g);
    return r;
}

// Cycle notation, 1-based. Labels are concatenated when every label is a
// single digit (n <= 9), otherwise space-separated inside each cycle.
inline std::string cycle_notation(const Perm& g) {
    std::string out;
    const bool spaced = g.size() > 9;
    for (const auto& c : g.cycles()) {
        out += '(';
        for (size_t i = 0; i < c.size(); ++i) {
            if (spaced && i > 0) out += ' ';
            out += std::to_string(c[i] + 1);
        }
        out += ')';
    }
    return out;
}

} // namespace polymoment

#endif
