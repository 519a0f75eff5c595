#ifndef POLYMOMENT_POLYNOMIAL_HPP
#define POLYMOMENT_POLYNOMIAL_HPP

#include <cassert>
#include <initializer_list>
#include <vector>

#include "polymoment/complexutil.hpp"
#include "polymoment/errors.hpp"

namespace polymoment {

// Dense univariate polynomial with complex coefficients, index i = coefficient
// of z^i. The zero polynomial has degree() == Polynomial::none. Coefficients
// whose magnitude falls below zero_threshold() * max|coeff| are trimmed from
// the top, so arithmetic noise does not inflate the degree.
template <class R = double>
class Polynomial {
  public:
    static constexpr int none = -1;

    Polynomial() = default;
    Polynomial(std::initializer_list<Cx<R>> cs) : c_(cs) { normalize(); }
    explicit Polynomial(std::vector<Cx<R>> cs) : c_(std::move(cs)) { normalize(); }

    static R zero_threshold() { return R(1e-12); }

    static Polynomial zero() { return Polynomial(); }
    static Polynomial one() { return Polynomial({Cx<R>(1)}); }
    static Polynomial identity() { return Polynomial({Cx<R>(0), Cx<R>(1)}); }
    static Polynomial constant(Cx<R> v) { return Polynomial({v}); }

    int degree() const { return (int)c_.size() - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }

    const std::vector<Cx<R>>& coeffs() const { return c_; }
    Cx<R> coeff(int i) const { return (i >= 0 && i < (int)c_.size()) ? c_[i] : Cx<R>(0); }
    Cx<R> lead() const { return c_.empty() ? Cx<R>(0) : c_.back(); }

    R max_abs_coeff() const {
        R m(0);
        for (const auto& z : c_) m = std::max(m, std::abs(z));
        return m;
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Cx<R>(0));
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        normalize();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Cx<R>(0));
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        normalize();
        return *this;
    }
    Polynomial& operator*=(const Cx<R>& s) {
        for (auto& z : c_) z *= s;
        normalize();
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Cx<R>& s) { return a *= s; }
    friend Polynomial operator*(const Cx<R>& s, Polynomial a) { return a *= s; }
    friend Polynomial operator-(Polynomial a) { return a *= Cx<R>(-1); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        std::vector<Cx<R>> out(a.c_.size() + b.c_.size() - 1, Cx<R>(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j)
                out[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(out));
    }

  private:
    void normalize() {
        R m(0);
        for (const auto& z : c_) {
            if (!is_finite(z)) throw Error("polynomial coefficient is not finite");
            m = std::max(m, std::abs(z));
        }
        const R thresh = zero_threshold() * m;
        while (!c_.empty() && std::abs(c_.back()) <= thresh) c_.pop_back();
    }

    std::vector<Cx<R>> c_; // low degree -> high, trimmed
};

// Horner evaluation.
template <class R>
Cx<R> eval(const Polynomial<R>& p, const Cx<R>& z) {
    Cx<R> r(0);
    const auto& c = p.coeffs();
    for (size_t i = c.size(); i-- > 0;) r = r * z + c[i];
    return r;
}

template <class R>
Polynomial<R> derivative(const Polynomial<R>& p) {
    if (p.degree() < 1) return Polynomial<R>();
    std::vector<Cx<R>> out(p.degree());
    for (int i = 1; i <= p.degree(); ++i) out[i - 1] = p.coeff(i) * R(i);
    return Polynomial<R>(std::move(out));
}

// Antiderivative Q with Q' == p and Q(basepoint) == 0.
template <class R>
Polynomial<R> antiderivative(const Polynomial<R>& p, const Cx<R>& basepoint) {
    std::vector<Cx<R>> out(p.degree() + 2, Cx<R>(0));
    for (int i = 0; i <= p.degree(); ++i) out[i + 1] = p.coeff(i) / R(i + 1);
    Polynomial<R> q(std::move(out));
    return q - Polynomial<R>::constant(eval(q, basepoint));
}

// outer(inner), Horner in the composition algebra.
template <class R>
Polynomial<R> compose(const Polynomial<R>& outer, const Polynomial<R>& inner) {
    Polynomial<R> r;
    const auto& c = outer.coeffs();
    for (size_t i = c.size(); i-- > 0;) {
        r = r * inner;
        r += Polynomial<R>::constant(c[i]);
    }
    return r;
}

template <class R>
Polynomial<R> pow(const Polynomial<R>& p, int k) {
    Polynomial<R> r = Polynomial<R>::one();
    for (int i = 0; i < k; ++i) r = r * p;
    return r;
}

// n-th Chebyshev polynomial of the first kind, T_{k+1} = 2 z T_k - T_{k-1}.
template <class R = double>
Polynomial<R> chebyshev(int n) {
    if (n < 0) throw DegreeError("chebyshev: order must be non-negative");
    Polynomial<R> a = Polynomial<R>::one();
    if (n == 0) return a;
    Polynomial<R> b = Polynomial<R>::identity();
    const Polynomial<R> twoz({Cx<R>(0), Cx<R>(2)});
    for (int k = 1; k < n; ++k) {
        Polynomial<R> c = twoz * b - a;
        a = std::move(b);
        b = std::move(c);
    }
    return b;
}

// Euclidean division a = q*b + r with deg r < deg b. The top coefficient of
// the running remainder is cancelled exactly at each step.
template <class R>
std::pair<Polynomial<R>, Polynomial<R>> divmod(const Polynomial<R>& a, const Polynomial<R>& b) {
    if (b.is_zero()) throw DegreeError("divmod: division by the zero polynomial");
    const int da = a.degree(), db = b.degree();
    if (da < db) return {Polynomial<R>(), a};
    std::vector<Cx<R>> rem(a.coeffs());
    std::vector<Cx<R>> quo(da - db + 1, Cx<R>(0));
    for (int k = da - db; k >= 0; --k) {
        Cx<R> f = rem[k + db] / b.lead();
        quo[k] = f;
        if (f != Cx<R>(0))
            for (int j = 0; j < db; ++j) rem[k + j] -= f * b.coeff(j);
        rem[k + db] = Cx<R>(0);
    }
    rem.resize(db);
    return {Polynomial<R>(std::move(quo)), Polynomial<R>(std::move(rem))};
}

template <class R>
R max_coeff_dist(const Polynomial<R>& a, const Polynomial<R>& b) {
    R m(0);
    int d = std::max(a.degree(), b.degree());
    for (int i = 0; i <= d; ++i) m = std::max(m, std::abs(a.coeff(i) - b.coeff(i)));
    return m;
}

} // namespace polymoment

#endif
