#pragma once

#include "cmheight/complex_ball.hpp"

#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace cmh {

/// Dense univariate polynomial, coefficients stored low to high. Trailing
/// zeros are stripped so the zero polynomial has an empty coefficient list.
template <class T>
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<T> c) : c_(std::move(c)) { normalize(); }
    Polynomial(std::initializer_list<T> c) : c_(c) { normalize(); }

    static Polynomial constant(const T& v) { return Polynomial(std::vector<T>{v}); }
    static Polynomial monomial(const T& v, std::size_t k) {
        std::vector<T> c(k + 1, T(0));
        c[k] = v;
        return Polynomial(std::move(c));
    }
    static Polynomial x() { return monomial(T(1), 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coeffs() const { return c_; }
    T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
    const T& leading() const {
        if (c_.empty()) throw std::domain_error("zero polynomial");
        return c_.back();
    }

    T eval(const T& x) const {
        T r(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = T(r * x + *it);
        return r;
    }

    Polynomial derivative() const {
        std::vector<T> d;
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(T(c_[i] * static_cast<long>(i)));
        return Polynomial(std::move(d));
    }

    Polynomial operator-() const {
        std::vector<T> c = c_;
        for (auto& v : c) v = -v;
        return Polynomial(std::move(c));
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        normalize();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        normalize();
        return *this;
    }
    Polynomial& operator*=(const T& s) {
        for (auto& v : c_) v *= s;
        normalize();
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
    friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        }
        return Polynomial(std::move(c));
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    /// Human-readable form, highest degree first, e.g. "3*x^4 + 12*x".
    std::string to_string(const std::string& var = "x") const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            const T& v = c_[static_cast<std::size_t>(i)];
            if (v == 0) continue;
            T mag = v < 0 ? T(-v) : v;
            if (first) {
                if (v < 0) os << "-";
            } else {
                os << (v < 0 ? " - " : " + ");
            }
            first = false;
            if (i == 0 || mag != 1) {
                os << mag.get_str();
                if (i > 0) os << "*";
            }
            if (i >= 1) os << var;
            if (i >= 2) os << "^" << i;
        }
        return os.str();
    }

private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<T> c_;
};

using IntPoly = Polynomial<Integer>;
using RatPoly = Polynomial<Rational>;

RatPoly to_rat(const IntPoly& p);
/// Scales by a positive rational to the primitive integer polynomial with
/// positive leading coefficient.
IntPoly primitive_integer(const RatPoly& p);
Integer content(const IntPoly& p);
IntPoly primitive_part(const IntPoly& p);

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);
RatPoly operator%(const RatPoly& a, const RatPoly& b);
/// Monic gcd (zero if both inputs are zero).
RatPoly gcd(const RatPoly& a, const RatPoly& b);
RatPoly monic(const RatPoly& p);
/// p(q(x)).
RatPoly compose(const RatPoly& p, const RatPoly& q);
bool is_squarefree(const IntPoly& p);
/// p / gcd(p, p'), primitive with positive leading coefficient.
IntPoly squarefree_part(const IntPoly& p);
/// Exact division; throws if b does not divide a.
IntPoly exact_div(const IntPoly& a, const IntPoly& b);

template <class T>
ComplexBall eval_ball(const Polynomial<T>& p, const ComplexBall& z) {
    ComplexBall r(z.precision());
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        r = r * z + Rational(*it);
    }
    return r;
}

template <class T>
RealInterval eval_interval(const Polynomial<T>& p, const RealInterval& x) {
    RealInterval r(0L, x.precision());
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        r = r * x + Rational(*it);
    }
    return r;
}

}  // namespace cmh
