#include "cmheight/polynomial.hpp"

namespace cmh {

RatPoly to_rat(const IntPoly& p) {
    std::vector<Rational> c;
    c.reserve(p.coeffs().size());
    for (const auto& v : p.coeffs()) c.emplace_back(v);
    return RatPoly(std::move(c));
}

Integer content(const IntPoly& p) {
    Integer g = 0;
    for (const auto& v : p.coeffs()) g = gcd(g, v);
    return g;
}

IntPoly primitive_part(const IntPoly& p) {
    if (p.is_zero()) return p;
    Integer g = content(p);
    if (p.leading() < 0) g = -g;
    std::vector<Integer> c;
    for (const auto& v : p.coeffs()) c.push_back(Integer(v / g));
    return IntPoly(std::move(c));
}

IntPoly primitive_integer(const RatPoly& p) {
    Integer den = 1;
    for (const auto& v : p.coeffs()) den = lcm(den, v.get_den());
    std::vector<Integer> c;
    for (const auto& v : p.coeffs()) c.push_back(Integer(v.get_num() * (den / v.get_den())));
    return primitive_part(IntPoly(std::move(c)));
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> r = a.coeffs();
    const int db = b.degree();
    const int da = a.degree();
    if (da < db) return {RatPoly(), a};
    std::vector<Rational> q(static_cast<std::size_t>(da - db + 1), Rational(0));
    const Rational& lb = b.leading();
    for (int i = da; i >= db; --i) {
        Rational t = r[static_cast<std::size_t>(i)] / lb;
        if (t == 0) continue;
        q[static_cast<std::size_t>(i - db)] = t;
        for (int j = 0; j <= db; ++j) {
            r[static_cast<std::size_t>(i - db + j)] -= t * b.coeffs()[static_cast<std::size_t>(j)];
        }
    }
    return {RatPoly(std::move(q)), RatPoly(std::move(r))};
}

RatPoly operator%(const RatPoly& a, const RatPoly& b) { return divmod(a, b).second; }

RatPoly monic(const RatPoly& p) {
    if (p.is_zero()) return p;
    return p * Rational(1 / p.leading());
}

RatPoly gcd(const RatPoly& a, const RatPoly& b) {
    RatPoly x = a, y = b;
    while (!y.is_zero()) {
        RatPoly r = x % y;
        x = std::move(y);
        y = monic(r);
    }
    return monic(x);
}

RatPoly compose(const RatPoly& p, const RatPoly& q) {
    RatPoly r;
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * q + RatPoly::constant(*it);
    return r;
}

bool is_squarefree(const IntPoly& p) {
    if (p.degree() <= 0) return true;
    RatPoly rp = to_rat(p);
    return gcd(rp, rp.derivative()).degree() == 0;
}

IntPoly squarefree_part(const IntPoly& p) {
    if (p.degree() <= 0) return primitive_part(p);
    RatPoly rp = to_rat(p);
    RatPoly g = gcd(rp, rp.derivative());
    return primitive_integer(divmod(rp, g).first);
}

IntPoly exact_div(const IntPoly& a, const IntPoly& b) {
    auto [q, r] = divmod(to_rat(a), to_rat(b));
    if (!r.is_zero()) throw std::domain_error("polynomial does not divide");
    std::vector<Integer> c;
    for (const auto& v : q.coeffs()) {
        if (v.get_den() != 1) throw std::domain_error("quotient is not integral");
        c.push_back(v.get_num());
    }
    return IntPoly(std::move(c));
}

}  // namespace cmh
