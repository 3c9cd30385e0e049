#include "cmheight/number_field.hpp"

#include "cmheight/arith.hpp"
#include "cmheight/resultant.hpp"

#include <cctype>
#include <numeric>
#include <regex>

namespace cmh {

IntPoly cyclotomic_polynomial(int n) {
    if (n < 1) throw std::invalid_argument("cyclotomic index must be positive");
    IntPoly p = IntPoly::monomial(1, static_cast<std::size_t>(n)) - IntPoly::constant(1);
    for (int d = 1; d < n; ++d) {
        if (n % d == 0) p = exact_div(p, cyclotomic_polynomial(d));
    }
    return p;
}

FieldPtr NumberField::rational() {
    static const FieldPtr q = [] {
        auto K = std::shared_ptr<NumberField>(new NumberField());
        K->kind_ = FieldKind::Rational;
        K->degree_ = 1;
        K->defpoly_ = IntPoly{0, 1};
        K->defpoly_rat_ = to_rat(K->defpoly_);
        K->disc_ = 1;
        return FieldPtr(K);
    }();
    return q;
}

FieldPtr NumberField::quadratic(const Integer& D) {
    if (D == 0 || D == 1) throw std::invalid_argument("quadratic radicand must not be 0 or 1");
    if (!is_squarefree(D)) throw std::invalid_argument("quadratic radicand must be squarefree");
    auto K = std::shared_ptr<NumberField>(new NumberField());
    K->kind_ = FieldKind::Quadratic;
    K->degree_ = 2;
    K->D_ = D;
    K->defpoly_ = IntPoly{Integer(-D), 0, 1};
    K->defpoly_rat_ = to_rat(K->defpoly_);
    K->disc_ = mod(D, Integer(4)) == 1 ? D : Integer(4 * D);
    return K;
}

FieldPtr NumberField::cyclotomic(int n) {
    if (n < 3 || n > 64) throw std::invalid_argument("cyclotomic n must satisfy 3 <= n <= 64");
    auto K = std::shared_ptr<NumberField>(new NumberField());
    K->kind_ = FieldKind::Cyclotomic;
    K->n_ = n;
    K->conductor_ = (n % 4 == 2) ? n / 2 : n;
    K->defpoly_ = cyclotomic_polynomial(n);
    K->defpoly_rat_ = to_rat(K->defpoly_);
    K->degree_ = K->defpoly_.degree();
    // disc ℚ(ζ_m) = (−1)^{φ/2} m^φ / Π_{p|m} p^{φ/(p−1)}
    const int m = K->conductor_;
    const long phi = euler_phi(m);
    Integer num, den = 1;
    mpz_ui_pow_ui(num.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(phi));
    for (const auto& [p, e] : factor(Integer(m))) {
        Integer pk;
        mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(phi / (p.get_si() - 1)));
        den *= pk;
    }
    K->disc_ = num / den;
    if ((phi / 2) % 2) K->disc_ = -K->disc_;
    // ℤ[ζ] is the maximal order, so the polynomial discriminant must agree.
    if (poly_discriminant(K->defpoly_) != K->disc_) {
        throw std::logic_error("cyclotomic discriminant mismatch");
    }
    return K;
}

FieldPtr NumberField::parse(const std::string& descriptor) {
    std::string s;
    for (char ch : descriptor) {
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    }
    if (s == "Q" || s == "rational") return rational();
    std::smatch m;
    static const std::regex sq(R"(Q\(sqrt,(-?\d+)\))");
    static const std::regex cy(R"(Q\(zeta,(\d+)\))");
    static const std::regex sq2(R"(quadratic(-?\d+))");
    static const std::regex cy2(R"(cyclotomic(\d+))");
    if (std::regex_match(s, m, sq) || std::regex_match(s, m, sq2)) {
        return quadratic(Integer(m[1].str(), 10));
    }
    if (std::regex_match(s, m, cy) || std::regex_match(s, m, cy2)) {
        return cyclotomic(std::stoi(m[1].str()));
    }
    throw std::invalid_argument("malformed field descriptor: " + descriptor);
}

std::string NumberField::descriptor() const {
    switch (kind_) {
        case FieldKind::Rational:
            return "Q";
        case FieldKind::Quadratic:
            return "Q(sqrt," + D_.get_str() + ")";
        case FieldKind::Cyclotomic:
            return "Q(zeta," + std::to_string(n_) + ")";
    }
    return "?";
}

std::vector<Rational> NumberField::reduce(const RatPoly& p) const {
    std::vector<Rational> c(static_cast<std::size_t>(degree_), Rational(0));
    if (kind_ == FieldKind::Quadratic) {
        // x² = D
        Rational Dq(D_);
        Rational pw = 1;
        for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
            c[i % 2] += p.coeffs()[i] * pw;
            if (i % 2 == 1) pw *= Dq;
        }
        return c;
    }
    if (kind_ == FieldKind::Rational) {
        c[0] = p.eval(Rational(0));
        return c;
    }
    RatPoly r = p.degree() >= degree_ ? p % defpoly_rat_ : p;
    for (std::size_t i = 0; i < r.coeffs().size(); ++i) c[i] = r.coeffs()[i];
    return c;
}

// ---------------------------------------------------------------------------
// NFElement

NFElement::NFElement(FieldPtr K) : K_(std::move(K)) {
    c_.assign(static_cast<std::size_t>(K_->degree()), Rational(0));
}

NFElement::NFElement(FieldPtr K, const Rational& v) : NFElement(std::move(K)) { c_[0] = v; }

NFElement::NFElement(FieldPtr K, std::vector<Rational> coords) : K_(std::move(K)), c_(std::move(coords)) {
    if (c_.size() > static_cast<std::size_t>(K_->degree())) {
        c_ = K_->reduce(RatPoly(c_));
    }
    c_.resize(static_cast<std::size_t>(K_->degree()), Rational(0));
    for (auto& v : c_) v.canonicalize();
}

NFElement NFElement::generator(FieldPtr K) {
    if (K->degree() == 1) return NFElement(K, Rational(0));
    std::vector<Rational> c(static_cast<std::size_t>(K->degree()), Rational(0));
    c[1] = 1;
    return NFElement(std::move(K), std::move(c));
}

bool NFElement::is_zero() const {
    for (const auto& v : c_) {
        if (v != 0) return false;
    }
    return true;
}

bool NFElement::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i) {
        if (c_[i] != 0) return false;
    }
    return true;
}

Rational NFElement::rational_value() const {
    if (!is_rational()) throw std::domain_error("element is not rational");
    return c_[0];
}

NFElement NFElement::coerce_to(const FieldPtr& L) const {
    if (*K_ == *L) return NFElement(L, c_);
    if (is_rational()) return NFElement(L, c_[0]);
    throw std::invalid_argument("mixed fields");
}

namespace {

const FieldPtr& common(const NFElement& a, const NFElement& b) {
    if (*a.field() == *b.field()) return a.field();
    if (b.is_rational()) return a.field();
    if (a.is_rational()) return b.field();
    throw std::invalid_argument("mixed fields");
}

}  // namespace

NFElement operator+(const NFElement& a, const NFElement& b) {
    const FieldPtr& K = common(a, b);
    NFElement x = a.coerce_to(K), y = b.coerce_to(K);
    for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
    return x;
}

NFElement operator-(const NFElement& a, const NFElement& b) {
    const FieldPtr& K = common(a, b);
    NFElement x = a.coerce_to(K), y = b.coerce_to(K);
    for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
    return x;
}

NFElement operator*(const NFElement& a, const NFElement& b) {
    const FieldPtr& K = common(a, b);
    if (b.is_rational()) return a.coerce_to(K) * b.c_[0];
    if (a.is_rational()) return b.coerce_to(K) * a.c_[0];
    if (K->kind() == FieldKind::Quadratic) {
        const Rational D(K->radicand());
        return NFElement(K, {a.c_[0] * b.c_[0] + D * a.c_[1] * b.c_[1],
                             a.c_[0] * b.c_[1] + a.c_[1] * b.c_[0]});
    }
    return NFElement(K, K->reduce(a.as_poly() * b.as_poly()));
}

NFElement operator*(const NFElement& a, const Rational& s) {
    NFElement x = a;
    for (auto& v : x.c_) v *= s;
    return NFElement(x.field(), x.coords());
}

NFElement operator+(const NFElement& a, const Rational& s) {
    return a + NFElement(a.field(), s);
}

NFElement operator/(const NFElement& a, const NFElement& b) { return a * b.inverse(); }

bool operator==(const NFElement& a, const NFElement& b) {
    if (*a.field() == *b.field()) return a.c_ == b.c_;
    if (a.is_rational() && b.is_rational()) return a.c_[0] == b.c_[0];
    return false;
}

NFElement NFElement::operator-() const {
    NFElement x = *this;
    for (auto& v : x.c_) v = -v;
    return x;
}

NFElement NFElement::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    if (is_rational()) return NFElement(K_, Rational(1 / c_[0]));
    if (K_->kind() == FieldKind::Quadratic) {
        Rational n = norm();
        return NFElement(K_, {c_[0] / n, -c_[1] / n});
    }
    // Extended Euclid: u·a + v·f = 1
    RatPoly f = to_rat(K_->defining_polynomial());
    RatPoly r0 = f, r1 = as_poly();
    RatPoly s0, s1 = RatPoly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        RatPoly s = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    // r0 is a nonzero constant because f is irreducible
    return NFElement(K_, K_->reduce(s0 * Rational(1 / r0.leading())));
}

Rational NFElement::norm() const {
    if (K_->kind() == FieldKind::Rational) return c_[0];
    if (K_->kind() == FieldKind::Quadratic) return c_[0] * c_[0] - Rational(K_->radicand()) * c_[1] * c_[1];
    if (is_rational()) {
        Rational r = 1;
        for (int i = 0; i < K_->degree(); ++i) r *= c_[0];
        return r;
    }
    // f monic: Res(f, a) = Π a(θ_i)
    return poly_resultant(to_rat(K_->defining_polynomial()), as_poly());
}

Rational NFElement::trace() const {
    if (K_->kind() != FieldKind::Cyclotomic) return c_[0] * K_->degree();
    RatPoly cp = characteristic_polynomial(*this);
    return -cp.coeff(static_cast<std::size_t>(K_->degree() - 1));
}

NFElement NFElement::conjugate(int k) const {
    if (k == 1 || K_->kind() == FieldKind::Rational) return *this;
    if (K_->kind() == FieldKind::Quadratic) {
        if (k != -1) throw std::invalid_argument("quadratic conjugation index must be -1 or 1");
        return NFElement(K_, {c_[0], -c_[1]});
    }
    const int n = K_->order();
    int kk = ((k % n) + n) % n;
    if (std::gcd(kk, n) != 1) throw std::invalid_argument("conjugation index not coprime to n");
    RatPoly img = compose(as_poly(), to_rat(IntPoly::monomial(1, static_cast<std::size_t>(kk))));
    return NFElement(K_, K_->reduce(img));
}

std::string NFElement::to_string() const {
    if (is_rational()) return c_[0].get_str();
    std::string s = "(";
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ",";
        s += c_[i].get_str();
    }
    return s + ")";
}

Rational parse_rational(const std::string& text) {
    std::string t;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    }
    static const std::regex re(R"([+-]?\d+(/\d+)?)");
    static const std::regex dec(R"(([+-]?)(\d*)\.(\d+))");
    std::smatch m;
    if (std::regex_match(t, re)) {
        if (!t.empty() && t[0] == '+') t = t.substr(1);
        Rational q(t, 10);
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
        q.canonicalize();
        return q;
    }
    if (std::regex_match(t, m, dec)) {
        std::string digits = m[2].str() + m[3].str();
        Integer num(digits.empty() ? "0" : digits, 10);
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, m[3].length());
        Rational q(num, den);
        q.canonicalize();
        return m[1].str() == "-" ? Rational(-q) : q;
    }
    throw std::invalid_argument("malformed rational: " + text);
}

NFElement parse_element(const FieldPtr& K, const std::string& text) {
    std::string t;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    }
    if (t.empty()) throw std::invalid_argument("empty element");
    if (t.front() != '(') return NFElement(K, parse_rational(t));
    if (t.back() != ')') throw std::invalid_argument("malformed element: " + text);
    std::vector<Rational> c;
    std::string body = t.substr(1, t.size() - 2);
    std::size_t start = 0;
    while (true) {
        std::size_t comma = body.find(',', start);
        c.push_back(parse_rational(body.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (c.size() > static_cast<std::size_t>(K->degree())) {
        throw std::invalid_argument("too many coordinates for " + K->descriptor() + ": " + text);
    }
    return NFElement(K, std::move(c));
}

RatPoly characteristic_polynomial(const NFElement& a) {
    const FieldPtr& K = a.field();
    const int d = K->degree();
    if (a.is_rational()) {
        RatPoly lin{Rational(-a.coords()[0]), Rational(1)};
        RatPoly r = RatPoly::constant(1);
        for (int i = 0; i < d; ++i) r = r * lin;
        return r;
    }
    if (K->kind() == FieldKind::Quadratic) {
        return RatPoly{a.norm(), Rational(-2 * a.coords()[0]), Rational(1)};
    }
    // χ(t) = Res_y(f(y), t − a(y)) at t = 0..d, then Lagrange interpolation.
    const RatPoly f = to_rat(K->defining_polynomial());
    const RatPoly ay = a.as_poly();
    std::vector<Rational> ts, vs;
    for (int t = 0; t <= d; ++t) {
        ts.emplace_back(t);
        vs.push_back(poly_resultant(f, RatPoly::constant(Rational(t)) - ay));
    }
    RatPoly out;
    for (int i = 0; i <= d; ++i) {
        RatPoly basis = RatPoly::constant(1);
        Rational den = 1;
        for (int j = 0; j <= d; ++j) {
            if (j == i) continue;
            basis = basis * RatPoly{Rational(-ts[static_cast<std::size_t>(j)]), Rational(1)};
            den *= ts[static_cast<std::size_t>(i)] - ts[static_cast<std::size_t>(j)];
        }
        out += basis * Rational(vs[static_cast<std::size_t>(i)] / den);
    }
    return out;
}

IntPoly minimal_polynomial(const NFElement& a) {
    if (a.is_rational()) {
        const Rational& v = a.coords()[0];
        return primitive_part(IntPoly{Integer(-v.get_num()), v.get_den()});
    }
    // χ = m^k with m irreducible, so the squarefree part is m.
    return squarefree_part(primitive_integer(characteristic_polynomial(a)));
}

}  // namespace cmh

namespace cmh {

bool sqrt_in_field(const NFElement& a, NFElement* root) {
    const FieldPtr& K = a.field();
    if (a.is_zero()) {
        if (root) *root = NFElement(K);
        return true;
    }
    Rational r;
    if (a.is_rational()) {
        if (is_square(a.rational_value(), &r)) {
            if (root) *root = NFElement(K, r);
            return true;
        }
        if (K->kind() == FieldKind::Quadratic && is_square(Rational(a.rational_value() / K->radicand()), &r)) {
            if (root) *root = NFElement(K, {Rational(0), r});
            return true;
        }
        if (K->kind() == FieldKind::Rational || K->kind() == FieldKind::Quadratic) return false;
    }
    if (K->kind() != FieldKind::Quadratic) throw std::domain_error("out of desk scope");
    // (x + y√D)² = u + v√D  ⇔  x² + D y² = u, 2xy = v
    const Rational& u = a.coords()[0];
    const Rational& v = a.coords()[1];
    const Rational D(K->radicand());
    Rational n;
    if (!is_square(Rational(u * u - D * v * v), &n)) return false;
    for (const Rational& cand : {Rational((u + n) / 2), Rational((u - n) / 2)}) {
        Rational x;
        if (cand != 0 && is_square(cand, &x)) {
            NFElement s(K, {x, Rational(v / (2 * x))});
            if (s * s == a) {
                if (root) *root = s;
                return true;
            }
        }
    }
    return false;
}

}  // namespace cmh
