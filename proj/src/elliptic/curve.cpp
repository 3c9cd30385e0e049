#include "cmheight/curve.hpp"

#include <sstream>

namespace cmh {

EllipticCurve::EllipticCurve(FieldPtr K, std::array<NFElement, 5> a) : K_(std::move(K)) {
    if (K_->kind() == FieldKind::Cyclotomic) {
        throw std::invalid_argument("curves over cyclotomic fields are not supported");
    }
    for (std::size_t i = 0; i < 5; ++i) a_[i] = a[i].coerce_to(K_);
    const NFElement &a1 = a_[0], &a2 = a_[1], &a3 = a_[2], &a4 = a_[3], &a6 = a_[4];
    b2_ = a1 * a1 + a2 * Rational(4);
    b4_ = a1 * a3 + a4 * Rational(2);
    b6_ = a3 * a3 + a6 * Rational(4);
    b8_ = a1 * a1 * a6 + a2 * a6 * Rational(4) - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    c4_ = b2_ * b2_ - b4_ * Rational(24);
    c6_ = -(b2_ * b2_ * b2_) + b2_ * b4_ * Rational(36) - b6_ * Rational(216);
    disc_ = -(b2_ * b2_ * b8_) - b4_ * b4_ * b4_ * Rational(8) - b6_ * b6_ * Rational(27) +
            b2_ * b4_ * b6_ * Rational(9);
    if (disc_.is_zero()) throw std::invalid_argument("singular model");
    j_ = c4_ * c4_ * c4_ / disc_;
    if (c4_ * c4_ * c4_ - c6_ * c6_ != disc_ * Rational(1728)) {
        throw std::logic_error("invariant identity c4^3 - c6^2 = 1728 disc failed");
    }
}

CurvePtr EllipticCurve::make(FieldPtr K, std::array<NFElement, 5> a) {
    return std::make_shared<const EllipticCurve>(std::move(K), std::move(a));
}

CurvePtr EllipticCurve::over_Q(const std::array<Rational, 5>& a) {
    auto Q = NumberField::rational();
    std::array<NFElement, 5> e;
    for (std::size_t i = 0; i < 5; ++i) e[i] = NFElement(Q, a[i]);
    return make(Q, e);
}

CurvePtr EllipticCurve::parse(const std::string& text, const FieldPtr& K) {
    std::array<NFElement, 5> a;
    std::size_t start = 0;
    for (std::size_t i = 0; i < 5; ++i) {
        std::size_t semi = text.find(';', start);
        if ((i < 4) != (semi != std::string::npos)) {
            throw std::invalid_argument("curve must be five entries a1;a2;a3;a4;a6: " + text);
        }
        a[i] = parse_element(K, text.substr(start, semi == std::string::npos ? std::string::npos : semi - start));
        start = semi + 1;
    }
    return make(K, a);
}

std::array<Rational, 5> EllipticCurve::rational_a() const {
    if (!over_rationals()) throw std::domain_error("curve is not defined over Q");
    std::array<Rational, 5> r;
    for (std::size_t i = 0; i < 5; ++i) r[i] = a_[i].rational_value();
    return r;
}

Rational EllipticCurve::rational_j() const {
    if (!j_.is_rational()) throw std::domain_error("j-invariant is not rational");
    return j_.rational_value();
}

bool EllipticCurve::contains(const NFElement& x, const NFElement& y) const {
    NFElement lhs = y * y + a_[0] * x * y + a_[2] * y;
    NFElement rhs = x * x * x + a_[1] * x * x + a_[3] * x + a_[4];
    return lhs == rhs;
}

NFElement EllipticCurve::two_torsion_cubic(const NFElement& x) const {
    return x * x * x * Rational(4) + b2_ * x * x + b4_ * x * Rational(2) + b6_;
}

std::string EllipticCurve::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < 5; ++i) os << (i ? "," : "") << a_[i].to_string();
    os << "]";
    return os.str();
}

std::string EllipticCurve::serialize() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < 5; ++i) os << (i ? ";" : "") << a_[i].to_string();
    return os.str();
}

bool EllipticCurve::operator==(const EllipticCurve& o) const {
    if (*K_ != *o.K_) return false;
    for (std::size_t i = 0; i < 5; ++i) {
        if (a_[i] != o.a_[i]) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// CurvePoint

namespace {

void check_field(const CurvePtr& E, const FieldPtr& L) {
    if (*E->field() == *L) return;
    if (E->over_rationals()) return;
    throw std::invalid_argument("point field must equal the curve field for curves over extensions");
}

}  // namespace

CurvePoint CurvePoint::infinity(CurvePtr E, FieldPtr L) {
    if (!L) L = E->field();
    check_field(E, L);
    return CurvePoint(std::move(E), std::move(L));
}

CurvePoint::CurvePoint(CurvePtr E, NFElement x, NFElement y) : E_(std::move(E)) {
    L_ = x.field()->degree() >= y.field()->degree() ? x.field() : y.field();
    if (E_->field()->degree() > L_->degree()) L_ = E_->field();
    check_field(E_, L_);
    x_ = x.coerce_to(L_);
    y_ = y.coerce_to(L_);
    if (!E_->contains(x_, y_)) throw std::invalid_argument("point not on curve");
}

CurvePoint CurvePoint::parse(CurvePtr E, const std::string& text, const FieldPtr& L) {
    std::string t;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    }
    if (t == "inf" || t == "O") return infinity(std::move(E), L);
    // split on the comma at parenthesis depth 0
    int depth = 0;
    std::size_t split = std::string::npos;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] == '(') ++depth;
        if (t[i] == ')') --depth;
        if (t[i] == ',' && depth == 0) {
            if (split != std::string::npos) throw std::invalid_argument("malformed point: " + text);
            split = i;
        }
    }
    if (split == std::string::npos) throw std::invalid_argument("malformed point: " + text);
    NFElement x = parse_element(L, t.substr(0, split));
    NFElement y = parse_element(L, t.substr(split + 1));
    CurvePoint P(std::move(E), x, y);
    return P.in_field(L);
}

const NFElement& CurvePoint::x() const {
    if (inf_) throw std::domain_error("point at infinity has no affine coordinates");
    return x_;
}

const NFElement& CurvePoint::y() const {
    if (inf_) throw std::domain_error("point at infinity has no affine coordinates");
    return y_;
}

CurvePoint CurvePoint::in_field(const FieldPtr& L) const {
    if (*L == *L_) return *this;
    if (inf_) return infinity(E_, L);
    return CurvePoint(E_, x_.coerce_to(L), y_.coerce_to(L));
}

CurvePoint CurvePoint::conjugate(int k) const {
    if (inf_) return *this;
    if (!E_->over_rationals()) {
        // the automorphism must fix the curve
        for (const auto& a : E_->a_invariants()) {
            if (a.conjugate(k) != a) throw std::invalid_argument("automorphism does not fix the curve");
        }
    }
    return CurvePoint(E_, x_.conjugate(k), y_.conjugate(k));
}

std::string CurvePoint::to_string() const {
    if (inf_) return "inf";
    return x_.to_string() + "," + y_.to_string();
}

bool operator==(const CurvePoint& P, const CurvePoint& Q) {
    if (*P.E_ != *Q.E_) return false;
    if (P.inf_ || Q.inf_) return P.inf_ == Q.inf_;
    return P.x_ == Q.x_ && P.y_ == Q.y_;
}

namespace {

FieldPtr common_field(const CurvePoint& P, const CurvePoint& Q) {
    if (*P.curve() != *Q.curve()) throw std::invalid_argument("mixed curves");
    const FieldPtr& A = P.field();
    const FieldPtr& B = Q.field();
    if (*A == *B) return A;
    if (A->kind() == FieldKind::Rational) return B;
    if (B->kind() == FieldKind::Rational) return A;
    throw std::invalid_argument("mixed fields");
}

}  // namespace

CurvePoint point_neg(const CurvePoint& P) {
    if (P.is_infinity()) return P;
    const auto& E = *P.curve();
    return CurvePoint(P.curve(), P.x(), -P.y() - E.a1() * P.x() - E.a3());
}

CurvePoint point_add(const CurvePoint& P0, const CurvePoint& Q0) {
    FieldPtr L = common_field(P0, Q0);
    CurvePoint P = P0.in_field(L), Q = Q0.in_field(L);
    if (P.is_infinity()) return Q;
    if (Q.is_infinity()) return P;
    const auto& E = *P.curve();
    const NFElement &x1 = P.x(), &y1 = P.y(), &x2 = Q.x(), &y2 = Q.y();
    NFElement lambda, nu;
    if (x1 == x2) {
        if ((y1 + y2 + E.a1() * x2 + E.a3()).is_zero()) return CurvePoint::infinity(P.curve(), L);
        NFElement den = y1 * Rational(2) + E.a1() * x1 + E.a3();
        lambda = (x1 * x1 * Rational(3) + E.a2() * x1 * Rational(2) + E.a4() - E.a1() * y1) / den;
        nu = (-(x1 * x1 * x1) + E.a4() * x1 + E.a6() * Rational(2) - E.a3() * y1) / den;
    } else {
        NFElement inv = (x2 - x1).inverse();
        lambda = (y2 - y1) * inv;
        nu = (y1 * x2 - y2 * x1) * inv;
    }
    NFElement x3 = lambda * lambda + E.a1() * lambda - E.a2() - x1 - x2;
    NFElement y3 = -(lambda + E.a1()) * x3 - nu - E.a3();
    return CurvePoint(P.curve(), x3, y3);
}

CurvePoint point_sub(const CurvePoint& P, const CurvePoint& Q) { return point_add(P, point_neg(Q)); }

CurvePoint point_double(const CurvePoint& P) { return point_add(P, P); }

CurvePoint scalar_mul(const Integer& n, const CurvePoint& P) {
    if (n < 0) return point_neg(scalar_mul(Integer(-n), P));
    CurvePoint R = CurvePoint::infinity(P.curve(), P.field());
    if (n == 0 || P.is_infinity()) return R;
    const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        R = point_double(R);
        if (mpz_tstbit(n.get_mpz_t(), i)) R = point_add(R, P);
    }
    return R;
}

std::array<Rational, 5> transform_a(const std::array<Rational, 5>& a, const ModelChange& w) {
    const Rational &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a6 = a[4];
    const Rational &u = w.u, &r = w.r, &s = w.s, &t = w.t;
    if (u == 0) throw std::invalid_argument("model change with u = 0");
    Rational u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
    std::array<Rational, 5> b;
    b[0] = (a1 + 2 * s) / u;
    b[1] = (a2 - s * a1 + 3 * r - s * s) / u2;
    b[2] = (a3 + r * a1 + 2 * t) / u3;
    b[3] = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u4;
    b[4] = (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) / u6;
    for (auto& v : b) v.canonicalize();
    return b;
}

std::pair<NFElement, NFElement> transform_point(const NFElement& x, const NFElement& y,
                                                const ModelChange& w) {
    Rational iu2 = 1 / (w.u * w.u);
    Rational iu3 = iu2 / w.u;
    NFElement xr = x - NFElement(x.field(), w.r);
    NFElement xp = xr * iu2;
    NFElement yp = (y - xr * w.s - NFElement(y.field(), w.t)) * iu3;
    return {xp, yp};
}

}  // namespace cmh
