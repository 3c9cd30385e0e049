#pragma once

#include "cmheight/polynomial.hpp"

#include <memory>
#include <string>
#include <vector>

namespace cmh {

enum class FieldKind { Rational, Quadratic, Cyclotomic };

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

/// ℚ, ℚ(√D) with generator √D, or ℚ(ζ_n) with generator ζ_n. Elements are
/// stored in the power basis of the generator.
class NumberField {
public:
    static FieldPtr rational();
    /// D squarefree, D ∉ {0, 1}.
    static FieldPtr quadratic(const Integer& D);
    /// 3 ≤ n ≤ 64.
    static FieldPtr cyclotomic(int n);
    /// "Q" | "Q(sqrt,D)" | "Q(zeta,n)"; also "rational", "quadratic D",
    /// "cyclotomic n".
    static FieldPtr parse(const std::string& descriptor);

    FieldKind kind() const { return kind_; }
    int degree() const { return degree_; }
    const IntPoly& defining_polynomial() const { return defpoly_; }
    const Integer& discriminant() const { return disc_; }
    /// Radicand D of a quadratic field.
    const Integer& radicand() const { return D_; }
    /// n of ℚ(ζ_n) as given.
    int order() const { return n_; }
    /// Conductor of a cyclotomic field (n, or n/2 when n ≡ 2 mod 4).
    int conductor() const { return conductor_; }
    std::string descriptor() const;

    bool operator==(const NumberField& o) const {
        return kind_ == o.kind_ && D_ == o.D_ && n_ == o.n_;
    }
    bool operator!=(const NumberField& o) const { return !(*this == o); }

    /// Reduces a polynomial in the generator to power-basis coordinates.
    std::vector<Rational> reduce(const RatPoly& p) const;

private:
    NumberField() = default;

    FieldKind kind_ = FieldKind::Rational;
    int degree_ = 1;
    IntPoly defpoly_;
    RatPoly defpoly_rat_;
    Integer disc_ = 1;
    Integer D_ = 0;
    int n_ = 0;
    int conductor_ = 0;
};

IntPoly cyclotomic_polynomial(int n);

class NFElement {
public:
    NFElement() : NFElement(NumberField::rational()) {}
    explicit NFElement(FieldPtr K);  // zero
    NFElement(FieldPtr K, const Rational& v);
    NFElement(FieldPtr K, std::vector<Rational> coords);

    static NFElement generator(FieldPtr K);

    const FieldPtr& field() const { return K_; }
    const std::vector<Rational>& coords() const { return c_; }
    RatPoly as_poly() const { return RatPoly(c_); }

    bool is_zero() const;
    bool is_rational() const;
    /// The value of a rational element; throws otherwise.
    Rational rational_value() const;
    /// The same element viewed in another field that contains it. Only
    /// embedding ℚ into any field is supported.
    NFElement coerce_to(const FieldPtr& L) const;

    NFElement operator-() const;
    NFElement inverse() const;
    Rational norm() const;
    Rational trace() const;
    /// Image under the automorphism ζ ↦ ζ^k (cyclotomic) or √D ↦ −√D (k = −1,
    /// quadratic). k = 1 is the identity.
    NFElement conjugate(int k = -1) const;

    /// Rational or "(c0,c1,...)".
    std::string to_string() const;

    friend NFElement operator+(const NFElement& a, const NFElement& b);
    friend NFElement operator-(const NFElement& a, const NFElement& b);
    friend NFElement operator*(const NFElement& a, const NFElement& b);
    friend NFElement operator/(const NFElement& a, const NFElement& b);
    friend bool operator==(const NFElement& a, const NFElement& b);
    friend bool operator!=(const NFElement& a, const NFElement& b) { return !(a == b); }
    friend NFElement operator*(const NFElement& a, const Rational& s);

private:
    FieldPtr K_;
    std::vector<Rational> c_;
};

NFElement operator*(const NFElement& a, const Rational& s);
NFElement operator+(const NFElement& a, const Rational& s);

/// "3/4" or "(1,-2/3)" in the power basis of K.
NFElement parse_element(const FieldPtr& K, const std::string& text);
Rational parse_rational(const std::string& text);

/// A square root of a inside its own field, if one exists (ℚ and quadratic
/// fields only).
bool sqrt_in_field(const NFElement& a, NFElement* root);

/// Primitive irreducible integer polynomial vanishing at a (positive leading
/// coefficient), via the characteristic polynomial Res_y(f(y), t − a(y)).
IntPoly minimal_polynomial(const NFElement& a);
/// Characteristic polynomial of multiplication by a (monic, degree [K:ℚ]).
RatPoly characteristic_polynomial(const NFElement& a);

}  // namespace cmh
