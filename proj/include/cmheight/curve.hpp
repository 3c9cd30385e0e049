#pragma once

#include "cmheight/number_field.hpp"

#include <array>
#include <memory>

namespace cmh {

class EllipticCurve;
using CurvePtr = std::shared_ptr<const EllipticCurve>;

/// Generalised Weierstrass model y² + a1xy + a3y = x³ + a2x² + a4x + a6 over ℚ
/// or a quadratic field.
class EllipticCurve {
public:
    /// Throws "singular model" if Δ = 0.
    EllipticCurve(FieldPtr K, std::array<NFElement, 5> a);

    static CurvePtr make(FieldPtr K, std::array<NFElement, 5> a);
    static CurvePtr over_Q(const std::array<Rational, 5>& a);
    /// "a1;a2;a3;a4;a6", entries rational or power-basis tuples in K.
    static CurvePtr parse(const std::string& text, const FieldPtr& K = NumberField::rational());

    const FieldPtr& field() const { return K_; }
    bool over_rationals() const { return K_->kind() == FieldKind::Rational; }

    const NFElement& a1() const { return a_[0]; }
    const NFElement& a2() const { return a_[1]; }
    const NFElement& a3() const { return a_[2]; }
    const NFElement& a4() const { return a_[3]; }
    const NFElement& a6() const { return a_[4]; }
    const std::array<NFElement, 5>& a_invariants() const { return a_; }
    const NFElement& b2() const { return b2_; }
    const NFElement& b4() const { return b4_; }
    const NFElement& b6() const { return b6_; }
    const NFElement& b8() const { return b8_; }
    const NFElement& c4() const { return c4_; }
    const NFElement& c6() const { return c6_; }
    const NFElement& discriminant() const { return disc_; }
    const NFElement& j_invariant() const { return j_; }

    /// Rational a-invariants; throws unless the curve is over ℚ.
    std::array<Rational, 5> rational_a() const;
    Rational rational_j() const;

    bool contains(const NFElement& x, const NFElement& y) const;
    /// Right-hand side minus the non-square part: the equation is
    /// (2y + a1x + a3)² = 4x³ + b2x² + 2b4x + b6.
    NFElement two_torsion_cubic(const NFElement& x) const;

    /// "[a1,a2,a3,a4,a6]".
    std::string to_string() const;
    /// "a1;a2;a3;a4;a6".
    std::string serialize() const;

    bool operator==(const EllipticCurve& o) const;
    bool operator!=(const EllipticCurve& o) const { return !(*this == o); }

private:
    FieldPtr K_;
    std::array<NFElement, 5> a_;
    NFElement b2_, b4_, b6_, b8_, c4_, c6_, disc_, j_;
};

/// A point of E with coordinates in a field L (L = field of E, or E over ℚ
/// and L any supported field).
class CurvePoint {
public:
    static CurvePoint infinity(CurvePtr E, FieldPtr L = nullptr);
    /// Throws "point not on curve".
    CurvePoint(CurvePtr E, NFElement x, NFElement y);
    /// "x,y" or "inf"; coordinates parsed in L.
    static CurvePoint parse(CurvePtr E, const std::string& text, const FieldPtr& L);

    const CurvePtr& curve() const { return E_; }
    const FieldPtr& field() const { return L_; }
    bool is_infinity() const { return inf_; }
    const NFElement& x() const;
    const NFElement& y() const;

    /// The same point with coordinates viewed in L (ℚ-points only).
    CurvePoint in_field(const FieldPtr& L) const;
    /// Apply a field automorphism to the coordinates (see NFElement::conjugate).
    CurvePoint conjugate(int k = -1) const;

    std::string to_string() const;

    friend bool operator==(const CurvePoint& P, const CurvePoint& Q);
    friend bool operator!=(const CurvePoint& P, const CurvePoint& Q) { return !(P == Q); }

private:
    CurvePoint(CurvePtr E, FieldPtr L) : E_(std::move(E)), L_(std::move(L)), inf_(true) {}

    CurvePtr E_;
    FieldPtr L_;
    bool inf_ = false;
    NFElement x_, y_;
};

CurvePoint point_add(const CurvePoint& P, const CurvePoint& Q);
CurvePoint point_neg(const CurvePoint& P);
CurvePoint point_sub(const CurvePoint& P, const CurvePoint& Q);
CurvePoint point_double(const CurvePoint& P);
CurvePoint scalar_mul(const Integer& n, const CurvePoint& P);

/// Model change (u, r, s, t): x = u²x' + r, y = u³y' + u²s x' + t.
struct ModelChange {
    Rational u = 1, r = 0, s = 0, t = 0;
};

/// a-invariants of the transformed model (curve over ℚ).
std::array<Rational, 5> transform_a(const std::array<Rational, 5>& a, const ModelChange& w);
/// Image of a point (coordinates in any field) under the change of model.
std::pair<NFElement, NFElement> transform_point(const NFElement& x, const NFElement& y,
                                                const ModelChange& w);

}  // namespace cmh
