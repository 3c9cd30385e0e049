#pragma once

#include "cmheight/places.hpp"

namespace cmh {

/// An algebraic number given by its primitive minimal polynomial and a box
/// isolating one of its roots.
class AlgebraicNumber {
public:
    AlgebraicNumber(IntPoly minpoly, ComplexBall root);

    static AlgebraicNumber from_rational(const Rational& q);
    /// The image of a under the embedding of an archimedean place.
    static AlgebraicNumber from_element(const NFElement& a, const PlaceData& place);
    /// Any root of a field element's minimal polynomial (the Weil height does
    /// not depend on the choice).
    static AlgebraicNumber from_element(const NFElement& a);

    const IntPoly& minimal_polynomial() const { return minpoly_; }
    const ComplexBall& root() const { return root_; }
    int degree() const { return minpoly_.degree(); }

    /// Same number with an isolating box of radius ≤ target.
    AlgebraicNumber refined(const Rational& target) const;

private:
    IntPoly minpoly_;
    ComplexBall root_;
};

}  // namespace cmh
