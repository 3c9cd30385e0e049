#pragma once

#include "cmheight/polynomial.hpp"

namespace cmh {

/// Res(p, q) = det Sylvester(p, q) = lc(p)^deg q · Π_{p(α)=0} q(α).
/// With this convention Res(x − a, x − b) = b − a.
/// Computed by fraction-free (Bareiss) elimination.
Integer poly_resultant(const IntPoly& p, const IntPoly& q);

/// Same convention over ℚ, by the Euclidean remainder sequence.
Rational poly_resultant(const RatPoly& p, const RatPoly& q);

/// disc(p) = (−1)^{n(n−1)/2} Res(p, p') / lc(p).
Integer poly_discriminant(const IntPoly& p);

}  // namespace cmh
