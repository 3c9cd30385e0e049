#pragma once

#include "cmheight/polynomial.hpp"

#include <vector>

namespace cmh {

inline constexpr mpfr_prec_t kMaxPrecision = 1 << 14;

/// deg(p) pairwise-disjoint boxes, each holding exactly one root of the
/// squarefree polynomial p, each of radius ≤ target_radius. Roots certified
/// real are returned with an exact-zero imaginary part. Order: real roots
/// ascending, then the rest by (re, im).
std::vector<ComplexBall> isolate_complex_roots(const IntPoly& p, const Rational& target_radius,
                                               mpfr_prec_t max_prec = kMaxPrecision);

/// The real roots only, ascending.
std::vector<RealInterval> isolate_real_roots(const IntPoly& p, const Rational& target_radius,
                                             mpfr_prec_t max_prec = kMaxPrecision);

}  // namespace cmh
