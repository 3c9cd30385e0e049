#pragma once

#include "cmheight/curve.hpp"

#include <vector>

namespace cmh {

/// Division polynomial in x for a curve over ℚ, normalised so that its roots
/// are exactly the x-coordinates of E[n] ∖ {O}: ψ_n for odd n and
/// ψ_2²·(ψ_n/ψ_2) for even n, where ψ_2 = 2y + a1x + a3 and
/// ψ_2² = 4x³ + b2x² + 2b4x + b6. Degree (n² − 1)/2 for odd n and
/// (n² + 2)/2 for even n.
RatPoly division_polynomial(const EllipticCurve& E, int n);

/// Squarefree polynomial whose roots are the x-coordinates of points of
/// exact order n (n ≥ 2).
RatPoly primitive_division_polynomial(const EllipticCurve& E, int n);

/// The x-only part f_n of the recurrence (ψ_n = f_n for odd n,
/// ψ_n = ψ_2·f_n for even n).
std::vector<RatPoly> division_recurrence(const EllipticCurve& E, int n);

/// All points of exact order n whose x-coordinate has degree ≤ 2 over ℚ and
/// whose y-coordinate lies in ℚ(x) or a quadratic extension of ℚ (when x is
/// rational). Curve over ℚ. Deterministic order.
std::vector<CurvePoint> low_degree_torsion_points(const CurvePtr& E, int n);

}  // namespace cmh
