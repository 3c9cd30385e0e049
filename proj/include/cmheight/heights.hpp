#pragma once

#include "cmheight/algebraic_number.hpp"
#include "cmheight/curve.hpp"

namespace cmh {

enum class HeightMethod { Doubling, LocalSum };
std::string to_string(HeightMethod m);

struct HeightResult {
    RealInterval value;
    HeightMethod method = HeightMethod::Doubling;
    mpfr_prec_t precision = 0;
    /// Exact torsion was detected along the doubling orbit.
    bool torsion_detected = false;
};

struct LocalHeightValue {
    PlaceData place;
    RealInterval lambda;
};

/// Absolute logarithmic Weil height from the Mahler measure of the minimal
/// polynomial; radius ≤ tol.
RealInterval weil_height(const AlgebraicNumber& a, double tol = 1e-30);
RealInterval weil_height(const NFElement& a, double tol = 1e-30);

// Local heights use the model-independent Néron functions with
// ĥ(P) = Σ_v d_v λ_v(P), where ĥ(P) = ½·lim 4^{−n} h(x(2ⁿP)).

/// λ_v at an archimedean place of the field of P. E over ℚ; P ≠ O.
LocalHeightValue archimedean_local_height(const CurvePoint& P, const PlaceData& v, double tol);

/// λ_v at a finite place of the field of P (ℚ or quadratic). E over ℚ; P ≠ O.
/// Exact multiple of log p. Throws "out of desk scope" at a bad prime that
/// ramifies in the field of P.
LocalHeightValue finite_local_height(const CurvePoint& P, const PlaceData& v, double tol);

/// Telescoping doubling series with a certified tail. E over ℚ; P over ℚ, a
/// quadratic or a cyclotomic field.
HeightResult canonical_height_doubling(const CurvePoint& P, double tol);

/// Σ_v d_v λ_v over the archimedean places, the bad primes and the primes
/// where x(P) is not integral. P over ℚ or a quadratic field.
HeightResult canonical_height_local_sum(const CurvePoint& P, double tol);

/// ĥ(P + Q) + ĥ(P − Q) − 2ĥ(P) − 2ĥ(Q) by the doubling method.
RealInterval parallelogram_residual(const CurvePoint& P, const CurvePoint& Q, double tol);

struct FloorReport {
    std::size_t checked = 0;
    std::size_t violations = 0;
    /// Smallest λ_∞ lower bound seen (+∞ if nothing checked).
    double observed_min = 0;
    std::string worst_point;
};

/// Checks λ_∞(R) ≥ −C₁ over every archimedean place of every non-zero sample.
FloorReport archimedean_floor_check(const std::vector<CurvePoint>& samples, const RealInterval& C1,
                                    double tol = 1e-12);

}  // namespace cmh
