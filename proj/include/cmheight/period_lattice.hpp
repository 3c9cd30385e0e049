#pragma once

#include "cmheight/curve.hpp"

namespace cmh {

/// Period lattice Λ = ω₁(ℤ + ℤτ) of the invariant differential
/// dx/(2y + a1x + a3) on a curve over ℚ, with τ in the standard fundamental
/// domain. Certified: τ is the unique solution of j(τ) = j(E) in its box.
struct PeriodLattice {
    ComplexBall omega1;
    ComplexBall tau;
    ComplexBall q;  // e^{2πiτ}
};

PeriodLattice period_lattice(const EllipticCurve& E, mpfr_prec_t prec);

/// Eisenstein series E4, E6 and j at τ (ball), with certified tails.
struct ModularValues {
    ComplexBall E4, E6, j;
};
ModularValues modular_values(const ComplexBall& tau);

/// Normalised Weierstrass function of ℤ + ℤτ at w: value and w-derivative of
/// P(w) = 1/12 + Σ_{n∈ℤ} qⁿu/(1 − qⁿu)² − 2Σ_{n≥1} qⁿ/(1 − qⁿ)², u = e^{2πiw},
/// so that ℘(z; Λ) = (2πi/ω₁)²·P(z/ω₁).
struct NormalisedP {
    ComplexBall value, derivative;
};
NormalisedP normalised_p(const ComplexBall& q, const ComplexBall& w);

/// Moves w to ±w + m + nτ with 0 ≤ Im w ≤ Im τ / 2 and |Re w| ≤ 1/2.
ComplexBall reduce_log(const ComplexBall& w, const ComplexBall& tau);

/// w = z/ω₁ for a point with X = ℘(z) (X = x + b2/12), reduced as above.
/// Determined up to sign; half_period selects the 2-torsion branch where
/// ℘' vanishes.
ComplexBall elliptic_log_from_x(const PeriodLattice& L, const ComplexBall& X, bool half_period);

}  // namespace cmh
