#pragma once

#include "cmheight/curve.hpp"

namespace cmh {

struct TorsionResult {
    bool torsion = false;
    /// Exact order when torsion, 0 otherwise.
    long order = 0;
    /// gcd of the reduction counts; the order divides it.
    Integer bound;
    std::vector<Integer> primes_used;
};

/// Decides whether P is torsion by reducing modulo several good primes that
/// are unramified in the field of P and checking bound·P = O. Throws
/// "no good primes" if fewer than two usable primes are found below 1000.
TorsionResult torsion_test(const CurvePoint& P);

/// #Ẽ(𝔽_{p^f}) for a curve over ℚ with good reduction at p ≥ 5 (model
/// p-integral).
Integer reduction_count(const EllipticCurve& E, const Integer& p, int f = 1);

}  // namespace cmh
