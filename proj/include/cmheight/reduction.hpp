#pragma once

#include "cmheight/curve.hpp"

namespace cmh {

enum class ReductionKind { Good, Multiplicative, Additive };
std::string to_string(ReductionKind k);

struct ReductionData {
    Integer p;
    /// Whether the given model was already integral and minimal at p.
    bool input_minimal = true;
    ReductionKind kind = ReductionKind::Good;
    /// v_p of the minimal discriminant.
    long disc_valuation = 0;
    /// Change of model from the input to a p-minimal model.
    ModelChange to_minimal;
    std::array<Rational, 5> minimal_a;
};

/// Minimal model at p by successive u = p substitutions, and the
/// good / multiplicative / additive classification. Curve over ℚ.
ReductionData reduction_over_Q(const EllipticCurve& E, const Integer& p);

/// Primes at which the given model is non-integral or has p | Δ, ascending.
/// Contains every prime of bad reduction.
std::vector<Integer> candidate_bad_primes(const EllipticCurve& E);

/// Change of model to an integral model of the form
/// [1? , 0, 0, 0] scaling (u = 1/m), with m the smallest positive integer
/// that works. Curve over ℚ.
ModelChange integral_scaling(const std::array<Rational, 5>& a);

}  // namespace cmh
