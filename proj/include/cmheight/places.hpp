#pragma once

#include "cmheight/number_field.hpp"

namespace cmh {

/// A place of a NumberField.
///
/// Normalisation used everywhere: finite |a|_v = p^{−v(a)/e} with v the
/// uniformiser valuation (v(p) = e), archimedean |a|_v the usual absolute
/// value of the embedding, and weights d_v = [K_v:ℚ_v]/[K:ℚ]. With these the
/// product formula reads Σ_v d_v log|a|_v = 0.
struct PlaceData {
    FieldPtr field;
    bool archimedean = false;
    // archimedean
    int embedding = 0;   // quadratic: 0 ↦ +√D, 1 ↦ −√D; cyclotomic: ζ ↦ e^{2πik/n}, k = embedding
    bool real = true;
    // finite
    Integer p = 0;
    int e = 1;
    int f = 1;
    int index = 0;       // which prime above p
    Integer split_root = -1;  // quadratic split: ω ≡ split_root mod the prime
    Rational weight = 1;

    /// Residue field cardinality p^f.
    Integer residue_cardinality() const;
    std::string to_string() const;
};

std::vector<PlaceData> archimedean_places(const FieldPtr& K);
/// Places above the rational prime p, with Σ e·f = [K:ℚ].
std::vector<PlaceData> prime_splitting(const FieldPtr& K, const Integer& p);

/// v(a) with v(uniformiser) = 1.
Rational finite_valuation(const NFElement& a, const PlaceData& v);
/// Enclosure of the image of a under the embedding of an archimedean place.
ComplexBall embed(const NFElement& a, const PlaceData& v, mpfr_prec_t prec);
/// Enclosure of the generator's image.
ComplexBall embed_generator(const PlaceData& v, mpfr_prec_t prec);
/// log|a|_v in the normalisation above; a ≠ 0.
RealInterval log_abs(const NFElement& a, const PlaceData& v, mpfr_prec_t prec);

}  // namespace cmh
