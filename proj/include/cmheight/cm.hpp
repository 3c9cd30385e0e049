#pragma once

#include "cmheight/curve.hpp"

namespace cmh {

struct CMDescriptor {
    Rational j;
    /// Discriminant of the CM field K.
    Integer field_disc;
    /// Discriminant of the endomorphism order, f²·D_K.
    Integer order_disc;
    /// Conductor f of the order.
    Integer conductor;
};

/// Throws "not a rational CM j-invariant" unless j is one of the 13 values.
CMDescriptor cm_lookup(const Rational& j);

/// All 13 entries, ordered by |order discriminant|.
const std::vector<CMDescriptor>& cm_table();

/// A fixed model over ℚ with the given CM j-invariant.
CurvePtr cm_representative_curve(const Rational& j);

}  // namespace cmh
