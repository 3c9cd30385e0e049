#pragma once

#include "cmheight/arith.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace cmh {

/// Maximal order O_K = ℤ[ω] of an imaginary quadratic field, with
/// ω = √D/2 when D ≡ 0 mod 4 and ω = (D + √D)/2 when D ≡ 1 mod 4.
/// Multiplication table: ω² = c0 + c1·ω.
struct CMOrder {
    long disc = -4;
    long c0 = -1;
    long c1 = 0;

    /// D a negative fundamental discriminant.
    static CMOrder maximal(long D);
    /// The maximal order of the CM field of a rational CM j-invariant.
    static CMOrder for_j(const Rational& j);

    long trace_omega() const { return c1; }
    long norm_omega() const { return -c0; }
    std::string to_string() const;
};

enum class SplitType { Split, Inert, Ramified };
std::string to_string(SplitType s);
SplitType splitting_type(const CMOrder& O, long p);

/// a + bω mod q'.
struct Residue {
    long a = 1;
    long b = 0;
    friend bool operator==(const Residue& x, const Residue& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator<(const Residue& x, const Residue& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    }
};

/// C(q') = (O_K/q')^×.
struct ResidueUnitGroup {
    CMOrder order;
    long modulus = 1;
    long p = 1;
    int ell = 0;
    SplitType splitting = SplitType::Split;
    std::uint64_t size = 0;
    /// Sorted unit list; empty when the group is too large to hold.
    std::vector<Residue> elements;
    std::vector<Residue> generators;
    bool materialized() const { return !elements.empty(); }

    Residue mul(const Residue& x, const Residue& y) const;
    Residue inverse(const Residue& x) const;
    long norm(const Residue& x) const;  // mod q'
    bool is_unit(const Residue& x) const;
    std::uint32_t index(const Residue& x) const { return static_cast<std::uint32_t>(x.a * modulus + x.b); }
};

constexpr long kMaxResidueModulus = 1L << 14;
/// Unit lists are stored only while q'² is at most this.
constexpr long kMaterializeLimit = 1L << 22;

/// (p−1)²p^{2ℓ−2}, (p²−1)p^{2ℓ−2} or p(p−1)p^{2ℓ−2} by splitting type.
std::uint64_t closed_form_unit_count(const CMOrder& O, long qprime);

/// Exhaustive enumeration of units (norm prime to p); order checked against
/// the closed form. q' a prime power ≤ 2¹⁴.
ResidueUnitGroup residue_unit_group(const CMOrder& O, long qprime);

/// Row-major matrix of multiplication by a + bω on the basis (1, ω), mod q'.
std::array<long, 4> gl2_embedding(const CMOrder& O, long qprime, const Residue& x);

/// Subgroup of C generated by gens (sorted).
std::vector<Residue> subgroup_closure(const ResidueUnitGroup& C, const std::vector<Residue>& gens);

/// Subgroup of (ℤ/q')^×.
struct HomothetySubgroup {
    long modulus = 1;
    std::vector<long> elements;  // sorted representatives in [1, q')
    long index = 1;
    bool contains(long g) const;
};

/// Validates that elements form a subgroup of (ℤ/q')^×.
HomothetySubgroup make_unit_subgroup(long qprime, std::vector<long> elements);

/// H = {g : g·Id ∈ G}. Throws if G is not closed under multiplication.
HomothetySubgroup homothety_subgroup(const ResidueUnitGroup& C, const std::vector<Residue>& G);

/// All subgroups of (ℤ/q')^× of index ≤ max_index, q' a prime power.
std::vector<HomothetySubgroup> unit_subgroups(long qprime, long max_index);

struct ScalarPair {
    Integer g1, g2;
    Integer gap() const { return g2 - g1; }
};

/// First pair g1 < g2 (g1 ascending, then g2) with classes in H and
/// 2 < g2 − g1 < 36d + 6, representatives in [1, q' + 36d + 6).
ScalarPair scalar_gap_search(const HomothetySubgroup& H, long d);

/// [C : G] ≤ 3·dFprime.
bool index_bound_audit(const ResidueUnitGroup& C, std::size_t G_size, long dFprime);

}  // namespace cmh
