#include "cmheight/cm_galois.hpp"

#include "cmheight/cm.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cmh {

namespace {

long md(long a, long q) {
    long r = a % q;
    return r < 0 ? r + q : r;
}

long pow_long(long b, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

void check_modulus(long q, long& p, int& ell) {
    if (q < 2) throw std::invalid_argument("q' must be a prime power >= 2");
    if (q > kMaxResidueModulus) throw std::invalid_argument("q' exceeds the enumeration bound 2^14");
    Integer P;
    unsigned e = 0;
    if (!prime_power(Integer(q), P, e)) throw std::invalid_argument("q' is not a prime power");
    p = P.get_si();
    ell = static_cast<int>(e);
}

bool squarefree_long(long n) { return is_squarefree(Integer(n)); }

long inv_mod_long(long a, long q) { return inv_mod(Integer(a), Integer(q)).get_si(); }

}  // namespace

CMOrder CMOrder::maximal(long D) {
    if (D >= 0) throw std::invalid_argument("CM discriminant must be negative");
    CMOrder O;
    O.disc = D;
    const long r = md(D, 4);
    if (r == 1 && squarefree_long(D)) {
        O.c1 = D;
        O.c0 = -(D * D - D) / 4;
    } else if (r == 0 && (md(D / 4, 4) == 2 || md(D / 4, 4) == 3) && squarefree_long(D / 4)) {
        O.c1 = 0;
        O.c0 = D / 4;
    } else {
        throw std::invalid_argument("not a fundamental discriminant: " + std::to_string(D));
    }
    return O;
}

CMOrder CMOrder::for_j(const Rational& j) { return maximal(cm_lookup(j).field_disc.get_si()); }

std::string CMOrder::to_string() const {
    std::ostringstream os;
    os << "O_K(D=" << disc << "), w^2 = " << c0 << (c1 < 0 ? " - " : " + ") << (c1 < 0 ? -c1 : c1) << "w";
    return os.str();
}

std::string to_string(SplitType s) {
    switch (s) {
        case SplitType::Split: return "split";
        case SplitType::Inert: return "inert";
        case SplitType::Ramified: return "ramified";
    }
    return "?";
}

SplitType splitting_type(const CMOrder& O, long p) {
    int k = kronecker(Integer(O.disc), Integer(p));
    if (k == 0) return SplitType::Ramified;
    return k > 0 ? SplitType::Split : SplitType::Inert;
}

// ---------------------------------------------------------------------------

Residue ResidueUnitGroup::mul(const Residue& x, const Residue& y) const {
    const long q = modulus;
    const long bd = x.b * y.b % q;
    return {md(x.a * y.a + bd * order.c0, q), md(x.a * y.b + x.b * y.a + bd * md(order.c1, q), q)};
}

long ResidueUnitGroup::norm(const Residue& x) const {
    const long q = modulus;
    return md(x.a * x.a + md(x.a * x.b, q) * md(order.c1, q) - md(x.b * x.b, q) * md(order.c0, q), q);
}

bool ResidueUnitGroup::is_unit(const Residue& x) const { return norm(x) % p != 0; }

Residue ResidueUnitGroup::inverse(const Residue& x) const {
    if (!is_unit(x)) throw std::domain_error("non-unit element");
    const long q = modulus;
    const long ni = inv_mod_long(norm(x), q);
    Residue conj{md(x.a + x.b * order.c1, q), md(-x.b, q)};
    return {conj.a * ni % q, conj.b * ni % q};
}

std::uint64_t closed_form_unit_count(const CMOrder& O, long qprime) {
    long p = 0;
    int ell = 0;
    check_modulus(qprime, p, ell);
    const std::uint64_t tail = static_cast<std::uint64_t>(pow_long(p, 2 * (ell - 1)));
    const std::uint64_t P = static_cast<std::uint64_t>(p);
    switch (splitting_type(O, p)) {
        case SplitType::Split: return (P - 1) * (P - 1) * tail;
        case SplitType::Inert: return (P * P - 1) * tail;
        case SplitType::Ramified: return P * (P - 1) * tail;
    }
    return 0;
}

namespace {

// Extends the subgroup S (listed, with membership bitmap) by g.
void extend(const ResidueUnitGroup& C, std::vector<Residue>& S, std::vector<bool>& in, const Residue& g) {
    if (in[C.index(g)]) return;
    const std::size_t base = S.size();
    Residue pk = g;
    while (!in[C.index(pk)]) {
        for (std::size_t i = 0; i < base; ++i) {
            Residue r = C.mul(S[i], pk);
            in[C.index(r)] = true;
            S.push_back(r);
        }
        pk = C.mul(pk, g);
    }
}

}  // namespace

ResidueUnitGroup residue_unit_group(const CMOrder& O, long qprime) {
    ResidueUnitGroup C;
    C.order = O;
    C.modulus = qprime;
    check_modulus(qprime, C.p, C.ell);
    C.splitting = splitting_type(O, C.p);
    const bool keep = qprime * qprime <= kMaterializeLimit;
    std::uint64_t count = 0;
    for (long a = 0; a < qprime; ++a) {
        for (long b = 0; b < qprime; ++b) {
            if (!C.is_unit({a, b})) continue;
            ++count;
            if (keep) C.elements.push_back({a, b});
        }
    }
    C.size = count;
    if (count != closed_form_unit_count(O, qprime)) {
        throw std::logic_error("unit count disagrees with the splitting-type formula");
    }
    if (keep) {
        std::vector<Residue> S{Residue{1, 0}};
        std::vector<bool> in(static_cast<std::size_t>(qprime * qprime), false);
        in[C.index(S[0])] = true;
        for (const auto& e : C.elements) {
            if (S.size() == C.size) break;
            if (in[C.index(e)]) continue;
            C.generators.push_back(e);
            extend(C, S, in, e);
        }
    }
    return C;
}

std::array<long, 4> gl2_embedding(const CMOrder& O, long qprime, const Residue& x) {
    ResidueUnitGroup C;
    C.order = O;
    C.modulus = qprime;
    check_modulus(qprime, C.p, C.ell);
    Residue r{md(x.a, qprime), md(x.b, qprime)};
    if (!C.is_unit(r)) throw std::domain_error("non-unit element");
    return {r.a, md(r.b * O.c0, qprime), r.b, md(r.a + r.b * O.c1, qprime)};
}

std::vector<Residue> subgroup_closure(const ResidueUnitGroup& C, const std::vector<Residue>& gens) {
    std::vector<Residue> S{Residue{1, 0}};
    std::vector<bool> in(static_cast<std::size_t>(C.modulus * C.modulus), false);
    in[C.index(S[0])] = true;
    for (const auto& g0 : gens) {
        Residue g{md(g0.a, C.modulus), md(g0.b, C.modulus)};
        if (!C.is_unit(g)) throw std::domain_error("non-unit generator");
        extend(C, S, in, g);
    }
    std::sort(S.begin(), S.end());
    return S;
}

// ---------------------------------------------------------------------------

bool HomothetySubgroup::contains(long g) const {
    return std::binary_search(elements.begin(), elements.end(), md(g, modulus));
}

HomothetySubgroup make_unit_subgroup(long qprime, std::vector<long> elements) {
    long p = 0;
    int ell = 0;
    check_modulus(qprime, p, ell);
    for (auto& g : elements) {
        g = md(g, qprime);
        if (g % p == 0) throw std::invalid_argument("non-unit in subgroup");
    }
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    HomothetySubgroup H{qprime, std::move(elements), 1};
    if (!H.contains(1)) throw std::invalid_argument("subgroup must contain 1");
    for (long x : H.elements) {
        for (long y : H.elements) {
            if (!H.contains(x * y)) throw std::invalid_argument("not closed under multiplication");
        }
    }
    const long phi = euler_phi(qprime);
    H.index = phi / static_cast<long>(H.elements.size());
    return H;
}

HomothetySubgroup homothety_subgroup(const ResidueUnitGroup& C, const std::vector<Residue>& G) {
    const long q = C.modulus;
    std::vector<bool> in(static_cast<std::size_t>(q * q), false);
    for (const auto& g : G) {
        Residue r{md(g.a, q), md(g.b, q)};
        if (!C.is_unit(r)) throw std::invalid_argument("G contains a non-unit");
        in[C.index(r)] = true;
    }
    for (const auto& x : G) {
        for (const auto& y : G) {
            if (!in[C.index(C.mul({md(x.a, q), md(x.b, q)}, {md(y.a, q), md(y.b, q)}))]) {
                throw std::invalid_argument("G is not closed under multiplication");
            }
        }
    }
    std::vector<long> H;
    for (long g = 1; g < q; ++g) {
        if (g % C.p != 0 && in[C.index({g, 0})]) H.push_back(g);
    }
    if (H.empty()) throw std::invalid_argument("G does not contain the identity");
    return make_unit_subgroup(q, std::move(H));
}

std::vector<HomothetySubgroup> unit_subgroups(long qprime, long max_index) {
    long p = 0;
    int ell = 0;
    check_modulus(qprime, p, ell);
    std::vector<long> A;
    for (long a = 1; a < qprime; ++a) {
        if (a % p) A.push_back(a);
    }
    const long phi = static_cast<long>(A.size());
    auto closure = [&](std::vector<long> S, const std::vector<long>& gens) {
        std::vector<bool> in(static_cast<std::size_t>(qprime), false);
        for (long s : S) in[static_cast<std::size_t>(s)] = true;
        for (long g : gens) {
            if (in[static_cast<std::size_t>(g)]) continue;
            const std::size_t base = S.size();
            long pk = g;
            while (!in[static_cast<std::size_t>(pk)]) {
                for (std::size_t i = 0; i < base; ++i) {
                    long r = S[i] * pk % qprime;
                    in[static_cast<std::size_t>(r)] = true;
                    S.push_back(r);
                }
                pk = pk * g % qprime;
            }
        }
        std::sort(S.begin(), S.end());
        return S;
    };
    std::set<std::vector<long>> seen;
    std::vector<HomothetySubgroup> out;
    for (long n = 1; n <= max_index; ++n) {
        if (phi % n) continue;
        // every subgroup of index n contains the n-th powers; (ℤ/q')^× has
        // rank ≤ 2, so two generators over them suffice
        std::vector<long> B;
        for (long a : A) {
            long r = 1;
            for (long i = 0; i < n; ++i) r = r * a % qprime;
            B.push_back(r);
        }
        std::sort(B.begin(), B.end());
        B.erase(std::unique(B.begin(), B.end()), B.end());
        std::vector<long> reps;
        std::vector<bool> covered(static_cast<std::size_t>(qprime), false);
        for (long a : A) {
            if (covered[static_cast<std::size_t>(a)]) continue;
            reps.push_back(a);
            for (long b : B) covered[static_cast<std::size_t>(a * b % qprime)] = true;
        }
        for (std::size_t i = 0; i < reps.size(); ++i) {
            for (std::size_t j = i; j < reps.size(); ++j) {
                auto S = closure(B, {reps[i], reps[j]});
                if (phi / static_cast<long>(S.size()) > max_index) continue;
                if (!seen.insert(S).second) continue;
                out.push_back(HomothetySubgroup{qprime, S, phi / static_cast<long>(S.size())});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const HomothetySubgroup& x, const HomothetySubgroup& y) {
        return x.index != y.index ? x.index < y.index : x.elements < y.elements;
    });
    return out;
}

ScalarPair scalar_gap_search(const HomothetySubgroup& H, long d) {
    if (d < 1) throw std::invalid_argument("degree must be >= 1");
    if (H.index > 6 * d) throw std::invalid_argument("index precondition violated: [(Z/q')^x : H] > 6d");
    const long bound = 36 * d + 6;
    const long hi = H.modulus + bound;
    for (long g1 = 1; g1 < hi; ++g1) {
        if (!H.contains(g1)) continue;
        for (long g2 = g1 + 3; g2 < std::min(g1 + bound, hi); ++g2) {
            if (H.contains(g2)) return {Integer(g1), Integer(g2)};
        }
    }
    throw std::runtime_error("no scalar pair with 2 < gap < 36d + 6");
}

bool index_bound_audit(const ResidueUnitGroup& C, std::size_t G_size, long dFprime) {
    if (G_size == 0) throw std::invalid_argument("empty subgroup");
    return C.size <= static_cast<std::uint64_t>(3 * dFprime) * G_size;
}

}  // namespace cmh
