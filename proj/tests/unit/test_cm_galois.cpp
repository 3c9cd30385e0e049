#include "doctest.h"

#include "cmheight/cm_galois.hpp"
#include "cmheight/number_field.hpp"

#include <map>
#include <set>

using namespace cmh;

namespace {

const long kDiscs[] = {-3, -4, -7, -8, -11, -19, -43, -67, -163};

std::vector<long> prime_powers(long limit) {
    std::vector<long> out;
    for (long q = 2; q <= limit; ++q) {
        long p = 2;
        while (q % p) ++p;
        long r = q;
        while (r % p == 0) r /= p;
        if (r == 1) out.push_back(q);
    }
    return out;
}

long smallest_prime(long q) {
    long p = 2;
    while (q % p) ++p;
    return p;
}

// Kronecker symbol (D/p) via Euler's criterion, and D mod 8 at p = 2
int kron(long D, long p) {
    if (p == 2) {
        long r = ((D % 8) + 8) % 8;
        if (r % 2 == 0) return 0;
        return (r == 1 || r == 7) ? 1 : -1;
    }
    long a = ((D % p) + p) % p;
    if (a == 0) return 0;
    long r = 1, b = a, e = (p - 1) / 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r == 1 ? 1 : -1;
}

std::uint64_t expected_units(long D, long q) {
    long p = smallest_prime(q);
    std::uint64_t t = 1;
    for (long r = q / p; r > 1; r /= p) t *= static_cast<std::uint64_t>(p * p);
    std::uint64_t P = static_cast<std::uint64_t>(p);
    switch (kron(D, p)) {
        case 1: return (P - 1) * (P - 1) * t;
        case -1: return (P * P - 1) * t;
        default: return P * (P - 1) * t;
    }
}

using Mat = std::array<long, 4>;

Mat matmul(const Mat& x, const Mat& y, long q) {
    return {(x[0] * y[0] + x[1] * y[2]) % q, (x[0] * y[1] + x[1] * y[3]) % q,
            (x[2] * y[0] + x[3] * y[2]) % q, (x[2] * y[1] + x[3] * y[3]) % q};
}

}  // namespace

TEST_CASE("maximal order multiplication table") {
    for (long D : kDiscs) {
        auto O = CMOrder::maximal(D);
        // ω² = c0 + c1ω checked in Q(√core) exactly
        Integer core = squarefree_core(Integer(D));
        auto K = NumberField::quadratic(core);
        NFElement sqrtD(K, {Rational(0), Rational(D % 4 == 0 ? 2 : 1)});  // √D
        NFElement w = D % 4 == 0 ? sqrtD * Rational(1, 2) : (sqrtD + Rational(D)) * Rational(1, 2);
        NFElement rhs = w * Rational(O.c1) + Rational(O.c0);
        CHECK(w * w == rhs);
        CHECK(w.trace() == Rational(O.trace_omega()));
        CHECK(w.norm() == Rational(O.norm_omega()));
    }
    CHECK_THROWS(CMOrder::maximal(-12));
    CHECK_THROWS(CMOrder::maximal(5));
    CHECK(CMOrder::for_j(Rational(1728)).disc == -4);
    CHECK(CMOrder::for_j(Rational(0)).disc == -3);
    CHECK(CMOrder::for_j(Rational(-12288000)).disc == -3);
}

TEST_CASE("residue unit group examples") {
    auto Oi = CMOrder::maximal(-4);
    CHECK(residue_unit_group(Oi, 3).size == 8);
    CHECK(residue_unit_group(Oi, 3).splitting == SplitType::Inert);
    auto C2 = residue_unit_group(Oi, 2);
    CHECK(C2.size == 2);
    CHECK(C2.splitting == SplitType::Ramified);
    CHECK(C2.elements == std::vector<Residue>{{0, 1}, {1, 0}});
    // 5 ≡ 2 mod 3, so 5 is inert in Q(√−3): F_25^×
    CHECK(residue_unit_group(CMOrder::maximal(-3), 5).size == 24);
    CHECK(residue_unit_group(CMOrder::maximal(-3), 7).size == 36);

    CHECK_THROWS(residue_unit_group(Oi, 6));
    CHECK_THROWS(residue_unit_group(Oi, 1));
    CHECK_THROWS(residue_unit_group(Oi, 32768));
}

TEST_CASE("unit counts match the splitting formula") {
    for (long D : kDiscs) {
        auto O = CMOrder::maximal(D);
        for (long q : prime_powers(128)) {
            INFO(D, " ", q);
            auto C = residue_unit_group(O, q);
            CHECK(C.size == expected_units(D, q));
            CHECK(C.elements.size() == C.size);
        }
    }
    // invertibility by brute-force search for an inverse
    for (long D : {-3L, -4L, -7L}) {
        auto O = CMOrder::maximal(D);
        for (long q : prime_powers(12)) {
            auto C = residue_unit_group(O, q);
            std::uint64_t n = 0;
            for (long a = 0; a < q; ++a) {
                for (long b = 0; b < q; ++b) {
                    bool inv = false;
                    for (long c = 0; c < q && !inv; ++c) {
                        for (long d = 0; d < q && !inv; ++d) inv = C.mul({a, b}, {c, d}) == Residue{1, 0};
                    }
                    n += inv;
                }
            }
            CHECK(n == C.size);
        }
    }
}

TEST_CASE("large moduli are counted without being stored") {
    auto O = CMOrder::maximal(-7);
    auto C = residue_unit_group(O, 4099);
    CHECK(!C.materialized());
    CHECK(C.size == expected_units(-7, 4099));
}

TEST_CASE("generators generate") {
    for (long D : {-3L, -4L, -8L, -163L}) {
        auto O = CMOrder::maximal(D);
        for (long q : {2L, 4L, 8L, 9L, 25L, 27L, 49L}) {
            auto C = residue_unit_group(O, q);
            CHECK(subgroup_closure(C, C.generators) == C.elements);
        }
    }
}

TEST_CASE("gl2 embedding") {
    auto Oi = CMOrder::maximal(-4);
    CHECK(gl2_embedding(Oi, 7, {1, 0}) == Mat{1, 0, 0, 1});
    CHECK(gl2_embedding(Oi, 7, {0, 1}) == Mat{0, 6, 1, 0});
    CHECK(gl2_embedding(Oi, 7, {3, 0}) == Mat{3, 0, 0, 3});
    CHECK_THROWS(gl2_embedding(Oi, 5, {2, 1}));  // norm 5

    for (long D : kDiscs) {
        auto O = CMOrder::maximal(D);
        for (long q : prime_powers(128)) {
            auto C = residue_unit_group(O, q);
            std::set<Mat> images;
            std::map<std::uint32_t, Mat> img;
            for (const auto& x : C.elements) {
                Mat m = gl2_embedding(O, q, x);
                images.insert(m);
                img[C.index(x)] = m;
                long det = ((m[0] * m[3] - m[1] * m[2]) % q + q) % q;
                CHECK(det == C.norm(x));
            }
            INFO(D, " ", q);
            CHECK(images.size() == C.size);
            // multiplicativity against a generating set covers every pair
            bool hom = true;
            for (const auto& x : C.elements) {
                for (const auto& g : C.generators) {
                    hom = hom && img[C.index(C.mul(x, g))] == matmul(img[C.index(x)], img[C.index(g)], q);
                }
            }
            CHECK(hom);
        }
    }
    // and literally every pair for small moduli
    for (long D : {-3L, -4L, -11L}) {
        auto O = CMOrder::maximal(D);
        for (long q : prime_powers(16)) {
            auto C = residue_unit_group(O, q);
            bool hom = true;
            for (const auto& x : C.elements) {
                for (const auto& y : C.elements) {
                    hom = hom && gl2_embedding(O, q, C.mul(x, y)) ==
                                     matmul(gl2_embedding(O, q, x), gl2_embedding(O, q, y), q);
                }
            }
            CHECK(hom);
        }
    }
}

TEST_CASE("homothety subgroup examples") {
    auto Oi = CMOrder::maximal(-4);
    auto C5 = residue_unit_group(Oi, 5);
    auto full = homothety_subgroup(C5, C5.elements);
    CHECK(full.elements == std::vector<long>{1, 2, 3, 4});
    CHECK(full.index == 1);
    auto triv = homothety_subgroup(C5, {Residue{1, 0}});
    CHECK(triv.elements == std::vector<long>{1});
    CHECK(triv.index == 4);
    auto gi = homothety_subgroup(C5, subgroup_closure(C5, {Residue{0, 1}}));
    CHECK(gi.elements == std::vector<long>{1, 4});
    CHECK_THROWS(homothety_subgroup(C5, {Residue{1, 0}, Residue{0, 1}}));
}

TEST_CASE("homothety extraction on every cyclic and two-generated subgroup") {
    for (long D : {-3L, -4L, -7L, -8L}) {
        auto O = CMOrder::maximal(D);
        for (long q : prime_powers(50)) {
            auto C = residue_unit_group(O, q);
            std::set<std::vector<Residue>> groups;
            for (const auto& x : C.elements) groups.insert(subgroup_closure(C, {x}));
            if (q <= 9) {
                for (const auto& x : C.elements) {
                    for (const auto& y : C.elements) groups.insert(subgroup_closure(C, {x, y}));
                }
            }
            bool ok = true;
            for (const auto& G : groups) {
                auto H = homothety_subgroup(C, G);
                std::set<Mat> mats;
                for (const auto& x : G) mats.insert(gl2_embedding(O, q, x));
                for (long g = 1; g < q; ++g) {
                    if (g % C.p == 0) continue;
                    ok = ok && (mats.count(Mat{g, 0, 0, g}) > 0) == H.contains(g);
                }
                ok = ok && H.index * static_cast<long>(H.elements.size()) == euler_phi(q);
            }
            INFO(D, " ", q);
            CHECK(ok);
        }
    }
}

TEST_CASE("scalar gap search examples") {
    auto pair = [](long q, std::vector<long> h) {
        auto S = scalar_gap_search(make_unit_subgroup(q, std::move(h)), 1);
        return std::make_pair(S.g1.get_si(), S.g2.get_si());
    };
    CHECK(pair(8, {1, 3, 5, 7}) == std::make_pair(1L, 5L));
    CHECK(pair(13, {1, 3, 4, 9, 10, 12}) == std::make_pair(1L, 4L));
    CHECK(pair(3, {1}) == std::make_pair(1L, 4L));
    CHECK(make_unit_subgroup(8, {1, 3}).index == 2);
    CHECK_THROWS(make_unit_subgroup(7, {1, 2}));
    // index 28 needs d ≥ 5
    auto H = make_unit_subgroup(29, {1});
    CHECK(H.index == 28);
    CHECK_THROWS(scalar_gap_search(H, 1));
    CHECK(scalar_gap_search(H, 5).gap() == 29);
}

TEST_CASE("subgroup enumeration of (Z/q')^x") {
    for (long q : prime_powers(200)) {
        const long p = smallest_prime(q);
        const long phi = euler_phi(q);
        auto subs = unit_subgroups(q, 6);
        for (const auto& H : subs) {
            CHECK(make_unit_subgroup(q, H.elements).index == H.index);
            CHECK(H.index <= 6);
        }
        if (p > 2) {
            long expect = 0;
            for (long n = 1; n <= 6; ++n) expect += (phi % n == 0);
            CHECK(static_cast<long>(subs.size()) == expect);
        } else {
            // brute force over all pairs: (Z/2^k)^x has rank ≤ 2
            std::set<std::vector<long>> all;
            std::vector<long> A;
            for (long a = 1; a < q; a += 2) A.push_back(a);
            for (long x : A) {
                for (long y : A) {
                    std::set<long> S{1};
                    bool grew = true;
                    while (grew) {
                        grew = false;
                        std::vector<long> cur(S.begin(), S.end());
                        for (long s : cur) {
                            for (long g : {x, y}) grew |= S.insert(s * g % q).second;
                        }
                    }
                    if (phi / static_cast<long>(S.size()) <= 6) all.insert(std::vector<long>(S.begin(), S.end()));
                }
            }
            INFO(q);
            CHECK(subs.size() == all.size());
        }
    }
}

TEST_CASE("scalar gap search completeness for index at most 6") {
    std::size_t total = 0;
    for (long q : prime_powers(200)) {
        for (const auto& H : unit_subgroups(q, 6)) {
            // existence oracle: some shift t in (2, 42) maps a class of H into H
            bool exists = false;
            for (long t = 3; t < 42 && !exists; ++t) {
                for (long h : H.elements) {
                    if (H.contains(h + t)) {
                        exists = true;
                        break;
                    }
                }
            }
            INFO(q, " index ", H.index);
            REQUIRE(exists);
            auto S = scalar_gap_search(H, 1);
            CHECK(S.gap() > 2);
            CHECK(S.gap() < 42);
            CHECK(H.contains(S.g1.get_si()));
            CHECK(H.contains(S.g2.get_si()));
            ++total;
        }
    }
    CHECK(total > 200);
}

TEST_CASE("index bound audit") {
    auto Oi = CMOrder::maximal(-4);
    auto C3 = residue_unit_group(Oi, 3);
    CHECK(index_bound_audit(C3, C3.size, 1));
    CHECK(index_bound_audit(C3, 2, 2));     // 8/2 = 4 ≤ 6
    auto C5 = residue_unit_group(CMOrder::maximal(-3), 5);
    CHECK(C5.size == 24);
    CHECK(!index_bound_audit(C5, 2, 2));    // 24/2 = 12 > 6
}
