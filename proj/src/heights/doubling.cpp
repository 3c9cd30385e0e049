#include "cmheight/heights.hpp"

#include "cmheight/arith.hpp"
#include "cmheight/reduction.hpp"
#include "cmheight/resultant.hpp"

#include "cmheight/roots.hpp"

#include <map>
#include <optional>
#include <set>

namespace cmh {

namespace {

// Binary quartic forms of x-doubling: x(2P) = F(x, 1) / G(x, 1).
struct DoublingForms {
    std::array<Integer, 5> F, G;  // coefficient of X^i Z^{4−i}
};

DoublingForms doubling_forms(const EllipticCurve& E) {
    auto z = [](const NFElement& a) {
        Rational q = a.rational_value();
        if (q.get_den() != 1) throw std::logic_error("doubling forms need an integral model");
        return q.get_num();
    };
    const Integer b2 = z(E.b2()), b4 = z(E.b4()), b6 = z(E.b6()), b8 = z(E.b8());
    DoublingForms d;
    d.F = {Integer(-b8), Integer(-2 * b6), Integer(-b4), Integer(0), Integer(1)};
    d.G = {b6, Integer(2 * b4), b2, Integer(4), Integer(0)};
    return d;
}

// Rational cofactors A, B (binary cubics) with X^7 = A·F + B·G, resp. Z^7.
std::pair<std::vector<Rational>, std::vector<Rational>> cofactors(const DoublingForms& d, bool for_x) {
    // unknowns: A_0..A_3, B_0..B_3 (coefficient of X^i Z^{3−i}); equations: X^k Z^{7−k}, k = 0..7
    std::vector<std::vector<Rational>> M(8, std::vector<Rational>(9));
    for (int i = 0; i < 4; ++i) {
        for (int k = 0; k < 5; ++k) {
            M[static_cast<std::size_t>(i + k)][static_cast<std::size_t>(i)] += d.F[static_cast<std::size_t>(k)];
            M[static_cast<std::size_t>(i + k)][static_cast<std::size_t>(4 + i)] += d.G[static_cast<std::size_t>(k)];
        }
    }
    M[for_x ? 7 : 0][8] = 1;
    for (std::size_t col = 0; col < 8; ++col) {
        std::size_t piv = col;
        while (piv < 8 && M[piv][col] == 0) ++piv;
        if (piv == 8) throw std::logic_error("doubling forms have a common zero");
        std::swap(M[piv], M[col]);
        for (std::size_t r = 0; r < 8; ++r) {
            if (r == col || M[r][col] == 0) continue;
            const Rational factor = M[r][col] / M[col][col];
            for (std::size_t c = col; c < 9; ++c) M[r][c] -= factor * M[col][c];
        }
    }
    std::vector<Rational> A(4), B(4);
    for (std::size_t i = 0; i < 4; ++i) {
        A[i] = M[i][8] / M[i][i];
        B[i] = M[4 + i][8] / M[4 + i][4 + i];
    }
    return {A, B};
}

struct CurveConstants {
    DoublingForms forms;
    RealInterval arch_bound;                 // |Φ_v| ≤ this at archimedean v
    std::map<Integer, long> finite_depth;    // p ↦ −min v_p(cofactor coefficients) > 0
    RealInterval total;                      // C_E
};

CurveConstants curve_constants(const EllipticCurve& E, mpfr_prec_t prec) {
    CurveConstants cc;
    cc.forms = doubling_forms(E);
    auto [A1, B1] = cofactors(cc.forms, true);
    auto [A2, B2] = cofactors(cc.forms, false);
    Rational s1 = 0, s2 = 0;
    for (const auto& c : A1) s1 += abs(c);
    for (const auto& c : B1) s1 += abs(c);
    for (const auto& c : A2) s2 += abs(c);
    for (const auto& c : B2) s2 += abs(c);
    Integer uf = 0, ug = 0;
    for (const auto& c : cc.forms.F) uf += abs(c);
    for (const auto& c : cc.forms.G) ug += abs(c);
    const RealInterval lower = log(Rational(s1 > s2 ? s1 : s2), prec);
    const RealInterval upper = log(Integer(uf > ug ? uf : ug), prec);
    cc.arch_bound = max(lower, upper);
    cc.total = cc.arch_bound;
    for (const auto* vec : {&A1, &B1, &A2, &B2}) {
        for (const auto& c : *vec) {
            if (c == 0 || c.get_den() == 1) continue;
            for (const auto& [p, e] : factor(c.get_den())) {
                long depth = -valuation(c, p);
                long& cur = cc.finite_depth[p];
                cur = std::max(cur, depth);
            }
        }
    }
    for (const auto& [p, depth] : cc.finite_depth) cc.total += log(p, prec) * depth;
    return cc;
}

// ---------------------------------------------------------------------------
// Archimedean iteration

ComplexBall form_at(const std::array<Integer, 5>& c, const ComplexBall& X, const ComplexBall& Z) {
    const mpfr_prec_t prec = X.precision();
    ComplexBall acc(RealInterval(Rational(c[4]), prec));
    // Σ c_i X^i Z^{4−i} = ((c4 X + c3 Z) X + c2 Z²) X + ...
    ComplexBall Zp = Z;
    for (int i = 3; i >= 0; --i) {
        acc = acc * X + Zp * Rational(c[static_cast<std::size_t>(i)]);
        Zp = Zp * Z;
    }
    return acc;
}

RealInterval arch_phi_sum(const DoublingForms& d, const ComplexBall& x0, int steps, mpfr_prec_t prec) {
    const ComplexBall one(RealInterval(1L, prec));
    ComplexBall X = x0, Z = one;
    if (abs(x0).mid_double() > 1) {
        X = one;
        Z = one / x0;
    }
    RealInterval acc(0L, prec);
    RealInterval w(Rational(1, 4), prec);
    for (int n = 0; n < steps; ++n) {
        ComplexBall Fv = form_at(d.F, X, Z), Gv = form_at(d.G, X, Z);
        RealInterval aF = abs(Fv), aG = abs(Gv);
        RealInterval phi = log(max(aF, aG)) - log(max(abs(X), abs(Z))) * 4L;
        acc += phi * w;
        w = w / 4L;
        // renormalise by the component with the larger centre
        if (aF.mid_double() >= aG.mid_double()) {
            if (Fv.contains_zero()) throw PrecisionExhausted();
            Z = Gv / Fv;
            X = one;
        } else {
            if (Gv.contains_zero()) throw PrecisionExhausted();
            X = Fv / Gv;
            Z = one;
        }
    }
    return acc;
}

// ---------------------------------------------------------------------------
// p-adic iteration in O ⊗ ℤ_p modulo p^M

struct LocalRing {
    Integer p;
    bool embedded = true;  // element ↦ ℤ_p via a root of the defining polynomial
    Integer root;          // embedded: root mod p^M
    IntPoly defpoly;       // non-embedded: elements mod (defpoly, p^M)
    int f = 1, e = 1;
    Rational weight;
};

using LocalElt = std::vector<Integer>;  // embedded: size 1; otherwise power-basis coordinates

Integer hensel_root(const IntPoly& g, Integer r, const Integer& p, long M) {
    Integer pm;
    mpz_pow_ui(pm.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(M));
    const IntPoly dg = g.derivative();
    for (int it = 0; it < 128; ++it) {
        Integer gv = mod(g.eval(r), pm);
        if (gv == 0) break;
        Integer dv = mod(dg.eval(r), pm);
        r = mod(Integer(r - gv * inv_mod(dv, pm)), pm);
    }
    return r;
}

std::vector<LocalRing> local_rings(const FieldPtr& K, const Integer& p, long M) {
    std::vector<LocalRing> out;
    const int d = K->degree();
    if (d == 1) {
        LocalRing R;
        R.p = p;
        R.root = 0;
        R.weight = 1;
        out.push_back(R);
        return out;
    }
    auto places = prime_splitting(K, p);
    const IntPoly& g = K->defining_polynomial();
    if (places.size() == 1) {
        LocalRing R;
        R.p = p;
        R.embedded = false;
        R.defpoly = g;
        R.f = places[0].f;
        R.e = places[0].e;
        R.weight = 1;
        out.push_back(R);
        return out;
    }
    bool totally_split = true;
    for (const auto& v : places) totally_split = totally_split && v.e == 1 && v.f == 1;
    if (!totally_split) throw std::domain_error("out of desk scope");
    std::vector<Integer> roots;
    if (p == 2 && K->kind() == FieldKind::Quadratic) {
        // √D = 2ρ − 1 with ρ² − ρ − (D − 1)/4 = 0, separable mod 2
        const Integer D = K->radicand();
        IntPoly h{Integer(-(D - 1) / 4), Integer(-1), Integer(1)};
        for (long r0 = 0; r0 < 2; ++r0) {
            if (mod(h.eval(Integer(r0)), p) != 0) continue;
            Integer rho = hensel_root(h, r0, p, M + 2);
            Integer pm;
            mpz_pow_ui(pm.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(M));
            roots.push_back(mod(Integer(2 * rho - 1), pm));
        }
    } else {
        if (p > 100000) throw std::domain_error("out of desk scope");
        for (long r0 = 0; r0 < p.get_si(); ++r0) {
            if (mod(g.eval(Integer(r0)), p) == 0) roots.push_back(hensel_root(g, r0, p, M));
        }
    }
    if (static_cast<int>(roots.size()) != d) throw std::logic_error("split prime without d roots");
    for (const auto& r : roots) {
        LocalRing R;
        R.p = p;
        R.root = r;
        R.weight = Rational(1, d);
        out.push_back(R);
    }
    return out;
}

LocalElt reduce_elt(const LocalRing& R, LocalElt a, const Integer& pm) {
    for (auto& c : a) c = mod(c, pm);
    if (!R.embedded) {
        // reduce modulo the monic defining polynomial
        const auto& g = R.defpoly.coeffs();
        const std::size_t d = g.size() - 1;
        while (a.size() > d) {
            const Integer top = a.back();
            a.pop_back();
            if (top != 0) {
                for (std::size_t i = 0; i < d; ++i) a[a.size() - d + i] -= top * g[i];
            }
        }
        a.resize(d);
        for (auto& c : a) c = mod(c, pm);
    }
    return a;
}

LocalElt mul(const LocalRing& R, const LocalElt& a, const LocalElt& b, const Integer& pm) {
    LocalElt c(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    return reduce_elt(R, c, pm);
}

LocalElt add(const LocalRing& R, const LocalElt& a, const LocalElt& b, const Integer& pm) {
    LocalElt c(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
    return reduce_elt(R, c, pm);
}

LocalElt scal(const LocalRing& R, const LocalElt& a, const Integer& s, const Integer& pm) {
    LocalElt c = a;
    for (auto& x : c) x *= s;
    return reduce_elt(R, c, pm);
}

// Valuation in units of the prime above p; nullopt if ≥ the reliable range.
std::optional<Rational> local_val(const LocalRing& R, const LocalElt& a, long M) {
    if (R.embedded) {
        if (a[0] == 0) return std::nullopt;
        long v = valuation(a[0], R.p);
        if (v >= M) return std::nullopt;
        return Rational(v);
    }
    bool zero = true;
    for (const auto& c : a) zero = zero && c == 0;
    if (zero) return std::nullopt;
    IntPoly ap(a);
    Integer N = poly_resultant(R.defpoly, ap);
    if (N == 0) return std::nullopt;
    long v = valuation(N, R.p);
    if (v >= M) return std::nullopt;
    // v_p(N(α)) = f·v_℘(α)
    Rational out(v, R.f);
    out.canonicalize();
    return out;
}

long content_val(const LocalElt& a, const Integer& p, long M) {
    long m = M;
    for (const auto& c : a) {
        if (c != 0) m = std::min(m, static_cast<long>(valuation(c, p)));
    }
    return m;
}

// Σ_n 4^{−n−1} Φ_v(2ⁿP) for n < steps, as an exact rational multiple of log p.
Rational finite_phi_sum(const DoublingForms& d, const LocalRing& R, const NFElement& x, int steps, long M0) {
    long M = M0;
    Integer pm;
    mpz_pow_ui(pm.get_mpz_t(), R.p.get_mpz_t(), static_cast<unsigned long>(M));
    // (X, Z) = (p^k x, p^k)
    long k = 0;
    for (const auto& c : x.coords()) {
        if (c != 0) k = std::max(k, -valuation(c, R.p));
    }
    Integer pk;
    mpz_pow_ui(pk.get_mpz_t(), R.p.get_mpz_t(), static_cast<unsigned long>(k));
    LocalElt X, Z;
    if (R.embedded) {
        Integer acc = 0, rp = 1;
        for (const auto& c : x.coords()) {
            Rational s = c * pk;
            Integer num = mod(Integer(s.get_num() * inv_mod(s.get_den(), pm)), pm);
            acc += num * rp;
            rp = mod(Integer(rp * R.root), pm);
        }
        X = {mod(acc, pm)};
        Z = {mod(pk, pm)};
    } else {
        const std::size_t deg = static_cast<std::size_t>(R.defpoly.degree());
        X.assign(deg, Integer(0));
        Z.assign(deg, Integer(0));
        for (std::size_t i = 0; i < x.coords().size(); ++i) {
            Rational s = x.coords()[i] * pk;
            X[i] = mod(Integer(s.get_num() * inv_mod(s.get_den(), pm)), pm);
        }
        Z[0] = mod(pk, pm);
    }
    auto form = [&](const std::array<Integer, 5>& c) {
        // Σ c_i X^i Z^{4−i}
        LocalElt acc = scal(R, X, Integer(0), pm);
        LocalElt Xp = scal(R, X, Integer(0), pm);
        Xp[0] = 1;
        std::vector<LocalElt> Zpow(5);
        Zpow[0] = Xp;
        for (int i = 1; i <= 4; ++i) Zpow[static_cast<std::size_t>(i)] = mul(R, Zpow[static_cast<std::size_t>(i - 1)], Z, pm);
        for (int i = 0; i <= 4; ++i) {
            if (c[static_cast<std::size_t>(i)] != 0) {
                acc = add(R, acc, scal(R, mul(R, Xp, Zpow[static_cast<std::size_t>(4 - i)], pm), c[static_cast<std::size_t>(i)], pm), pm);
            }
            Xp = mul(R, Xp, X, pm);
        }
        return acc;
    };
    Rational total = 0;
    Rational w(1, 4);
    for (int n = 0; n < steps; ++n) {
        LocalElt Fv = form(d.F), Gv = form(d.G);
        auto vX = local_val(R, X, M), vZ = local_val(R, Z, M);
        auto vF = local_val(R, Fv, M), vG = local_val(R, Gv, M);
        if ((!vX && !vZ) || (!vF && !vG)) throw PrecisionExhausted("p-adic precision");
        const Rational mXZ = !vX ? *vZ : (!vZ ? *vX : std::min(*vX, *vZ));
        const Rational mFG = !vF ? *vG : (!vG ? *vF : std::min(*vF, *vG));
        Rational phi = (4 * mXZ - mFG) / R.e;
        total += phi * w;
        w /= 4;
        // strip common powers of p
        long c = std::min(content_val(Fv, R.p, M), content_val(Gv, R.p, M));
        if (c > 0) {
            Integer pc;
            mpz_pow_ui(pc.get_mpz_t(), R.p.get_mpz_t(), static_cast<unsigned long>(c));
            for (auto& t : Fv) t /= pc;
            for (auto& t : Gv) t /= pc;
            M -= c;
            pm /= pc;
            if (M < 8) throw PrecisionExhausted("p-adic precision");
        }
        X = reduce_elt(R, Fv, pm);
        Z = reduce_elt(R, Gv, pm);
    }
    total.canonicalize();
    return total;
}

// Exact x-line doubling: detects torsion while coordinates stay small.
bool exact_torsion_orbit(const EllipticCurve& E, const NFElement& x0) {
    const FieldPtr& K = x0.field();
    auto c = [&](const NFElement& a) { return a.coerce_to(K); };
    const NFElement b2 = c(E.b2()), b4 = c(E.b4()), b6 = c(E.b6()), b8 = c(E.b8());
    std::set<std::string> seen;
    NFElement x = x0;
    for (int step = 0; step < 64; ++step) {
        if (!seen.insert(x.to_string()).second) return true;
        NFElement G = x * x * x * Rational(4) + b2 * x * x + b4 * x * Rational(2) + b6;
        if (G.is_zero()) return true;  // 2^{step+1}·P = O
        NFElement F = x * x * x * x - b4 * x * x - b6 * x * Rational(2) - b8;
        x = F / G;
        std::size_t bits = 0;
        for (const auto& q : x.coords()) {
            bits += mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
        }
        if (bits > 4096) return false;
    }
    return false;
}

}  // namespace

HeightResult canonical_height_doubling(const CurvePoint& P0, double tol) {
    HeightResult res;
    res.method = HeightMethod::Doubling;
    mpfr_prec_t prec = precision_for_tolerance(tol);
    res.precision = prec;
    if (P0.is_infinity()) {
        res.value = RealInterval(0L, prec);
        res.torsion_detected = true;
        return res;
    }
    if (!P0.curve()->over_rationals()) throw std::invalid_argument("canonical height needs a curve over Q");
    // integral model
    const ModelChange w = integral_scaling(P0.curve()->rational_a());
    auto E = EllipticCurve::over_Q(transform_a(P0.curve()->rational_a(), w));
    auto [x, y] = transform_point(P0.x(), P0.y(), w);
    (void)y;
    if (exact_torsion_orbit(*E, x)) {
        res.value = RealInterval(0L, prec);
        res.torsion_detected = true;
        return res;
    }
    const FieldPtr& K = x.field();
    const CurveConstants cc = curve_constants(*E, 128);
    // C_E·4^{−N}/3 ≤ tol/2
    int N = 0;
    {
        RealInterval t = cc.total / 3L;
        const RealInterval half_tol = RealInterval::from_double(tol / 2, 128);
        while (!t.certainly_less_eq(half_tol)) {
            t = t / 4L;
            ++N;
        }
    }
    const RealInterval hx = weil_height(x, tol / 8);
    // finite places: exact rational multiples of log p
    std::map<Integer, Rational> finite_sum;
    for (const auto& [p, depth] : cc.finite_depth) {
        long M0 = 64 + static_cast<long>(N) * (depth * 8 + 8);
        for (int attempt = 0;; ++attempt) {
            try {
                Rational s = 0;
                for (const auto& R : local_rings(K, p, M0)) s += R.weight * finite_phi_sum(cc.forms, R, x, N, M0);
                finite_sum[p] = s;
                break;
            } catch (const PrecisionExhausted&) {
                if (attempt > 4) throw;
                M0 *= 2;
            }
        }
    }
    const auto arch = archimedean_places(K);
    prec = precision_for_tolerance(tol) + 3 * N;
    for (;;) {
        try {
            RealInterval sum(0L, prec);
            for (const auto& v : arch) sum += arch_phi_sum(cc.forms, embed(x, v, prec), N, prec) * v.weight;
            for (const auto& [p, s] : finite_sum) sum += log(p, prec) * s;
            RealInterval tail = cc.total / 6L;
            for (int i = 0; i < N; ++i) tail = tail / 4L;
            RealInterval h = (hx.with_precision(prec) + sum) / 2L;
            h = h.widened(tail);
            if (h.rad_double() <= tol) {
                res.value = h;
                res.precision = prec;
                return res;
            }
        } catch (const PrecisionExhausted&) {
        } catch (const std::domain_error&) {
        }
        prec *= 2;
        if (prec > kMaxPrecision) throw PrecisionExhausted("canonical height");
    }
}

RealInterval parallelogram_residual(const CurvePoint& P, const CurvePoint& Q, double tol) {
    const double t = tol / 6;
    RealInterval hs = canonical_height_doubling(point_add(P, Q), t).value;
    RealInterval hd = canonical_height_doubling(point_sub(P, Q), t).value;
    RealInterval hp = canonical_height_doubling(P, t).value;
    RealInterval hq = canonical_height_doubling(Q, t).value;
    return hs + hd - hp * 2L - hq * 2L;
}

}  // namespace cmh
