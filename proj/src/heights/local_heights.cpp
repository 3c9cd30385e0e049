#include "cmheight/heights.hpp"

#include "cmheight/arith.hpp"
#include "cmheight/period_lattice.hpp"
#include "cmheight/reduction.hpp"
#include "cmheight/roots.hpp"

#include <cmath>
#include <optional>
#include <set>

namespace cmh {

namespace {

void require_local_input(const CurvePoint& P, const PlaceData& v) {
    if (P.is_infinity()) throw std::invalid_argument("local height of the point at infinity");
    if (!P.curve()->over_rationals()) throw std::invalid_argument("local heights need a curve over Q");
    if (*v.field != *P.field()) throw std::invalid_argument("place belongs to another field");
}

RealInterval upper_of(const RealInterval& a) {
    BigFloat u = a.upper();
    return RealInterval(u, u);
}

// −½B2(s)log|q| − log|1 − u| − Σ log|(1 − qⁿu)(1 − qⁿ/u)|, s = Im w / Im τ.
RealInterval neron_from_log(const PeriodLattice& L, const ComplexBall& w) {
    const mpfr_prec_t prec = std::max(w.precision(), L.q.precision());
    const ComplexBall one(RealInterval(1L, prec));
    const RealInterval s = w.im() / L.tau.im();
    const RealInterval B2 = sqr(s) - s + Rational(1, 6);
    RealInterval lam = RealInterval::pi(prec) * L.tau.im() * B2;
    const ComplexBall u = exp_2pi_i(w);
    lam -= log(norm_sq(one - u)) / 2L;
    const RealInterval Q = upper_of(abs(L.q));
    const RealInterval au = abs(u);
    BigFloat lo = au.lower();
    const RealInterval Ulo(lo, lo);
    const RealInterval spread = upper_of(au) + RealInterval(1L, prec) / Ulo;
    const double logQ = std::log(Q.upper_double());
    long N = 1;
    while (N * logQ + std::log(spread.upper_double()) > -(static_cast<double>(prec) + 10) * std::log(2.0)) ++N;
    const ComplexBall uinv = one / u;
    ComplexBall qn = one;
    for (long n = 1; n <= N; ++n) {
        qn = qn * L.q;
        lam -= log(norm_sq(one - qn * u) * norm_sq(one - qn * uinv)) / 2L;
    }
    // |log|1 − t|| ≤ 2|t| for |t| ≤ ½
    const RealInterval geo = pow(Q, static_cast<unsigned long>(N + 1)) / (RealInterval(1L, prec) - Q);
    return lam.widened(upper_of(spread * geo * 2L));
}

using Val = std::optional<Rational>;  // nullopt = +∞

Val val(const NFElement& a, const PlaceData& v) {
    if (a.is_zero()) return std::nullopt;
    return finite_valuation(a, v);
}

bool le(const Val& a, const Rational& b) { return a && *a <= b; }

}  // namespace

LocalHeightValue archimedean_local_height(const CurvePoint& P, const PlaceData& v, double tol) {
    require_local_input(P, v);
    if (!v.archimedean) throw std::invalid_argument("not an archimedean place");
    const EllipticCurve& E = *P.curve();
    const bool half = (P.y() * Rational(2) + E.a1().coerce_to(P.field()) * P.x() + E.a3().coerce_to(P.field())).is_zero();
    const Rational b2_12 = E.b2().rational_value() / 12;
    mpfr_prec_t prec = precision_for_tolerance(tol, 48);
    for (;;) {
        try {
            PeriodLattice L = period_lattice(E, prec);
            ComplexBall X = embed(P.x(), v, prec) + b2_12;
            ComplexBall w = elliptic_log_from_x(L, X, half);
            RealInterval lam = neron_from_log(L, w);
            if (lam.rad_double() <= tol) return {v, lam};
        } catch (const PrecisionExhausted&) {
        } catch (const std::domain_error&) {
        }
        prec *= 2;
        if (prec > kMaxPrecision) throw PrecisionExhausted("archimedean local height");
    }
}

LocalHeightValue finite_local_height(const CurvePoint& P, const PlaceData& v, double tol) {
    require_local_input(P, v);
    if (v.archimedean) throw std::invalid_argument("not a finite place");
    const FieldPtr& K = P.field();
    if (K->kind() == FieldKind::Cyclotomic) throw std::domain_error("out of desk scope");
    const ReductionData rd = reduction_over_Q(*P.curve(), v.p);
    if (rd.kind != ReductionKind::Good && v.e > 1) throw std::domain_error("out of desk scope");
    auto [x, y] = transform_point(P.x(), P.y(), rd.to_minimal);
    const auto& a = rd.minimal_a;
    auto c = [&](const Rational& q) { return NFElement(K, q); };
    const Rational N = Rational(rd.disc_valuation * v.e);
    Rational units;
    const Val A = val(x * x * Rational(3) + x * c(2 * a[1]) + c(a[3]) - y * c(a[0]), v);
    const Val B = val(y * Rational(2) + x * c(a[0]) + c(a[2]), v);
    if (le(A, 0) || le(B, 0)) {
        const Val vx = val(x, v);
        units = (vx && *vx < 0) ? Rational(-*vx / 2) : Rational(0);
    } else if (rd.kind == ReductionKind::Multiplicative) {
        const Rational M = B ? std::min(*B, Rational(N / 2)) : Rational(N / 2);
        units = -M * (N - M) / (2 * N);
    } else {
        auto Emin = EllipticCurve::over_Q(a);
        const Rational b2 = Emin->b2().rational_value(), b4 = Emin->b4().rational_value();
        const Rational b6 = Emin->b6().rational_value(), b8 = Emin->b8().rational_value();
        const NFElement psi3 = x * x * x * x * Rational(3) + x * x * x * c(b2) + x * x * c(3 * b4) + x * c(3 * b6) + c(b8);
        const Val C = val(psi3, v);
        if (!C || (B && *C >= 3 * *B)) {
            units = -*B / 3;
        } else {
            units = -*C / 8;
        }
    }
    units += N / 12;
    units.canonicalize();
    const mpfr_prec_t prec = precision_for_tolerance(tol);
    RealInterval lam = RealInterval(units, prec) * log(v.p, prec) / static_cast<long>(v.e);
    return {v, lam};
}

HeightResult canonical_height_local_sum(const CurvePoint& P, double tol) {
    HeightResult res;
    res.method = HeightMethod::LocalSum;
    const mpfr_prec_t prec = precision_for_tolerance(tol);
    res.precision = prec;
    if (P.is_infinity()) {
        res.value = RealInterval(0L, prec);
        return res;
    }
    const FieldPtr& K = P.field();
    if (K->kind() == FieldKind::Cyclotomic) throw std::domain_error("out of desk scope");
    const EllipticCurve& E = *P.curve();
    std::set<Integer> primes;
    for (const auto& p : candidate_bad_primes(E)) primes.insert(p);
    for (const auto& q : P.x().coords()) {
        if (q.get_den() != 1) {
            for (const auto& [p, e] : factor(q.get_den())) primes.insert(p);
        }
    }
    const auto arch = archimedean_places(K);
    RealInterval total(0L, prec);
    const double arch_tol = tol / (2.0 * static_cast<double>(arch.size()));
    for (const auto& v : arch) total += archimedean_local_height(P, v, arch_tol).lambda * v.weight;
    for (const auto& p : primes) {
        for (const auto& v : prime_splitting(K, p)) {
            total += finite_local_height(P, v, tol / 4).lambda * v.weight;
        }
    }
    res.value = total;
    return res;
}

FloorReport archimedean_floor_check(const std::vector<CurvePoint>& samples, const RealInterval& C1, double tol) {
    FloorReport rep;
    rep.observed_min = INFINITY;
    for (const auto& R : samples) {
        if (R.is_infinity()) continue;
        for (const auto& v : archimedean_places(R.field())) {
            RealInterval lam = archimedean_local_height(R, v, tol).lambda;
            ++rep.checked;
            if (!(lam + C1).certainly_nonnegative()) ++rep.violations;
            if (lam.lower_double() < rep.observed_min) {
                rep.observed_min = lam.lower_double();
                rep.worst_point = R.to_string();
            }
        }
    }
    return rep;
}

}  // namespace cmh
