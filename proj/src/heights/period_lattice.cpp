#include "cmheight/period_lattice.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <mutex>

namespace cmh {

namespace {

using cd = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;

Integer sigma(long n, unsigned k) {
    Integer s = 0;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        Integer a;
        mpz_ui_pow_ui(a.get_mpz_t(), static_cast<unsigned long>(d), k);
        s += a;
        if (d != n / d) {
            Integer b;
            mpz_ui_pow_ui(b.get_mpz_t(), static_cast<unsigned long>(n / d), k);
            s += b;
        }
    }
    return s;
}

RealInterval upper_of(const RealInterval& a) {
    BigFloat u = a.upper();
    return RealInterval(u, u);
}

RealInterval lower_of(const RealInterval& a) {
    BigFloat l = a.lower();
    return RealInterval(l, l);
}

// Σ_{n>N} n^k Q^n for Q < 1, bounded by a geometric series.
RealInterval power_tail(long N, unsigned k, const RealInterval& Q) {
    const mpfr_prec_t prec = Q.precision();
    RealInterval ratio = Q * pow(RealInterval(Rational(N + 2, N + 1), prec), k);
    if (!ratio.certainly_less(RealInterval(1L, prec))) throw PrecisionExhausted("series tail does not converge");
    RealInterval lead = pow(RealInterval(N + 1, prec), k) * pow(Q, static_cast<unsigned long>(N + 1));
    return upper_of(lead / (RealInterval(1L, prec) - ratio));
}

long terms_for(double logQ, double k, mpfr_prec_t prec) {
    // n^k Q^n < 2^{-prec-10}
    const double target = -(static_cast<double>(prec) + 10) * std::log(2.0);
    long n = 1;
    while (k * std::log(static_cast<double>(n)) + n * logQ > target && n < 100000) ++n;
    return n;
}

cd j_double(cd tau) {
    const cd q = std::exp(cd(0, 2 * kPi) * tau);
    cd e4 = 1, prod = 1, qn = 1;
    for (long n = 1; n <= 60; ++n) {
        qn *= q;
        e4 += 240.0 * sigma(n, 3).get_d() * qn;
        prod *= std::pow(1.0 - qn, 24);
        if (std::abs(qn) < 1e-300) break;
    }
    return e4 * e4 * e4 / (q * prod);
}

cd dj_double(cd tau) {
    const double h = 1e-6;
    return (j_double(tau + h) - j_double(tau - h)) / (2 * h);
}

cd reduce_tau(cd t) {
    for (int it = 0; it < 100; ++it) {
        t -= std::round(t.real());
        if (std::abs(t) < 1 - 1e-15) {
            t = -1.0 / t;
        } else {
            break;
        }
    }
    return t;
}

cd approximate_tau(const Rational& jE) {
    const cd target(jE.get_d(), 0);
    const double scale = std::abs(target.real()) + 1;
    const double im_max = std::max(2.0, std::log(scale + 2000) / (2 * kPi) + 1);
    cd best(0, 1);
    double best_score = INFINITY;
    for (int a = 0; a <= 50; ++a) {
        const double re = -0.5 + a / 50.0;
        const double im_min = std::sqrt(std::max(0.0, 1 - re * re));
        for (double im = std::max(im_min, 0.8); im <= im_max; im += 0.02) {
            cd t(re, im);
            cd jt = j_double(t);
            double score = std::abs(jt - target) / (std::abs(jt) + scale);
            if (score < best_score) {
                best_score = score;
                best = t;
            }
        }
    }
    for (int it = 0; it < 60; ++it) {
        cd step = (j_double(best) - target) / dj_double(best);
        best -= step;
        if (std::abs(step) < 1e-13) break;
    }
    return reduce_tau(best);
}

ComplexBall two_pi_i(mpfr_prec_t prec) {
    return ComplexBall(RealInterval(0L, prec), RealInterval::pi(prec) * 2L);
}

}  // namespace

ModularValues modular_values(const ComplexBall& tau) {
    const mpfr_prec_t prec = tau.precision();
    const ComplexBall q = exp_2pi_i(tau);
    const RealInterval Q = upper_of(abs(q));
    if (!Q.certainly_less(RealInterval(Rational(1, 2), prec))) throw std::domain_error("tau outside the reduced region");
    const long N = terms_for(std::log(Q.upper_double()), 5, prec);
    ComplexBall e4(RealInterval(1L, prec)), e6(RealInterval(1L, prec)), qn(RealInterval(1L, prec));
    for (long n = 1; n <= N; ++n) {
        qn = qn * q;
        e4 = e4 + qn * Rational(240 * sigma(n, 3));
        e6 = e6 - qn * Rational(504 * sigma(n, 5));
    }
    // σ3(n) ≤ ζ(3)n³, σ5(n) ≤ ζ(5)n⁵
    e4 = e4.widened(power_tail(N, 3, Q) * Rational(240 * 121, 100));
    e6 = e6.widened(power_tail(N, 5, Q) * Rational(504 * 104, 100));
    ComplexBall e43 = e4 * e4 * e4;
    ComplexBall j = e43 * Rational(1728) / (e43 - e6 * e6);
    return {e4, e6, j};
}

PeriodLattice period_lattice(const EllipticCurve& E, mpfr_prec_t prec) {
    static std::mutex mu;
    static std::map<std::pair<std::string, mpfr_prec_t>, PeriodLattice> cache;
    const auto key = std::make_pair(E.serialize(), prec);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const Rational c4 = E.c4().rational_value(), c6 = E.c6().rational_value();
    const Rational jE = E.rational_j();
    ComplexBall tau(prec);
    mpfr_prec_t work = prec;
    if (c6 == 0) {
        tau = ComplexBall(RealInterval(0L, prec), RealInterval(1L, prec));
    } else if (c4 == 0) {
        tau = ComplexBall(RealInterval(Rational(-1, 2), prec), sqrt(RealInterval(3L, prec)) / 2L);
    } else {
        const cd t0 = approximate_tau(jE);
        // E4³ − E6² ≈ 1728q cancels about 2π·Im τ / log 2 bits
        work = prec + 32 + static_cast<mpfr_prec_t>(10 * t0.imag());
        ComplexBall t = make_ball(t0.real(), t0.imag(), work);
        const ComplexBall target(RealInterval(jE, work));
        auto f_and_df = [&](const ComplexBall& x) {
            ModularValues mv = modular_values(x);
            ComplexBall df = two_pi_i(work) * mv.j * mv.E6 / mv.E4;
            return std::make_pair(mv.j - target, -df);
        };
        double last_step = 1;
        for (int it = 0; it < 200; ++it) {
            auto [f, df] = f_and_df(t);
            ComplexBall step = midpoint(f / df);
            t = midpoint(t - step);
            last_step = step.re().mid_double() * step.re().mid_double() + step.im().mid_double() * step.im().mid_double();
            last_step = std::sqrt(last_step);
            if (last_step < std::ldexp(1.0, -static_cast<int>(work) + 16)) break;
        }
        double r = std::max(8 * last_step, std::ldexp(1.0, -static_cast<int>(work) + 24));
        bool ok = false;
        for (int attempt = 0; attempt < 6 && !ok; ++attempt, r *= 16) {
            ComplexBall B = t.widened(RealInterval::from_double(r, work));
            auto [f0, d0] = f_and_df(t);
            ComplexBall Yinv = midpoint(ComplexBall(RealInterval(1L, work)) / d0);
            ComplexBall dB = f_and_df(B).second;
            ComplexBall K = t - Yinv * f0 + (ComplexBall(RealInterval(1L, work)) - Yinv * dB) * (B - t);
            if (strictly_inside(K, B)) {
                tau = K;
                ok = true;
            }
        }
        if (!ok) throw PrecisionExhausted("could not certify the period ratio");
    }
    ModularValues mv = modular_values(tau);
    const RealInterval twopi = RealInterval::pi(work) * 2L;
    const RealInterval tp4 = pow(twopi, 4), tp6 = pow(twopi, 6);
    const ComplexBall g2t = mv.E4 * (tp4 / 12L);
    const ComplexBall g3t = mv.E6 * (tp6 / 216L);
    ComplexBall omega(work);
    if (c6 == 0) {
        omega = root(g2t / ComplexBall(RealInterval(c4 / 12, work)), 4);
    } else if (c4 == 0) {
        omega = root(g3t / ComplexBall(RealInterval(c6 / 216, work)), 6);
    } else {
        ComplexBall r4 = g2t / ComplexBall(RealInterval(c4 / 12, work));
        ComplexBall r6 = g3t / ComplexBall(RealInterval(c6 / 216, work));
        omega = root(r6 / r4, 2);
    }
    PeriodLattice L{omega.with_precision(prec), tau.with_precision(prec), exp_2pi_i(tau).with_precision(prec)};
    {
        std::lock_guard<std::mutex> lock(mu);
        cache.emplace(key, L);
    }
    return L;
}

NormalisedP normalised_p(const ComplexBall& q, const ComplexBall& w) {
    const mpfr_prec_t prec = std::max(q.precision(), w.precision());
    const ComplexBall one(RealInterval(1L, prec));
    const ComplexBall u = exp_2pi_i(w);
    const RealInterval Q = upper_of(abs(q));
    const RealInterval au = abs(u);
    const RealInterval Uhi = upper_of(au), Ulo = lower_of(au);
    if (!Ulo.certainly_positive()) throw PrecisionExhausted("elliptic log ball too wide");
    const RealInterval half(Rational(1, 2), prec);
    if (!(Q * Uhi).certainly_less(half) || !(Q / Ulo).certainly_less(half)) {
        throw std::domain_error("argument outside the reduced strip");
    }
    const RealInterval spread = Uhi + RealInterval(1L, prec) / Ulo;
    const double logQ = std::log(Q.upper_double());
    const double extra = std::log(spread.upper_double());
    long N = 1;
    while (N * logQ + extra > -(static_cast<double>(prec) + 10) * std::log(2.0) && N < 100000) ++N;

    auto term = [&](const ComplexBall& t) { return t / sqr(one - t); };
    auto dterm = [&](const ComplexBall& t) {
        ComplexBall d = one - t;
        return t * (one + t) / (d * d * d);
    };
    const ComplexBall uinv = one / u;
    ComplexBall value = term(u) + Rational(1, 12);
    ComplexBall deriv = dterm(u);
    ComplexBall qn = one;
    for (long n = 1; n <= N; ++n) {
        qn = qn * q;
        const ComplexBall a = qn * u, b = qn * uinv;
        value = value + term(a) + term(b) - term(qn) * Rational(2);
        deriv = deriv + dterm(a) - dterm(b);
    }
    const RealInterval geo = pow(Q, static_cast<unsigned long>(N + 1)) / (RealInterval(1L, prec) - Q);
    value = value.widened(upper_of((spread + RealInterval(2L, prec)) * geo * 4L));
    deriv = deriv.widened(upper_of(spread * geo * 12L));
    deriv = deriv * two_pi_i(prec);
    return {value, deriv};
}

ComplexBall reduce_log(const ComplexBall& w0, const ComplexBall& tau) {
    ComplexBall w = w0;
    const double t = tau.im().mid_double();
    if (w.im().mid_double() < 0) w = -w;
    const double k = std::floor(w.im().mid_double() / t);
    if (k != 0) w = w - tau * Rational(static_cast<long>(k));
    if (w.im().mid_double() > t / 2) w = tau - w;
    const double m = std::round(w.re().mid_double());
    if (m != 0) w = w + Rational(static_cast<long>(-m));
    return w;
}

ComplexBall elliptic_log_from_x(const PeriodLattice& L, const ComplexBall& X, bool half_period) {
    const mpfr_prec_t prec = std::max(X.precision(), L.q.precision());
    const ComplexBall tpi = two_pi_i(prec);
    const ComplexBall Y = X * sqr(L.omega1 / tpi);
    const ComplexBall one(RealInterval(1L, prec));
    if (half_period) {
        const ComplexBall cands[3] = {ComplexBall(RealInterval(Rational(1, 2), prec)), L.tau * Rational(1, 2),
                                      (L.tau + Rational(1)) * Rational(1, 2)};
        int hit = -1;
        for (int i = 0; i < 3; ++i) {
            if (normalised_p(L.q, cands[i]).value.overlaps(Y)) {
                if (hit >= 0) throw PrecisionExhausted("half periods not separated");
                hit = i;
            }
        }
        if (hit < 0) throw std::logic_error("no half period matches a 2-torsion point");
        return reduce_log(cands[hit], L.tau);
    }
    // start: solve u/(1−u)² = c with the n ≠ 0 terms dropped
    const cd Yd(Y.re().mid_double(), Y.im().mid_double());
    const cd qd(L.q.re().mid_double(), L.q.im().mid_double());
    cd c = Yd - 1.0 / 12;
    cd qn = 1;
    for (long n = 1; n < 40; ++n) {
        qn *= qd;
        c += 2.0 * sigma(n, 1).get_d() * qn;
    }
    cd u0 = std::abs(c) < 1e-300 ? cd(1e-300) : ((2.0 * c + 1.0) - std::sqrt(4.0 * c + 1.0)) / (2.0 * c);
    if (std::abs(u0) > 1) u0 = 1.0 / u0;
    if (std::abs(u0) < 1e-300) u0 = 1e-300;
    const cd w0d = std::log(u0) / cd(0, 2 * kPi);

    auto newton = [&](ComplexBall w, double& last) {
        last = 1;
        for (int it = 0; it < 100; ++it) {
            NormalisedP v = normalised_p(L.q, w);
            ComplexBall step = midpoint((v.value - Y) / v.derivative);
            w = reduce_log(midpoint(w - step), L.tau);
            last = std::hypot(step.re().mid_double(), step.im().mid_double());
            if (last < std::ldexp(1.0, -static_cast<int>(prec) + 16)) break;
        }
        return w;
    };
    auto residual = [&](const ComplexBall& w) {
        NormalisedP v = normalised_p(L.q, w);
        ComplexBall d = v.value - Y;
        return std::hypot(d.re().mid_double(), d.im().mid_double());
    };
    double last = 1;
    ComplexBall w = make_ball(w0d.real(), w0d.imag(), prec);
    try {
        w = newton(reduce_log(w, L.tau), last);
    } catch (const std::exception&) {
        last = 1;
    }
    if (!(last < 1e-6)) {
        // coarse search over the reduced region, then Newton again
        const double t = L.tau.im().mid_double();
        double best = INFINITY;
        ComplexBall bw = w;
        for (int a = 0; a <= 20; ++a) {
            for (int b = 0; b <= 10; ++b) {
                ComplexBall g = make_ball(-0.5 + a / 20.0, t * b / 20.0 + 1e-3, prec);
                double rr;
                try {
                    rr = residual(g);
                } catch (const std::exception&) {
                    continue;
                }
                if (rr < best) {
                    best = rr;
                    bw = g;
                }
            }
        }
        w = newton(bw, last);
    }
    double r = std::max(8 * last, std::ldexp(1.0, -static_cast<int>(prec) + 24));
    for (int attempt = 0; attempt < 6; ++attempt, r *= 16) {
        ComplexBall B = w.widened(RealInterval::from_double(r, prec));
        NormalisedP v0 = normalised_p(L.q, w);
        ComplexBall Yinv = midpoint(one / v0.derivative);
        NormalisedP vB = normalised_p(L.q, B);
        ComplexBall K = w - Yinv * (v0.value - Y) + (one - Yinv * vB.derivative) * (B - w);
        if (strictly_inside(K, B)) return K;
    }
    throw PrecisionExhausted("could not certify the elliptic logarithm");
}

}  // namespace cmh
