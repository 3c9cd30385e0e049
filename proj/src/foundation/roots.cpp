#include "cmheight/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cmh {

namespace {

// Plain (non-interval) multiprecision complex number for the iteration.
struct Cx {
    BigFloat re, im;
    explicit Cx(mpfr_prec_t prec) : re(prec), im(prec) {}
};

void cx_mul(Cx& r, const Cx& a, const Cx& b, BigFloat& t1, BigFloat& t2) {
    mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    BigFloat re(r.re.precision());
    mpfr_sub(re.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_mul(t1.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
    mpfr_add(r.im.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_set(r.re.get(), re.get(), MPFR_RNDN);
}

void cx_div(Cx& r, const Cx& a, const Cx& b, mpfr_prec_t prec) {
    BigFloat n(prec), t1(prec), t2(prec), re(prec), im(prec);
    mpfr_sqr(t1.get(), b.re.get(), MPFR_RNDN);
    mpfr_sqr(t2.get(), b.im.get(), MPFR_RNDN);
    mpfr_add(n.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_add(re.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_mul(t1.get(), a.im.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    mpfr_sub(im.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_div(r.re.get(), re.get(), n.get(), MPFR_RNDN);
    mpfr_div(r.im.get(), im.get(), n.get(), MPFR_RNDN);
}

// p(z) and p'(z) by Horner.
void horner(const std::vector<BigFloat>& c, const Cx& z, Cx& val, Cx& der, mpfr_prec_t prec) {
    BigFloat t1(prec), t2(prec);
    mpfr_set_zero(val.re.get(), 1);
    mpfr_set_zero(val.im.get(), 1);
    mpfr_set_zero(der.re.get(), 1);
    mpfr_set_zero(der.im.get(), 1);
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        cx_mul(der, der, z, t1, t2);
        mpfr_add(der.re.get(), der.re.get(), val.re.get(), MPFR_RNDN);
        mpfr_add(der.im.get(), der.im.get(), val.im.get(), MPFR_RNDN);
        cx_mul(val, val, z, t1, t2);
        mpfr_add(val.re.get(), val.re.get(), it->get(), MPFR_RNDN);
    }
}

// One Aberth sweep; returns log2 of the largest relative correction.
double aberth_sweep(const std::vector<BigFloat>& c, std::vector<Cx>& z, mpfr_prec_t prec) {
    const std::size_t n = z.size();
    double worst = -1e300;
    Cx val(prec), der(prec), w(prec), s(prec), diff(prec), inv(prec), one(prec), den(prec);
    mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
    BigFloat t1(prec), t2(prec);
    for (std::size_t k = 0; k < n; ++k) {
        horner(c, z[k], val, der, prec);
        if (mpfr_zero_p(val.re.get()) && mpfr_zero_p(val.im.get())) continue;
        if (mpfr_zero_p(der.re.get()) && mpfr_zero_p(der.im.get())) {
            // perturb off a critical point
            mpfr_mul_d(z[k].re.get(), z[k].re.get(), 1.0001, MPFR_RNDN);
            mpfr_add_d(z[k].im.get(), z[k].im.get(), 1e-3, MPFR_RNDN);
            worst = 0;
            continue;
        }
        cx_div(w, val, der, prec);
        mpfr_set_zero(s.re.get(), 1);
        mpfr_set_zero(s.im.get(), 1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == k) continue;
            mpfr_sub(diff.re.get(), z[k].re.get(), z[j].re.get(), MPFR_RNDN);
            mpfr_sub(diff.im.get(), z[k].im.get(), z[j].im.get(), MPFR_RNDN);
            if (mpfr_zero_p(diff.re.get()) && mpfr_zero_p(diff.im.get())) continue;
            cx_div(inv, one, diff, prec);
            mpfr_add(s.re.get(), s.re.get(), inv.re.get(), MPFR_RNDN);
            mpfr_add(s.im.get(), s.im.get(), inv.im.get(), MPFR_RNDN);
        }
        // den = 1 − w·s ; step = w / den
        cx_mul(den, w, s, t1, t2);
        mpfr_ui_sub(den.re.get(), 1, den.re.get(), MPFR_RNDN);
        mpfr_neg(den.im.get(), den.im.get(), MPFR_RNDN);
        if (!(mpfr_zero_p(den.re.get()) && mpfr_zero_p(den.im.get()))) cx_div(w, w, den, prec);
        mpfr_sub(z[k].re.get(), z[k].re.get(), w.re.get(), MPFR_RNDN);
        mpfr_sub(z[k].im.get(), z[k].im.get(), w.im.get(), MPFR_RNDN);

        mpfr_hypot(t1.get(), w.re.get(), w.im.get(), MPFR_RNDN);
        mpfr_hypot(t2.get(), z[k].re.get(), z[k].im.get(), MPFR_RNDN);
        mpfr_add_ui(t2.get(), t2.get(), 1, MPFR_RNDN);
        mpfr_div(t1.get(), t1.get(), t2.get(), MPFR_RNDN);
        long e = 0;
        double m = mpfr_get_d_2exp(&e, t1.get(), MPFR_RNDN);
        double lg = (m == 0) ? -1e300 : std::log2(std::fabs(m)) + static_cast<double>(e);
        worst = std::max(worst, lg);
    }
    return worst;
}

RealInterval exact(const BigFloat& v) { return RealInterval(v, v); }

struct Certified {
    bool ok = false;
    std::vector<ComplexBall> balls;
    std::vector<bool> real;
};

// Inclusion radii r_i = n|p(z_i)| / (|a_n| Π_{j≠i}|z_i − z_j|). If the discs
// are disjoint each contains exactly one root. Centres whose imaginary part
// is within the radius are moved onto the real axis first: a disc symmetric
// about ℝ holding a single root of a real polynomial holds a real root.
Certified certify(const IntPoly& p, const std::vector<Cx>& z, mpfr_prec_t prec,
                  const Rational& target) {
    const std::size_t n = z.size();
    Certified out;
    std::vector<ComplexBall> centre;
    centre.reserve(n);
    for (const auto& zi : z) centre.emplace_back(exact(zi.re), exact(zi.im));

    auto radii = [&](const std::vector<ComplexBall>& cs) {
        std::vector<RealInterval> r;
        RealInterval lead = abs(RealInterval(p.leading(), prec));
        for (std::size_t i = 0; i < n; ++i) {
            RealInterval num = abs(eval_ball(p, cs[i])) * static_cast<long>(n);
            RealInterval den = lead;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) den = den * abs(cs[i] - cs[j]);
            }
            if (!den.certainly_positive()) {
                r.push_back(RealInterval::from_double(INFINITY, prec));
                continue;
            }
            r.push_back(num / den);
        }
        return r;
    };

    std::vector<RealInterval> r = radii(centre);
    std::vector<bool> real(n, false);
    bool moved = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (!mpfr_number_p(r[i].upper().get())) return out;
        if (abs(centre[i].im()).certainly_less_eq(RealInterval(r[i].upper(), r[i].upper()))) {
            centre[i] = ComplexBall(centre[i].re(), RealInterval(0L, prec));
            real[i] = true;
            moved = true;
        }
    }
    if (moved) {
        r = radii(centre);
        for (std::size_t i = 0; i < n; ++i) {
            if (!mpfr_number_p(r[i].upper().get())) return out;
        }
    }

    // Disjoint boxes: centre distance > √2 (r_i + r_j) ≥ half-diagonal sum.
    const RealInterval root2 = sqrt(RealInterval(2L, prec));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            RealInterval need = (r[i] + r[j]) * root2;
            if (!need.certainly_less(abs(centre[i] - centre[j]))) return out;
        }
    }
    const RealInterval tgt(target, prec);
    for (std::size_t i = 0; i < n; ++i) {
        RealInterval rr = RealInterval(r[i].upper(), r[i].upper());
        ComplexBall box = real[i]
                              ? ComplexBall(centre[i].re().widened(rr), RealInterval(0L, prec))
                              : centre[i].widened(rr);
        if (!(RealInterval(r[i].upper(), r[i].upper()) * root2).certainly_less_eq(tgt)) {
            return out;
        }
        out.balls.push_back(std::move(box));
    }
    out.real = std::move(real);
    out.ok = true;
    return out;
}

}  // namespace

std::vector<ComplexBall> isolate_complex_roots(const IntPoly& p, const Rational& target_radius,
                                               mpfr_prec_t max_prec) {
    if (target_radius <= 0) throw std::invalid_argument("target radius must be positive");
    if (p.degree() < 1) throw std::invalid_argument("root isolation needs degree >= 1");
    if (!is_squarefree(p)) throw std::invalid_argument("repeated roots");

    const std::size_t n = static_cast<std::size_t>(p.degree());
    if (n == 1) {
        Rational root = Rational(-p.coeff(0), p.coeff(1));
        root.canonicalize();
        mpfr_prec_t prec = 64;
        while (true) {
            RealInterval v(root, prec);
            if (v.rad_double() <= target_radius.get_d() / 2 || prec > max_prec) {
                return {ComplexBall(v, RealInterval(0L, prec))};
            }
            prec *= 2;
        }
    }

    mpfr_prec_t prec = 64;
    std::vector<Cx> z;
    while (prec <= max_prec) {
        std::vector<BigFloat> c;
        for (const auto& v : p.coeffs()) {
            BigFloat b(prec);
            mpfr_set_z(b.get(), v.get_mpz_t(), MPFR_RNDN);
            c.push_back(std::move(b));
        }
        if (z.empty()) {
            // Fujiwara-type bound 2·max |a_{n−k}/a_n|^{1/k}
            BigFloat bound(prec), t(prec);
            for (std::size_t k = 1; k <= n; ++k) {
                mpfr_div(t.get(), c[n - k].get(), c[n].get(), MPFR_RNDN);
                mpfr_abs(t.get(), t.get(), MPFR_RNDN);
                mpfr_rootn_ui(t.get(), t.get(), static_cast<unsigned long>(k), MPFR_RNDN);
                mpfr_max(bound.get(), bound.get(), t.get(), MPFR_RNDN);
            }
            mpfr_mul_ui(bound.get(), bound.get(), 2, MPFR_RNDN);
            if (mpfr_zero_p(bound.get())) mpfr_set_ui(bound.get(), 1, MPFR_RNDN);
            for (std::size_t k = 0; k < n; ++k) {
                const double ang = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
                Cx zk(prec);
                mpfr_mul_d(zk.re.get(), bound.get(), std::cos(ang) * 0.9, MPFR_RNDN);
                mpfr_mul_d(zk.im.get(), bound.get(), std::sin(ang) * 0.9, MPFR_RNDN);
                z.push_back(std::move(zk));
            }
        } else {
            for (auto& zk : z) {
                mpfr_prec_round(zk.re.get(), prec, MPFR_RNDN);
                mpfr_prec_round(zk.im.get(), prec, MPFR_RNDN);
            }
        }
        const double stop = -static_cast<double>(prec) + 8;
        const int cap = 200 + 20 * static_cast<int>(n);
        for (int it = 0; it < cap; ++it) {
            if (aberth_sweep(c, z, prec) < stop) break;
        }
        Certified cert = certify(p, z, prec, target_radius);
        if (cert.ok) {
            std::vector<std::size_t> idx(n);
            for (std::size_t i = 0; i < n; ++i) idx[i] = i;
            std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
                if (cert.real[a] != cert.real[b]) return static_cast<bool>(cert.real[a]);
                const double ra = cert.balls[a].re().mid_double();
                const double rb = cert.balls[b].re().mid_double();
                if (ra != rb) return ra < rb;
                return cert.balls[a].im().mid_double() < cert.balls[b].im().mid_double();
            });
            std::vector<ComplexBall> out;
            for (auto i : idx) out.push_back(cert.balls[i]);
            return out;
        }
        prec *= 2;
    }
    throw PrecisionExhausted();
}

std::vector<RealInterval> isolate_real_roots(const IntPoly& p, const Rational& target_radius,
                                             mpfr_prec_t max_prec) {
    std::vector<RealInterval> out;
    for (const auto& b : isolate_complex_roots(p, target_radius, max_prec)) {
        if (b.is_real()) out.push_back(b.re());
    }
    return out;
}

}  // namespace cmh
