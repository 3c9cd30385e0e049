#include "cmheight/real_interval.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace cmh {

// ---------------------------------------------------------------------------
// BigFloat

BigFloat::BigFloat(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(double v, mpfr_prec_t prec) {
    mpfr_init2(v_, std::max<mpfr_prec_t>(prec, 53));
    mpfr_set_d(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

std::string BigFloat::to_string(int digits) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

// ---------------------------------------------------------------------------
// RealInterval

namespace {

mpfr_prec_t join(const RealInterval& a, const RealInterval& b) {
    return std::max(a.precision(), b.precision());
}

void check_finite(const RealInterval& r) {
    if (!mpfr_number_p(r.lower().get()) || !mpfr_number_p(r.upper().get())) {
        throw PrecisionExhausted("interval overflow");
    }
}

}  // namespace

RealInterval::RealInterval(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}

RealInterval::RealInterval(long v, mpfr_prec_t prec) : lo_(prec), hi_(prec) {
    mpfr_set_si(lo_.get(), v, MPFR_RNDD);
    mpfr_set_si(hi_.get(), v, MPFR_RNDU);
}

RealInterval::RealInterval(const Integer& v, mpfr_prec_t prec) : lo_(prec), hi_(prec) {
    mpfr_set_z(lo_.get(), v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(hi_.get(), v.get_mpz_t(), MPFR_RNDU);
}

RealInterval::RealInterval(const Rational& v, mpfr_prec_t prec) : lo_(prec), hi_(prec) {
    mpfr_set_q(lo_.get(), v.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_.get(), v.get_mpq_t(), MPFR_RNDU);
}

RealInterval::RealInterval(const BigFloat& lo, const BigFloat& hi) : lo_(lo), hi_(hi) {
    if (mpfr_cmp(lo_.get(), hi_.get()) > 0) {
        throw std::invalid_argument("RealInterval: lower bound exceeds upper bound");
    }
}

RealInterval RealInterval::from_double(double v, mpfr_prec_t prec) {
    RealInterval r(prec);
    mpfr_set_d(r.lo_.get(), v, MPFR_RNDD);
    mpfr_set_d(r.hi_.get(), v, MPFR_RNDU);
    return r;
}

RealInterval RealInterval::pi(mpfr_prec_t prec) {
    RealInterval r(prec);
    mpfr_const_pi(r.lo_.get(), MPFR_RNDD);
    mpfr_const_pi(r.hi_.get(), MPFR_RNDU);
    return r;
}

RealInterval RealInterval::log2(mpfr_prec_t prec) {
    RealInterval r(prec);
    mpfr_const_log2(r.lo_.get(), MPFR_RNDD);
    mpfr_const_log2(r.hi_.get(), MPFR_RNDU);
    return r;
}

RealInterval RealInterval::ball(const Rational& mid, const Rational& rad, mpfr_prec_t prec) {
    Rational lo = mid - abs(rad);
    Rational hi = mid + abs(rad);
    RealInterval r(prec);
    mpfr_set_q(r.lo_.get(), lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), hi.get_mpq_t(), MPFR_RNDU);
    return r;
}

mpfr_prec_t RealInterval::precision() const {
    return std::max(lo_.precision(), hi_.precision());
}

BigFloat RealInterval::mid() const {
    BigFloat m(precision() + 1);
    mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return m;
}

BigFloat RealInterval::rad() const {
    // max(mid - lo, hi - mid), rounded up
    BigFloat m = mid();
    BigFloat a(precision() + 1), b(precision() + 1);
    mpfr_sub(a.get(), m.get(), lo_.get(), MPFR_RNDU);
    mpfr_sub(b.get(), hi_.get(), m.get(), MPFR_RNDU);
    if (mpfr_cmp(a.get(), b.get()) > 0) return a;
    return b;
}

double RealInterval::mid_double() const { return mid().to_double(); }

double RealInterval::rad_double() const { return rad().to_double(MPFR_RNDU); }

bool RealInterval::contains(const Rational& v) const {
    return mpfr_cmp_q(lo_.get(), v.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), v.get_mpq_t()) >= 0;
}

bool RealInterval::contains(const RealInterval& o) const {
    return mpfr_cmp(lo_.get(), o.lo_.get()) <= 0 && mpfr_cmp(hi_.get(), o.hi_.get()) >= 0;
}

bool RealInterval::contains_zero() const {
    return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0;
}

bool RealInterval::certainly_positive() const { return mpfr_sgn(lo_.get()) > 0; }
bool RealInterval::certainly_negative() const { return mpfr_sgn(hi_.get()) < 0; }
bool RealInterval::certainly_nonnegative() const { return mpfr_sgn(lo_.get()) >= 0; }

bool RealInterval::certainly_less(const RealInterval& o) const {
    return mpfr_cmp(hi_.get(), o.lo_.get()) < 0;
}

bool RealInterval::certainly_less_eq(const RealInterval& o) const {
    return mpfr_cmp(hi_.get(), o.lo_.get()) <= 0;
}

bool RealInterval::overlaps(const RealInterval& o) const {
    return mpfr_cmp(lo_.get(), o.hi_.get()) <= 0 && mpfr_cmp(o.lo_.get(), hi_.get()) <= 0;
}

RealInterval RealInterval::widened(const RealInterval& r) const {
    RealInterval out(std::max(precision(), r.precision()));
    BigFloat rr = abs(r).upper();
    mpfr_sub(out.lo_.get(), lo_.get(), rr.get(), MPFR_RNDD);
    mpfr_add(out.hi_.get(), hi_.get(), rr.get(), MPFR_RNDU);
    return out;
}

RealInterval RealInterval::with_precision(mpfr_prec_t prec) const {
    RealInterval out(prec);
    mpfr_set(out.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_set(out.hi_.get(), hi_.get(), MPFR_RNDU);
    return out;
}

RealInterval RealInterval::operator-() const {
    RealInterval out(precision());
    mpfr_neg(out.lo_.get(), hi_.get(), MPFR_RNDD);
    mpfr_neg(out.hi_.get(), lo_.get(), MPFR_RNDU);
    return out;
}

RealInterval& RealInterval::operator+=(const RealInterval& o) { return *this = *this + o; }
RealInterval& RealInterval::operator-=(const RealInterval& o) { return *this = *this - o; }
RealInterval& RealInterval::operator*=(const RealInterval& o) { return *this = *this * o; }
RealInterval& RealInterval::operator/=(const RealInterval& o) { return *this = *this / o; }

std::string RealInterval::to_string(int digits) const {
    return mid().to_string(digits) + " ± " + rad().to_string(3);
}

RealInterval operator+(const RealInterval& a, const RealInterval& b) {
    RealInterval out(join(a, b));
    BigFloat lo(out.precision()), hi(out.precision());
    mpfr_add(lo.get(), a.lower().get(), b.lower().get(), MPFR_RNDD);
    mpfr_add(hi.get(), a.upper().get(), b.upper().get(), MPFR_RNDU);
    return RealInterval(lo, hi);
}

RealInterval operator-(const RealInterval& a, const RealInterval& b) {
    BigFloat lo(join(a, b)), hi(join(a, b));
    mpfr_sub(lo.get(), a.lower().get(), b.upper().get(), MPFR_RNDD);
    mpfr_sub(hi.get(), a.upper().get(), b.lower().get(), MPFR_RNDU);
    return RealInterval(lo, hi);
}

RealInterval operator*(const RealInterval& a, const RealInterval& b) {
    const mpfr_prec_t prec = join(a, b);
    const mpfr_srcptr as[2] = {a.lower().get(), a.upper().get()};
    const mpfr_srcptr bs[2] = {b.lower().get(), b.upper().get()};
    BigFloat lo(prec), hi(prec), t(prec);
    bool first = true;
    for (auto x : as) {
        for (auto y : bs) {
            mpfr_mul(t.get(), x, y, MPFR_RNDD);
            if (first || mpfr_cmp(t.get(), lo.get()) < 0) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
            mpfr_mul(t.get(), x, y, MPFR_RNDU);
            if (first || mpfr_cmp(t.get(), hi.get()) > 0) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
            first = false;
        }
    }
    RealInterval out(lo, hi);
    check_finite(out);
    return out;
}

RealInterval operator/(const RealInterval& a, const RealInterval& b) {
    if (b.contains_zero()) {
        throw std::domain_error("division by an interval containing zero");
    }
    const mpfr_prec_t prec = join(a, b);
    const mpfr_srcptr as[2] = {a.lower().get(), a.upper().get()};
    const mpfr_srcptr bs[2] = {b.lower().get(), b.upper().get()};
    BigFloat lo(prec), hi(prec), t(prec);
    bool first = true;
    for (auto x : as) {
        for (auto y : bs) {
            mpfr_div(t.get(), x, y, MPFR_RNDD);
            if (first || mpfr_cmp(t.get(), lo.get()) < 0) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
            mpfr_div(t.get(), x, y, MPFR_RNDU);
            if (first || mpfr_cmp(t.get(), hi.get()) > 0) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
            first = false;
        }
    }
    RealInterval out(lo, hi);
    check_finite(out);
    return out;
}

RealInterval operator*(const RealInterval& a, long b) {
    return a * RealInterval(b, a.precision());
}

RealInterval operator/(const RealInterval& a, long b) {
    return a / RealInterval(b, a.precision());
}

RealInterval operator+(const RealInterval& a, const Rational& b) {
    return a + RealInterval(b, a.precision());
}

RealInterval operator*(const RealInterval& a, const Rational& b) {
    return a * RealInterval(b, a.precision());
}

RealInterval abs(const RealInterval& a) {
    if (a.certainly_nonnegative()) return a;
    if (mpfr_sgn(a.upper().get()) <= 0) return -a;
    BigFloat lo(a.precision()), hi(a.precision());
    mpfr_set_zero(lo.get(), 1);
    if (mpfr_cmpabs(a.lower().get(), a.upper().get()) > 0) {
        mpfr_abs(hi.get(), a.lower().get(), MPFR_RNDU);
    } else {
        mpfr_set(hi.get(), a.upper().get(), MPFR_RNDU);
    }
    return RealInterval(lo, hi);
}

RealInterval sqr(const RealInterval& a) {
    RealInterval m = abs(a);
    BigFloat lo(a.precision()), hi(a.precision());
    mpfr_sqr(lo.get(), m.lower().get(), MPFR_RNDD);
    mpfr_sqr(hi.get(), m.upper().get(), MPFR_RNDU);
    RealInterval out(lo, hi);
    check_finite(out);
    return out;
}

RealInterval sqrt(const RealInterval& a) {
    if (a.certainly_negative()) throw std::domain_error("sqrt of a negative interval");
    BigFloat lo(a.precision()), hi(a.precision());
    if (mpfr_sgn(a.lower().get()) <= 0) {
        mpfr_set_zero(lo.get(), 1);
    } else {
        mpfr_sqrt(lo.get(), a.lower().get(), MPFR_RNDD);
    }
    mpfr_sqrt(hi.get(), a.upper().get(), MPFR_RNDU);
    return RealInterval(lo, hi);
}

RealInterval log(const RealInterval& a) {
    if (!a.certainly_positive()) throw std::domain_error("log of an interval not certainly positive");
    BigFloat lo(a.precision()), hi(a.precision());
    mpfr_log(lo.get(), a.lower().get(), MPFR_RNDD);
    mpfr_log(hi.get(), a.upper().get(), MPFR_RNDU);
    return RealInterval(lo, hi);
}

RealInterval exp(const RealInterval& a) {
    BigFloat lo(a.precision()), hi(a.precision());
    mpfr_exp(lo.get(), a.lower().get(), MPFR_RNDD);
    mpfr_exp(hi.get(), a.upper().get(), MPFR_RNDU);
    RealInterval out(lo, hi);
    check_finite(out);
    return out;
}

namespace {

// f(mid) enclosed, widened by rad (|f'| <= 1).
template <class F>
RealInterval lipschitz_one(const RealInterval& a, F f) {
    const mpfr_prec_t prec = a.precision();
    BigFloat m = a.mid();
    BigFloat r = a.rad();
    BigFloat lo(prec), hi(prec);
    f(lo.get(), m.get(), MPFR_RNDD);
    f(hi.get(), m.get(), MPFR_RNDU);
    mpfr_sub(lo.get(), lo.get(), r.get(), MPFR_RNDD);
    mpfr_add(hi.get(), hi.get(), r.get(), MPFR_RNDU);
    if (mpfr_cmp_si(lo.get(), -1) < 0) mpfr_set_si(lo.get(), -1, MPFR_RNDD);
    if (mpfr_cmp_si(hi.get(), 1) > 0) mpfr_set_si(hi.get(), 1, MPFR_RNDU);
    return RealInterval(lo, hi);
}

}  // namespace

RealInterval sin(const RealInterval& a) {
    return lipschitz_one(a, [](mpfr_ptr r, mpfr_srcptr x, mpfr_rnd_t rnd) { mpfr_sin(r, x, rnd); });
}

RealInterval cos(const RealInterval& a) {
    return lipschitz_one(a, [](mpfr_ptr r, mpfr_srcptr x, mpfr_rnd_t rnd) { mpfr_cos(r, x, rnd); });
}

RealInterval pow(const RealInterval& a, unsigned long n) {
    RealInterval result(1L, a.precision());
    RealInterval base = a;
    while (n) {
        if (n & 1UL) result = result * base;
        n >>= 1;
        if (n) base = sqr(base);
    }
    return result;
}

RealInterval max(const RealInterval& a, const RealInterval& b) {
    const mpfr_prec_t prec = join(a, b);
    BigFloat lo(prec), hi(prec);
    mpfr_max(lo.get(), a.lower().get(), b.lower().get(), MPFR_RNDD);
    mpfr_max(hi.get(), a.upper().get(), b.upper().get(), MPFR_RNDU);
    return RealInterval(lo, hi);
}

RealInterval min(const RealInterval& a, const RealInterval& b) {
    const mpfr_prec_t prec = join(a, b);
    BigFloat lo(prec), hi(prec);
    mpfr_min(lo.get(), a.lower().get(), b.lower().get(), MPFR_RNDD);
    mpfr_min(hi.get(), a.upper().get(), b.upper().get(), MPFR_RNDU);
    return RealInterval(lo, hi);
}

RealInterval hull(const RealInterval& a, const RealInterval& b) {
    const mpfr_prec_t prec = join(a, b);
    BigFloat lo(prec), hi(prec);
    mpfr_min(lo.get(), a.lower().get(), b.lower().get(), MPFR_RNDD);
    mpfr_max(hi.get(), a.upper().get(), b.upper().get(), MPFR_RNDU);
    return RealInterval(lo, hi);
}

Integer floor_mid(const RealInterval& a) {
    BigFloat m = a.mid();
    Integer z;
    mpfr_get_z(z.get_mpz_t(), m.get(), MPFR_RNDD);
    return z;
}

RealInterval log(const Integer& v, mpfr_prec_t prec) {
    if (v <= 0) throw std::domain_error("log of a nonpositive integer");
    return log(RealInterval(v, prec));
}

RealInterval log(const Rational& v, mpfr_prec_t prec) {
    if (v <= 0) throw std::domain_error("log of a nonpositive rational");
    return log(v.get_num(), prec) - log(v.get_den(), prec);
}

mpfr_prec_t precision_for_tolerance(double tol, mpfr_prec_t margin) {
    if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
    const double bits = std::max(0.0, -std::log2(tol));
    return static_cast<mpfr_prec_t>(std::ceil(bits)) + margin;
}

}  // namespace cmh
