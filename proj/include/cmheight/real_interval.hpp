#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <stdexcept>
#include <string>

namespace cmh {

using Integer = mpz_class;
using Rational = mpq_class;

inline constexpr mpfr_prec_t kDefaultPrecision = 128;

/// Raised when an adaptive computation cannot meet its target below the
/// configured precision cap.
class PrecisionExhausted : public std::runtime_error {
public:
    PrecisionExhausted() : std::runtime_error("precision exhausted") {}
    explicit PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};

/// Owning wrapper around an mpfr_t.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = kDefaultPrecision);
    BigFloat(double v, mpfr_prec_t prec);
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }
    std::string to_string(int digits = 17) const;

private:
    mpfr_t v_;
};

/// Closed interval [lower, upper] with outward-rounded arithmetic: every
/// operation returns an enclosure of the exact result whenever the operands
/// enclose their exact values. Binary operations work at the larger of the
/// operand precisions.
class RealInterval {
public:
    explicit RealInterval(mpfr_prec_t prec = kDefaultPrecision);
    RealInterval(long v, mpfr_prec_t prec);
    RealInterval(const Integer& v, mpfr_prec_t prec);
    RealInterval(const Rational& v, mpfr_prec_t prec);
    RealInterval(const BigFloat& lo, const BigFloat& hi);

    static RealInterval from_double(double v, mpfr_prec_t prec);
    static RealInterval pi(mpfr_prec_t prec);
    static RealInterval log2(mpfr_prec_t prec);
    /// [mid - |rad|, mid + |rad|].
    static RealInterval ball(const Rational& mid, const Rational& rad, mpfr_prec_t prec);

    const BigFloat& lower() const { return lo_; }
    const BigFloat& upper() const { return hi_; }
    mpfr_prec_t precision() const;

    BigFloat mid() const;
    /// Upper bound on the half-width.
    BigFloat rad() const;
    double mid_double() const;
    double rad_double() const;  // rounded up
    double lower_double() const { return lo_.to_double(MPFR_RNDD); }
    double upper_double() const { return hi_.to_double(MPFR_RNDU); }

    bool contains(const Rational& v) const;
    bool contains(const RealInterval& o) const;
    bool contains_zero() const;
    bool certainly_positive() const;
    bool certainly_negative() const;
    bool certainly_nonnegative() const;
    bool certainly_less(const RealInterval& o) const;     // upper < o.lower
    bool certainly_less_eq(const RealInterval& o) const;  // upper <= o.lower
    bool overlaps(const RealInterval& o) const;

    /// Adds `r` to the radius.
    RealInterval widened(const RealInterval& r) const;
    RealInterval with_precision(mpfr_prec_t prec) const;

    RealInterval operator-() const;
    RealInterval& operator+=(const RealInterval& o);
    RealInterval& operator-=(const RealInterval& o);
    RealInterval& operator*=(const RealInterval& o);
    RealInterval& operator/=(const RealInterval& o);

    /// "mid ± rad" with `digits` significant digits on the midpoint.
    std::string to_string(int digits = 15) const;

private:
    BigFloat lo_;
    BigFloat hi_;
};

RealInterval operator+(const RealInterval& a, const RealInterval& b);
RealInterval operator-(const RealInterval& a, const RealInterval& b);
RealInterval operator*(const RealInterval& a, const RealInterval& b);
RealInterval operator/(const RealInterval& a, const RealInterval& b);

RealInterval operator*(const RealInterval& a, long b);
RealInterval operator/(const RealInterval& a, long b);
RealInterval operator+(const RealInterval& a, const Rational& b);
RealInterval operator*(const RealInterval& a, const Rational& b);

RealInterval abs(const RealInterval& a);
RealInterval sqr(const RealInterval& a);
RealInterval sqrt(const RealInterval& a);
RealInterval log(const RealInterval& a);
RealInterval exp(const RealInterval& a);
RealInterval sin(const RealInterval& a);
RealInterval cos(const RealInterval& a);
RealInterval pow(const RealInterval& a, unsigned long n);
RealInterval max(const RealInterval& a, const RealInterval& b);
RealInterval min(const RealInterval& a, const RealInterval& b);
RealInterval hull(const RealInterval& a, const RealInterval& b);
/// floor of the midpoint, as an integer.
Integer floor_mid(const RealInterval& a);

/// log of an exact positive integer / rational.
RealInterval log(const Integer& v, mpfr_prec_t prec);
RealInterval log(const Rational& v, mpfr_prec_t prec);

/// Bits of precision needed to resolve an absolute tolerance, plus a margin.
mpfr_prec_t precision_for_tolerance(double tol, mpfr_prec_t margin = 64);

}  // namespace cmh
