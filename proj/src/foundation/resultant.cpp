#include "cmheight/resultant.hpp"

namespace cmh {

Integer poly_resultant(const IntPoly& p, const IntPoly& q) {
    if (p.is_zero() || q.is_zero()) throw std::invalid_argument("zero polynomial");
    const int m = p.degree();
    const int n = q.degree();
    const int size = m + n;
    if (size == 0) return 1;
    // Rows 0..n-1 hold shifted p, rows n..n+m-1 shifted q; highest degree first.
    std::vector<std::vector<Integer>> a(static_cast<std::size_t>(size),
                                        std::vector<Integer>(static_cast<std::size_t>(size), 0));
    for (int r = 0; r < n; ++r) {
        for (int k = 0; k <= m; ++k) a[r][r + k] = p.coeff(static_cast<std::size_t>(m - k));
    }
    for (int r = 0; r < m; ++r) {
        for (int k = 0; k <= n; ++k) a[n + r][r + k] = q.coeff(static_cast<std::size_t>(n - k));
    }
    int sign = 1;
    Integer prev = 1;
    for (int k = 0; k < size - 1; ++k) {
        if (a[k][k] == 0) {
            int piv = -1;
            for (int r = k + 1; r < size; ++r) {
                if (a[r][k] != 0) {
                    piv = r;
                    break;
                }
            }
            if (piv < 0) return 0;
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < size; ++i) {
            for (int j = k + 1; j < size; ++j) {
                Integer t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    Integer det = a[size - 1][size - 1];
    return sign > 0 ? det : Integer(-det);
}

Rational poly_resultant(const RatPoly& p, const RatPoly& q) {
    if (p.is_zero() || q.is_zero()) throw std::invalid_argument("zero polynomial");
    const int m = p.degree();
    const int n = q.degree();
    if (n == 0) {
        Rational r = 1;
        for (int i = 0; i < m; ++i) r *= q.leading();
        return r;
    }
    if (m == 0) {
        Rational r = 1;
        for (int i = 0; i < n; ++i) r *= p.leading();
        return r;
    }
    // Res(p, q) = (−1)^{mn} Res(q, p) and Res(q, p) = lc(q)^{m−k} Res(q, p mod q).
    RatPoly rem = p % q;
    if (rem.is_zero()) return 0;
    const int k = rem.degree();
    Rational scale = 1;
    for (int i = 0; i < m - k; ++i) scale *= q.leading();
    Rational r = scale * poly_resultant(q, rem);
    if ((m * n) % 2 != 0) r = -r;
    return r;
}

Integer poly_discriminant(const IntPoly& p) {
    const int n = p.degree();
    if (n < 1) throw std::invalid_argument("discriminant of a constant");
    Integer r = poly_resultant(p, p.derivative());
    Integer q;
    mpz_divexact(q.get_mpz_t(), r.get_mpz_t(), p.leading().get_mpz_t());
    if ((n * (n - 1) / 2) % 2 != 0) q = -q;
    return q;
}

}  // namespace cmh
