#include "cmheight/arith.hpp"

#include <algorithm>
#include <map>

namespace cmh {

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

Integer next_prime(const Integer& n) {
    Integer r;
    mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

namespace {

Integer powm(const Integer& b, const Integer& e, const Integer& m) {
    Integer r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

bool miller_rabin(const Integer& n, long a) {
    Integer d = n - 1;
    unsigned s = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d /= 2;
        ++s;
    }
    Integer x = powm(Integer(a), d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace

bool certify_prime(const Integer& n) {
    if (n < 2) return false;
    static const long bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    for (long b : bases) {
        if (n == b) return true;
        if (n % b == 0) return false;
    }
    // the first 13 prime bases are deterministic below 3317044064679887385961981
    static const Integer mr_limit("3317044064679887385961981");
    if (n < mr_limit) {
        for (long b : bases) {
            if (!miller_rabin(n, b)) return false;
        }
        return true;
    }
    if (!is_prime(n)) return false;
    const Integer m = n - 1;
    const auto fac = factor(m);
    for (const auto& [q, e] : fac) {
        if (!certify_prime(q)) return false;
    }
    for (long a = 2; a < 1000; ++a) {
        if (powm(Integer(a), m, n) != 1) return false;
        bool witness = true;
        for (const auto& [q, e] : fac) {
            if (powm(Integer(a), Integer(m / q), n) == 1) {
                witness = false;
                break;
            }
        }
        if (witness) return true;
    }
    return false;
}

Integer mod(const Integer& a, const Integer& m) {
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Integer inv_mod(const Integer& a, const Integer& m) {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
        throw std::domain_error("not invertible");
    }
    return r;
}

namespace {

// Pollard–Brent; n odd composite.
Integer brent(const Integer& n) {
    for (unsigned long c = 1;; ++c) {
        Integer y = 2, x, g = 1, q = 1, ys;
        unsigned long r = 1;
        const unsigned long m = 128;
        auto f = [&](const Integer& v) { return mod(Integer(v * v + c), n); };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = f(y);
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mod(Integer(q * abs(Integer(x - y))), n);
                }
                g = gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd(Integer(abs(Integer(x - ys))), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_into(Integer n, std::map<Integer, unsigned>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    Integer d = brent(n);
    factor_into(Integer(n / d), out);
    factor_into(d, out);
}

}  // namespace

Factorization factor(const Integer& n) {
    if (n == 0) throw std::invalid_argument("factor of zero");
    Integer m = abs(n);
    std::map<Integer, unsigned> acc;
    for (unsigned long p = 2; p < 10000 && p * p <= m; p += (p == 2 ? 1 : 2)) {
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            acc[Integer(p)] += 1;
            m /= p;
        }
    }
    factor_into(m, acc);
    return Factorization(acc.begin(), acc.end());
}

bool prime_power(const Integer& n, Integer& p, unsigned& ell) {
    if (n < 2) return false;
    auto f = factor(n);
    if (f.size() != 1) return false;
    p = f[0].first;
    ell = f[0].second;
    return true;
}

int kronecker(const Integer& a, const Integer& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

Integer squarefree_core(const Integer& n) {
    if (n == 0) return 0;
    Integer core = n < 0 ? -1 : 1;
    for (const auto& [p, e] : factor(n)) {
        if (e % 2) core *= p;
    }
    return core;
}

bool is_squarefree(const Integer& n) {
    if (n == 0) return false;
    for (const auto& [p, e] : factor(n)) {
        if (e > 1) return false;
    }
    return true;
}

bool is_square(const Rational& q, Rational* root) {
    if (q < 0) return false;
    if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) {
        return false;
    }
    if (root) {
        Integer a, b;
        mpz_sqrt(a.get_mpz_t(), q.get_num_mpz_t());
        mpz_sqrt(b.get_mpz_t(), q.get_den_mpz_t());
        *root = Rational(a, b);
    }
    return true;
}

long valuation(const Integer& n, const Integer& p) {
    if (n == 0) throw std::domain_error("valuation of zero");
    Integer m = n;
    return static_cast<long>(mpz_remove(m.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

long valuation(const Rational& q, const Integer& p) {
    return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

Integer sqrt_mod(const Integer& a0, const Integer& p) {
    Integer a = mod(a0, p);
    if (a == 0) return 0;
    if (p == 2) return a;
    if (kronecker(a, p) != 1) throw std::domain_error("not a quadratic residue");
    // Tonelli–Shanks
    Integer q = p - 1;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++s;
    }
    Integer z = 2;
    while (kronecker(z, p) != -1) ++z;
    auto pw = [&](const Integer& b, const Integer& e) {
        Integer r;
        mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        return r;
    };
    Integer c = pw(z, q);
    Integer x = pw(a, Integer((q + 1) / 2));
    Integer t = pw(a, q);
    unsigned long m = s;
    while (t != 1) {
        unsigned long i = 0;
        Integer tt = t;
        while (tt != 1) {
            tt = mod(Integer(tt * tt), p);
            ++i;
        }
        Integer b = c;
        for (unsigned long j = 0; j + i + 1 < m; ++j) b = mod(Integer(b * b), p);
        x = mod(Integer(x * b), p);
        c = mod(Integer(b * b), p);
        t = mod(Integer(t * c), p);
        m = i;
    }
    return x;
}

Integer multiplicative_order(const Integer& a, const Integer& n) {
    if (gcd(a, n) != 1) throw std::domain_error("element not invertible");
    if (n == 1) return 1;
    // λ-free approach: order divides φ(n)
    Integer phi = 1;
    for (const auto& [p, e] : factor(n)) {
        Integer pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e - 1);
        phi *= pe * (p - 1);
    }
    Integer ord = phi;
    for (const auto& [p, e] : factor(phi)) {
        for (unsigned i = 0; i < e; ++i) {
            Integer cand = ord / p;
            Integer r;
            mpz_powm(r.get_mpz_t(), a.get_mpz_t(), cand.get_mpz_t(), n.get_mpz_t());
            if (r == 1) {
                ord = cand;
            } else {
                break;
            }
        }
    }
    return ord;
}

long euler_phi(long n) {
    if (n < 1) throw std::invalid_argument("phi of nonpositive");
    long r = n;
    long m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            r -= r / p;
        }
    }
    if (m > 1) r -= r / m;
    return r;
}

}  // namespace cmh
