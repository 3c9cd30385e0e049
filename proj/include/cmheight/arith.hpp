#pragma once

#include "cmheight/real_interval.hpp"

#include <utility>
#include <vector>

namespace cmh {

using Factorization = std::vector<std::pair<Integer, unsigned>>;

bool is_prime(const Integer& n);
Integer next_prime(const Integer& n);  // smallest prime > n
/// Proven primality: deterministic Miller–Rabin below 3.3·10²⁴, otherwise a
/// recursive Lucas (Pratt) certificate, which needs p − 1 factored.
bool certify_prime(const Integer& n);
/// Factorization of |n| (n ≠ 0), primes ascending.
Factorization factor(const Integer& n);
/// true and (p, ℓ) if n = p^ℓ with ℓ ≥ 1.
bool prime_power(const Integer& n, Integer& p, unsigned& ell);

int kronecker(const Integer& a, const Integer& n);
/// Signed squarefree kernel: n = core · m² with core squarefree.
Integer squarefree_core(const Integer& n);
bool is_squarefree(const Integer& n);
bool is_square(const Rational& q, Rational* root = nullptr);

/// v_p(n); n ≠ 0.
long valuation(const Integer& n, const Integer& p);
long valuation(const Rational& q, const Integer& p);

/// x with x² ≡ a (mod p), p prime, a a square mod p.
Integer sqrt_mod(const Integer& a, const Integer& p);
/// Order of a in (ℤ/n)^×; gcd(a, n) = 1.
Integer multiplicative_order(const Integer& a, const Integer& n);
long euler_phi(long n);

Integer mod(const Integer& a, const Integer& m);  // representative in [0, m)
/// a^{-1} mod m; throws std::domain_error if not invertible.
Integer inv_mod(const Integer& a, const Integer& m);

}  // namespace cmh
