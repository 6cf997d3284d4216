#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace toricgen {

using BigInt = mpz_class;

namespace numtheory {

struct PrimePower {
    std::uint64_t prime = 0;
    unsigned exponent = 0;
    bool operator==(const PrimePower&) const = default;
};

struct Factorization {
    std::vector<PrimePower> prime_powers;  // primes strictly increasing
    std::uint64_t value() const;           // product of p^e
};

bool is_prime(std::uint64_t n);

// Complete factorization of m >= 2. Deterministic: trial division below 1e6,
// Miller-Rabin + Brent-rho with fixed parameters above.
Factorization factorize(std::uint64_t m);

// (p, k) iff m = p^k, m >= 2.
std::optional<PrimePower> prime_power(std::uint64_t m);

std::uint64_t largest_prime_factor(std::uint64_t m);

// Product of the distinct odd primes dividing m; 1 when m is a power of two.
std::uint64_t odd_radical(std::uint64_t m);

unsigned two_adic_valuation(std::uint64_t m);

// Residue r in [1, m) with c * r == 1 mod m. Throws not_invertible_error
// when gcd(c, m) > 1.
std::uint64_t mod_inverse(const BigInt& c, std::uint64_t m);
std::uint64_t mod_inverse(std::uint64_t c, std::uint64_t m);

// C(n, k) mod m for composite m: computed per prime-power factor of m
// (Lucas for primes, stripped-factorial with carry bookkeeping for higher
// powers) and recombined by CRT. Requires k <= n.
std::uint64_t binomial_mod(std::uint64_t n, std::uint64_t k, std::uint64_t m);

// Reference path: full bignum binomial reduced mod m.
std::uint64_t binomial_mod_bignum(std::uint64_t n, std::uint64_t k, std::uint64_t m);

BigInt binomial(std::uint64_t n, std::uint64_t k);

// For odd n with n+1 not a power of two: the unique m >= 1 with
// n == 2^m - 1 mod 2^{m+1}, i.e. the 2-adic valuation of n+1.
// Drives the epsilon choice of the odd-dimension construction.
unsigned odd_construction_exponent(std::uint64_t n);

// Walks C(n, k) mod m for k = 0, 1, 2, ... without ever materializing the
// binomial: per prime-power factor of m it carries the p-stripped unit and
// the exact p-valuation across consecutive k. This is the sweep kernel.
class BinomialModScanner {
public:
    BinomialModScanner(std::uint64_t n, std::uint64_t m);

    std::uint64_t k() const { return k_; }
    std::uint64_t value() const;  // C(n, k) mod m
    void advance();               // k += 1; requires k < n

private:
    struct Channel {
        std::uint64_t p = 0;
        unsigned exp = 0;
        std::uint64_t q = 0;     // p^exp
        std::uint64_t unit = 1;  // p-stripped part of C(n, k) mod q
        std::int64_t val = 0;    // exact p-valuation of C(n, k)
    };

    std::uint64_t n_ = 0;
    std::uint64_t m_ = 1;
    std::uint64_t k_ = 0;
    std::vector<Channel> channels_;
};

}  // namespace numtheory
}  // namespace toricgen
