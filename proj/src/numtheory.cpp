#include "toricgen/numtheory.hpp"

#include <algorithm>
#include <numeric>

#include "toricgen/errors.hpp"

namespace toricgen::numtheory {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

// Extended Euclid on (a, m); returns gcd and sets inv to a^{-1} mod m when
// the gcd is 1.
u64 ext_gcd_inverse(u64 a, u64 m, u64* inv) {
    std::int64_t old_r = static_cast<std::int64_t>(a % m), r = static_cast<std::int64_t>(m);
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t qt = old_r / r;
        std::int64_t tmp = old_r - qt * r;
        old_r = r;
        r = tmp;
        tmp = old_s - qt * s;
        old_s = s;
        s = tmp;
    }
    if (inv && old_r == 1) {
        std::int64_t v = old_s % static_cast<std::int64_t>(m);
        if (v < 0) v += static_cast<std::int64_t>(m);
        *inv = static_cast<u64>(v);
    }
    return static_cast<u64>(old_r);
}

constexpr u64 kTrialBound = 1'000'000;

u64 brent_rho(u64 n) {
    // n is an odd composite with no factor below kTrialBound.
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1, q = 1, ys = 0;
        const u64 step = 128;
        u64 r = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        while (d == 1) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            for (u64 k = 0; k < r && d == 1; k += step) {
                ys = y;
                for (u64 i = 0; i < std::min(step, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                d = std::gcd(q, n);
            }
            r <<= 1;
        }
        if (d == n) {
            d = 1;
            do {
                ys = f(ys);
                d = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (d == 1);
        }
        if (d != n) return d;
    }
}

void factor_into(u64 n, std::vector<u64>& primes) {
    if (n == 1) return;
    if (is_prime(n)) {
        primes.push_back(n);
        return;
    }
    u64 d = brent_rho(n);
    factor_into(d, primes);
    factor_into(n / d, primes);
}

// Number of carries when adding k and (n-k) in base p; `from` restricts to
// carries at digit positions >= from. Equals the p-valuation of C(n, k)
// when from == 0 (Kummer).
unsigned carry_count(u64 n, u64 k, u64 p, unsigned from) {
    u64 a = k, b = n - k;
    unsigned carries = 0, carry = 0, pos = 0;
    while (a || b || carry) {
        u64 s = a % p + b % p + carry;
        carry = s >= p ? 1 : 0;
        if (carry && pos >= from) ++carries;
        a /= p;
        b /= p;
        ++pos;
    }
    return carries;
}

// C(n, k) mod p for prime p via Lucas, digit binomials evaluated
// multiplicatively.
u64 lucas_mod_prime(u64 n, u64 k, u64 p) {
    u64 result = 1 % p;
    while (k > 0 || n > 0) {
        u64 nd = n % p, kd = k % p;
        if (kd > nd) return 0;
        // C(nd, kd) mod p
        u64 kk = std::min(kd, nd - kd);
        u64 num = 1 % p, den = 1 % p;
        for (u64 i = 1; i <= kk; ++i) {
            num = mulmod(num, (nd - kk + i) % p, p);
            den = mulmod(den, i % p, p);
        }
        u64 inv = 0;
        ext_gcd_inverse(den, p, &inv);
        result = mulmod(result, mulmod(num, inv, p), p);
        n /= p;
        k /= p;
    }
    return result;
}

// C(n, k) mod p^e for e >= 2, via the stripped-factorial decomposition:
//   x! = p^{...} * prod_j (floor(x/p^j))!_p  with  y!_p = prod_{i<=y, p∤i} i,
// periodic mod q with period q up to a Wilson-type sign.
u64 granville_mod_prime_power(u64 n, u64 k, u64 p, unsigned e, u64 q) {
    unsigned carries = carry_count(n, k, p, 0);
    if (carries >= e) return 0;

    if (q > (u64(1) << 27))
        throw size_error("binomial_mod: prime-power modulus too large for table");
    std::vector<u64> fact(q);
    fact[0] = 1 % q;
    for (u64 i = 1; i < q; ++i)
        fact[i] = i % p == 0 ? fact[i - 1] : mulmod(fact[i - 1], i, q);

    const bool wilson_plus = (p == 2 && e >= 3);
    unsigned high_carries = carry_count(n, k, p, e - 1);

    u64 r = n - k;
    u64 num = 1 % q, den = 1 % q;
    for (u64 nn = n, kk = k, rr = r; nn > 0; nn /= p, kk /= p, rr /= p) {
        num = mulmod(num, fact[nn % q], q);
        den = mulmod(den, fact[kk % q], q);
        den = mulmod(den, fact[rr % q], q);
    }
    u64 den_inv = 0;
    if (ext_gcd_inverse(den, q, &den_inv) != 1)
        throw std::logic_error("binomial_mod: stripped factorial not a unit");
    u64 res = mulmod(num, den_inv, q);
    if (!wilson_plus && (high_carries & 1)) res = (q - res) % q;
    res = mulmod(res, powmod(p, carries, q), q);
    return res;
}

u64 crt_pair(u64 r1, u64 m1, u64 r2, u64 m2) {
    // Moduli coprime. Result mod m1*m2 (fits: m1*m2 <= original modulus).
    u64 inv = 0;
    ext_gcd_inverse(m1 % m2, m2, &inv);
    u64 diff = (r2 + m2 - r1 % m2) % m2;
    u64 t = mulmod(diff, inv, m2);
    return r1 + m1 * t;
}

}  // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

u64 Factorization::value() const {
    u64 v = 1;
    for (const auto& pp : prime_powers)
        for (unsigned i = 0; i < pp.exponent; ++i) v *= pp.prime;
    return v;
}

Factorization factorize(u64 m) {
    if (m < 2) throw parameter_error("factorize: m must be >= 2");
    std::vector<u64> primes;
    u64 rest = m;
    for (u64 p = 2; p <= kTrialBound && p * p <= rest; p += (p == 2 ? 1 : 2)) {
        while (rest % p == 0) {
            primes.push_back(p);
            rest /= p;
        }
    }
    factor_into(rest, primes);
    std::sort(primes.begin(), primes.end());

    Factorization f;
    for (u64 p : primes) {
        if (!f.prime_powers.empty() && f.prime_powers.back().prime == p)
            ++f.prime_powers.back().exponent;
        else
            f.prime_powers.push_back({p, 1});
    }
    return f;
}

std::optional<PrimePower> prime_power(u64 m) {
    auto f = factorize(m);
    if (f.prime_powers.size() == 1) return f.prime_powers.front();
    return std::nullopt;
}

u64 largest_prime_factor(u64 m) { return factorize(m).prime_powers.back().prime; }

u64 odd_radical(u64 m) {
    u64 r = 1;
    for (const auto& pp : factorize(m).prime_powers)
        if (pp.prime != 2) r *= pp.prime;
    return r;
}

unsigned two_adic_valuation(u64 m) {
    if (m == 0) throw parameter_error("two_adic_valuation: m must be nonzero");
    unsigned v = 0;
    while ((m & 1) == 0) {
        m >>= 1;
        ++v;
    }
    return v;
}

u64 mod_inverse(u64 c, u64 m) {
    if (m < 2) throw parameter_error("mod_inverse: modulus must be >= 2");
    u64 inv = 0;
    if (ext_gcd_inverse(c % m, m, &inv) != 1)
        throw not_invertible_error("mod_inverse: gcd(c, m) > 1");
    return inv == 0 ? 0 : inv;  // inv in [1, m) since gcd is 1 and m >= 2
}

u64 mod_inverse(const BigInt& c, u64 m) {
    if (m < 2) throw parameter_error("mod_inverse: modulus must be >= 2");
    u64 r = mpz_fdiv_ui(c.get_mpz_t(), m);
    return mod_inverse(r, m);
}

u64 binomial_mod(u64 n, u64 k, u64 m) {
    if (k > n) throw parameter_error("binomial_mod: k > n");
    if (m < 2) throw parameter_error("binomial_mod: modulus must be >= 2");
    u64 acc_r = 0, acc_m = 1;
    for (const auto& pp : factorize(m).prime_powers) {
        u64 q = 1;
        for (unsigned i = 0; i < pp.exponent; ++i) q *= pp.prime;
        u64 r = pp.exponent == 1 ? lucas_mod_prime(n, k, pp.prime)
                                 : granville_mod_prime_power(n, k, pp.prime, pp.exponent, q);
        if (acc_m == 1) {
            acc_r = r;
            acc_m = q;
        } else {
            acc_r = crt_pair(acc_r, acc_m, r, q);
            acc_m *= q;
        }
    }
    return acc_r;
}

u64 binomial_mod_bignum(u64 n, u64 k, u64 m) {
    if (k > n) throw parameter_error("binomial_mod_bignum: k > n");
    if (m < 2) throw parameter_error("binomial_mod_bignum: modulus must be >= 2");
    BigInt b = binomial(n, k);
    return mpz_fdiv_ui(b.get_mpz_t(), m);
}

BigInt binomial(u64 n, u64 k) {
    BigInt b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

unsigned odd_construction_exponent(u64 n) {
    if (n % 2 == 0) throw parameter_error("odd_construction_exponent: n must be odd");
    u64 np1 = n + 1;
    if ((np1 & (np1 - 1)) == 0)
        throw parameter_error("odd_construction_exponent: n+1 is a power of two");
    return two_adic_valuation(np1);
}

BinomialModScanner::BinomialModScanner(u64 n, u64 m) : n_(n), m_(m) {
    if (m < 2) throw parameter_error("BinomialModScanner: modulus must be >= 2");
    for (const auto& pp : factorize(m).prime_powers) {
        Channel ch;
        ch.p = pp.prime;
        ch.exp = pp.exponent;
        ch.q = 1;
        for (unsigned i = 0; i < pp.exponent; ++i) ch.q *= pp.prime;
        ch.unit = 1 % ch.q;
        ch.val = 0;
        channels_.push_back(ch);
    }
}

void BinomialModScanner::advance() {
    if (k_ >= n_) throw parameter_error("BinomialModScanner: advanced past k = n");
    u64 num = n_ - k_;  // C(n, k+1) = C(n, k) * (n - k) / (k + 1)
    u64 den = k_ + 1;
    for (auto& ch : channels_) {
        u64 x = num;
        while (x % ch.p == 0) {
            x /= ch.p;
            ++ch.val;
        }
        u64 y = den;
        while (y % ch.p == 0) {
            y /= ch.p;
            --ch.val;
        }
        ch.unit = mulmod(ch.unit, x % ch.q, ch.q);
        u64 inv = 0;
        ext_gcd_inverse(y % ch.q, ch.q, &inv);
        ch.unit = mulmod(ch.unit, inv, ch.q);
    }
    ++k_;
}

u64 BinomialModScanner::value() const {
    u64 acc_r = 0, acc_m = 1;
    for (const auto& ch : channels_) {
        u64 r = ch.val >= static_cast<std::int64_t>(ch.exp)
                    ? 0
                    : mulmod(ch.unit, powmod(ch.p, static_cast<u64>(ch.val), ch.q), ch.q);
        if (acc_m == 1) {
            acc_r = r;
            acc_m = ch.q;
        } else {
            acc_r = crt_pair(acc_r, acc_m, r, ch.q);
            acc_m *= ch.q;
        }
    }
    return acc_r;
}

}  // namespace toricgen::numtheory
