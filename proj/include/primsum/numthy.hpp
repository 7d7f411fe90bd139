// Integer arithmetic shared by the sieve and the field builders:
// factorization, multiplicative functions, prime-power classification and
// enumeration.  Everything here is exact and deterministic.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "primsum/rational.hpp"

namespace primsum {

// Factorization of n with the derived quantities used by the sieve:
//   phi    Euler totient
//   omega  number of distinct primes
//   w      number of square-free divisors, 2^omega
//   rad    product of the distinct primes
//   theta  prod_{p|n} (1 - 1/p), exact
struct FactorProfile {
    uint64_t n = 1;
    std::vector<std::pair<uint64_t, int>> factors;  // (prime, exponent), primes ascending
    uint64_t phi = 1;
    int omega = 0;
    uint64_t w = 1;
    uint64_t rad = 1;
    Rational theta = Rational(1);

    std::vector<uint64_t> distinct_primes() const {
        std::vector<uint64_t> ps;
        ps.reserve(factors.size());
        for (auto& [p, e] : factors) ps.push_back(p);
        return ps;
    }
};

struct PrimePowerId {
    uint64_t q = 0;
    uint64_t p = 0;
    int k = 0;
};

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime(uint64_t n);

// Trial division by a precomputed prime table.  Supports any n whose
// second-largest prime factor is below 2^16 (covers all n < 2^32 and the
// whole sieve workload); throws std::domain_error outside that range.
// n = 0 -> std::invalid_argument.
FactorProfile factor_profile(uint64_t n);

// (p, k) with p^k = n and p prime, if such a decomposition exists.
std::optional<PrimePowerId> classify_prime_power(uint64_t n);

// All prime powers in [lo, hi], ascending.  The callback form avoids
// materializing large ranges.
void for_each_prime_power(uint64_t lo, uint64_t hi,
                          const std::function<void(const PrimePowerId&)>& fn);
std::vector<PrimePowerId> prime_powers_in(uint64_t lo, uint64_t hi);

// Simple bit sieve over [0, limit].
class BitSieve {
public:
    explicit BitSieve(uint64_t limit);
    bool is_prime(uint64_t n) const {
        return n <= limit_ && (words_[n >> 6] >> (n & 63) & 1) != 0;
    }
    uint64_t limit() const { return limit_; }

private:
    uint64_t limit_;
    std::vector<uint64_t> words_;
};

// a^e mod m with 128-bit intermediate products.
uint64_t pow_mod(uint64_t a, uint64_t e, uint64_t m);

uint64_t gcd_u64(uint64_t a, uint64_t b);

}  // namespace primsum
