#include "primsum/numthy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace primsum {

std::string to_string_i128(int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? -(unsigned __int128)v : (unsigned __int128)v;
    std::string s;
    while (u != 0) {
        s.push_back(char('0' + int(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

std::string Rational::str() const {
    return to_string_i128(num_) + "/" + to_string_i128(den_);
}

uint64_t gcd_u64(uint64_t a, uint64_t b) {
    while (b != 0) { uint64_t t = a % b; a = b; b = t; }
    return a;
}

uint64_t pow_mod(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1;
    a %= m;
    while (e != 0) {
        if (e & 1) r = uint64_t((unsigned __int128)r * a % m);
        a = uint64_t((unsigned __int128)a * a % m);
        e >>= 1;
    }
    return r;
}

namespace {

bool spsp(uint64_t n, uint64_t base) {
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    uint64_t x = pow_mod(base, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = uint64_t((unsigned __int128)x * x % n);
        if (x == n - 1) return true;
    }
    return false;
}

// primes below 2^16, built once; enough to trial-divide any 32-bit value
// and every q-1 in the sieve workload
const std::vector<uint32_t>& small_primes() {
    static const std::vector<uint32_t> primes = [] {
        constexpr uint32_t kLimit = 65536;
        std::vector<bool> comp(kLimit, false);
        std::vector<uint32_t> ps;
        for (uint32_t i = 2; i < kLimit; ++i) {
            if (comp[i]) continue;
            ps.push_back(i);
            for (uint64_t j = uint64_t(i) * i; j < kLimit; j += i) comp[j] = true;
        }
        return ps;
    }();
    return primes;
}

}  // namespace

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // base set deterministic for all n < 2^64 (Sorenson & Webster)
    for (uint64_t base : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (!spsp(n, base)) return false;
    }
    return true;
}

FactorProfile factor_profile(uint64_t n) {
    if (n == 0) throw std::invalid_argument("factor_profile: n must be positive");
    FactorProfile fp;
    fp.n = n;
    uint64_t rest = n;
    for (uint32_t p : small_primes()) {
        if (uint64_t(p) * p > rest) break;
        if (rest % p == 0) {
            int e = 0;
            while (rest % p == 0) { rest /= p; ++e; }
            fp.factors.emplace_back(p, e);
        }
    }
    if (rest > 1) {
        if (!is_prime(rest))
            throw std::domain_error("factor_profile: cofactor beyond trial-division range");
        fp.factors.emplace_back(rest, 1);
    }
    std::sort(fp.factors.begin(), fp.factors.end());
    fp.omega = int(fp.factors.size());
    fp.w = uint64_t(1) << fp.omega;
    fp.phi = n;
    for (auto& [p, e] : fp.factors) {
        fp.phi = fp.phi / p * (p - 1);
        fp.rad *= p;
        fp.theta = fp.theta * Rational(int128(p) - 1, int128(p));
    }
    return fp;
}

namespace {

// floor(n^(1/k)), corrected by local search around the double estimate
uint64_t iroot(uint64_t n, int k) {
    uint64_t r = uint64_t(std::llround(std::pow(double(n), 1.0 / k)));
    auto pw = [&](uint64_t b) -> unsigned __int128 {
        unsigned __int128 v = 1;
        for (int i = 0; i < k; ++i) {
            v *= b;
            if (v > (unsigned __int128)UINT64_MAX << 1) return v;
        }
        return v;
    };
    while (r > 1 && pw(r) > n) --r;
    while (pw(r + 1) <= n) ++r;
    return r;
}

}  // namespace

std::optional<PrimePowerId> classify_prime_power(uint64_t n) {
    if (n < 2) return std::nullopt;
    for (int k = 63; k >= 2; --k) {
        if ((uint64_t(1) << k) > n) continue;
        uint64_t r = iroot(n, k);
        unsigned __int128 v = 1;
        for (int i = 0; i < k; ++i) v *= r;
        if (v == n && is_prime(r)) return PrimePowerId{n, r, k};
    }
    if (is_prime(n)) return PrimePowerId{n, n, 1};
    return std::nullopt;
}

BitSieve::BitSieve(uint64_t limit) : limit_(limit), words_((limit >> 6) + 1, ~uint64_t(0)) {
    auto clear = [&](uint64_t n) { words_[n >> 6] &= ~(uint64_t(1) << (n & 63)); };
    clear(0);
    if (limit >= 1) clear(1);
    for (uint64_t i = 2; i * i <= limit; ++i) {
        if ((words_[i >> 6] >> (i & 63) & 1) == 0) continue;
        for (uint64_t j = i * i; j <= limit; j += i) clear(j);
    }
}

void for_each_prime_power(uint64_t lo, uint64_t hi,
                          const std::function<void(const PrimePowerId&)>& fn) {
    if (lo < 2) lo = 2;
    if (lo > hi) return;
    BitSieve sieve(hi);
    // proper prime powers p^k, k >= 2, are rare; collect and merge with the
    // prime stream on the fly
    std::vector<PrimePowerId> powers;
    for (uint64_t p = 2; p * p <= hi; ++p) {
        if (!sieve.is_prime(p)) continue;
        unsigned __int128 v = (unsigned __int128)p * p;
        int k = 2;
        while (v <= hi) {
            if (v >= lo) powers.push_back(PrimePowerId{uint64_t(v), p, k});
            v *= p;
            ++k;
        }
    }
    std::sort(powers.begin(), powers.end(),
              [](const PrimePowerId& a, const PrimePowerId& b) { return a.q < b.q; });
    size_t pi = 0;
    for (uint64_t n = lo; n <= hi; ++n) {
        while (pi < powers.size() && powers[pi].q < n) ++pi;
        if (pi < powers.size() && powers[pi].q == n) {
            fn(powers[pi]);
            ++pi;
            continue;
        }
        if (sieve.is_prime(n)) fn(PrimePowerId{n, n, 1});
    }
}

std::vector<PrimePowerId> prime_powers_in(uint64_t lo, uint64_t hi) {
    std::vector<PrimePowerId> out;
    for_each_prime_power(lo, hi, [&](const PrimePowerId& id) { out.push_back(id); });
    return out;
}

}  // namespace primsum
