// Prime-field context F_p: the fixed primitive root, a one-bit-per-value
// primitivity table, and the coset decomposition that lets one marking pass
// serve many c values at once.
//
// With g the least primitive root, u the largest prime dividing p-1 exactly
// once and v = (p-1)/u, the sets C_o = {g^(o+iv)}_{i=0..u-1} partition the
// nonzero field values into v cosets of size u.  G = C_1 contains exactly
// u-1 primitive roots plus one non-primitive element z = g^(1+i0*v), the
// unique power with 1 + i0*v divisible by u.  Coset indices wrap modulo v.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "primsum/numthy.hpp"

namespace primsum {

class PrimeFieldCtx {
public:
    // p must be an odd prime (throws std::invalid_argument otherwise)
    explicit PrimeFieldCtx(uint64_t p);

    uint32_t p() const { return p_; }
    uint32_t q() const { return p_; }
    int k() const { return 1; }
    uint32_t g() const { return g_; }
    uint64_t phi() const { return roots_.size(); }
    const FactorProfile& order_profile() const { return pm1_; }

    // primitive roots as field values, ascending exponent order:
    // g^j for j = 1..p-2 with gcd(j, p-1) = 1
    std::span<const uint32_t> roots() const { return roots_; }

    bool is_primitive(uint32_t v) const {
        return (bits_[v >> 6] >> (v & 63) & 1) != 0;
    }

    uint32_t add(uint32_t a, uint32_t b) const {
        uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    uint32_t sub(uint32_t a, uint32_t b) const {
        return a >= b ? a - b : a + p_ - b;
    }
    uint32_t mul(uint32_t a, uint32_t b) const {
        return uint32_t(uint64_t(a) * b % p_);
    }
    uint32_t pow(uint32_t a, uint64_t e) const {
        return uint32_t(pow_mod(a, e, p_));
    }

private:
    uint32_t p_;
    uint32_t g_;
    FactorProfile pm1_;
    std::vector<uint64_t> bits_;    // primitivity, one bit per field value
    std::vector<uint32_t> roots_;
};

struct CosetStructure {
    uint64_t u = 0;   // largest prime dividing p-1 exactly once
    uint64_t v = 0;   // (p-1)/u
    uint32_t z = 0;   // the single non-primitive member of G = C_1
    uint64_t i0 = 0;  // z = g^(1 + i0*v)
};

// nullopt when every prime factor of p-1 is repeated (no unitary prime)
std::optional<CosetStructure> coset_structure(const PrimeFieldCtx& ctx);

// Members of C_o in ascending i order: g^(o+iv), i = 0..u-1.
// o must lie in [0, v); throws std::invalid_argument otherwise.
std::vector<uint32_t> coset_members(const CosetStructure& cs, const PrimeFieldCtx& ctx,
                                    uint64_t o);

}  // namespace primsum
