// Extension-field context F_{p^k}: elements are polynomials of formal
// degree k-1 over F_p, reduced modulo a monic degree-k polynomial chosen so
// that x itself is a primitive root.  An element is packed into the integer
// obtained by evaluating its coefficient polynomial at x = p, which serves
// as the table index everywhere.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "primsum/numthy.hpp"

namespace primsum {

struct PolyElem {
    std::vector<uint16_t> coeffs;  // c_0..c_{k-1}, each in [0, p)
};

// Monic degree-k modulus for which x has multiplicative order p^k - 1;
// returned as the non-leading coefficients c_0..c_{k-1}.  Candidates are
// scanned by ascending packed coefficient value, so the result is
// deterministic.  The order test forces irreducibility and primitivity at
// the same time.
std::vector<uint16_t> find_primitive_modulus(uint64_t p, int k);

class ExtFieldCtx {
public:
    // builds the modulus, the primitivity table and the root list;
    // p prime, k >= 2, p^k <= ~3e6 workload
    ExtFieldCtx(uint64_t p, int k);

    uint32_t p() const { return p_; }
    int k() const { return k_; }
    uint32_t q() const { return q_; }
    uint64_t phi() const { return roots_.size(); }
    const FactorProfile& order_profile() const { return qm1_; }
    std::span<const uint16_t> modulus() const { return modulus_; }

    // primitive roots as packed values, ascending exponent order of g = x
    std::span<const uint32_t> roots() const { return roots_; }

    bool is_primitive(uint32_t packed) const {
        return (bits_[packed >> 6] >> (packed & 63) & 1) != 0;
    }

    uint32_t pack(const PolyElem& e) const;
    PolyElem unpack(uint32_t packed) const;

    PolyElem field_add(const PolyElem& a, const PolyElem& b) const;
    PolyElem field_sub(const PolyElem& a, const PolyElem& b) const;
    PolyElem field_mul(const PolyElem& a, const PolyElem& b) const;

    // packed arithmetic: addition and subtraction are carry-free digit
    // operations in base p, multiplication reduces modulo the modulus
    uint32_t add(uint32_t a, uint32_t b) const {
        if (p_ == 2) return a ^ b;
        uint32_t r = 0, m = 1;
        for (int i = 0; i < k_; ++i) {
            uint32_t da = a % p_, db = b % p_;
            uint32_t s = da + db;
            if (s >= p_) s -= p_;
            r += s * m;
            a /= p_; b /= p_; m *= p_;
        }
        return r;
    }
    uint32_t sub(uint32_t a, uint32_t b) const {
        if (p_ == 2) return a ^ b;
        uint32_t r = 0, m = 1;
        for (int i = 0; i < k_; ++i) {
            uint32_t da = a % p_, db = b % p_;
            uint32_t s = da >= db ? da - db : da + p_ - db;
            r += s * m;
            a /= p_; b /= p_; m *= p_;
        }
        return r;
    }
    uint32_t mul(uint32_t a, uint32_t b) const;
    uint32_t pow(uint32_t a, uint64_t e) const;

private:
    uint32_t p_ = 0;
    int k_ = 0;
    uint32_t q_ = 0;
    std::vector<uint16_t> modulus_;
    FactorProfile qm1_;
    std::vector<uint64_t> bits_;
    std::vector<uint32_t> roots_;
};

}  // namespace primsum
