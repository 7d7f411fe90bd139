#include "primsum/gfp.hpp"

#include <stdexcept>

namespace primsum {

PrimeFieldCtx::PrimeFieldCtx(uint64_t p) {
    if (p < 3 || p > 0xFFFFFFFFull || !primsum::is_prime(p))
        throw std::invalid_argument("PrimeFieldCtx: p must be an odd prime below 2^32");
    p_ = uint32_t(p);
    pm1_ = factor_profile(p - 1);

    // least primitive root: g with g^((p-1)/l) != 1 for every prime l | p-1
    g_ = 0;
    for (uint32_t cand = 2; cand < p_; ++cand) {
        bool ok = true;
        for (auto& [l, e] : pm1_.factors) {
            if (pow_mod(cand, (p - 1) / l, p) == 1) { ok = false; break; }
        }
        if (ok) { g_ = cand; break; }
    }

    // one pass over the powers of g: exponent j coprime to p-1 marks a
    // primitive value, and the same pass collects the roots in exponent order
    const uint64_t pm1 = p - 1;
    bits_.assign((p_ >> 6) + 1, 0);
    roots_.reserve(pm1_.phi);
    uint64_t value = 1;
    for (uint64_t j = 1; j < pm1; ++j) {
        value = value * g_ % p_;
        if (gcd_u64(j, pm1) == 1) {
            bits_[value >> 6] |= uint64_t(1) << (value & 63);
            roots_.push_back(uint32_t(value));
        }
    }
}

std::optional<CosetStructure> coset_structure(const PrimeFieldCtx& ctx) {
    const FactorProfile& pm1 = ctx.order_profile();
    uint64_t u = 0;
    for (auto& [p, e] : pm1.factors) {
        if (e == 1 && p > u) u = p;
    }
    if (u == 0) return std::nullopt;
    CosetStructure cs;
    cs.u = u;
    cs.v = pm1.n / u;
    // the exponent 1 + i*v is a multiple of u for exactly one i in [0, u)
    for (uint64_t i = 0; i < u; ++i) {
        if ((1 + i * cs.v) % u == 0) {
            cs.i0 = i;
            cs.z = ctx.pow(ctx.g(), 1 + i * cs.v);
            break;
        }
    }
    return cs;
}

std::vector<uint32_t> coset_members(const CosetStructure& cs, const PrimeFieldCtx& ctx,
                                    uint64_t o) {
    if (o >= cs.v) throw std::invalid_argument("coset_members: o out of range");
    std::vector<uint32_t> out;
    out.reserve(cs.u);
    uint32_t step = ctx.pow(ctx.g(), cs.v);
    uint32_t value = ctx.pow(ctx.g(), o);
    for (uint64_t i = 0; i < cs.u; ++i) {
        out.push_back(value);
        value = ctx.mul(value, step);
    }
    return out;
}

}  // namespace primsum
