#include "primsum/gfq.hpp"

#include <stdexcept>

namespace primsum {

namespace {

// schoolbook multiply of formal-degree-(k-1) polynomials followed by
// reduction of x^k, ..., x^(2k-2) via x^k = -modulus
void polymul_mod(std::span<const uint16_t> a, std::span<const uint16_t> b,
                 std::span<const uint16_t> modulus, uint32_t p,
                 std::span<uint32_t> scratch, std::span<uint16_t> out) {
    const int k = int(a.size());
    for (uint32_t& t : scratch) t = 0;
    for (int i = 0; i < k; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < k; ++j)
            scratch[size_t(i + j)] = uint32_t((scratch[size_t(i + j)] + uint64_t(a[i]) * b[j]) % p);
    }
    for (int i = 2 * k - 2; i >= k; --i) {
        uint32_t c = scratch[size_t(i)];
        if (c == 0) continue;
        scratch[size_t(i)] = 0;
        for (int j = 0; j < k; ++j) {
            uint64_t t = scratch[size_t(i - k + j)] + uint64_t(c) * (p - modulus[size_t(j)]) % p;
            scratch[size_t(i - k + j)] = uint32_t(t % p);
        }
    }
    for (int i = 0; i < k; ++i) out[size_t(i)] = uint16_t(scratch[size_t(i)]);
}

// order test for g = x in F_p[x]/(modulus): x^(q-1) = 1 and
// x^((q-1)/l) != 1 for every prime l | q-1
bool x_is_primitive(std::span<const uint16_t> modulus, uint32_t p, int k,
                    const FactorProfile& qm1) {
    std::vector<uint16_t> base(size_t(k), 0), result(size_t(k), 0), tmp(size_t(k), 0);
    std::vector<uint32_t> scratch(size_t(2 * k - 1), 0);
    auto x_pow = [&](uint64_t e, std::span<uint16_t> out) {
        for (int i = 0; i < k; ++i) { base[size_t(i)] = 0; out[size_t(i)] = 0; }
        base[1] = 1;
        out[0] = 1;
        while (e != 0) {
            if (e & 1) {
                polymul_mod(out, base, modulus, p, scratch, tmp);
                for (int i = 0; i < k; ++i) out[size_t(i)] = tmp[size_t(i)];
            }
            polymul_mod(base, base, modulus, p, scratch, tmp);
            for (int i = 0; i < k; ++i) base[size_t(i)] = tmp[size_t(i)];
            e >>= 1;
        }
    };
    auto is_one = [&](std::span<const uint16_t> v) {
        if (v[0] != 1) return false;
        for (int i = 1; i < k; ++i)
            if (v[size_t(i)] != 0) return false;
        return true;
    };
    x_pow(qm1.n, result);
    if (!is_one(result)) return false;
    for (auto& [l, e] : qm1.factors) {
        x_pow(qm1.n / l, result);
        if (is_one(result)) return false;
    }
    return true;
}

}  // namespace

std::vector<uint16_t> find_primitive_modulus(uint64_t p, int k) {
    if (k < 2 || !primsum::is_prime(p) || p >= (uint64_t(1) << 16))
        throw std::invalid_argument("find_primitive_modulus: need prime p < 2^16 and k >= 2");
    uint64_t q = 1;
    for (int i = 0; i < k; ++i) {
        q *= p;
        if (q > (uint64_t(1) << 31)) throw std::invalid_argument("find_primitive_modulus: q too large");
    }
    FactorProfile qm1 = factor_profile(q - 1);
    std::vector<uint16_t> coeffs(size_t(k), 0);
    for (uint64_t packed = 0; packed < q; ++packed) {
        uint64_t v = packed;
        for (int i = 0; i < k; ++i) { coeffs[size_t(i)] = uint16_t(v % p); v /= p; }
        if (x_is_primitive(coeffs, uint32_t(p), k, qm1)) return coeffs;
    }
    throw std::logic_error("find_primitive_modulus: no primitive modulus found");
}

ExtFieldCtx::ExtFieldCtx(uint64_t p, int k) {
    modulus_ = find_primitive_modulus(p, k);
    p_ = uint32_t(p);
    k_ = k;
    uint64_t q = 1;
    for (int i = 0; i < k; ++i) q *= p;
    q_ = uint32_t(q);
    qm1_ = factor_profile(q - 1);

    // enumerate x^j for j = 1..q-1; j coprime to q-1 marks a primitive value
    const uint64_t qm1 = q - 1;
    bits_.assign((q_ >> 6) + 1, 0);
    roots_.reserve(qm1_.phi);
    std::vector<uint16_t> x(size_t(k), 0), value(size_t(k), 0), tmp(size_t(k), 0);
    std::vector<uint32_t> scratch(size_t(2 * k - 1), 0);
    x[1] = 1;
    value[1] = 1;  // x^1
    for (uint64_t j = 1; j < qm1; ++j) {
        if (gcd_u64(j, qm1) == 1) {
            uint32_t packed = pack(PolyElem{value});
            bits_[packed >> 6] |= uint64_t(1) << (packed & 63);
            roots_.push_back(packed);
        }
        polymul_mod(value, x, modulus_, p_, scratch, tmp);
        value = tmp;
    }
}

uint32_t ExtFieldCtx::pack(const PolyElem& e) const {
    if (int(e.coeffs.size()) != k_) throw std::invalid_argument("pack: wrong length");
    uint64_t v = 0;
    for (int i = k_ - 1; i >= 0; --i) {
        if (e.coeffs[size_t(i)] >= p_) throw std::invalid_argument("pack: coefficient out of range");
        v = v * p_ + e.coeffs[size_t(i)];
    }
    return uint32_t(v);
}

PolyElem ExtFieldCtx::unpack(uint32_t packed) const {
    if (packed >= q_) throw std::invalid_argument("unpack: index out of range");
    PolyElem e;
    e.coeffs.resize(size_t(k_));
    for (int i = 0; i < k_; ++i) { e.coeffs[size_t(i)] = uint16_t(packed % p_); packed /= p_; }
    return e;
}

PolyElem ExtFieldCtx::field_add(const PolyElem& a, const PolyElem& b) const {
    PolyElem r;
    r.coeffs.resize(size_t(k_));
    for (int i = 0; i < k_; ++i) {
        uint32_t s = uint32_t(a.coeffs[size_t(i)]) + b.coeffs[size_t(i)];
        r.coeffs[size_t(i)] = uint16_t(s >= p_ ? s - p_ : s);
    }
    return r;
}

PolyElem ExtFieldCtx::field_sub(const PolyElem& a, const PolyElem& b) const {
    PolyElem r;
    r.coeffs.resize(size_t(k_));
    for (int i = 0; i < k_; ++i) {
        uint32_t da = a.coeffs[size_t(i)], db = b.coeffs[size_t(i)];
        r.coeffs[size_t(i)] = uint16_t(da >= db ? da - db : da + p_ - db);
    }
    return r;
}

PolyElem ExtFieldCtx::field_mul(const PolyElem& a, const PolyElem& b) const {
    PolyElem r;
    r.coeffs.resize(size_t(k_));
    std::vector<uint32_t> scratch(size_t(2 * k_ - 1), 0);
    polymul_mod(a.coeffs, b.coeffs, modulus_, p_, scratch, r.coeffs);
    return r;
}

uint32_t ExtFieldCtx::mul(uint32_t a, uint32_t b) const {
    return pack(field_mul(unpack(a), unpack(b)));
}

uint32_t ExtFieldCtx::pow(uint32_t a, uint64_t e) const {
    uint32_t r = 1;  // packed constant-one polynomial
    uint32_t base = a;
    while (e != 0) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

}  // namespace primsum
