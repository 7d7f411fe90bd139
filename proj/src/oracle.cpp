#include "primsum/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace primsum {

FreenessIndex::FreenessIndex(const PrimeFieldCtx& ctx) {
    q_ = ctx.q();
    p_ = ctx.p();
    k_ = 1;
    qm1_ = ctx.order_profile();
    build(ctx, ctx.g());
}

FreenessIndex::FreenessIndex(const ExtFieldCtx& ctx) {
    q_ = ctx.q();
    p_ = ctx.p();
    k_ = ctx.k();
    qm1_ = ctx.order_profile();
    build(ctx, /*g = x packed*/ ctx.p());
}

template <class Ctx>
void FreenessIndex::build(const Ctx& ctx, uint32_t g_packed) {
    const uint32_t q = ctx.q();
    dlog_.assign(q, 0);
    exp_.assign(q - 1, 0);
    mask_.assign(q, 0xFF);
    const uint64_t qm1 = q - 1;
    uint32_t value = 1;
    for (uint64_t j = 0; j < qm1; ++j) {
        dlog_[value] = uint32_t(j);
        exp_[j] = value;
        uint8_t m = 0;
        for (size_t i = 0; i < qm1_.factors.size(); ++i)
            if (j % qm1_.factors[i].first == 0) m |= uint8_t(1) << i;
        mask_[value] = m;
        value = ctx.mul(value, g_packed);
    }
}

uint8_t FreenessIndex::mask_of_divisor(uint64_t e) const {
    if (e == 0 || qm1_.n % e != 0) throw std::invalid_argument("e must divide q-1");
    uint8_t m = 0;
    for (size_t i = 0; i < qm1_.factors.size(); ++i)
        if (e % qm1_.factors[i].first == 0) m |= uint8_t(1) << i;
    return m;
}

uint32_t FreenessIndex::sub(uint32_t a, uint32_t b) const {
    if (k_ == 1) return a >= b ? a - b : a + p_ - b;
    if (p_ == 2) return a ^ b;
    uint32_t r = 0, m = 1;
    for (int i = 0; i < k_; ++i) {
        uint32_t da = a % p_, db = b % p_;
        r += (da >= db ? da - db : da + p_ - db) * m;
        a /= p_; b /= p_; m *= p_;
    }
    return r;
}

uint64_t count_N(const FreenessIndex& fi, uint32_t a, uint32_t c, uint64_t e1, uint64_t e2) {
    const uint8_t m1 = fi.mask_of_divisor(e1);
    const uint8_t m2 = fi.mask_of_divisor(e2);
    uint64_t n = 0;
    for (uint32_t g = 1; g < fi.q(); ++g) {
        if ((fi.prime_mask(g) & m1) != 0) continue;
        uint32_t gs = fi.sub(a, fi.mul(c, g));
        if (gs != 0 && (fi.prime_mask(gs) & m2) == 0) ++n;
    }
    return n;
}

PairCounts pair_counts(const FreenessIndex& fi, uint32_t a, uint32_t c) {
    PairCounts pc;
    pc.omega = fi.order_profile().omega;
    const size_t w = size_t(1) << pc.omega;
    pc.counts.assign(w * w, 0);
    for (uint32_t g = 1; g < fi.q(); ++g) {
        uint32_t gs = fi.sub(a, fi.mul(c, g));
        if (gs == 0) continue;
        ++pc.counts[size_t(fi.prime_mask(g)) * w + fi.prime_mask(gs)];
    }
    return pc;
}

uint64_t PairCounts::n_of(uint8_t e1_mask, uint8_t e2_mask) const {
    const size_t w = size_t(1) << omega;
    uint64_t n = 0;
    for (size_t m1 = 0; m1 < w; ++m1) {
        if ((m1 & e1_mask) != 0) continue;
        const uint64_t* row = counts.data() + m1 * w;
        for (size_t m2 = 0; m2 < w; ++m2)
            if ((m2 & e2_mask) == 0) n += row[m2];
    }
    return n;
}

namespace {

struct NSource {
    const FreenessIndex& fi;
    uint32_t a, c;
    const PairCounts* pc;

    uint64_t operator()(uint64_t e1, uint64_t e2) const {
        if (pc) return pc->n_of(fi.mask_of_divisor(e1), fi.mask_of_divisor(e2));
        return count_N(fi, a, c, e1, e2);
    }
};

std::vector<uint64_t> sieved_primes_of(const FactorProfile& qm1, uint64_t e) {
    std::vector<uint64_t> out;
    for (auto& [p, ex] : qm1.factors)
        if (e % p != 0) out.push_back(p);
    return out;
}

}  // namespace

bool geq_sqrt(const Rational& lhs, const Rational& coef, uint64_t q) {
    // decide lhs >= coef * sqrt(q); double first, exact on near-tie
    const double margin = lhs.to_double() - coef.to_double() * std::sqrt(double(q));
    if (std::abs(margin) > 1e-6 * double(q)) return margin >= 0.0;
    if (!coef.negative()) {
        if (lhs.negative()) return false;
        return lhs.squared() >= coef.squared() * Rational(int128(q));
    }
    if (!lhs.negative()) return true;
    return lhs.squared() <= coef.squared() * Rational(int128(q));
}

bool check_lemma1(const FreenessIndex& fi, uint32_t a, uint32_t c, uint64_t e,
                  const PairCounts* pc) {
    const FactorProfile& qm1 = fi.order_profile();
    if (qm1.n % e != 0) throw std::invalid_argument("check_lemma1: e must divide q-1");
    const std::vector<uint64_t> sieved = sieved_primes_of(qm1, e);
    const int s = int(sieved.size());
    if (s == 0) throw std::invalid_argument("check_lemma1: Rad(e) must be proper");
    NSource N{fi, a, c, pc};

    const uint64_t lhs = N(qm1.n, qm1.n);
    const uint64_t n_ee = N(e, e);

    // (3): integer arithmetic throughout
    int128 rhs3 = -int128(2 * s - 1) * int128(n_ee);
    for (uint64_t p : sieved) rhs3 += int128(N(p * e, e)) + int128(N(e, p * e));
    if (int128(lhs) < rhs3) return false;

    // (4): same bound rearranged around delta; exact rationals
    Rational delta(1);
    for (uint64_t p : sieved) delta = delta - Rational(2, int128(p));
    Rational rhs4 = delta * Rational(int128(n_ee));
    for (uint64_t p : sieved) {
        Rational theta_p(int128(p) - 1, int128(p));
        Rational corr = theta_p * Rational(int128(n_ee));
        rhs4 = rhs4 + (Rational(int128(N(p * e, e))) - corr) + (Rational(int128(N(e, p * e))) - corr);
    }
    return Rational(int128(lhs)) >= rhs4;
}

bool check_lemma2(const FreenessIndex& fi, uint32_t a, uint32_t c, uint64_t e, uint64_t l,
                  const PairCounts* pc) {
    const FactorProfile& qm1 = fi.order_profile();
    if (qm1.n % e != 0 || qm1.n % l != 0 || !is_prime(l))
        throw std::invalid_argument("check_lemma2: need e | q-1 and prime l | q-1");
    if (e % l == 0) throw std::invalid_argument("check_lemma2: l must not divide e");
    NSource N{fi, a, c, pc};

    FactorProfile ep = factor_profile(e);
    const Rational theta_e2 = ep.theta.squared();
    const Rational w_e2(int128(ep.w) * int128(ep.w));
    const uint64_t q = fi.q();
    const uint64_t n_ee = N(e, e);

    // (5): N(e,e) >= theta(e)^2 q - theta(e)^2 W(e)^2 sqrt(q)
    if (!geq_sqrt(Rational(int128(n_ee)) - theta_e2 * Rational(int128(q)),
                  -(theta_e2 * w_e2), q))
        return false;

    // (6), (7): |N(le,e) - theta(l) N(e,e)| <= (1-1/l) theta(e)^2 W(e)^2 sqrt(q)
    const Rational theta_l(int128(l) - 1, int128(l));
    const Rational bound_coef = theta_l * theta_e2 * w_e2;
    for (bool swapped : {false, true}) {
        uint64_t n_mixed = swapped ? N(e, l * e) : N(l * e, e);
        Rational diff = Rational(int128(n_mixed)) - theta_l * Rational(int128(n_ee));
        if (diff.negative()) diff = -diff;
        // diff <= bound_coef * sqrt(q), flipped into the geq form
        if (!geq_sqrt(-diff, -bound_coef, q)) return false;
    }
    return true;
}

bool check_theorem_bound(const FreenessIndex& fi, uint32_t a, uint32_t c, uint64_t e,
                         const PairCounts* pc) {
    const FactorProfile& qm1 = fi.order_profile();
    if (qm1.n % e != 0) throw std::invalid_argument("check_theorem_bound: e must divide q-1");
    const std::vector<uint64_t> sieved = sieved_primes_of(qm1, e);
    const int s = int(sieved.size());
    Rational delta(1);
    for (uint64_t p : sieved) delta = delta - Rational(2, int128(p));
    if (!delta.positive()) throw std::invalid_argument("check_theorem_bound: delta must be positive");
    NSource N{fi, a, c, pc};

    FactorProfile ep = factor_profile(e);
    const Rational theta_e2 = ep.theta.squared();
    const Rational w_e2(int128(ep.w) * int128(ep.w));
    const uint64_t q = fi.q();

    // N(q-1,q-1) >= delta theta(e)^2 sqrt(q) { sqrt(q) - W^2 - ((2s-1)/delta + 1) W^2 }
    //             = delta theta(e)^2 q - delta theta(e)^2 (W^2 + ((2s-1)/delta + 1) W^2) sqrt(q)
    const Rational lead = delta * theta_e2;
    const Rational bracket_coef = w_e2 + (Rational(2 * s - 1) / delta + Rational(1)) * w_e2;
    const Rational lhs = Rational(int128(N(qm1.n, qm1.n))) - lead * Rational(int128(q));
    return geq_sqrt(lhs, -(lead * bracket_coef), q);
}

bool brute_force_is_member(uint64_t q) {
    auto id = classify_prime_power(q);
    if (!id) throw std::invalid_argument("brute_force_is_member: q must be a prime power");

    auto run = [&](const auto& ctx) {
        const auto roots = ctx.roots();
        for (uint32_t c = 1; c < ctx.q(); ++c) {
            for (uint32_t a = 1; a < ctx.q(); ++a) {
                bool found = false;
                for (uint32_t g : roots) {
                    if (ctx.is_primitive(ctx.sub(a, ctx.mul(c, g)))) { found = true; break; }
                }
                if (!found) return false;
            }
        }
        return true;
    };
    if (id->k == 1) {
        PrimeFieldCtx ctx(id->p);
        return run(ctx);
    }
    ExtFieldCtx ctx(id->p, id->k);
    return run(ctx);
}

std::vector<uint64_t> brute_force_exceptions(uint64_t q_max) {
    std::vector<uint64_t> out;
    for_each_prime_power(3, q_max, [&](const PrimePowerId& id) {
        if (!brute_force_is_member(id.q)) out.push_back(id.q);
    });
    return out;
}

}  // namespace primsum
