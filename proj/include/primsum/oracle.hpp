// Ground truth by exhaustive counting.
//
// A nonzero g is e-free when no prime of e divides its discrete log; a
// primitive root is exactly a (q-1)-free element.  N(e1,e2) counts the g
// for which g is e1-free and g* = a - c*g is e2-free.  Everything the
// engine certifies can be re-derived here, and the sieve inequalities
//
//   (3)  N(q-1,q-1) >= sum N(p_i e, e) + sum N(e, p_i e) - (2s-1) N(e,e)
//   (5)  N(e,e)     >= theta(e)^2 (q - W(e)^2 sqrt(q))
//   (6,7)|N(le,e) - theta(l) N(e,e)| <= (1-1/l) theta(e)^2 W(e)^2 sqrt(q)
//
// are checked numerically.  Inequalities involving sqrt(q) are decided in
// double precision, escalating to an exact squared comparison whenever the
// margin is within 1e-6 * q of a tie.

#pragma once

#include <cstdint>
#include <vector>

#include "primsum/gfp.hpp"
#include "primsum/gfq.hpp"
#include "primsum/rational.hpp"

namespace primsum {

// Self-contained once built: the dlog/exp pair plus the base-p digit
// structure give it every field operation the counts need, so it does not
// keep a reference to the context it was built from.
class FreenessIndex {
public:
    explicit FreenessIndex(const PrimeFieldCtx& ctx);
    explicit FreenessIndex(const ExtFieldCtx& ctx);

    uint32_t q() const { return q_; }
    const FactorProfile& order_profile() const { return qm1_; }

    // discrete log to the context's fixed primitive root; x nonzero
    uint32_t dlog(uint32_t x) const { return dlog_[x]; }

    // bitmask over the distinct primes of q-1 (ascending): bit i set when
    // prime i divides dlog(x); the zero element carries all bits set
    uint8_t prime_mask(uint32_t x) const { return mask_[x]; }

    // mask of the primes dividing e; e must divide q-1
    uint8_t mask_of_divisor(uint64_t e) const;

    uint32_t sub(uint32_t a, uint32_t b) const;
    uint32_t mul(uint32_t a, uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        uint64_t e = uint64_t(dlog_[a]) + dlog_[b];
        if (e >= q_ - 1) e -= q_ - 1;
        return exp_[e];
    }

    bool is_e_free(uint32_t x, uint64_t e) const {
        if (x == 0) return false;
        return (mask_[x] & mask_of_divisor(e)) == 0;
    }

private:
    template <class Ctx>
    void build(const Ctx& ctx, uint32_t g_packed);

    uint32_t q_ = 0;
    uint32_t p_ = 0;
    int k_ = 1;
    FactorProfile qm1_;
    std::vector<uint32_t> dlog_;
    std::vector<uint32_t> exp_;  // exp_[j] = g^j, j in [0, q-1)
    std::vector<uint8_t> mask_;
};

// exhaustive count of g with g e1-free and a - c*g e2-free
uint64_t count_N(const FreenessIndex& fi, uint32_t a, uint32_t c, uint64_t e1, uint64_t e2);

// Joint class histogram for one (a, c): counts[m1][m2] is the number of
// nonzero g with nonzero g* whose prime masks are exactly (m1, m2).  Any
// N(e1,e2) is then a sum over the mask pairs clear on the kernel bits,
// which makes the exhaustive inequality suites cheap.
struct PairCounts {
    int omega = 0;
    std::vector<uint64_t> counts;  // (1<<omega) x (1<<omega), row-major

    uint64_t n_of(uint8_t e1_mask, uint8_t e2_mask) const;
};
PairCounts pair_counts(const FreenessIndex& fi, uint32_t a, uint32_t c);

// Lemma and theorem checks (true = inequality holds).  When pc is given it
// replaces the per-N exhaustive counting.
bool check_lemma1(const FreenessIndex& fi, uint32_t a, uint32_t c, uint64_t e,
                  const PairCounts* pc = nullptr);
bool check_lemma2(const FreenessIndex& fi, uint32_t a, uint32_t c, uint64_t e, uint64_t l,
                  const PairCounts* pc = nullptr);
bool check_theorem_bound(const FreenessIndex& fi, uint32_t a, uint32_t c, uint64_t e,
                         const PairCounts* pc = nullptr);

// exact decision of  lhs >= coef * sqrt(q)  by squaring; exposed for tests
bool geq_sqrt(const Rational& lhs, const Rational& coef, uint64_t q);

// every prime power q <= q_max failing the all-(a,c) positivity test
std::vector<uint64_t> brute_force_exceptions(uint64_t q_max);

// q in the target set per brute force (all (a,c) have a representation)
bool brute_force_is_member(uint64_t q);

}  // namespace primsum
