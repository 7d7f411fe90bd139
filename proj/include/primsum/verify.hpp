// Verification engine: decide, for a field F_q and a given nonzero c,
// whether every nonzero a can be written a = g_n + c*g_m with g_n, g_m
// primitive roots.
//
// Three inner strategies, identical verdicts:
//   alg1    mark table t over field values; for each outer root g_m the
//           inner loop marks a = g_n + c*g_m for all inner roots g_n and
//           counts down the unhit values in r
//   alg2    list of still-unhit values; an entry a_i is removed when
//           a_i - c*g_m is primitive (swap-with-last compaction)
//   hybrid  alg1 until r drops below 0.25*phi(q-1), then alg2 on the
//           collected survivors (the switch is checked at the end of each
//           outer iteration)
//
// The coset strategy (prime fields only) marks a = g_n + d for d ranging
// over C_{o+1} minus z*C'_o, which simultaneously covers every c in C'_o;
// survivors are finished per-c from a copy of the shared table.
//
// Primitive roots are always enumerated in ascending exponent order, which
// makes the terminating outer index m reproducible run-to-run.

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "primsum/gfp.hpp"
#include "primsum/gfq.hpp"

namespace primsum {

// mark table over field values; t[0] pre-set, r counts clear entries
struct MarkState {
    std::vector<uint8_t> t;
    uint64_t r = 0;

    static MarkState fresh(uint32_t q) {
        MarkState st;
        st.t.assign(q, 0);
        st.t[0] = 1;
        st.r = q - 1;
        return st;
    }
};

// surviving values only; removal swaps the last entry into the hole
struct RemainState {
    std::vector<uint32_t> remaining;
};

struct COutcome {
    uint32_t c = 0;
    bool success = false;
    uint64_t m_terminal = 0;                // outer index at termination, 0 on failure
    uint64_t residual = 0;                  // unresolved count, 0 on success
    std::vector<uint32_t> residual_values;  // the unresolved a values on failure
};

enum class Strategy { alg1, alg2, hybrid, alg3_auto };

const char* strategy_name(Strategy s);
Strategy strategy_from_name(const std::string& name);

struct QReport {
    uint64_t q = 0;
    uint64_t p = 0;
    int k = 1;
    Strategy strategy = Strategy::hybrid;
    bool overall = false;
    double mean_m = 0.0;                  // over successful c
    std::map<uint64_t, uint64_t> m_hist;  // m_terminal -> count, successes only
    std::vector<COutcome> failures;       // failing c with residual values
    std::vector<COutcome> outcomes;       // full per-c list when keep_outcomes
};

// Algorithm 1.  When state is supplied the run resumes from it (its marks
// are kept and the outer loop restarts at m = 1); the final state is left
// in *state.
template <class Ctx>
COutcome verify_c_alg1(const Ctx& ctx, uint32_t c, MarkState* state = nullptr);

// Algorithm 2.  Optional resume from a survivor list.
template <class Ctx>
COutcome verify_c_alg2(const Ctx& ctx, uint32_t c, RemainState* state = nullptr);

template <class Ctx>
COutcome verify_c_hybrid(const Ctx& ctx, uint32_t c);

enum class CosetHalf { first, second };

// One coset work item: covers the c values of C'_o (the first ceil(u/2)
// positions of C_o, or the rest).  Outcomes are returned in ascending i
// order of C'_o.  On a phase-1 success m_terminal is the index into the
// shared d list; per-c survivors get their alg1 restart index.
std::vector<COutcome> verify_coset_alg3(const PrimeFieldCtx& ctx, const CosetStructure& cs,
                                        uint64_t o, CosetHalf half);

// Members of C'_o for a given half, ascending i order.
std::vector<uint32_t> coset_half_members(const CosetStructure& cs, const PrimeFieldCtx& ctx,
                                         uint64_t o, CosetHalf half);

// Whole-q verification covering every nonzero c exactly once.  alg3_auto
// uses the coset strategy when q is prime and p-1 has a unitary prime
// factor; extension fields run alg2, prime fields without a coset
// structure fall back to the hybrid.
QReport verify_q(uint64_t q, Strategy strategy, bool keep_outcomes = false);

// log(1/(2p)) / log(1 - phi(p-1)/p): the expected terminating m for the
// hybrid on F_p
double expected_mean_m(uint64_t p);

}  // namespace primsum
