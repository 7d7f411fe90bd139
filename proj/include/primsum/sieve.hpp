// Candidate elimination via the character-sum bound
//
//     q > ((2s-1)/delta + 2)^2 * W(e)^4,    delta = 1 - 2 * sum 1/p_i,
//
// where e is a kernel divisor of q-1 built from the smallest primes of q-1
// and p_1..p_s are the remaining primes.  A prime power passing the bound
// for some kernel is certified a member of the target set and dropped from
// the verification list.  All comparisons are exact rationals.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "primsum/numthy.hpp"
#include "primsum/rational.hpp"

namespace primsum {

struct SieveChoice {
    int j = 0;                            // kernel = product of the j smallest primes of q-1
    std::vector<uint64_t> e_primes;       // primes in the kernel, ascending
    std::vector<uint64_t> sieved_primes;  // the remaining primes, ascending
    int s = 0;                            // |sieved_primes|
    Rational delta;                       // 1 - 2 * sum 1/p_i
    Rational rhs;                         // bound right-hand side
    bool passes = false;                  // delta > 0 and q > rhs
};

enum class CandidateStatus { retained, eliminated };

struct CandidateRecord {
    uint64_t q = 0;
    uint64_t p = 0;
    int k = 0;
    int omega = 0;
    CandidateStatus status = CandidateStatus::retained;
    std::optional<SieveChoice> choice;  // the eliminating choice, when eliminated
};

// delta = 1 - 2 * sum 1/p over the sieved primes; may be <= 0
Rational delta_of(std::span<const uint64_t> sieved_primes);

// ((2s-1)/delta + 2)^2 * w_e^4; delta must be positive
Rational cohen_rhs(int s, const Rational& delta, uint64_t w_e);

// Scans kernels j = omega..1 (largest first, first pass wins) and returns
// the first passing choice, or nullopt when every kernel fails.
std::optional<SieveChoice> sieve_check(uint64_t q, const FactorProfile& pm1_profile);

struct BucketBound {
    Rational bound;
    int best_j = 0;
};

// Worst-case bound for a given omega(q-1): the primes of q-1 are taken to
// be the omega smallest primes, and the best kernel size is chosen.
BucketBound bucket_bound(int omega);

// All prime powers q in [q_min, floor(bucket_bound(omega))] with
// omega(q-1) == omega, each classified by sieve_check.  Ascending q.
std::vector<CandidateRecord> build_candidates(int omega, uint64_t q_min = 2131);

// CSV persistence (header row + one record per line):
//   q,p,k,omega,status,e_primes,s,delta_num,delta_den,rhs_floor
// Reading restores identification and status only (enough to drive batch
// verification); the eliminating choice is not reconstructed.
void write_candidates_csv(std::ostream& os, std::span<const CandidateRecord> records);
std::vector<CandidateRecord> read_candidates_csv(std::istream& is);

}  // namespace primsum
