#include "primsum/sieve.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace primsum {

Rational delta_of(std::span<const uint64_t> sieved_primes) {
    Rational sum(0);
    for (uint64_t p : sieved_primes) sum = sum + Rational(2, int128(p));
    return Rational(1) - sum;
}

Rational cohen_rhs(int s, const Rational& delta, uint64_t w_e) {
    if (!delta.positive()) throw std::invalid_argument("cohen_rhs: delta must be positive");
    Rational bracket = Rational(2 * s - 1) / delta + Rational(2);
    Rational w4 = Rational(int128(w_e) * w_e) * Rational(int128(w_e) * w_e);
    return bracket.squared() * w4;
}

namespace {

SieveChoice make_choice(std::span<const uint64_t> primes, int j) {
    SieveChoice ch;
    ch.j = j;
    ch.e_primes.assign(primes.begin(), primes.begin() + j);
    ch.sieved_primes.assign(primes.begin() + j, primes.end());
    ch.s = int(ch.sieved_primes.size());
    ch.delta = delta_of(ch.sieved_primes);
    return ch;
}

}  // namespace

std::optional<SieveChoice> sieve_check(uint64_t q, const FactorProfile& pm1_profile) {
    const std::vector<uint64_t> primes = pm1_profile.distinct_primes();
    const int omega = int(primes.size());
    for (int j = omega; j >= 1; --j) {
        SieveChoice ch = make_choice(primes, j);
        if (!ch.delta.positive()) continue;
        ch.rhs = cohen_rhs(ch.s, ch.delta, uint64_t(1) << j);
        if (Rational(int128(q)) > ch.rhs) {
            ch.passes = true;
            return ch;
        }
    }
    return std::nullopt;
}

BucketBound bucket_bound(int omega) {
    if (omega < 1 || omega > 8) throw std::invalid_argument("bucket_bound: omega in 1..8");
    static constexpr uint64_t kFirstPrimes[8] = {2, 3, 5, 7, 11, 13, 17, 19};
    std::span<const uint64_t> primes(kFirstPrimes, size_t(omega));
    BucketBound best;
    bool have = false;
    for (int j = omega; j >= 1; --j) {
        std::span<const uint64_t> sieved = primes.subspan(size_t(j));
        Rational delta = delta_of(sieved);
        if (!delta.positive()) continue;
        Rational rhs = cohen_rhs(omega - j, delta, uint64_t(1) << j);
        if (!have || rhs < best.bound) {
            best.bound = rhs;
            best.best_j = j;
            have = true;
        }
    }
    return best;
}

std::vector<CandidateRecord> build_candidates(int omega, uint64_t q_min) {
    const uint64_t hi = uint64_t(bucket_bound(omega).bound.floor());
    std::vector<CandidateRecord> out;
    if (hi < q_min) return out;
    for_each_prime_power(q_min, hi, [&](const PrimePowerId& id) {
        FactorProfile pm1 = factor_profile(id.q - 1);
        if (pm1.omega != omega) return;
        CandidateRecord rec;
        rec.q = id.q;
        rec.p = id.p;
        rec.k = id.k;
        rec.omega = omega;
        rec.choice = sieve_check(id.q, pm1);
        rec.status = rec.choice ? CandidateStatus::eliminated : CandidateStatus::retained;
        out.push_back(std::move(rec));
    });
    return out;
}

void write_candidates_csv(std::ostream& os, std::span<const CandidateRecord> records) {
    os << "q,p,k,omega,status,e_primes,s,delta_num,delta_den,rhs_floor\n";
    for (const CandidateRecord& r : records) {
        os << r.q << ',' << r.p << ',' << r.k << ',' << r.omega << ','
           << (r.status == CandidateStatus::eliminated ? "eliminated" : "retained") << ',';
        if (r.choice) {
            const SieveChoice& ch = *r.choice;
            for (size_t i = 0; i < ch.e_primes.size(); ++i) {
                if (i) os << ';';
                os << ch.e_primes[i];
            }
            os << ',' << ch.s << ',' << to_string_i128(ch.delta.num()) << ','
               << to_string_i128(ch.delta.den()) << ',' << to_string_i128(ch.rhs.floor());
        } else {
            os << ",,,,";
        }
        os << '\n';
    }
}

std::vector<CandidateRecord> read_candidates_csv(std::istream& is) {
    std::vector<CandidateRecord> out;
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("candidates csv: empty file");
    if (line.rfind("q,p,k,omega,status", 0) != 0)
        throw std::runtime_error("candidates csv: missing header");
    size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() < 5)
            throw std::runtime_error("candidates csv: bad record at line " + std::to_string(lineno));
        CandidateRecord rec;
        rec.q = std::stoull(fields[0]);
        rec.p = std::stoull(fields[1]);
        rec.k = std::stoi(fields[2]);
        rec.omega = std::stoi(fields[3]);
        if (fields[4] == "eliminated") {
            rec.status = CandidateStatus::eliminated;
        } else if (fields[4] == "retained") {
            rec.status = CandidateStatus::retained;
        } else {
            throw std::runtime_error("candidates csv: bad status at line " + std::to_string(lineno));
        }
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace primsum
