// Command-line front end: sieve candidate construction, parallel
// verification with checksummed JSON-lines reports, batch runs with
// resume, and the brute-force / inequality cross checks.
//
// Exit codes: 0 verified or expected results, 1 operational error,
// 2 mathematical counterexample found.

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "primsum/oracle.hpp"
#include "primsum/report.hpp"
#include "primsum/sieve.hpp"
#include "primsum/verify.hpp"

namespace {

using namespace primsum;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitCounterexample = 2;

struct VerifyRun {
    std::vector<UnitReport> reports;  // unit order (ascending c / ascending o)
    bool all_ok = true;
};

// run the units of one q over a bounded worker pool; results keep unit order
template <class Ctx>
VerifyRun run_units(const Ctx& ctx, const CosetStructure* cs,
                    const std::vector<WorkUnit>& units, unsigned jobs) {
    VerifyRun run;
    run.reports.resize(units.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= units.size()) return;
            const WorkUnit& u = units[i];
            auto t0 = std::chrono::steady_clock::now();
            UnitReport rep;
            rep.unit = u;
            if (u.kind == UnitKind::c_range) {
                for (uint32_t c = u.c_lo; c <= u.c_hi; ++c) {
                    switch (u.strategy) {
                        case Strategy::alg1: rep.outcomes.push_back(verify_c_alg1(ctx, c)); break;
                        case Strategy::alg2: rep.outcomes.push_back(verify_c_alg2(ctx, c)); break;
                        default: rep.outcomes.push_back(verify_c_hybrid(ctx, c)); break;
                    }
                }
            } else {
                if constexpr (std::is_same_v<Ctx, PrimeFieldCtx>) {
                    rep.outcomes = verify_coset_alg3(ctx, *cs, u.o, u.half);
                    std::sort(rep.outcomes.begin(), rep.outcomes.end(),
                              [](const COutcome& a, const COutcome& b) { return a.c < b.c; });
                }
            }
            rep.crc = unit_crc(rep.outcomes);
            rep.wall_ms = uint64_t(std::chrono::duration_cast<std::chrono::milliseconds>(
                                       std::chrono::steady_clock::now() - t0)
                                       .count());
            run.reports[i] = std::move(rep);
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (const UnitReport& rep : run.reports)
        for (const COutcome& oc : rep.outcomes)
            if (!oc.success) run.all_ok = false;
    return run;
}

VerifyRun verify_with_units(uint64_t q, Strategy strategy, uint32_t c_from, uint32_t c_to,
                            unsigned jobs) {
    auto id = classify_prime_power(q);
    if (!id) throw std::invalid_argument("q is not a prime power");
    if (id->k > 1) {
        ExtFieldCtx ctx(id->p, id->k);
        Strategy s = strategy == Strategy::alg3_auto ? Strategy::alg2 : strategy;
        auto units = make_c_range_units(q, s);
        if (c_from > 1 || c_to < q - 1) {
            units.clear();
            WorkUnit u;
            u.q = q;
            u.c_lo = c_from;
            u.c_hi = c_to;
            u.strategy = s;
            units.push_back(u);
        }
        return run_units(ctx, nullptr, units, jobs);
    }
    PrimeFieldCtx ctx(id->p);
    std::optional<CosetStructure> cs;
    bool full_range = c_from <= 1 && c_to >= q - 1;
    if (strategy == Strategy::alg3_auto && full_range) cs = coset_structure(ctx);
    std::vector<WorkUnit> units;
    if (cs) {
        units = make_coset_units(q, *cs);
    } else {
        Strategy s = strategy == Strategy::alg3_auto ? Strategy::hybrid : strategy;
        units = make_c_range_units(q, s);
        if (!full_range) {
            units.clear();
            WorkUnit u;
            u.q = q;
            u.c_lo = c_from;
            u.c_hi = c_to;
            u.strategy = s;
            units.push_back(u);
        }
    }
    return run_units(ctx, cs ? &*cs : nullptr, units, jobs);
}

std::string render_report(uint64_t q, const VerifyRun& run) {
    auto id = classify_prime_power(q);
    std::ostringstream os;
    for (const UnitReport& rep : run.reports)
        os << jsonl_record(q, id->p, id->k, rep) << '\n';
    return os.str();
}

uint32_t combined_crc(const VerifyRun& run) {
    Crc32 crc;
    for (const UnitReport& rep : run.reports)
        for (const COutcome& oc : rep.outcomes) {
            crc.update_u64le(oc.c);
            crc.update_u64le(oc.success ? oc.m_terminal : 0);
            crc.update_byte(oc.success ? 0x01 : 0x00);
        }
    return crc.value();
}

int cmd_sieve(int omega_min, int omega_max, uint64_t q_min, const std::string& out_path) {
    std::vector<CandidateRecord> all;
    std::cout << "omega  upper-bound  largest-q  initial(p+pp)  final(p+pp)\n";
    for (int omega = omega_max; omega >= omega_min; --omega) {
        BucketBound bb = bucket_bound(omega);
        auto records = build_candidates(omega, q_min);
        uint64_t init_p = 0, init_pp = 0, fin_p = 0, fin_pp = 0, largest = 0;
        for (const CandidateRecord& r : records) {
            (r.k == 1 ? init_p : init_pp) += 1;
            if (r.status == CandidateStatus::retained) {
                (r.k == 1 ? fin_p : fin_pp) += 1;
                largest = std::max(largest, r.q);
            }
        }
        std::cout << omega << "  " << to_string_i128(bb.bound.floor()) << "  "
                  << (largest ? std::to_string(largest) : std::string("-")) << "  " << init_p
                  << "+" << init_pp << "  " << fin_p << "+" << fin_pp << "\n";
        all.insert(all.end(), records.begin(), records.end());
    }
    std::sort(all.begin(), all.end(),
              [](const CandidateRecord& a, const CandidateRecord& b) { return a.q < b.q; });
    uint64_t retained = 0;
    for (const CandidateRecord& r : all)
        if (r.status == CandidateStatus::retained) ++retained;
    std::cout << "total candidates " << all.size() << ", retained " << retained << "\n";
    if (!out_path.empty()) {
        std::ofstream of(out_path);
        if (!of) {
            std::cerr << "cannot write " << out_path << "\n";
            return kExitError;
        }
        write_candidates_csv(of, all);
    }
    return kExitOk;
}

int cmd_verify(uint64_t q, uint32_t c_from, uint32_t c_to, const std::string& strategy_name_str,
               unsigned jobs, const std::string& out_path, bool verify_twice) {
    Strategy strategy = strategy_from_name(strategy_name_str);
    if (c_to == 0) c_to = uint32_t(q - 1);
    auto t0 = std::chrono::steady_clock::now();
    VerifyRun run = verify_with_units(q, strategy, c_from, c_to, jobs);
    auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    std::string text = render_report(q, run);
    uint32_t crc = combined_crc(run);

    if (verify_twice) {
        VerifyRun second = verify_with_units(q, strategy, c_from, c_to, jobs);
        std::string text2 = render_report(q, second);
        uint32_t crc2 = combined_crc(second);
        if (text2 != text || crc2 != crc) {
            std::cerr << "verify-twice: runs disagree (crc " << crc_hex(crc) << " vs "
                      << crc_hex(crc2) << ")\n";
            return kExitError;
        }
        std::cerr << "verify-twice: runs agree, crc " << crc_hex(crc) << "\n";
    }

    if (!out_path.empty()) {
        std::ofstream of(out_path, std::ios::binary);
        if (!of) {
            std::cerr << "cannot write " << out_path << "\n";
            return kExitError;
        }
        of << text;
    } else {
        std::cout << text;
    }
    std::cerr << "q=" << q << " " << (run.all_ok ? "verified" : "COUNTEREXAMPLE") << " in "
              << wall << " ms, crc " << crc_hex(crc) << "\n";
    return run.all_ok ? kExitOk : kExitCounterexample;
}

int cmd_verify_list(const std::string& in_path, unsigned jobs, const std::string& out_dir,
                    bool resume) {
    std::ifstream is(in_path);
    if (!is) {
        std::cerr << "cannot read " << in_path << "\n";
        return kExitError;
    }
    std::vector<CandidateRecord> records;
    try {
        records = read_candidates_csv(is);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitError;
    }
    std::filesystem::create_directories(out_dir);
    const std::string manifest_path = out_dir + "/manifest.txt";
    std::set<uint64_t> done;
    if (resume) {
        std::ifstream mf(manifest_path);
        std::string line;
        while (std::getline(mf, line)) {
            std::istringstream ls(line);
            uint64_t q;
            if (ls >> q) done.insert(q);
        }
    } else {
        std::filesystem::remove(manifest_path);
    }
    std::ofstream mf(manifest_path, std::ios::app);
    uint64_t primes_done = 0, powers_done = 0;
    bool all_ok = true;
    for (const CandidateRecord& r : records) {
        if (r.status != CandidateStatus::retained) continue;
        (r.k == 1 ? primes_done : powers_done) += 1;
        if (done.count(r.q)) continue;
        VerifyRun run = verify_with_units(r.q, Strategy::alg3_auto, 1, uint32_t(r.q - 1), jobs);
        std::ostringstream name;
        name << out_dir << "/q" << r.q << ".jsonl";
        std::ofstream of(name.str(), std::ios::binary);
        of << render_report(r.q, run);
        mf << r.q << " crc=" << crc_hex(combined_crc(run)) << " ok=" << (run.all_ok ? 1 : 0)
           << "\n";
        mf.flush();
        if (!run.all_ok) all_ok = false;
        std::cerr << "q=" << r.q << (run.all_ok ? " ok" : " COUNTEREXAMPLE") << "\n";
    }
    std::cerr << "verified " << primes_done << " primes + " << powers_done << " prime powers\n";
    return all_ok ? kExitOk : kExitCounterexample;
}

int cmd_exceptions(uint64_t q_max) {
    const std::vector<uint64_t> expected = {3, 4, 5, 7, 11, 13, 19, 31, 43, 61};
    std::vector<uint64_t> found = brute_force_exceptions(q_max);
    for (uint64_t q : found) std::cout << q << "\n";
    std::vector<uint64_t> expected_in_range;
    for (uint64_t q : expected)
        if (q <= q_max) expected_in_range.push_back(q);
    if (found != expected_in_range) {
        std::cerr << "exception list does not match the known one\n";
        return kExitCounterexample;
    }
    return kExitOk;
}

int cmd_lemmas(uint64_t q_max, uint64_t exhaustive_q_max) {
    uint64_t checked = 0, violations = 0;
    for_each_prime_power(3, q_max, [&](const PrimePowerId& id) {
        const uint64_t q = id.q;
        FreenessIndex fi = [&] {
            if (id.k == 1) {
                PrimeFieldCtx ctx(id.p);
                return FreenessIndex(ctx);
            }
            ExtFieldCtx ctx(id.p, id.k);
            return FreenessIndex(ctx);
        }();
        const FactorProfile& qm1 = fi.order_profile();
        const auto primes = qm1.distinct_primes();
        const int omega = int(primes.size());
        // kernels: products of proper prime subsets (freeness depends on the
        // radical only)
        std::vector<uint64_t> kernels;
        for (uint32_t mask = 0; mask + 1 < (uint32_t(1) << omega); ++mask) {
            uint64_t e = 1;
            for (int i = 0; i < omega; ++i)
                if (mask >> i & 1) e *= primes[size_t(i)];
            kernels.push_back(e);
        }
        const bool exhaustive = q <= exhaustive_q_max;
        const uint32_t stride = exhaustive ? 1 : std::max<uint32_t>(1, uint32_t((q - 1) / 8));
        for (uint32_t a = 1; a < q; a += stride) {
            for (uint32_t c = 1; c < q; c += stride) {
                PairCounts pc = pair_counts(fi, a, c);
                for (uint64_t e : kernels) {
                    ++checked;
                    if (!check_lemma1(fi, a, c, e, &pc)) ++violations;
                    std::vector<uint64_t> sieved;
                    Rational delta(1);
                    for (uint64_t p : primes)
                        if (e % p != 0) delta = delta - Rational(2, int128(p));
                    if (delta.positive() && !check_theorem_bound(fi, a, c, e, &pc)) ++violations;
                    for (uint64_t l : primes) {
                        if (e % l == 0) continue;
                        if (!check_lemma2(fi, a, c, e, l, &pc)) ++violations;
                    }
                }
            }
        }
    });
    std::cout << "lemma instances checked: " << checked << ", violations: " << violations
              << "\n";
    return violations == 0 ? kExitOk : kExitCounterexample;
}

int cmd_bruteforce(uint64_t q) {
    if (!classify_prime_power(q)) {
        std::cerr << q << " is not a prime power\n";
        return kExitError;
    }
    bool member = brute_force_is_member(q);
    QReport rep = verify_q(q, Strategy::hybrid);
    std::cout << "q=" << q << " brute-force member: " << (member ? "yes" : "no")
              << ", engine verdict: " << (rep.overall ? "yes" : "no") << "\n";
    if (member != rep.overall) {
        std::cerr << "engine and brute force disagree\n";
        return kExitError;
    }
    return member ? kExitOk : kExitCounterexample;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sieve and exhaustive verification of two-primitive-root representations"};
    app.require_subcommand(1);

    auto* sieve_cmd = app.add_subcommand("sieve", "build candidate lists by kernel elimination");
    int omega_min = 3, omega_max = 8;
    uint64_t q_min = 2131;
    std::string out_path;
    sieve_cmd->add_option("--omega-min", omega_min, "smallest omega(q-1) bucket");
    sieve_cmd->add_option("--omega-max", omega_max, "largest omega(q-1) bucket");
    sieve_cmd->add_option("--qmin", q_min, "lower end of the enumeration");
    sieve_cmd->add_option("--out", out_path, "candidate CSV path");

    auto* verify_cmd = app.add_subcommand("verify", "verify one prime power");
    uint64_t q = 0;
    uint32_t c_from = 1, c_to = 0;
    std::string strategy = "alg3-auto";
    unsigned jobs = 1;
    std::string verify_out;
    bool verify_twice = false;
    verify_cmd->add_option("--q", q, "prime power to verify")->required();
    verify_cmd->add_option("--c-from", c_from, "first c value");
    verify_cmd->add_option("--c-to", c_to, "last c value (default q-1)");
    verify_cmd->add_option("--strategy", strategy, "alg1|alg2|hybrid|alg3-auto");
    verify_cmd->add_option("--jobs", jobs, "worker threads");
    verify_cmd->add_option("--out", verify_out, "JSON-lines report path (default stdout)");
    verify_cmd->add_flag("--verify-twice", verify_twice, "run twice and compare checksums");

    auto* list_cmd = app.add_subcommand("verify-list", "verify every retained CSV record");
    std::string list_in, list_out = "reports";
    unsigned list_jobs = 1;
    bool resume = false;
    list_cmd->add_option("--in", list_in, "candidate CSV")->required();
    list_cmd->add_option("--jobs", list_jobs, "worker threads");
    list_cmd->add_option("--out", list_out, "report directory");
    list_cmd->add_flag("--resume", resume, "skip q already in the manifest");

    auto* exc_cmd = app.add_subcommand("exceptions", "brute-force the known exception list");
    uint64_t exc_max = 2130;
    exc_cmd->add_option("--max", exc_max, "largest q to test");

    auto* lemmas_cmd = app.add_subcommand("lemmas", "check the sieve inequalities numerically");
    uint64_t lemmas_qmax = 500, lemmas_exh = 200;
    lemmas_cmd->add_option("--qmax", lemmas_qmax, "largest q (sampled a,c above the exhaustive cut)");
    lemmas_cmd->add_option("--exhaustive-qmax", lemmas_exh, "largest q checked over every (a,c)");

    auto* bf_cmd = app.add_subcommand("bruteforce", "brute-force one prime power");
    uint64_t bf_q = 0;
    bf_cmd->add_option("--q", bf_q, "prime power")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sieve_cmd->parsed()) return cmd_sieve(omega_min, omega_max, q_min, out_path);
        if (verify_cmd->parsed())
            return cmd_verify(q, c_from, c_to, strategy, jobs, verify_out, verify_twice);
        if (list_cmd->parsed()) return cmd_verify_list(list_in, list_jobs, list_out, resume);
        if (exc_cmd->parsed()) return cmd_exceptions(exc_max);
        if (lemmas_cmd->parsed()) return cmd_lemmas(lemmas_qmax, lemmas_exh);
        if (bf_cmd->parsed()) return cmd_bruteforce(bf_q);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
