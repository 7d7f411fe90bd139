#include "primsum/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace primsum {

const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::alg1: return "alg1";
        case Strategy::alg2: return "alg2";
        case Strategy::hybrid: return "hybrid";
        case Strategy::alg3_auto: return "alg3-auto";
    }
    return "?";
}

Strategy strategy_from_name(const std::string& name) {
    if (name == "alg1") return Strategy::alg1;
    if (name == "alg2") return Strategy::alg2;
    if (name == "hybrid") return Strategy::hybrid;
    if (name == "alg3-auto") return Strategy::alg3_auto;
    throw std::invalid_argument("unknown strategy: " + name);
}

namespace {

// clear t-indices excluding 0, ascending
std::vector<uint32_t> collect_residuals(const MarkState& st) {
    std::vector<uint32_t> out;
    out.reserve(st.r);
    for (uint32_t a = 1; a < st.t.size(); ++a)
        if (!st.t[a]) out.push_back(a);
    return out;
}

template <class Ctx>
COutcome fail_outcome(const Ctx&, uint32_t c, const MarkState& st) {
    COutcome oc;
    oc.c = c;
    oc.success = false;
    oc.m_terminal = 0;
    oc.residual = st.r;
    oc.residual_values = collect_residuals(st);
    return oc;
}

// one outer iteration of alg1: mark g_n + d for every inner root;
// branchless update, the loop is memory-bound on the random writes
template <class Ctx>
inline void mark_pass(const Ctx& ctx, uint32_t d, MarkState& st) {
    uint8_t* t = st.t.data();
    uint64_t r = st.r;
    for (uint32_t gn : ctx.roots()) {
        uint32_t a = ctx.add(gn, d);
        r -= 1 - t[a];
        t[a] = 1;
    }
    st.r = r;
}

// one outer iteration of alg2 over the survivor list
template <class Ctx>
inline void sweep_pass(const Ctx& ctx, uint32_t d, std::vector<uint32_t>& rem) {
    size_t i = 0, r = rem.size();
    while (i < r) {
        uint32_t j = ctx.sub(rem[i], d);
        if (ctx.is_primitive(j)) {
            rem[i] = rem[r - 1];
            --r;
        } else {
            ++i;
        }
    }
    rem.resize(r);
}

}  // namespace

template <class Ctx>
COutcome verify_c_alg1(const Ctx& ctx, uint32_t c, MarkState* state) {
    MarkState local;
    MarkState& st = state ? *state : local;
    if (!state) st = MarkState::fresh(ctx.q());
    const auto roots = ctx.roots();
    for (uint64_t m = 1; m <= roots.size(); ++m) {
        uint32_t d = ctx.mul(c, roots[m - 1]);
        mark_pass(ctx, d, st);
        if (st.r == 0) return COutcome{c, true, m, 0, {}};
    }
    return fail_outcome(ctx, c, st);
}

template <class Ctx>
COutcome verify_c_alg2(const Ctx& ctx, uint32_t c, RemainState* state) {
    RemainState local;
    RemainState& st = state ? *state : local;
    if (!state) {
        st.remaining.resize(ctx.q() - 1);
        for (uint32_t a = 1; a < ctx.q(); ++a) st.remaining[a - 1] = a;
    }
    const auto roots = ctx.roots();
    for (uint64_t m = 1; m <= roots.size(); ++m) {
        uint32_t d = ctx.mul(c, roots[m - 1]);
        sweep_pass(ctx, d, st.remaining);
        if (st.remaining.empty()) return COutcome{c, true, m, 0, {}};
    }
    COutcome oc;
    oc.c = c;
    oc.success = false;
    oc.residual = st.remaining.size();
    oc.residual_values = st.remaining;
    std::sort(oc.residual_values.begin(), oc.residual_values.end());
    return oc;
}

namespace {

// hybrid continuation from an existing mark state: alg1 passes with the
// switch check at the end of each outer iteration, then alg2 on the
// survivors
template <class Ctx>
COutcome hybrid_from_state(const Ctx& ctx, uint32_t c, MarkState& st) {
    const auto roots = ctx.roots();
    const uint64_t phi = roots.size();
    for (uint64_t m = 1; m <= phi; ++m) {
        uint32_t d = ctx.mul(c, roots[m - 1]);
        mark_pass(ctx, d, st);
        if (st.r == 0) return COutcome{c, true, m, 0, {}};
        if (4 * st.r < phi) {
            // switch: survivors of the mark table, ascending, then alg2
            std::vector<uint32_t> rem = collect_residuals(st);
            for (uint64_t m2 = m + 1; m2 <= phi; ++m2) {
                uint32_t d2 = ctx.mul(c, roots[m2 - 1]);
                sweep_pass(ctx, d2, rem);
                if (rem.empty()) return COutcome{c, true, m2, 0, {}};
            }
            COutcome oc;
            oc.c = c;
            oc.success = false;
            oc.residual = rem.size();
            oc.residual_values = rem;
            std::sort(oc.residual_values.begin(), oc.residual_values.end());
            return oc;
        }
    }
    return fail_outcome(ctx, c, st);
}

}  // namespace

template <class Ctx>
COutcome verify_c_hybrid(const Ctx& ctx, uint32_t c) {
    MarkState st = MarkState::fresh(ctx.q());
    return hybrid_from_state(ctx, c, st);
}

std::vector<uint32_t> coset_half_members(const CosetStructure& cs, const PrimeFieldCtx& ctx,
                                         uint64_t o, CosetHalf half) {
    std::vector<uint32_t> co = coset_members(cs, ctx, o);
    uint64_t h = (cs.u + 1) / 2;  // ceil(u/2)
    if (half == CosetHalf::first)
        return std::vector<uint32_t>(co.begin(), co.begin() + long(h));
    return std::vector<uint32_t>(co.begin() + long(h), co.end());
}

std::vector<COutcome> verify_coset_alg3(const PrimeFieldCtx& ctx, const CosetStructure& cs,
                                        uint64_t o, CosetHalf half) {
    if (o >= cs.v) throw std::invalid_argument("verify_coset_alg3: o out of range");
    const std::vector<uint32_t> c_values = coset_half_members(cs, ctx, o, half);
    const std::vector<uint32_t> next = coset_members(cs, ctx, (o + 1) % cs.v);

    // C''_{o+1} = z * C'_o; phase-1 d values are C_{o+1} minus that set,
    // kept in ascending i order
    std::vector<uint32_t> excluded;
    excluded.reserve(c_values.size());
    for (uint32_t c : c_values) excluded.push_back(ctx.mul(cs.z, c));
    std::sort(excluded.begin(), excluded.end());
    std::vector<uint32_t> ds;
    ds.reserve(next.size() - excluded.size());
    for (uint32_t d : next)
        if (!std::binary_search(excluded.begin(), excluded.end(), d)) ds.push_back(d);

    MarkState shared = MarkState::fresh(ctx.q());
    std::vector<COutcome> out;
    out.reserve(c_values.size());
    uint64_t di = 0;
    for (uint32_t d : ds) {
        ++di;
        mark_pass(ctx, d, shared);
        if (shared.r == 0) {
            for (uint32_t c : c_values) out.push_back(COutcome{c, true, di, 0, {}});
            return out;
        }
    }
    // phase 2: finish each c from a copy of the shared state; the verdict
    // and terminal m match plain alg1 whichever continuation runs, since
    // all of them resolve the same survivor set at each outer step
    if (4 * shared.r < ctx.phi()) {
        // already past the hybrid switch point: continue alg2-style on
        // copies of the shared survivor list, no table copy needed
        const std::vector<uint32_t> survivors = collect_residuals(shared);
        const auto roots = ctx.roots();
        for (uint32_t c : c_values) {
            std::vector<uint32_t> rem = survivors;
            COutcome oc;
            oc.c = c;
            oc.success = false;
            for (uint64_t m = 1; m <= roots.size(); ++m) {
                sweep_pass(ctx, ctx.mul(c, roots[m - 1]), rem);
                if (rem.empty()) {
                    oc = COutcome{c, true, m, 0, {}};
                    break;
                }
            }
            if (!oc.success) {
                oc.residual = rem.size();
                oc.residual_values = rem;
                std::sort(oc.residual_values.begin(), oc.residual_values.end());
            }
            out.push_back(std::move(oc));
        }
        return out;
    }
    for (uint32_t c : c_values) {
        MarkState copy = shared;
        out.push_back(hybrid_from_state(ctx, c, copy));
    }
    return out;
}

namespace {

template <class Ctx>
void run_all_c(const Ctx& ctx, Strategy strategy, QReport& rep, bool keep_outcomes) {
    for (uint32_t c = 1; c < ctx.q(); ++c) {
        COutcome oc;
        switch (strategy) {
            case Strategy::alg1: oc = verify_c_alg1(ctx, c); break;
            case Strategy::alg2: oc = verify_c_alg2(ctx, c); break;
            default: oc = verify_c_hybrid(ctx, c); break;
        }
        if (!oc.success) rep.failures.push_back(oc);
        if (oc.success) ++rep.m_hist[oc.m_terminal];
        if (keep_outcomes) rep.outcomes.push_back(std::move(oc));
    }
}

void finish_report(QReport& rep) {
    rep.overall = rep.failures.empty();
    uint64_t n = 0, sum = 0;
    for (auto& [m, cnt] : rep.m_hist) { n += cnt; sum += m * cnt; }
    rep.mean_m = n ? double(sum) / double(n) : 0.0;
}

}  // namespace

QReport verify_q(uint64_t q, Strategy strategy, bool keep_outcomes) {
    auto id = classify_prime_power(q);
    if (!id || q < 3) throw std::invalid_argument("verify_q: q must be a prime power >= 3");
    QReport rep;
    rep.q = q;
    rep.p = id->p;
    rep.k = id->k;
    rep.strategy = strategy;

    if (id->k > 1) {
        ExtFieldCtx ctx(id->p, id->k);
        Strategy s = strategy == Strategy::alg3_auto ? Strategy::alg2 : strategy;
        run_all_c(ctx, s, rep, keep_outcomes);
        finish_report(rep);
        return rep;
    }

    PrimeFieldCtx ctx(id->p);
    if (strategy == Strategy::alg3_auto) {
        if (auto cs = coset_structure(ctx)) {
            std::vector<COutcome> all;
            all.reserve(q - 1);
            for (uint64_t o = 0; o < cs->v; ++o) {
                for (CosetHalf half : {CosetHalf::first, CosetHalf::second}) {
                    auto part = verify_coset_alg3(ctx, *cs, o, half);
                    all.insert(all.end(), part.begin(), part.end());
                }
            }
            std::sort(all.begin(), all.end(),
                      [](const COutcome& a, const COutcome& b) { return a.c < b.c; });
            for (COutcome& oc : all) {
                if (!oc.success) rep.failures.push_back(oc);
                if (oc.success) ++rep.m_hist[oc.m_terminal];
            }
            if (keep_outcomes) rep.outcomes = std::move(all);
            finish_report(rep);
            return rep;
        }
        strategy = Strategy::hybrid;  // no unitary prime in p-1
    }
    run_all_c(ctx, strategy, rep, keep_outcomes);
    finish_report(rep);
    return rep;
}

double expected_mean_m(uint64_t p) {
    FactorProfile pm1 = factor_profile(p - 1);
    double ratio = double(pm1.phi) / double(p);
    return std::log(1.0 / (2.0 * double(p))) / std::log(1.0 - ratio);
}

// explicit instantiations for the two field contexts
template COutcome verify_c_alg1<PrimeFieldCtx>(const PrimeFieldCtx&, uint32_t, MarkState*);
template COutcome verify_c_alg1<ExtFieldCtx>(const ExtFieldCtx&, uint32_t, MarkState*);
template COutcome verify_c_alg2<PrimeFieldCtx>(const PrimeFieldCtx&, uint32_t, RemainState*);
template COutcome verify_c_alg2<ExtFieldCtx>(const ExtFieldCtx&, uint32_t, RemainState*);
template COutcome verify_c_hybrid<PrimeFieldCtx>(const PrimeFieldCtx&, uint32_t);
template COutcome verify_c_hybrid<ExtFieldCtx>(const ExtFieldCtx&, uint32_t);

}  // namespace primsum
