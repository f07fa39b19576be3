#pragma once

// Shared helpers for the test suites: seeded random instances, payoffs and
// linear programs. Deterministic for fixed seeds.

#include <random>
#include <string>
#include <vector>

#include "tw/linprog.hpp"
#include "tw/market.hpp"
#include "tw/payoff.hpp"

namespace twtest {

inline tw::Rational Q(long p, long q = 1) { return tw::Rational(p, q); }

inline tw::Trajectory path(std::vector<tw::Rational> values) {
    return tw::Trajectory::from_dense(values);
}

/// Random eventually-constant instance: a random prefix tree of depth
/// <= max_depth with at most max_classes leaf paths. The maturity cap is
/// drawn from 1..depth+1, so both exact and emulation regimes appear.
inline tw::Instance random_instance(std::mt19937_64& rng, int max_depth = 4,
                                    int max_classes = 12) {
    std::uniform_int_distribution<int> depth_d(1, max_depth);
    std::uniform_int_distribution<int> branch_d(1, 3);
    std::uniform_int_distribution<int> delta_d(0, 4);
    const tw::Rational deltas[5] = {Q(-1), Q(-1, 2), Q(0), Q(1, 2), Q(1)};
    const int depth = depth_d(rng);
    int budget = std::uniform_int_distribution<int>(2, max_classes)(rng);

    std::vector<std::vector<tw::Rational>> paths{{Q(1)}};
    for (int d = 0; d < depth; ++d) {
        std::vector<std::vector<tw::Rational>> next;
        for (auto& p : paths) {
            const int want = branch_d(rng);
            std::vector<tw::Rational> values;
            for (int b = 0; b < want; ++b) {
                const tw::Rational v = p.back() + deltas[delta_d(rng)];
                if (std::find(values.begin(), values.end(), v) == values.end())
                    values.push_back(v);
            }
            for (const auto& v : values) {
                auto np = p;
                np.push_back(v);
                next.push_back(std::move(np));
                if (static_cast<int>(next.size()) >= budget) break;
            }
            if (static_cast<int>(next.size()) >= budget) {
                // keep every current path alive with a flat continuation
                for (auto it = &p + 1; it != paths.data() + paths.size(); ++it) {
                    auto np = *it;
                    np.push_back(np.back());
                    next.push_back(std::move(np));
                }
                break;
            }
        }
        paths = std::move(next);
    }
    if (static_cast<int>(paths.size()) > max_classes) paths.resize(max_classes);

    std::vector<tw::Trajectory> members;
    for (const auto& p : paths) members.push_back(tw::Trajectory::from_dense(p));
    std::vector<tw::TrajectoryFamily> fams{tw::ExplicitFamily{std::move(members), {}}};
    tw::Regime regime;
    regime.truncation = 1;
    regime.maturity_cap = std::uniform_int_distribution<int>(1, depth + 1)(rng);
    return tw::build_instance(Q(1), std::move(fams), regime);
}

inline tw::PayoffValues random_payoff(std::mt19937_64& rng, const tw::Instance& inst,
                                      bool nonnegative) {
    std::uniform_int_distribution<int> num(nonnegative ? 0 : -6, 6);
    std::uniform_int_distribution<int> den(1, 3);
    std::vector<tw::Rational> v;
    for (int c = 0; c < inst.num_classes(); ++c) v.push_back(Q(num(rng), den(rng)));
    return tw::payoff_from_values(std::move(v), inst.depth);
}

inline tw::lp::LinearProgram random_lp(std::mt19937_64& rng, int max_vars = 8,
                                       int max_rows = 10) {
    using namespace tw::lp;
    std::uniform_int_distribution<int> nvar_d(1, max_vars), nrow_d(0, max_rows);
    std::uniform_int_distribution<int> coef_d(-5, 5), rel_d(0, 2), flag_d(0, 1);
    const int n = nvar_d(rng);
    LinearProgram lp(flag_d(rng) ? Sense::Min : Sense::Max, n);
    for (int j = 0; j < n; ++j) {
        lp.c[j] = Q(coef_d(rng));
        lp.nonneg[j] = flag_d(rng) == 1;
    }
    const int m = nrow_d(rng);
    for (int i = 0; i < m; ++i) {
        std::vector<tw::Rational> a(n);
        for (auto& v : a) v = Q(coef_d(rng));
        lp.add_row(std::move(a), static_cast<Rel>(rel_d(rng)), Q(coef_d(rng)));
    }
    return lp;
}


/// Independent oracle: superhedge price with no null relief, built directly
/// as a linear program over the node holdings.
inline tw::Rational raw_superhedge_price(const tw::Instance& inst,
                                         const tw::PayoffValues& f) {
    using namespace tw::lp;
    std::vector<int> node_var(inst.nodes.size(), -1);
    int nv = 1;
    for (const auto& node : inst.nodes)
        if (node.depth < inst.hedge_depth()) node_var[node.id] = nv++;
    LinearProgram lp(Sense::Min, nv);
    lp.c[0] = 1;
    for (int c = 0; c < inst.num_classes(); ++c) {
        std::vector<tw::Rational> row(nv, Q(0));
        row[0] = 1;
        for (int i = 0; i < inst.hedge_depth(); ++i)
            row[node_var[inst.node_of(c, i)]] += inst.increment(c, i);
        lp.add_row(std::move(row), Rel::Ge, f.values[c]);
    }
    const Outcome oc = solve(lp);
    if (oc.status != Status::Optimal)
        throw std::runtime_error("raw superhedge program not optimal");
    return oc.value;
}

}  // namespace twtest

