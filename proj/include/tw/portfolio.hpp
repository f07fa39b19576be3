#pragma once

#include <algorithm>
#include <unordered_map>
#include <vector>

#include "tw/market.hpp"
#include "tw/rational.hpp"

namespace tw {

/// Buy-and-hold strategy: initial endowment, maturity, and holdings indexed
/// by tree node (one holding per node of depth < maturity). Node indexing
/// makes the strategy nonanticipating by construction.
struct SimplePortfolio {
    Rational initial;
    int maturity = 0;
    std::unordered_map<int, Rational> holdings;

    Rational holding_at(int node_id) const {
        auto it = holdings.find(node_id);
        return it == holdings.end() ? Rational(0) : it->second;
    }
};

/// Finite list of simple portfolios; component 0 is unconstrained, every
/// later component must be positive (V >= 0 and terminal wealth >= 0 on
/// every class).
struct GeneralizedPortfolio {
    std::vector<SimplePortfolio> components;
};

/// Wealth at time j: V plus the accumulated increments up to min(j, n).
/// Holdings beyond the tree depth never matter (increments vanish).
inline Rational wealth(const Instance& instance, const SimplePortfolio& pf,
                       int class_id, int j) {
    Rational w = pf.initial;
    const int steps = std::min({j, pf.maturity, instance.depth});
    for (int i = 0; i < steps; ++i) {
        const Rational inc = instance.increment(class_id, i);
        if (inc == 0) continue;
        w += pf.holding_at(instance.node_of(class_id, i)) * inc;
    }
    return w;
}

inline Rational terminal_wealth(const Instance& instance, const SimplePortfolio& pf,
                                int class_id) {
    return wealth(instance, pf, class_id, pf.maturity);
}

}  // namespace tw
