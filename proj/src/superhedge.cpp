#include "tw/superhedge.hpp"

#include <algorithm>
#include <random>

#include "tw/linprog.hpp"
#include "tw/nodes.hpp"

namespace tw {

namespace {

using lp::LinearProgram;
using lp::Outcome;
using lp::Rel;
using lp::Sense;
using lp::Status;

// Shared variable layout for portfolio programs: variable 0 is V, then one
// holding per node the hedging horizon can see.
struct PortfolioVars {
    int nvars = 1;
    int hedge_depth = 0;
    std::vector<int> node_var;  // node id -> variable index, -1 outside
};

PortfolioVars make_vars(const Instance& inst) {
    PortfolioVars pv;
    pv.hedge_depth = inst.hedge_depth();
    pv.node_var.assign(inst.nodes.size(), -1);
    for (const auto& node : inst.nodes) {
        if (node.depth < pv.hedge_depth) pv.node_var[node.id] = pv.nvars++;
    }
    return pv;
}

std::vector<Rational> terminal_row(const Instance& inst, const PortfolioVars& pv,
                                   int class_id) {
    std::vector<Rational> row(pv.nvars, Rational(0));
    row[0] = 1;
    for (int i = 0; i < pv.hedge_depth; ++i) {
        const Rational inc = inst.increment(class_id, i);
        if (inc == 0) continue;
        row[pv.node_var[inst.node_of(class_id, i)]] += inc;
    }
    return row;
}

SimplePortfolio portfolio_from(const Instance& inst, const PortfolioVars& pv,
                               const std::vector<Rational>& x) {
    SimplePortfolio pf;
    pf.initial = x[0];
    pf.maturity = std::max(pv.hedge_depth, 1);
    for (const auto& node : inst.nodes) {
        const int var = pv.node_var[node.id];
        if (var >= 0 && x[var] != 0) pf.holdings[node.id] = x[var];
    }
    return pf;
}

bool in_sorted(const std::vector<int>& xs, int v) {
    return std::binary_search(xs.begin(), xs.end(), v);
}

// null_set with per-class capture certificates; the overloads below avoid
// recomputing A inside payoff loops.
NullSetReport null_set_impl(const Instance& inst) {
    NullSetReport report;
    const PortfolioVars pv = make_vars(inst);
    for (int target = 0; target < inst.num_classes(); ++target) {
        LinearProgram lp(Sense::Min, pv.nvars);
        std::vector<Rational> v_row(pv.nvars, Rational(0));
        v_row[0] = 1;
        lp.add_row(v_row, Rel::Eq, Rational(0));
        for (int c = 0; c < inst.num_classes(); ++c) {
            lp.add_row(terminal_row(inst, pv, c), Rel::Ge,
                       Rational(c == target ? 1 : 0));
        }
        const Outcome oc = lp::solve(lp);
        if (oc.status == Status::Optimal) {
            report.classes.push_back(target);
            report.certificates.push_back(portfolio_from(inst, pv, oc.x));
        }
    }
    return report;
}

PriceResult sigma_bar_with(const Instance& inst, const PayoffValues& payoff,
                           const std::vector<int>& null_classes) {
    const PortfolioVars pv = make_vars(inst);
    LinearProgram lp(Sense::Min, pv.nvars);
    lp.c[0] = 1;
    std::vector<int> row_class;
    for (int c = 0; c < inst.num_classes(); ++c) {
        if (in_sorted(null_classes, c)) continue;
        lp.add_row(terminal_row(inst, pv, c), Rel::Ge, payoff.values[c]);
        row_class.push_back(c);
    }
    const Outcome oc = lp::solve(lp);
    PriceResult res;
    if (oc.status == Status::Optimal) {
        res.kind = PriceResult::Kind::Finite;
        res.value = oc.value;
        res.hedge = portfolio_from(inst, pv, oc.x);
        std::vector<Rational> weights(inst.num_classes(), Rational(0));
        for (std::size_t r = 0; r < row_class.size(); ++r) weights[row_class[r]] = oc.y[r];
        res.dual_weights = std::move(weights);
        return res;
    }
    if (oc.status != Status::Unbounded)
        throw std::logic_error("superhedge program cannot be infeasible");
    res.kind = PriceResult::Kind::MinusInfinity;
    res.arbitrage = detect_strict_mia(inst);
    return res;
}

PriceResult i_bar_with(const Instance& inst, const PayoffValues& payoff,
                       const std::vector<int>& null_classes) {
    if (!payoff.nonnegative())
        throw MarketError("i_bar requires a payoff that is nonnegative on every class");
    const PortfolioVars pv = make_vars(inst);
    LinearProgram lp(Sense::Min, pv.nvars);
    lp.c[0] = 1;
    lp.nonneg[0] = true;  // positive portfolios start from V >= 0
    std::vector<int> row_class;
    for (int c = 0; c < inst.num_classes(); ++c) {
        const bool relieved = in_sorted(null_classes, c);
        lp.add_row(terminal_row(inst, pv, c), Rel::Ge,
                   relieved ? Rational(0) : payoff.values[c]);
        row_class.push_back(c);
    }
    const Outcome oc = lp::solve(lp);
    if (oc.status != Status::Optimal)
        throw std::logic_error("positive superhedge must be bounded and feasible");
    PriceResult res;
    res.kind = PriceResult::Kind::Finite;
    res.value = oc.value;
    res.hedge = portfolio_from(inst, pv, oc.x);
    std::vector<Rational> weights(inst.num_classes(), Rational(0));
    for (std::size_t r = 0; r < row_class.size(); ++r) weights[row_class[r]] = oc.y[r];
    res.dual_weights = std::move(weights);
    return res;
}

PayoffValues zero_payoff(const Instance& inst) {
    return PayoffValues{std::vector<Rational>(inst.num_classes(), Rational(0)), 0};
}

}  // namespace

AggregationResult aggregate(const Instance& instance, const GeneralizedPortfolio& gp,
                            int n) {
    for (std::size_t m = 1; m < gp.components.size(); ++m) {
        const auto& pf = gp.components[m];
        if (pf.initial < 0)
            throw MarketError("generalized portfolio: component " + std::to_string(m) +
                              " has negative endowment");
        for (int c = 0; c < instance.num_classes(); ++c) {
            if (terminal_wealth(instance, pf, c) < 0)
                throw MarketError("generalized portfolio: component " +
                                  std::to_string(m) + " is not positive");
        }
    }
    AggregationResult res;
    if (auto node = find_type2_node(instance, std::min(n, instance.depth))) {
        res.ok = false;
        res.type2_node = *node;
        return res;
    }
    res.ok = true;
    for (const auto& node : instance.nodes) {
        if (node.depth >= std::min(n, instance.depth)) continue;
        Rational sum = 0;
        for (const auto& pf : gp.components) {
            if (pf.maturity > node.depth) sum += pf.holding_at(node.id);
        }
        if (sum != 0) res.holdings[node.id] = sum;
    }
    return res;
}

Replication replicate(const Instance& instance, const PayoffValues& payoff) {
    const PortfolioVars pv = make_vars(instance);
    LinearProgram lp(Sense::Min, pv.nvars);
    lp.c[0] = 1;
    for (int c = 0; c < instance.num_classes(); ++c)
        lp.add_row(terminal_row(instance, pv, c), Rel::Eq, payoff.values[c]);
    const Outcome lo = lp::solve(lp);
    Replication rep;
    if (lo.status == Status::Infeasible) {
        rep.status = Replication::Status::NotReplicable;
        return rep;
    }
    LinearProgram hi = lp;
    hi.sense = Sense::Max;
    const Outcome ho = lp::solve(hi);
    if (lo.status != Status::Optimal || ho.status != Status::Optimal ||
        lo.value != ho.value) {
        rep.status = Replication::Status::PriceNotUnique;
        if (lo.status == Status::Optimal) {
            rep.price = lo.value;
            rep.portfolio = portfolio_from(instance, pv, lo.x);
        }
        return rep;
    }
    rep.status = Replication::Status::Replicable;
    rep.price = lo.value;
    rep.portfolio = portfolio_from(instance, pv, lo.x);
    return rep;
}

bool check_lop(const Instance& instance) {
    const PortfolioVars pv = make_vars(instance);
    LinearProgram lp(Sense::Min, pv.nvars);
    std::vector<Rational> v_row(pv.nvars, Rational(0));
    v_row[0] = 1;
    lp.add_row(v_row, Rel::Eq, Rational(-1));
    for (int c = 0; c < instance.num_classes(); ++c)
        lp.add_row(terminal_row(instance, pv, c), Rel::Eq, Rational(0));
    return lp::solve(lp).status == Status::Infeasible;
}

bool check_mon(const Instance& instance) {
    const PortfolioVars pv = make_vars(instance);
    LinearProgram lp(Sense::Min, pv.nvars);
    std::vector<Rational> v_row(pv.nvars, Rational(0));
    v_row[0] = 1;
    lp.add_row(v_row, Rel::Eq, Rational(-1));
    for (int c = 0; c < instance.num_classes(); ++c)
        lp.add_row(terminal_row(instance, pv, c), Rel::Ge, Rational(0));
    return lp::solve(lp).status == Status::Infeasible;
}

std::vector<int> null_set(const Instance& instance) {
    return null_set_impl(instance).classes;
}

NullSetReport null_set_report(const Instance& instance) {
    return null_set_impl(instance);
}

PriceResult sigma_bar(const Instance& instance, const PayoffValues& payoff) {
    return sigma_bar_with(instance, payoff, null_set(instance));
}

PriceResult sigma_under(const Instance& instance, const PayoffValues& payoff) {
    PriceResult res = sigma_bar(instance, payoff.negate());
    if (res.kind == PriceResult::Kind::Finite) {
        res.value = -res.value;
    } else if (res.kind == PriceResult::Kind::MinusInfinity) {
        res.kind = PriceResult::Kind::PlusInfinity;
    }
    return res;
}

PriceResult i_bar(const Instance& instance, const PayoffValues& payoff) {
    return i_bar_with(instance, payoff, null_set(instance));
}

Rational norm_value(const Instance& instance, const PayoffValues& payoff) {
    return i_bar(instance, payoff.abs()).value;
}

Rational i_bar_sum_value(const Instance& instance, const PayoffValues& payoff, int k) {
    if (k < 1) throw MarketError("component count must be >= 1");
    if (!payoff.nonnegative())
        throw MarketError("i_bar requires a payoff that is nonnegative on every class");
    const std::vector<int> null_classes = null_set(instance);
    const PortfolioVars pv = make_vars(instance);
    const int per = pv.nvars;
    LinearProgram lp(Sense::Min, per * k);
    for (int m = 0; m < k; ++m) {
        lp.c[m * per] = 1;
        lp.nonneg[m * per] = true;
    }
    // Each component is a positive portfolio on its own.
    for (int m = 0; m < k; ++m) {
        for (int c = 0; c < instance.num_classes(); ++c) {
            std::vector<Rational> row(per * k, Rational(0));
            const std::vector<Rational> base = terminal_row(instance, pv, c);
            std::copy(base.begin(), base.end(), row.begin() + m * per);
            lp.add_row(std::move(row), Rel::Ge, Rational(0));
        }
    }
    // The component sum superhedges the payoff off the null set.
    for (int c = 0; c < instance.num_classes(); ++c) {
        if (in_sorted(null_classes, c)) continue;
        std::vector<Rational> row(per * k, Rational(0));
        const std::vector<Rational> base = terminal_row(instance, pv, c);
        for (int m = 0; m < k; ++m)
            std::copy(base.begin(), base.end(), row.begin() + m * per);
        lp.add_row(std::move(row), Rel::Ge, payoff.values[c]);
    }
    const Outcome oc = lp::solve(lp);
    if (oc.status != Status::Optimal)
        throw std::logic_error("positive superhedge must be bounded and feasible");
    return oc.value;
}

KIntegral integral_K(const Instance& instance, const PayoffValues& payoff) {
    KIntegral res;
    res.outer = sigma_bar(instance, payoff);
    res.inner = sigma_under(instance, payoff);
    res.integrable = res.outer.finite() && res.inner.finite() &&
                     res.outer.value == res.inner.value;
    if (res.integrable) res.value = res.outer.value;
    return res;
}

bool check_L(const Instance& instance) {
    return sigma_bar(instance, zero_payoff(instance)).finite();
}

bool check_L_nodewise(const Instance& instance) {
    for (const auto& node : instance.nodes) {
        const Instance shifted =
            shifted_space(instance, node.classes.front(), node.depth);
        if (!check_L(shifted)) return false;
    }
    return true;
}

KCheck check_K(const Instance& instance, int random_payoffs, unsigned long long seed) {
    const std::vector<int> null_classes = null_set(instance);
    std::vector<std::pair<std::string, PayoffValues>> sample;
    // Class indicators: two classes always differ within the tree depth, so
    // each indicator is a payoff of maturity D.
    for (int c = 0; c < instance.num_classes(); ++c) {
        std::vector<Rational> v(instance.num_classes(), Rational(0));
        v[c] = 1;
        sample.emplace_back("indicator of " + instance.class_names[c],
                            payoff_from_values(std::move(v), instance.depth));
    }
    // Straddles struck at each node value.
    for (const auto& node : instance.nodes) {
        if (node.depth >= instance.depth) continue;
        std::vector<Rational> v;
        for (int c = 0; c < instance.num_classes(); ++c)
            v.push_back(rational_abs(instance.classes[c].at(node.depth + 1) - node.value));
        sample.emplace_back(
            "straddle |S[" + std::to_string(node.depth + 1) + "] - " +
                format_rational(node.value) + "|",
            payoff_from_values(std::move(v), node.depth + 1));
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(0, 8), den(1, 4);
    for (int r = 0; r < random_payoffs; ++r) {
        std::vector<Rational> v;
        for (int c = 0; c < instance.num_classes(); ++c)
            v.push_back(Rational(num(rng), den(rng)));
        sample.emplace_back("random positive payoff #" + std::to_string(r),
                            payoff_from_values(std::move(v), instance.depth));
    }

    KCheck out;
    for (const auto& [label, payoff] : sample) {
        const PriceResult ib = i_bar_with(instance, payoff, null_classes);
        const PriceResult sb = sigma_bar_with(instance, payoff, null_classes);
        if (!sb.finite() || sb.value != ib.value) {
            out.pass = false;
            out.counterexample_label = label;
            out.counterexample = payoff;
            out.ibar_value = ib.value;
            out.sigma_finite = sb.finite();
            if (sb.finite()) out.sigma_value = sb.value;
            return out;
        }
    }
    return out;
}

bool check_nK_sufficient(const Instance& instance) {
    if (!check_complete(instance).complete) return false;
    return !find_type2_node(instance, instance.depth, /*ignore_truncation=*/true)
                .has_value();
}

std::optional<SimplePortfolio> detect_strict_mia(const Instance& instance) {
    const PortfolioVars pv = make_vars(instance);
    LinearProgram lp(Sense::Min, pv.nvars);
    std::vector<Rational> v_row(pv.nvars, Rational(0));
    v_row[0] = 1;
    lp.add_row(v_row, Rel::Eq, Rational(0));
    for (int c = 0; c < instance.num_classes(); ++c)
        lp.add_row(terminal_row(instance, pv, c), Rel::Ge, Rational(1));
    const Outcome oc = lp::solve(lp);
    if (oc.status == Status::Infeasible) return std::nullopt;
    return portfolio_from(instance, pv, oc.x);
}

NullArbitrage detect_null_arbitrage(const Instance& instance) {
    const std::vector<int> null_classes = null_set(instance);
    NullArbitrage res;
    if (static_cast<int>(null_classes.size()) == instance.num_classes()) {
        res.kind = NullArbitrage::Kind::DegenerateMarket;
        return res;
    }
    const PortfolioVars pv = make_vars(instance);
    for (int target = 0; target < instance.num_classes(); ++target) {
        if (in_sorted(null_classes, target)) continue;
        LinearProgram lp(Sense::Min, pv.nvars);
        std::vector<Rational> v_row(pv.nvars, Rational(0));
        v_row[0] = 1;
        lp.add_row(v_row, Rel::Eq, Rational(0));
        for (int c = 0; c < instance.num_classes(); ++c) {
            if (in_sorted(null_classes, c) && c != target) continue;
            lp.add_row(terminal_row(instance, pv, c), Rel::Ge,
                       Rational(c == target ? 1 : 0));
        }
        const Outcome oc = lp::solve(lp);
        if (oc.status == Status::Optimal) {
            res.kind = NullArbitrage::Kind::Found;
            res.portfolio = portfolio_from(instance, pv, oc.x);
            res.at_class = target;
            return res;
        }
    }
    res.kind = NullArbitrage::Kind::None;
    return res;
}

}  // namespace tw
