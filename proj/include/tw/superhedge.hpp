#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tw/market.hpp"
#include "tw/payoff.hpp"
#include "tw/portfolio.hpp"

namespace tw {

/// Node-indexed sum of a generalized portfolio's holdings. Fails when a
/// type-II node precedes depth n (the aggregation law's hypothesis).
struct AggregationResult {
    bool ok = false;
    int type2_node = -1;
    std::unordered_map<int, Rational> holdings;
};
AggregationResult aggregate(const Instance& instance, const GeneralizedPortfolio& gp,
                            int n);

/// Exact replication: terminal wealth equals the payoff on every class.
/// The initial endowment is the hedging price I(f); it is unique exactly
/// when the law of one price holds.
struct Replication {
    enum class Status { Replicable, NotReplicable, PriceNotUnique };
    Status status = Status::NotReplicable;
    Rational price;
    SimplePortfolio portfolio;

    bool ok() const { return status == Status::Replicable; }
};
Replication replicate(const Instance& instance, const PayoffValues& payoff);

/// Law of one price: no portfolio with V = -1 replicates 0.
bool check_lop(const Instance& instance);
/// Monotonicity: no portfolio with V = -1 superhedges 0.
bool check_mon(const Instance& instance);

/// Null set A: classes coverable at zero cost by a positive portfolio
/// (V = 0, terminal >= 0 everywhere, >= 1 at the class). Monotone in M.
std::vector<int> null_set(const Instance& instance);

struct NullSetReport {
    std::vector<int> classes;                   // members of A, ascending
    std::vector<SimplePortfolio> certificates;  // parallel capture portfolios
};
NullSetReport null_set_report(const Instance& instance);

/// Superhedging price with certificates. The dual weights form a
/// probability on the classes, fair at every node the hedging horizon can
/// see; on exact regimes that is precisely a martingale measure.
struct PriceResult {
    enum class Kind { Finite, MinusInfinity, PlusInfinity };
    Kind kind = Kind::Finite;
    Rational value;
    std::optional<SimplePortfolio> hedge;
    std::optional<std::vector<Rational>> dual_weights;
    std::optional<SimplePortfolio> arbitrage;  // witness when infinite

    bool finite() const { return kind == Kind::Finite; }
};

/// Outer integral: cheapest single portfolio with terminal >= payoff off
/// the null set. Minus infinity (with a strict-arbitrage witness) when the
/// dual is infeasible, in which case every payoff prices to minus infinity.
PriceResult sigma_bar(const Instance& instance, const PayoffValues& payoff);

/// Inner integral: -sigma_bar(-f).
PriceResult sigma_under(const Instance& instance, const PayoffValues& payoff);

/// Positive-portfolio superhedge of a nonnegative payoff: V >= 0, terminal
/// >= payoff off the null set and >= 0 on every class. Induces the norm.
PriceResult i_bar(const Instance& instance, const PayoffValues& payoff);

Rational norm_value(const Instance& instance, const PayoffValues& payoff);

/// i_bar computed as a sum of k positive components; equals i_bar for all
/// k >= 1 (validates collapsing countable sums into one portfolio).
Rational i_bar_sum_value(const Instance& instance, const PayoffValues& payoff, int k);

/// The hedging integral: defined when inner and outer prices agree.
struct KIntegral {
    bool integrable = false;
    Rational value;
    PriceResult outer;
    PriceResult inner;
};
KIntegral integral_K(const Instance& instance, const PayoffValues& payoff);

/// Leinert condition: sigma_bar(0) = 0, i.e. a probability on the classes
/// off A that is fair at every hedgeable node exists.
bool check_L(const Instance& instance);
/// Leinert condition at every node: check_L on every shifted space.
bool check_L_nodewise(const Instance& instance);

/// Sampled witness search for the continuity condition: asserts
/// i_bar = sigma_bar on class indicators, straddles at each node, and
/// seeded random positive payoffs. Never claims the condition for the
/// infinite model.
struct KCheck {
    bool pass = true;
    std::string counterexample_label;
    std::optional<PayoffValues> counterexample;
    Rational ibar_value;
    Rational sigma_value;  // meaningful only when finite
    bool sigma_finite = true;
};
KCheck check_K(const Instance& instance, int random_payoffs = 8,
               unsigned long long seed = 1);

/// Sufficient certificate: complete family and no genuine (non-truncation)
/// type-II node. Certifies the nodewise Leinert and continuity conditions.
bool check_nK_sufficient(const Instance& instance);

/// Strict model-independent arbitrage: V = 0 with terminal >= 1 on every
/// class. Exists exactly when check_L fails.
std::optional<SimplePortfolio> detect_strict_mia(const Instance& instance);

/// Arbitrage relative to the null sets: V = 0, terminal >= 0 off A and
/// >= 1 at some class off A. When A swallows every class the market is
/// degenerate (the norm of 1 is zero) and the search is moot.
struct NullArbitrage {
    enum class Kind { None, Found, DegenerateMarket };
    Kind kind = Kind::None;
    std::optional<SimplePortfolio> portfolio;
    int at_class = -1;
};
NullArbitrage detect_null_arbitrage(const Instance& instance);

}  // namespace tw
