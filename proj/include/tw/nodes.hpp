#pragma once

#include <optional>
#include <vector>

#include "tw/market.hpp"
#include "tw/portfolio.hpp"

namespace tw {

/// One-step behaviour of a node. An arbitrage node moves weakly in one
/// direction with at least one strict move; type I keeps a flat
/// continuation available, type II does not.
struct NodeClass {
    enum class Kind { Flat, ArbitrageTypeI, ArbitrageTypeII, UpDown };
    Kind kind = Kind::Flat;
    int direction = 0;  // +1 or -1 for arbitrage nodes

    bool is_type1() const { return kind == Kind::ArbitrageTypeI; }
    bool is_type2() const { return kind == Kind::ArbitrageTypeII; }
    bool is_flat() const { return kind == Kind::Flat; }
    bool is_updown() const { return kind == Kind::UpDown; }
};

/// Classifies from the node value and the set of child values. Nodes at or
/// beyond a class's stabilization time carry the single constant child, so
/// depths past the tree are flat by construction.
NodeClass classify_node(const Instance& instance, int node_id);

/// Classification table with the truncation label: a type-II node flagged
/// truncation-induced sits on a delayed-jump family's limit path, where the
/// untruncated family would supply the constant child.
struct NodeReportRow {
    int node_id = 0;
    int depth = 0;
    Rational value;
    NodeClass cls;
    bool truncation_induced = false;
};
std::vector<NodeReportRow> classify_all(const Instance& instance);

/// True when some node at depth < upto is type II (raw classification);
/// truncation-induced ones count unless `ignore_truncation`.
std::optional<int> find_type2_node(const Instance& instance, int upto,
                                   bool ignore_truncation = false);

/// tau(S) = first j in 1..n whose predecessor node is an arbitrage node of
/// type I with a strict move on S, capped at n+1. N_n collects the classes
/// with tau <= n; `reduced` is the instance without them.
struct ReductionReport {
    int n = 0;
    std::vector<int> tau;           // per class, in 1..n+1
    std::vector<int> removed;       // class ids with tau <= n, ascending
    std::optional<Instance> reduced;  // empty when every class is removed
};

ReductionReport compute_reduction(const Instance& instance, int n);

/// Checks the reclassification law on the reduced set: surviving nodes up
/// to depth n-1 stay up-down when they were up-down and become flat when
/// they were flat or type I. A surviving type-II node before depth n is
/// reported as a violation.
bool verify_reduction_classes(const Instance& instance, int n);

/// Zero-endowment portfolio holding the arbitrage direction at every type-I
/// node (including truncation-induced type-II nodes, whose untruncated
/// continuation is type I) at depths < M. Terminal wealth is nonnegative
/// everywhere and strictly positive exactly on the classes that move
/// strictly out of such a node before the cap.
SimplePortfolio free_positive_portfolio(const Instance& instance);

/// True iff the value process stays >= 0 for every class at every time up
/// to the portfolio's maturity.
bool check_value_nonnegative(const Instance& instance, const SimplePortfolio& pf);

}  // namespace tw
