#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tw/rational.hpp"

namespace tw {

/// Input or semantic problem with user-supplied data (bad rational, mismatched
/// start values, unknown class, ...).
class MarketError : public std::runtime_error {
  public:
    explicit MarketError(const std::string& what) : std::runtime_error(what) {}
};

/// Eventually-constant price path stored as breakpoints (time, value).
/// The price at time t is the value of the last breakpoint with time <= t;
/// the final value persists forever. Canonical form: first time is 0, times
/// strictly increase, consecutive values differ.
struct Trajectory {
    std::vector<std::pair<int, Rational>> breakpoints;

    Rational at(int t) const;
    int stabilization_time() const { return breakpoints.back().first; }
    Rational start() const { return breakpoints.front().second; }
    Rational final_value() const { return breakpoints.back().second; }

    /// Builds the canonical form from values at times 0..k-1 (last persists).
    static Trajectory from_dense(std::span<const Rational> values);
    std::vector<Rational> dense(int upto) const;  // values at times 0..upto

    bool operator==(const Trajectory& other) const = default;
};

struct ExplicitFamily {
    std::vector<Trajectory> members;
    std::vector<std::string> names;  // optional, parallel to members
};

/// Family S(n), n = 1, 2, ...: follows `prefix` at times 0..len-1, holds
/// `plateau` from time len through time n, jumps to `jump_to` at time n+1 and
/// stays there. The n-th member therefore keeps the plateau for exactly n
/// periods before jumping. Its limit path holds the plateau forever.
struct DelayedJumpFamily {
    std::vector<Rational> prefix;  // nonempty; values before the plateau
    Rational plateau;
    Rational jump_to;
    std::string name_stem;  // members are named <stem>1, <stem>2, ...

    Trajectory member(int n) const;
    Trajectory limit() const;
};

using TrajectoryFamily = std::variant<ExplicitFamily, DelayedJumpFamily>;

/// Finite surrogate for the infinite model: N truncates parametrized
/// families, M caps portfolio maturities. An instance is "exact" when M is
/// at least every stabilization time (the operators then match the finite
/// trajectory set verbatim); otherwise it emulates jumps beyond the horizon.
struct Regime {
    int truncation = 1;    // N
    int maturity_cap = 1;  // M >= 1
};

struct Node {
    int id = 0;
    int depth = 0;
    int parent = -1;
    Rational value;               // S_depth
    std::vector<int> children;    // node ids at depth+1
    std::vector<int> classes;     // member class ids, ascending
};

/// Compiled finite trajectory set: deduplicated classes plus the prefix node
/// tree to depth = max stabilization time. Immutable after construction.
struct Instance {
    Rational s0;
    std::vector<Trajectory> classes;
    std::vector<std::string> class_names;
    Regime regime;
    std::vector<TrajectoryFamily> families;  // generating families, for metadata

    std::vector<Node> nodes;               // nodes[0] is the root
    std::vector<std::vector<int>> class_nodes;  // class id x depth -> node id
    int depth = 0;                          // tree depth D
    bool exact = false;                     // regime.maturity_cap >= D

    int num_classes() const { return static_cast<int>(classes.size()); }
    const Node& root() const { return nodes[0]; }
    int node_of(int class_id, int depth_j) const;
    Rational increment(int class_id, int step) const;  // S_{step+1} - S_step
    /// Nodes at depth >= D have a single constant continuation; the tree
    /// only stores depths 0..D. Effective hedging depth for LPs:
    int hedge_depth() const { return std::min(regime.maturity_cap, depth); }
    std::vector<Rational> path_of(int class_id) const;  // values 0..depth
    int class_index(const std::string& name) const;     // -1 if unknown

    /// True when the node sits on a delayed-jump family's limit path, so
    /// the untruncated family would supply the constant continuation. A
    /// type-II node with this property is a truncation artifact, not
    /// genuine one-step arbitrage structure.
    bool on_family_limit_path(int node_id) const;
};

std::vector<Trajectory> expand_family(const TrajectoryFamily& family, int truncation);
std::vector<std::string> family_member_names(const TrajectoryFamily& family, int truncation);

Instance build_instance(const Rational& s0, std::vector<TrajectoryFamily> families,
                        const Regime& regime);

/// Sub-instance of the classes sharing the depth-j prefix of `class_id`,
/// prices unshifted.
Instance conditional_space(const Instance& instance, int class_id, int j);

/// Conditional space re-indexed so old time j becomes time 0; the maturity
/// cap is kept as configured so nodewise checks probe the same hedging power.
Instance shifted_space(const Instance& instance, int class_id, int j);

struct CompletenessResult {
    bool complete = true;
    std::optional<Trajectory> witness;  // a limit path missing from the set
};

/// Closure under diagonal limits of prefix-consistent sequences. Finite
/// explicit sets are always complete; a delayed-jump family needs its
/// plateau-forever limit to be a member of some explicit family.
CompletenessResult check_complete(std::span<const TrajectoryFamily> families);
CompletenessResult check_complete(const Instance& instance);

}  // namespace tw
