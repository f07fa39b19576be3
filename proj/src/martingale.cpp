#include "tw/martingale.hpp"

#include <algorithm>

#include "tw/linprog.hpp"
#include "tw/nodes.hpp"

namespace tw {

namespace {

using lp::LinearProgram;
using lp::Outcome;
using lp::Rel;
using lp::Sense;
using lp::Status;

Rational node_mass(const Instance& inst, const MartingaleMeasure& q, int node_id) {
    Rational mass = 0;
    for (int c : inst.nodes[node_id].classes) mass += q.weights[c];
    return mass;
}

}  // namespace

MeasureConstruction construct_measure(const Instance& instance) {
    MeasureConstruction out;
    out.measure.weights.assign(instance.num_classes(), Rational(0));
    // Conditional mass per node, filled root-down.
    std::vector<Rational> mass(instance.nodes.size(), Rational(0));
    mass[0] = 1;
    for (const auto& node : instance.nodes) {
        if (mass[node.id] == 0) continue;
        if (node.depth >= instance.depth || node.children.empty()) {
            // Depth-D nodes are in bijection with the classes: two classes
            // sharing the full prefix are the same eventually-constant path.
            out.measure.weights[node.classes.front()] += mass[node.id];
            continue;
        }
        const NodeClass cls = classify_node(instance, node.id);
        if (cls.is_type2()) {
            out.ok = false;
            out.type2_node = node.id;
            return out;
        }
        if (cls.is_flat() || cls.is_type1()) {
            for (int child : node.children) {
                if (instance.nodes[child].value == node.value) {
                    mass[child] = mass[node.id];
                    break;
                }
            }
            continue;
        }
        // Up-down: closest child above and closest below the node value.
        int up = -1, down = -1;
        for (int child : node.children) {
            const Rational v = instance.nodes[child].value;
            if (v > node.value && (up < 0 || v < instance.nodes[up].value)) up = child;
            if (v < node.value && (down < 0 || v > instance.nodes[down].value))
                down = child;
        }
        const Rational vu = instance.nodes[up].value;
        const Rational vd = instance.nodes[down].value;
        const Rational p_up = (node.value - vd) / (vu - vd);
        mass[up] = mass[node.id] * p_up;
        mass[down] = mass[node.id] * (1 - p_up);
    }
    out.ok = true;
    return out;
}

bool verify_martingale(const Instance& instance, const MartingaleMeasure& measure) {
    if (static_cast<int>(measure.weights.size()) != instance.num_classes()) return false;
    Rational total = 0;
    for (const auto& w : measure.weights) {
        if (w < 0) return false;
        total += w;
    }
    if (total != 1) return false;
    for (const auto& node : instance.nodes) {
        if (node.depth >= instance.depth) continue;
        if (node_mass(instance, measure, node.id) == 0) continue;
        Rational drift = 0;
        for (int child : node.children) {
            drift += node_mass(instance, measure, child) *
                     (instance.nodes[child].value - node.value);
        }
        if (drift != 0) return false;
    }
    return true;
}

Rational expectation(const Instance& instance, const MartingaleMeasure& measure,
                     const PayoffValues& payoff) {
    if (static_cast<int>(measure.weights.size()) != instance.num_classes() ||
        static_cast<int>(payoff.values.size()) != instance.num_classes())
        throw MarketError("measure/payoff not indexed by the instance classes");
    Rational e = 0;
    for (int c = 0; c < instance.num_classes(); ++c)
        e += measure.weights[c] * payoff.values[c];
    return e;
}

PriceResult dual_price(const Instance& instance, const PayoffValues& payoff,
                       bool restrict_off_null) {
    std::vector<int> null_classes;
    if (restrict_off_null) null_classes = null_set(instance);
    const int k = instance.num_classes();
    LinearProgram lp(Sense::Max, k);
    for (int c = 0; c < k; ++c) {
        lp.c[c] = payoff.values[c];
        lp.nonneg[c] = true;
    }
    {
        std::vector<Rational> ones(k, Rational(1));
        lp.add_row(std::move(ones), Rel::Eq, Rational(1));
    }
    for (int c : null_classes) {
        std::vector<Rational> row(k, Rational(0));
        row[c] = 1;
        lp.add_row(std::move(row), Rel::Eq, Rational(0));
    }
    const int horizon = instance.hedge_depth();
    for (const auto& node : instance.nodes) {
        if (node.depth >= horizon) continue;
        std::vector<Rational> row(k, Rational(0));
        for (int c : node.classes) row[c] = instance.increment(c, node.depth);
        lp.add_row(std::move(row), Rel::Eq, Rational(0));
    }
    const Outcome oc = lp::solve(lp);
    PriceResult res;
    if (oc.status == Status::Optimal) {
        res.kind = PriceResult::Kind::Finite;
        res.value = oc.value;
        res.dual_weights = oc.x;
        return res;
    }
    if (oc.status != Status::Infeasible)
        throw std::logic_error("dual price program cannot be unbounded");
    res.kind = PriceResult::Kind::MinusInfinity;
    res.arbitrage = detect_strict_mia(instance);
    return res;
}

DualityBoundsReport check_duality_bounds(const Instance& instance,
                                         const MartingaleMeasure& measure,
                                         const PayoffValues& payoff) {
    DualityBoundsReport report;
    report.measure_verified = verify_martingale(instance, measure);
    if (!report.measure_verified) {
        report.pass = false;
        report.violated = "measure fails martingale verification";
        return report;
    }
    const PayoffValues abs = payoff.abs();
    report.e_f = expectation(instance, measure, payoff);
    report.e_abs = expectation(instance, measure, abs);
    report.sigma_f = sigma_bar(instance, payoff);
    report.sigma_abs = sigma_bar(instance, abs);
    report.norm_f = norm_value(instance, payoff);
    report.pass = true;
    if (!report.sigma_f.finite() || report.e_f > report.sigma_f.value) {
        report.pass = false;
        report.violated = "E_Q[f] <= sigma_bar(f)";
        return report;
    }
    if (!report.sigma_abs.finite() || report.e_abs > report.sigma_abs.value) {
        report.pass = false;
        report.violated = "E_Q[|f|] <= sigma_bar(|f|)";
        return report;
    }
    if (report.sigma_abs.value > report.norm_f) {
        report.pass = false;
        report.violated = "sigma_bar(|f|) <= norm(f)";
        return report;
    }
    return report;
}

}  // namespace tw
