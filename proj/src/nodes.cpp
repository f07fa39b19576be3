#include "tw/nodes.hpp"

#include <algorithm>

namespace tw {

NodeClass classify_node(const Instance& instance, int node_id) {
    const Node& node = instance.nodes[node_id];
    if (node.depth >= instance.depth || node.children.empty()) {
        // Eventually-constant semantics: the only continuation is the value
        // itself.
        return NodeClass{NodeClass::Kind::Flat, 0};
    }
    bool has_up = false, has_down = false, has_flat = false;
    for (int child : node.children) {
        const Rational inc = instance.nodes[child].value - node.value;
        if (inc > 0) has_up = true;
        else if (inc < 0) has_down = true;
        else has_flat = true;
    }
    if (!has_up && !has_down) return NodeClass{NodeClass::Kind::Flat, 0};
    if (has_up && has_down) return NodeClass{NodeClass::Kind::UpDown, 0};
    const int dir = has_up ? 1 : -1;
    if (has_flat) return NodeClass{NodeClass::Kind::ArbitrageTypeI, dir};
    return NodeClass{NodeClass::Kind::ArbitrageTypeII, dir};
}

std::vector<NodeReportRow> classify_all(const Instance& instance) {
    std::vector<NodeReportRow> out;
    out.reserve(instance.nodes.size());
    for (const auto& node : instance.nodes) {
        NodeReportRow row;
        row.node_id = node.id;
        row.depth = node.depth;
        row.value = node.value;
        row.cls = classify_node(instance, node.id);
        row.truncation_induced =
            row.cls.is_type2() && instance.on_family_limit_path(node.id);
        out.push_back(std::move(row));
    }
    return out;
}

std::optional<int> find_type2_node(const Instance& instance, int upto,
                                   bool ignore_truncation) {
    for (const auto& node : instance.nodes) {
        if (node.depth >= upto) continue;
        const NodeClass cls = classify_node(instance, node.id);
        if (!cls.is_type2()) continue;
        if (ignore_truncation && instance.on_family_limit_path(node.id)) continue;
        return node.id;
    }
    return std::nullopt;
}

ReductionReport compute_reduction(const Instance& instance, int n) {
    if (n < 1) throw MarketError("reduction depth must be >= 1");
    ReductionReport report;
    report.n = n;
    report.tau.assign(instance.num_classes(), n + 1);
    for (int c = 0; c < instance.num_classes(); ++c) {
        for (int j = 1; j <= n; ++j) {
            // Depths past the tree are flat, so tau can only fire within it.
            const int d = std::min(j - 1, instance.depth);
            const NodeClass cls = classify_node(instance, instance.node_of(c, d));
            if (cls.is_type1() && instance.increment(c, j - 1) != 0) {
                report.tau[c] = j;
                break;
            }
        }
        if (report.tau[c] <= n) report.removed.push_back(c);
    }
    if (static_cast<int>(report.removed.size()) < instance.num_classes()) {
        std::vector<Trajectory> kept;
        std::vector<std::string> names;
        for (int c = 0; c < instance.num_classes(); ++c) {
            if (report.tau[c] > n) {
                kept.push_back(instance.classes[c]);
                names.push_back(instance.class_names[c]);
            }
        }
        std::vector<TrajectoryFamily> fam{ExplicitFamily{kept, names}};
        Regime regime = instance.regime;
        Rational s0 = instance.s0;
        report.reduced = build_instance(s0, std::move(fam), regime);
    }
    return report;
}

bool verify_reduction_classes(const Instance& instance, int n) {
    const ReductionReport report = compute_reduction(instance, n);
    if (!report.reduced.has_value()) return true;  // vacuous: nothing survives
    const Instance& red = *report.reduced;
    for (int rc = 0; rc < red.num_classes(); ++rc) {
        const int oc = instance.class_index(red.class_names[rc]);
        for (int i = 0; i <= n - 1; ++i) {
            const NodeClass before =
                classify_node(instance, instance.node_of(oc, std::min(i, instance.depth)));
            const NodeClass after =
                classify_node(red, red.node_of(rc, std::min(i, red.depth)));
            if (before.is_type2()) return false;  // outside the law's hypothesis
            if (before.is_updown() && !after.is_updown()) return false;
            if ((before.is_flat() || before.is_type1()) && !after.is_flat())
                return false;
        }
    }
    return true;
}

SimplePortfolio free_positive_portfolio(const Instance& instance) {
    SimplePortfolio pf;
    pf.initial = 0;
    pf.maturity = std::min(instance.regime.maturity_cap, instance.depth);
    for (const auto& node : instance.nodes) {
        if (node.depth >= pf.maturity) continue;
        const NodeClass cls = classify_node(instance, node.id);
        const bool eligible =
            cls.is_type1() || (cls.is_type2() && instance.on_family_limit_path(node.id));
        if (eligible) pf.holdings[node.id] = Rational(cls.direction);
    }
    return pf;
}

bool check_value_nonnegative(const Instance& instance, const SimplePortfolio& pf) {
    for (int c = 0; c < instance.num_classes(); ++c) {
        for (int j = 0; j <= pf.maturity; ++j) {
            if (wealth(instance, pf, c, j) < 0) return false;
        }
    }
    return true;
}

}  // namespace tw
