#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tw/nodes.hpp"
#include "tw/scenarios.hpp"
#include "tw/superhedge.hpp"

using namespace tw;
using twtest::Q;
using twtest::path;

namespace {

int plateau_node(const Instance& inst, int depth) {
    // node (1,2,...,2) with `depth` twos
    int id = 0;
    for (int d = 0; d < depth; ++d) {
        int next = -1;
        for (int child : inst.nodes[id].children)
            if (inst.nodes[child].value == Q(2)) next = child;
        REQUIRE(next >= 0);
        id = next;
    }
    return id;
}

}  // namespace

TEST_CASE("node classification on the scenario trees") {
    const Instance scn_c = make_scenario("SCN-C", 4, 3);
    CHECK(classify_node(scn_c, 0).is_updown());

    const Instance scn_b = make_scenario("SCN-B", 6, 3);
    const NodeClass up1 = classify_node(scn_b, plateau_node(scn_b, 1));
    CHECK(up1.is_type1());
    CHECK(up1.direction == 1);

    // the deepest plateau node lost its constant continuation to truncation
    const int deepest = plateau_node(scn_b, 6);
    const NodeClass cls = classify_node(scn_b, deepest);
    CHECK(cls.is_type2());
    CHECK(cls.direction == 1);
    // the classification table flags it; genuine type-I nodes stay unflagged
    bool deepest_flagged = false, shallow_flagged = false;
    for (const auto& row : classify_all(scn_b)) {
        if (row.node_id == deepest) deepest_flagged = row.truncation_induced;
        if (row.node_id == plateau_node(scn_b, 1)) shallow_flagged = row.truncation_induced;
    }
    CHECK(deepest_flagged);
    CHECK_FALSE(shallow_flagged);

    // flat node: the constant path in SCN-C
    const Instance deep_c = make_scenario("SCN-C", 4, 6);
    const int z = deep_c.class_index("Z");
    CHECK(classify_node(deep_c, deep_c.node_of(z, 1)).is_flat());
    // beyond the stabilization time everything is flat
    CHECK(classify_node(deep_c, deep_c.node_of(z, deep_c.depth)).is_flat());
}

TEST_CASE("classification depends only on the set of child values") {
    std::vector<TrajectoryFamily> a{
        ExplicitFamily{{path({Q(1), Q(0)}), path({Q(1), Q(2)})}, {}}};
    std::vector<TrajectoryFamily> b{
        ExplicitFamily{{path({Q(1), Q(0)}), path({Q(1), Q(2)}),
                        path({Q(1), Q(2), Q(3)})},
                       {}}};
    const Instance ia = build_instance(Q(1), std::move(a), Regime{1, 1});
    const Instance ib = build_instance(Q(1), std::move(b), Regime{1, 1});
    CHECK(classify_node(ia, 0).kind == classify_node(ib, 0).kind);
}

TEST_CASE("reduction removes the classes that jump out of type-I nodes") {
    const Instance scn_b = make_scenario("SCN-B", 6, 8);
    const ReductionReport report = compute_reduction(scn_b, 6);
    std::vector<std::string> removed;
    for (int c : report.removed) removed.push_back(scn_b.class_names[c]);
    // U6 exits a truncation-induced type-II node, so the stopping time does
    // not fire for it; U1..U5 jump out of genuine type-I nodes.
    CHECK(removed == std::vector<std::string>{"U1", "U2", "U3", "U4", "U5"});
    CHECK(report.tau[scn_b.class_index("U1")] == 2);
    CHECK(report.tau[scn_b.class_index("U6")] == 7);
    CHECK(report.tau[scn_b.class_index("D3")] == 7);
    REQUIRE(report.reduced.has_value());
    CHECK(report.reduced->num_classes() == 7);
    CHECK(verify_reduction_classes(scn_b, 6));

    const Instance scn_a = make_scenario("SCN-A", 0, 0);
    const ReductionReport ra = compute_reduction(scn_a, 1);
    CHECK(ra.removed.empty());
    CHECK(verify_reduction_classes(scn_a, 1));

    std::vector<TrajectoryFamily> constant{ExplicitFamily{{path({Q(1)})}, {"Z"}}};
    const Instance cz = build_instance(Q(1), std::move(constant), Regime{1, 2});
    const ReductionReport rc = compute_reduction(cz, 3);
    CHECK(rc.removed.empty());
    CHECK(rc.tau == std::vector<int>{4});
}

TEST_CASE("a surviving type-II node is reported as a violation") {
    // strictly increasing one-step market: the root is type II and survives
    std::vector<TrajectoryFamily> fams{
        ExplicitFamily{{path({Q(1), Q(2)}), path({Q(1), Q(3)})}, {}}};
    const Instance inst = build_instance(Q(1), std::move(fams), Regime{1, 1});
    CHECK_FALSE(verify_reduction_classes(inst, 1));
}

TEST_CASE("reduction law holds on random instances without early type-II nodes") {
    std::mt19937_64 rng(4242);
    int checked = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const Instance inst = twtest::random_instance(rng);
        for (int n = 1; n <= inst.depth; ++n) {
            if (find_type2_node(inst, n).has_value()) continue;
            CHECK(verify_reduction_classes(inst, n));
            ++checked;
        }
    }
    CHECK(checked > 50);
}

TEST_CASE("free positive portfolio captures early jumps") {
    const Instance scn_b = make_scenario("SCN-B", 6, 3);
    const SimplePortfolio pf = free_positive_portfolio(scn_b);
    CHECK(pf.initial == Q(0));
    for (int c = 0; c < scn_b.num_classes(); ++c) {
        const Rational w = terminal_wealth(scn_b, pf, c);
        const std::string& name = scn_b.class_names[c];
        if (name == "U1" || name == "U2") {
            CHECK(w == Q(2));
        } else {
            CHECK(w == Q(0));
        }
    }
    CHECK(check_value_nonnegative(scn_b, pf));

    const Instance scn_a = make_scenario("SCN-A", 0, 0);
    CHECK(free_positive_portfolio(scn_a).holdings.empty());

    // the deepest plateau node counts: its untruncated continuation is type I
    const Instance scn_c = make_scenario("SCN-C", 4, 5);
    const SimplePortfolio pc = free_positive_portfolio(scn_c);
    for (int c = 0; c < scn_c.num_classes(); ++c) {
        const Rational w = terminal_wealth(scn_c, pc, c);
        const std::string& name = scn_c.class_names[c];
        if (name[0] == 'U') {
            CHECK(w == Q(2));
        } else {
            CHECK(w == Q(0));
        }
    }
    CHECK(check_value_nonnegative(scn_c, pc));
}

TEST_CASE("value process nonnegativity check") {
    const Instance scn_a = make_scenario("SCN-A", 0, 0);
    SimplePortfolio lose;
    lose.initial = 0;
    lose.maturity = 1;
    lose.holdings[0] = Q(1);
    CHECK_FALSE(check_value_nonnegative(scn_a, lose));  // loses on T-

    SimplePortfolio zero;
    zero.initial = 0;
    zero.maturity = 1;
    CHECK(check_value_nonnegative(scn_a, zero));
}

TEST_CASE("free positive portfolios replicate their payoff at price zero") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 60; ++trial) {
        const Instance inst = twtest::random_instance(rng);
        const SimplePortfolio pf = free_positive_portfolio(inst);
        CHECK(check_value_nonnegative(inst, pf));
        std::vector<Rational> terminal;
        for (int c = 0; c < inst.num_classes(); ++c)
            terminal.push_back(terminal_wealth(inst, pf, c));
        const Replication rep =
            replicate(inst, payoff_from_values(std::move(terminal), inst.depth));
        if (rep.status == Replication::Status::Replicable) CHECK(rep.price == Q(0));
    }
}
