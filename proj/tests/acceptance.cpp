// Acceptance suite: runs every criterion at its stated (exact) tolerance and
// prints one pass/fail line per criterion. Exits nonzero on any failure.

#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "support.hpp"
#include "tw/json_io.hpp"
#include "tw/linprog.hpp"
#include "tw/martingale.hpp"
#include "tw/nodes.hpp"
#include "tw/scenarios.hpp"
#include "tw/superhedge.hpp"
#include "tw/workbench.hpp"

using namespace tw;
using twtest::Q;

namespace {

struct Gate {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& what) {
        if (!condition && ok) {
            ok = false;
            detail = what;
        }
    }
};

PayoffValues indicator_of(const Instance& inst, const std::string& name) {
    std::vector<Rational> v(inst.num_classes(), Q(0));
    v[inst.class_index(name)] = 1;
    return payoff_from_values(std::move(v), inst.depth);
}

PayoffValues values_of(const Instance& inst, const std::string& expr) {
    return evaluate_payoff(Payoff::parse(expr), inst);
}

// ---- criterion bodies -------------------------------------------------------

void criterion_1(Gate& g) {
    // emulation regime: i_bar = sigma_bar = 1/2 through the command surface
    cli::Options opt;
    opt.command = "price";
    opt.scenario = "SCN-C";
    opt.truncation = 4;
    opt.maturity_cap = 3;
    opt.op = "ibar";
    opt.payoff = "ind(S[1] < 1/2)";
    const cli::CommandResult ibar_out = cli::run(opt);
    g.require(ibar_out.exit_code == 0 &&
                  ibar_out.output.find("i_bar(f) = 1/2") != std::string::npos,
              "CLI ibar on SCN-C(4, M=3) did not print 1/2");
    opt.op = "sigmabar";
    const cli::CommandResult sbar_out = cli::run(opt);
    g.require(sbar_out.exit_code == 0 &&
                  sbar_out.output.find("sigma_bar(f) = 1/2") != std::string::npos,
              "CLI sigmabar on SCN-C(4, M=3) did not print 1/2");

    const Instance emu = make_scenario("SCN-C", 4, 3);
    const PayoffValues down = indicator_of(emu, "D");
    const PriceResult sb = sigma_bar(emu, down);
    g.require(sb.finite() && sb.value == Q(1, 2), "sigma_bar != 1/2");
    g.require(sb.dual_weights.has_value(), "sigma_bar carries no dual certificate");
    if (sb.dual_weights) {
        Rational expect = 0, total = 0;
        for (int c = 0; c < emu.num_classes(); ++c) {
            expect += (*sb.dual_weights)[c] * down.values[c];
            total += (*sb.dual_weights)[c];
        }
        g.require(expect == sb.value && total == 1,
                  "dual certificate does not certify the price");
    }
    g.require(i_bar(emu, down).value == Q(1, 2), "i_bar != 1/2");

    const Instance full = make_scenario("SCN-C", 4, 6);
    g.require(sigma_bar(full, indicator_of(full, "D")).value == Q(0),
              "full regime sigma_bar != 0");
    g.require(i_bar(full, indicator_of(full, "D")).value == Q(0),
              "full regime i_bar != 0");

    const auto sweep = cli::regime_sweep("SCN-C", Payoff::parse("ind(S[1] < 1/2)"),
                                         {{3, 4}, {6, 4}});
    g.require(sweep.rows.size() == 2 && sweep.rows[0].sigma.value == Q(1, 2) &&
                  *sweep.rows[0].ibar == Q(1, 2) && sweep.rows[1].sigma.value == Q(0) &&
                  *sweep.rows[1].ibar == Q(0),
              "sweep does not exhibit the 1/2 vs 0 rows");
}

void criterion_2(Gate& g) {
    const Instance scn_a = make_scenario("SCN-A", 0, 0);
    const Replication straddle = replicate(scn_a, values_of(scn_a, "abs(S[1]-1)"));
    g.require(straddle.status == Replication::Status::NotReplicable,
              "straddle unexpectedly replicable");
    const Replication fwd = replicate(scn_a, values_of(scn_a, "S[1]-1"));
    g.require(fwd.ok() && fwd.price == Q(0), "forward does not replicate at V=0");
}

void criterion_3(Gate& g) {
    const Instance tight = make_scenario("SCN-B", 6, 3);
    std::vector<std::string> null_names;
    for (int c : null_set(tight)) null_names.push_back(tight.class_names[c]);
    g.require(null_names == std::vector<std::string>{"U1", "U2"},
              "null set != {U1, U2}");
    g.require(check_L(tight), "check_L false in the tight regime");
    const PayoffValues straddle = values_of(tight, "abs(S[1]-1)");
    g.require(sigma_bar(tight, straddle).value == Q(1), "sigma_bar(straddle) != 1");
    g.require(i_bar(tight, straddle).value == Q(1), "i_bar(straddle) != 1");

    const Instance lax = make_scenario("SCN-B", 6, 8);
    g.require(!check_L(lax), "check_L true in the full regime");
    const auto mia = detect_strict_mia(lax);
    g.require(mia.has_value(), "no strict arbitrage portfolio found");
    if (mia) {
        g.require(mia->initial == Q(0), "witness has nonzero endowment");
        bool covers = true;
        for (int c = 0; c < lax.num_classes(); ++c)
            covers = covers && terminal_wealth(lax, *mia, c) >= Q(1);
        g.require(covers, "witness does not dominate 1 everywhere");
        // the witness must short the stock at the root and recoup on the
        // plateau nodes, the way the full-capture regime dictates
        g.require(mia->holding_at(0) < Q(0), "witness does not short at the root");
        const int u3 = lax.class_index("U3");
        Rational recoup = 0;
        for (int d = 1; d <= 6; ++d) recoup += mia->holding_at(lax.node_of(u3, d));
        g.require(recoup > Q(0), "witness holds nothing on the plateau");
    }
}

void criterion_4(Gate& g) {
    const Instance scn_c = make_scenario("SCN-C", 4, 3);
    MartingaleMeasure dz;
    dz.weights.assign(scn_c.num_classes(), Q(0));
    dz.weights[scn_c.class_index("Z")] = 1;
    g.require(verify_martingale(scn_c, dz), "point mass on Z fails verification");

    const MeasureConstruction mc = construct_measure(scn_c);
    g.require(!mc.ok && mc.type2_node >= 0,
              "construct_measure did not fail with a type-II node");

    const DualityBoundsReport rep =
        check_duality_bounds(scn_c, dz, indicator_of(scn_c, "D"));
    g.require(rep.pass, "duality bounds fail");
    g.require(rep.e_abs == Q(0) && rep.sigma_abs.finite() &&
                  rep.sigma_abs.value == Q(1, 2) && rep.norm_f == Q(1, 2),
              "chain is not 0 <= 1/2 <= 1/2");
}

void criterion_5(Gate& g) {
    std::mt19937_64 rng(50505);
    for (const char* id : {"SCN-D", "SCN-E"}) {
        const Instance inst = make_scenario(id, 0, 0);
        g.require(null_set(inst).empty(), std::string(id) + ": null set not empty");
        const MeasureConstruction mc = construct_measure(inst);
        g.require(mc.ok, std::string(id) + ": construction failed");
        if (!mc.ok) continue;
        g.require(verify_martingale(inst, mc.measure),
                  std::string(id) + ": constructed measure fails verification");
        for (int trial = 0; trial < 20; ++trial) {
            const PayoffValues f = twtest::random_payoff(rng, inst, false);
            const PriceResult primal = sigma_bar(inst, f);
            const PriceResult dual = dual_price(inst, f, false);
            g.require(primal.finite() && dual.finite() && primal.value == dual.value,
                      std::string(id) + ": strong duality gap");
            if (!primal.finite() || !dual.finite()) continue;
            // certificates: the hedge dominates the payoff on every class at
            // cost = value, and the dual measure is a verified martingale
            // measure attaining the same value
            bool dominates = primal.hedge.has_value() &&
                             primal.hedge->initial == primal.value;
            if (primal.hedge) {
                for (int c = 0; c < inst.num_classes(); ++c)
                    dominates = dominates &&
                                terminal_wealth(inst, *primal.hedge, c) >= f.values[c];
            }
            g.require(dominates, std::string(id) + ": hedge certificate broken");
            if (dual.dual_weights) {
                MartingaleMeasure q{*dual.dual_weights};
                g.require(verify_martingale(inst, q),
                          std::string(id) + ": dual measure not a martingale measure");
                g.require(expectation(inst, q, f) == dual.value,
                          std::string(id) + ": dual measure misses the optimum");
            }
            const KIntegral ki = integral_K(inst, f);
            const Rational eq = expectation(inst, mc.measure, f);
            if (ki.integrable && eq == dual.value)
                g.require(ki.value == eq,
                          std::string(id) + ": integral_K disagrees with E_Q");
        }
    }
}

void criterion_6(Gate& g) {
    std::mt19937_64 rng(60606);
    std::vector<Instance> instances;
    instances.push_back(make_scenario("SCN-A", 0, 0));
    instances.push_back(make_scenario("SCN-C", 4, 3));
    instances.push_back(make_scenario("SCN-D", 0, 0));
    instances.push_back(make_scenario("SCN-E", 0, 0));
    for (int trial = 0; trial < 20 && instances.size() < 10; ++trial) {
        Instance inst = twtest::random_instance(rng);
        if (check_L(inst)) instances.push_back(std::move(inst));
    }
    for (const Instance& inst : instances) {
        if (!check_L(inst)) {
            g.require(false, "fixture instance without (L)");
            continue;
        }
        for (int trial = 0; trial < 20; ++trial) {
            SimplePortfolio pf;
            pf.initial = Q(std::uniform_int_distribution<int>(-3, 3)(rng));
            pf.maturity = std::max(inst.hedge_depth(), 1);
            for (const auto& node : inst.nodes) {
                if (node.depth < pf.maturity)
                    pf.holdings[node.id] =
                        Q(std::uniform_int_distribution<int>(-2, 2)(rng));
            }
            std::vector<Rational> terminal;
            Rational low = 0;
            for (int c = 0; c < inst.num_classes(); ++c) {
                terminal.push_back(terminal_wealth(inst, pf, c));
                low = std::min(low, terminal.back());
            }
            const PayoffValues f = payoff_from_values(terminal, inst.depth);
            const Replication rep = replicate(inst, f);
            g.require(rep.ok() && rep.price == pf.initial,
                      "replication price differs from the generating endowment");
            g.require(sigma_bar(inst, f).value == pf.initial, "sigma_bar != I");
            g.require(sigma_under(inst, f).value == pf.initial, "sigma_under != I");
            PayoffValues shifted = f;
            for (auto& v : shifted.values) v -= low;
            g.require(i_bar(inst, shifted).value == pf.initial - low,
                      "i_bar != I on the positive shift");
        }
    }
}

void criterion_7(Gate& g) {
    std::mt19937_64 rng(70707);
    int instances = 0, law_checks = 0, lemma_checks = 0;
    // at least the 50 required instances; keep sampling until the
    // conditional checks have fired often enough to mean something
    while (instances < 50 || ((law_checks < 50 || lemma_checks < 30) && instances < 400)) {
        const Instance inst = twtest::random_instance(rng);
        ++instances;
        for (int n = 1; n <= inst.depth; ++n) {
            if (find_type2_node(inst, n).has_value()) continue;
            g.require(verify_reduction_classes(inst, n),
                      "reduction law violated without early type-II nodes");
            ++law_checks;
        }
        if (!find_type2_node(inst, inst.hedge_depth()).has_value()) {
            for (int trial = 0; trial < 3; ++trial) {
                const PayoffValues f = twtest::random_payoff(rng, inst, true);
                const PriceResult pr = i_bar(inst, f);
                if (!pr.hedge) continue;
                g.require(pr.hedge->initial >= Q(0),
                          "superhedge solution has negative endowment");
                g.require(check_value_nonnegative(inst, *pr.hedge),
                          "positive portfolio dips below zero mid-path");
                ++lemma_checks;
            }
        }
    }
    g.require(law_checks >= 50, "too few reduction-law checks exercised");
    g.require(lemma_checks >= 30, "too few value-process checks exercised");
}

void criterion_8(Gate& g) {
    std::mt19937_64 rng(80808);
    int pairs = 0;
    while (pairs < 50) {
        const Instance inst = twtest::random_instance(rng);
        const PayoffValues f = twtest::random_payoff(rng, inst, false);
        const PayoffValues h = twtest::random_payoff(rng, inst, false);
        const PriceResult sf = sigma_bar(inst, f);
        if (!sf.finite()) continue;  // degenerate market: operators are -inf
        ++pairs;
        const PriceResult sh = sigma_bar(inst, h);

        PayoffValues dominating = f;
        for (int c = 0; c < inst.num_classes(); ++c)
            dominating.values[c] = std::max(f.values[c], h.values[c]);
        g.require(sigma_bar(inst, dominating).value >= sf.value,
                  "sigma_bar not monotone");

        PayoffValues sum = f;
        for (int c = 0; c < inst.num_classes(); ++c) sum.values[c] += h.values[c];
        g.require(sigma_bar(inst, sum).value <= sf.value + sh.value,
                  "sigma_bar not subadditive");

        const Rational lambda = Q(5, 3);
        PayoffValues scaled = f;
        for (auto& v : scaled.values) v *= lambda;
        g.require(sigma_bar(inst, scaled).value == lambda * sf.value,
                  "sigma_bar not positively homogeneous");

        g.require(sigma_under(inst, f).value <= sf.value,
                  "inner price above outer price under (L)");

        const PayoffValues p = twtest::random_payoff(rng, inst, true);
        const PayoffValues q = twtest::random_payoff(rng, inst, true);
        const Rational ip = i_bar(inst, p).value;
        const Rational iq = i_bar(inst, q).value;
        g.require(sigma_bar(inst, p).value <= ip, "sigma_bar above i_bar");
        PayoffValues pq = p;
        for (int c = 0; c < inst.num_classes(); ++c)
            pq.values[c] = std::max(p.values[c], q.values[c]);
        g.require(i_bar(inst, pq).value >= ip, "i_bar not monotone");
        PayoffValues psum = p;
        for (int c = 0; c < inst.num_classes(); ++c) psum.values[c] += q.values[c];
        g.require(i_bar(inst, psum).value <= ip + iq, "i_bar not subadditive");
        PayoffValues pscaled = p;
        for (auto& v : pscaled.values) v *= lambda;
        g.require(i_bar(inst, pscaled).value == lambda * ip,
                  "i_bar not positively homogeneous");

        g.require(norm_value(inst, sum) <= norm_value(inst, f) + norm_value(inst, h),
                  "norm triangle inequality broken");
        g.require(norm_value(inst, scaled) == lambda * norm_value(inst, f),
                  "norm not absolutely homogeneous");

        g.require(i_bar_sum_value(inst, p, 2) == ip, "2-component sum moves i_bar");
        g.require(i_bar_sum_value(inst, p, 3) == ip, "3-component sum moves i_bar");
    }
}

void criterion_9(Gate& g) {
    std::mt19937_64 rng(90909);
    for (int trial = 0; trial < 200; ++trial) {
        const lp::LinearProgram prog = twtest::random_lp(rng);
        const lp::Outcome oc = lp::solve(prog);
        g.require(lp::verify_certificate(prog, oc), "certificate fails verification");
        g.require(lp::outcomes_agree(prog, oc, lp::fm_value(prog)),
                  "simplex disagrees with the elimination oracle");
    }
    // degenerate pivot sequence: terminates and verifies under Bland's rule
    lp::LinearProgram beale(lp::Sense::Min, 4);
    beale.c = {Q(-3, 4), Q(150), Q(-1, 50), Q(6)};
    beale.nonneg = {true, true, true, true};
    beale.add_row({Q(1, 4), Q(-60), Q(-1, 25), Q(9)}, lp::Rel::Le, Q(0));
    beale.add_row({Q(1, 2), Q(-90), Q(-1, 50), Q(3)}, lp::Rel::Le, Q(0));
    beale.add_row({Q(0), Q(0), Q(1), Q(0)}, lp::Rel::Le, Q(1));
    const lp::Outcome oc = lp::solve(beale);
    g.require(oc.status == lp::Status::Optimal && oc.value == Q(-1, 20),
              "degenerate program not solved to -1/20");
    g.require(lp::verify_certificate(beale, oc),
              "degenerate program certificate fails");
}

void criterion_10(Gate& g) {
    std::mt19937_64 rng(101010);
    std::vector<Instance> instances;
    instances.push_back(make_scenario("SCN-A", 0, 0));
    instances.push_back(make_scenario("SCN-C", 4, 3));
    instances.push_back(make_scenario("SCN-D", 0, 0));
    instances.push_back(make_scenario("SCN-E", 0, 0));
    for (int trial = 0; trial < 25; ++trial)
        instances.push_back(twtest::random_instance(rng));
    int passes = 0;
    for (const Instance& inst : instances) {
        if (!check_K(inst).pass) continue;
        ++passes;
        g.require(detect_null_arbitrage(inst).kind == NullArbitrage::Kind::None,
                  "null arbitrage found although the continuity sample passed");
    }
    g.require(passes >= 4, "too few continuity passes exercised");

    const Instance lax = make_scenario("SCN-B", 6, 8);
    g.require(detect_null_arbitrage(lax).kind ==
                  NullArbitrage::Kind::DegenerateMarket,
              "degenerate market not flagged");
    g.require(norm_value(lax, values_of(lax, "1")) == Q(0), "norm(1) != 0");
    cli::Options opt;
    opt.command = "check";
    opt.scenario = "SCN-B";
    opt.truncation = 6;
    opt.maturity_cap = 8;
    opt.condition = "null-arbitrage";
    const cli::CommandResult res = cli::run(opt);
    g.require(res.exit_code == 0 &&
                  res.output.find("degenerate market") != std::string::npos,
              "CLI does not emit the degenerate-market warning");
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        std::string title;
        std::function<void(Gate&)> body;
    };
    const std::vector<Criterion> criteria{
        {1, "emulation vs full regime prices of the down indicator on SCN-C",
         criterion_1},
        {2, "straddle not replicable, forward replicable at zero on SCN-A",
         criterion_2},
        {3, "SCN-B: tight-regime prices and full-regime strict arbitrage",
         criterion_3},
        {4, "SCN-C: point mass verifies, construction fails, bounds 0<=1/2<=1/2",
         criterion_4},
        {5, "SCN-D/E: construction, strong duality, integral consistency",
         criterion_5},
        {6, "replicable payoffs price at I under (L)", criterion_6},
        {7, "reduction law and value-process nonnegativity on random instances",
         criterion_7},
        {8, "operator axioms on random instance/payoff pairs", criterion_8},
        {9, "simplex vs elimination oracle on 200 random programs", criterion_9},
        {10, "continuity passes imply no null arbitrage; degenerate warning",
         criterion_10},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        Gate gate;
        try {
            criterion.body(gate);
        } catch (const std::exception& e) {
            gate.ok = false;
            gate.detail = std::string("exception: ") + e.what();
        }
        if (gate.ok) {
            std::cout << "PASS criterion " << criterion.id << ": " << criterion.title
                      << "\n";
        } else {
            ++failures;
            std::cout << "FAIL criterion " << criterion.id << ": " << criterion.title
                      << " -- " << gate.detail << "\n";
        }
    }
    if (failures == 0) {
        std::cout << "all 10 acceptance criteria pass\n";
        return 0;
    }
    std::cout << failures << " acceptance criteria failing\n";
    return 1;
}
