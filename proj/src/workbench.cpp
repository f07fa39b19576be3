#include "tw/workbench.hpp"

#include <atomic>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "tw/json_io.hpp"
#include "tw/nodes.hpp"
#include "tw/scenarios.hpp"

namespace tw::cli {

namespace {

class UsageError : public std::runtime_error {
  public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// ---- rendering ------------------------------------------------------------

struct Table {
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }

    std::string render(const std::string& format) const {
        std::ostringstream out;
        if (format == "csv") {
            auto emit = [&](const std::vector<std::string>& cells) {
                for (std::size_t i = 0; i < cells.size(); ++i) {
                    if (i) out << ",";
                    out << cells[i];
                }
                out << "\n";
            };
            emit(headers);
            for (const auto& row : rows) emit(row);
            return out.str();
        }
        if (format == "md") {
            auto emit = [&](const std::vector<std::string>& cells) {
                out << "|";
                for (const auto& c : cells) out << " " << c << " |";
                out << "\n";
            };
            emit(headers);
            out << "|";
            for (std::size_t i = 0; i < headers.size(); ++i) out << " --- |";
            out << "\n";
            for (const auto& row : rows) emit(row);
            return out.str();
        }
        std::vector<std::size_t> width(headers.size(), 0);
        auto measure = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i)
                width[i] = std::max(width[i], cells[i].size());
        };
        measure(headers);
        for (const auto& row : rows) measure(row);
        auto emit = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i) out << "  ";
                out << cells[i];
                for (std::size_t p = cells[i].size(); p < width[i]; ++p) out << ' ';
            }
            out << "\n";
        };
        emit(headers);
        for (const auto& row : rows) emit(row);
        return out.str();
    }
};

std::string yesno(bool b) { return b ? "true" : "false"; }

std::string node_path_string(const Instance& inst, int node_id) {
    std::vector<std::string> parts;
    for (int id = node_id; id >= 0; id = inst.nodes[id].parent)
        parts.push_back(format_rational(inst.nodes[id].value));
    std::string out;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
        if (!out.empty()) out += ",";
        out += *it;
    }
    return out;
}

std::string trajectory_string(const Trajectory& t) {
    std::string out;
    for (const auto& v : t.dense(t.stabilization_time())) {
        if (!out.empty()) out += ",";
        out += format_rational(v);
    }
    return out + "," + format_rational(t.final_value()) + ",...";
}

std::string class_list(const Instance& inst, const std::vector<int>& ids) {
    std::string out;
    for (int c : ids) {
        if (!out.empty()) out += " ";
        out += inst.class_names[c];
    }
    return out.empty() ? "-" : out;
}

std::string kind_name(const NodeClass& cls) {
    switch (cls.kind) {
        case NodeClass::Kind::Flat:
            return "flat";
        case NodeClass::Kind::UpDown:
            return "up-down";
        case NodeClass::Kind::ArbitrageTypeI:
            return cls.direction > 0 ? "type-I(+)" : "type-I(-)";
        case NodeClass::Kind::ArbitrageTypeII:
            return cls.direction > 0 ? "type-II(+)" : "type-II(-)";
    }
    return "?";
}

std::string portfolio_string(const Instance& inst, const SimplePortfolio& pf) {
    std::ostringstream out;
    out << "V=" << format_rational(pf.initial) << ", n=" << pf.maturity;
    std::vector<int> ids;
    for (const auto& [id, h] : pf.holdings)
        if (h != 0) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    for (int id : ids) {
        out << ", H(" << node_path_string(inst, id)
            << ")=" << format_rational(pf.holdings.at(id));
    }
    return out.str();
}

std::string price_string(const PriceResult& pr) {
    switch (pr.kind) {
        case PriceResult::Kind::Finite:
            return format_rational(pr.value);
        case PriceResult::Kind::MinusInfinity:
            return "-inf";
        case PriceResult::Kind::PlusInfinity:
            return "+inf";
    }
    return "?";
}

std::string measure_string(const Instance& inst, const std::vector<Rational>& w) {
    std::string out;
    for (int c = 0; c < inst.num_classes(); ++c) {
        if (w[c] == 0) continue;
        if (!out.empty()) out += ", ";
        out += inst.class_names[c] + ": " + format_rational(w[c]);
    }
    return out.empty() ? "(zero)" : out;
}

// ---- shared command plumbing ----------------------------------------------

Instance resolve_instance(const Options& opt) {
    if (!opt.instance_path.empty()) return load_instance_file(opt.instance_path);
    if (!opt.scenario.empty())
        return make_scenario(opt.scenario, opt.truncation, opt.maturity_cap);
    throw UsageError("provide --instance FILE or --scenario ID");
}

Payoff require_payoff(const Options& opt) {
    if (opt.payoff.empty()) throw UsageError("this command needs --payoff EXPR");
    return Payoff::parse(opt.payoff);
}

std::string instance_header(const Instance& inst) {
    std::ostringstream out;
    out << "instance: s0=" << format_rational(inst.s0) << ", classes="
        << inst.num_classes() << ", depth=" << inst.depth << ", regime N="
        << inst.regime.truncation << " M=" << inst.regime.maturity_cap << " ("
        << (inst.exact ? "exact" : "emulation") << ")\n";
    return out.str();
}

// ---- commands ---------------------------------------------------------------

std::string cmd_classify(const Instance& inst, const std::string& format) {
    Table table;
    table.headers = {"node", "depth", "path", "class", "kind", "truncation-induced"};
    for (const auto& row : classify_all(inst)) {
        table.add({std::to_string(row.node_id), std::to_string(row.depth),
                   node_path_string(inst, row.node_id),
                   class_list(inst, inst.nodes[row.node_id].classes),
                   kind_name(row.cls), row.truncation_induced ? "yes" : "no"});
    }
    return instance_header(inst) + table.render(format);
}

std::string cmd_nullset(const Instance& inst, const std::string& format) {
    const NullSetReport report = null_set_report(inst);
    std::ostringstream out;
    out << instance_header(inst);
    out << "null set size: " << report.classes.size() << " of "
        << inst.num_classes() << "\n";
    Table table;
    table.headers = {"class", "null", "certificate"};
    std::size_t k = 0;
    for (int c = 0; c < inst.num_classes(); ++c) {
        const bool is_null =
            k < report.classes.size() && report.classes[k] == c;
        table.add({inst.class_names[c], is_null ? "yes" : "no",
                   is_null ? portfolio_string(inst, report.certificates[k]) : "-"});
        if (is_null) ++k;
    }
    out << table.render(format);
    return out.str();
}

std::string cmd_price(const Instance& inst, const Options& opt) {
    const Payoff payoff = require_payoff(opt);
    const PayoffValues values = evaluate_payoff(payoff, inst);
    std::ostringstream out;
    out << instance_header(inst);
    out << "payoff: " << payoff.source << "\n";
    const std::string& op = opt.op;
    if (op == "replicate") {
        const Replication rep = replicate(inst, values);
        switch (rep.status) {
            case Replication::Status::Replicable:
                out << "replicable: yes\nprice I(f) = " << format_rational(rep.price)
                    << "\nportfolio: " << portfolio_string(inst, rep.portfolio) << "\n";
                break;
            case Replication::Status::NotReplicable:
                out << "replicable: no (payoff is outside the replicable space)\n";
                break;
            case Replication::Status::PriceNotUnique:
                out << "replicable: yes, but the price is not unique (law of one "
                       "price fails)\n";
                break;
        }
        return out.str();
    }
    if (op == "ibar" || op == "norm") {
        const PayoffValues target = op == "norm" ? values.abs() : values;
        const PriceResult pr = i_bar(inst, target);
        out << (op == "norm" ? "norm |f| = " : "i_bar(f) = ") << price_string(pr)
            << "\n";
        if (pr.hedge) out << "hedge: " << portfolio_string(inst, *pr.hedge) << "\n";
        if (pr.dual_weights)
            out << "dual weights: " << measure_string(inst, *pr.dual_weights) << "\n";
        return out.str();
    }
    if (op == "sigmabar" || op == "sigmaunder") {
        const PriceResult pr = op == "sigmabar" ? sigma_bar(inst, values)
                                                : sigma_under(inst, values);
        out << (op == "sigmabar" ? "sigma_bar(f) = " : "sigma_under(f) = ")
            << price_string(pr) << "\n";
        if (pr.hedge) out << "hedge: " << portfolio_string(inst, *pr.hedge) << "\n";
        if (pr.dual_weights)
            out << "dual measure: " << measure_string(inst, *pr.dual_weights) << "\n";
        if (pr.arbitrage)
            out << "strict arbitrage: " << portfolio_string(inst, *pr.arbitrage)
                << "\n";
        return out.str();
    }
    if (op == "integralK") {
        const KIntegral ki = integral_K(inst, values);
        if (ki.integrable) {
            out << "integral_K(f) = " << format_rational(ki.value) << "\n";
        } else {
            out << "not integrable: sigma_under = " << price_string(ki.inner)
                << ", sigma_bar = " << price_string(ki.outer) << "\n";
        }
        return out.str();
    }
    throw UsageError("unknown --op '" + op +
                     "' (expected replicate|ibar|sigmabar|sigmaunder|norm|integralK)");
}

std::string cmd_check(const Instance& inst, const Options& opt) {
    std::ostringstream out;
    out << instance_header(inst);
    const std::string& cond = opt.condition;
    if (cond == "lop") {
        out << "law of one price: " << yesno(check_lop(inst)) << "\n";
    } else if (cond == "mon") {
        out << "monotonicity: " << yesno(check_mon(inst)) << "\n";
    } else if (cond == "L") {
        const bool ok = check_L(inst);
        out << "Leinert condition (L): " << yesno(ok) << "\n";
        if (!ok) {
            if (auto pf = detect_strict_mia(inst))
                out << "strict arbitrage: " << portfolio_string(inst, *pf) << "\n";
        }
    } else if (cond == "nL") {
        out << "Leinert condition at every node (nL): "
            << yesno(check_L_nodewise(inst)) << "\n";
    } else if (cond == "K") {
        const KCheck kc = check_K(inst);
        out << "continuity sample check (K): " << (kc.pass ? "pass" : "fail") << "\n";
        if (!kc.pass) {
            out << "counterexample: " << kc.counterexample_label << "\n";
            out << "  i_bar = " << format_rational(kc.ibar_value) << ", sigma_bar = "
                << (kc.sigma_finite ? format_rational(kc.sigma_value) : "-inf")
                << "\n";
        }
    } else if (cond == "nK-sufficient") {
        out << "sufficient certificate for (nL) and (nK): "
            << yesno(check_nK_sufficient(inst)) << "\n";
        const auto completeness = check_complete(inst);
        out << "  complete: " << yesno(completeness.complete);
        if (!completeness.complete && completeness.witness) {
            out << " (missing limit path "
                << trajectory_string(*completeness.witness) << ")";
        }
        out << "\n";
        const auto type2 = find_type2_node(inst, inst.depth, true);
        out << "  genuine type-II node: " << (type2 ? std::to_string(*type2) : "none")
            << "\n";
    } else if (cond == "complete") {
        const auto completeness = check_complete(inst);
        out << "complete: " << yesno(completeness.complete) << "\n";
        if (!completeness.complete && completeness.witness)
            out << "witness limit path: " << trajectory_string(*completeness.witness)
                << "\n";
    } else if (cond == "strict-mia") {
        const auto pf = detect_strict_mia(inst);
        out << "strict model-independent arbitrage: " << (pf ? "found" : "none")
            << "\n";
        if (pf) out << "portfolio: " << portfolio_string(inst, *pf) << "\n";
    } else if (cond == "null-arbitrage") {
        const NullArbitrage na = detect_null_arbitrage(inst);
        switch (na.kind) {
            case NullArbitrage::Kind::None:
                out << "arbitrage w.r.t. the null sets: none\n";
                break;
            case NullArbitrage::Kind::Found:
                out << "arbitrage w.r.t. the null sets: found (pays off at "
                    << inst.class_names[na.at_class] << ")\n";
                out << "portfolio: " << portfolio_string(inst, *na.portfolio) << "\n";
                break;
            case NullArbitrage::Kind::DegenerateMarket:
                out << "warning: degenerate market, every class is null "
                       "(norm(1) = 0); arbitrage search is moot\n";
                break;
        }
    } else {
        throw UsageError("unknown --condition '" + cond +
                         "' (expected lop|mon|L|nL|K|nK-sufficient|complete|strict-mia|"
                         "null-arbitrage)");
    }
    return out.str();
}

std::string cmd_martingale(const Instance& inst, const Options& opt) {
    std::ostringstream out;
    out << instance_header(inst);
    const std::string& action = opt.action;
    if (action == "construct") {
        const MeasureConstruction mc = construct_measure(inst);
        if (!mc.ok) {
            out << "construction failed: type-II node " << mc.type2_node << " at "
                << node_path_string(inst, mc.type2_node)
                << (inst.on_family_limit_path(mc.type2_node) ? " (truncation-induced)"
                                                           : "")
                << "\n";
            return out.str();
        }
        out << "measure: " << measure_string(inst, mc.measure.weights) << "\n";
        out << "verifies: " << yesno(verify_martingale(inst, mc.measure)) << "\n";
        out << measure_to_json(inst, mc.measure.weights) << "\n";
        return out.str();
    }
    if (action == "verify" || action == "expect") {
        MartingaleMeasure q;
        if (!opt.measure_path.empty()) {
            q.weights = load_measure_file(opt.measure_path, inst);
        } else {
            const MeasureConstruction mc = construct_measure(inst);
            if (!mc.ok)
                throw MarketError(
                    "no --measure file and the built-in construction failed");
            q = mc.measure;
            out << "using constructed measure: "
                << measure_string(inst, q.weights) << "\n";
        }
        if (action == "verify") {
            out << "martingale measure: " << yesno(verify_martingale(inst, q)) << "\n";
            return out.str();
        }
        const Payoff payoff = require_payoff(opt);
        const PayoffValues values = evaluate_payoff(payoff, inst);
        out << "E_Q[" << payoff.source
            << "] = " << format_rational(expectation(inst, q, values)) << "\n";
        return out.str();
    }
    if (action == "dual") {
        const Payoff payoff = require_payoff(opt);
        const PayoffValues values = evaluate_payoff(payoff, inst);
        const PriceResult pr = dual_price(inst, values, !opt.unrestricted_dual);
        out << "dual price (" << (opt.unrestricted_dual ? "unrestricted" : "off null set")
            << ") = " << price_string(pr) << "\n";
        if (pr.dual_weights)
            out << "measure: " << measure_string(inst, *pr.dual_weights) << "\n";
        if (pr.arbitrage)
            out << "strict arbitrage: " << portfolio_string(inst, *pr.arbitrage) << "\n";
        return out.str();
    }
    if (action == "bounds") {
        MartingaleMeasure q;
        if (!opt.measure_path.empty()) {
            q.weights = load_measure_file(opt.measure_path, inst);
        } else {
            const MeasureConstruction mc = construct_measure(inst);
            if (!mc.ok)
                throw MarketError(
                    "no --measure file and the built-in construction failed");
            q = mc.measure;
        }
        const Payoff payoff = require_payoff(opt);
        const PayoffValues values = evaluate_payoff(payoff, inst);
        const DualityBoundsReport rep = check_duality_bounds(inst, q, values);
        if (!rep.measure_verified) {
            out << "measure fails martingale verification\n";
            return out.str();
        }
        out << "E_Q[f] = " << format_rational(rep.e_f)
            << "  sigma_bar(f) = " << price_string(rep.sigma_f) << "\n";
        out << "E_Q[|f|] = " << format_rational(rep.e_abs)
            << "  sigma_bar(|f|) = " << price_string(rep.sigma_abs)
            << "  norm = " << format_rational(rep.norm_f) << "\n";
        out << "bounds: " << (rep.pass ? "pass" : "fail (" + rep.violated + ")")
            << "\n";
        return out.str();
    }
    throw UsageError("unknown --action '" + action +
                     "' (expected construct|verify|expect|dual|bounds)");
}

std::vector<std::pair<int, int>> parse_regimes(const std::string& text) {
    std::vector<std::pair<int, int>> out;
    std::string token;
    auto flush = [&]() {
        if (token.empty()) return;
        const auto colon = token.find(':');
        if (colon == std::string::npos)
            throw UsageError("regime '" + token + "' must look like M:N");
        const int m = std::stoi(token.substr(0, colon));
        const int n = std::stoi(token.substr(colon + 1));
        if (m < 1 || n < 1) throw UsageError("regimes need M >= 1 and N >= 1");
        out.emplace_back(m, n);
        token.clear();
    };
    for (char c : text) {
        if (c == ',' || c == ';') {
            flush();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            token.push_back(c);
        }
    }
    flush();
    if (out.empty()) throw UsageError("--regimes needs at least one M:N pair");
    return out;
}

std::string cmd_report(const Instance& inst, const std::string& source);

}  // namespace

SweepReport regime_sweep(const std::string& scenario_id, const Payoff& payoff,
                         const std::vector<std::pair<int, int>>& regimes) {
    SweepReport report;
    report.scenario = scenario_id;
    report.payoff = payoff.source;
    report.rows.resize(regimes.size());

    unsigned workers = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("WORKBENCH_THREADS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) workers = static_cast<unsigned>(parsed);
    }
    workers = std::max(1u, std::min<unsigned>(workers, regimes.size()));

    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= regimes.size()) return;
            const auto [m, n] = regimes[i];
            const Instance inst = make_scenario(scenario_id, n, m);
            const PayoffValues values = evaluate_payoff(payoff, inst);
            SweepRow row;
            row.maturity_cap = m;
            row.truncation = n;
            row.exact = inst.exact;
            row.null_size = static_cast<int>(null_set(inst).size());
            row.leinert = check_L(inst);
            row.sigma = sigma_bar(inst, values);
            if (values.nonnegative())
                row.ibar = i_bar(inst, values).value;
            row.dual = dual_price(inst, values, true);
            report.rows[i] = std::move(row);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return report;
}

std::string render_sweep(const SweepReport& report, const std::string& format) {
    Table table;
    table.headers = {"M",       "N",       "regime", "null_size",
                     "check_L", "sigma_bar", "i_bar", "dual"};
    for (const auto& row : report.rows) {
        table.add({std::to_string(row.maturity_cap), std::to_string(row.truncation),
                   row.exact ? "exact" : "emulation", std::to_string(row.null_size),
                   yesno(row.leinert), price_string(row.sigma),
                   row.ibar ? format_rational(*row.ibar) : "-",
                   price_string(row.dual)});
    }
    std::string head = "scenario: " + report.scenario + "\npayoff: " + report.payoff + "\n";
    if (format == "csv") return table.render(format);
    return head + table.render(format);
}

namespace {

std::string cmd_report(const Instance& inst, const std::string& source) {
    std::ostringstream out;
    out << "# Workbench report\n\n";
    out << "source: " << source << "\n\n";
    out << "## Instance\n\n";
    out << "- s0 = " << format_rational(inst.s0) << "\n";
    out << "- regime: N = " << inst.regime.truncation
        << ", M = " << inst.regime.maturity_cap << " ("
        << (inst.exact ? "exact" : "emulation") << ")\n";
    out << "- tree depth: " << inst.depth << "\n";
    out << "- classes (" << inst.num_classes() << "):\n\n";
    Table classes;
    classes.headers = {"class", "path (to depth)"};
    for (int c = 0; c < inst.num_classes(); ++c) {
        std::string path;
        for (const auto& v : inst.path_of(c)) {
            if (!path.empty()) path += ",";
            path += format_rational(v);
        }
        classes.add({inst.class_names[c], path});
    }
    out << classes.render("md") << "\n";

    out << "## Node classification\n\n";
    Table nodes_table;
    nodes_table.headers = {"node", "depth", "path", "kind", "truncation-induced"};
    for (const auto& row : classify_all(inst)) {
        nodes_table.add({std::to_string(row.node_id), std::to_string(row.depth),
                         node_path_string(inst, row.node_id), kind_name(row.cls),
                         row.truncation_induced ? "yes" : "no"});
    }
    out << nodes_table.render("md") << "\n";

    out << "## Null set\n\n";
    const NullSetReport nulls = null_set_report(inst);
    out << "size " << nulls.classes.size() << " of " << inst.num_classes() << ": ";
    out << class_list(inst, nulls.classes) << "\n\n";

    out << "## Conditions\n\n";
    const auto completeness = check_complete(inst);
    const KCheck kc = check_K(inst);
    out << "- law of one price: " << yesno(check_lop(inst)) << "\n";
    out << "- monotonicity: " << yesno(check_mon(inst)) << "\n";
    out << "- Leinert (L): " << yesno(check_L(inst)) << "\n";
    out << "- Leinert at every node (nL): " << yesno(check_L_nodewise(inst)) << "\n";
    out << "- complete: " << yesno(completeness.complete) << "\n";
    out << "- sufficient certificate for (nL)+(nK): " << yesno(check_nK_sufficient(inst))
        << "\n";
    out << "- continuity sample (K): " << (kc.pass ? "pass" : "fail") << "\n\n";

    out << "## Arbitrage\n\n";
    const auto mia = detect_strict_mia(inst);
    out << "- strict model-independent arbitrage: " << (mia ? "found" : "none") << "\n";
    if (mia) out << "  - " << portfolio_string(inst, *mia) << "\n";
    const NullArbitrage na = detect_null_arbitrage(inst);
    switch (na.kind) {
        case NullArbitrage::Kind::None:
            out << "- arbitrage w.r.t. null sets: none\n";
            break;
        case NullArbitrage::Kind::Found:
            out << "- arbitrage w.r.t. null sets: found at "
                << inst.class_names[na.at_class] << "\n";
            break;
        case NullArbitrage::Kind::DegenerateMarket:
            out << "- warning: degenerate market, every class is null (norm(1) = 0)\n";
            break;
    }
    out << "\n";

    out << "## Martingale measure\n\n";
    const MeasureConstruction mc = construct_measure(inst);
    if (mc.ok) {
        out << "constructed: " << measure_string(inst, mc.measure.weights) << "\n";
        out << "verifies: " << yesno(verify_martingale(inst, mc.measure)) << "\n\n";
    } else {
        out << "construction fails at type-II node " << mc.type2_node << " ("
            << node_path_string(inst, mc.type2_node)
            << (inst.on_family_limit_path(mc.type2_node) ? ", truncation-induced" : "")
            << ")\n\n";
    }

    out << "## Reference prices\n\n";
    Table prices;
    prices.headers = {"payoff", "I", "sigma_under", "sigma_bar", "i_bar(|f|)",
                      "integral_K"};
    const std::string straddle =
        "abs(S[1]-" + format_rational(inst.s0) + ")";
    const std::string forward = "S[1]-" + format_rational(inst.s0);
    for (const std::string& expr : {forward, straddle, std::string("1")}) {
        const Payoff payoff = Payoff::parse(expr);
        const PayoffValues values = evaluate_payoff(payoff, inst);
        const Replication rep = replicate(inst, values);
        const KIntegral ki = integral_K(inst, values);
        prices.add({expr,
                    rep.ok() ? format_rational(rep.price) : "-",
                    price_string(ki.inner), price_string(ki.outer),
                    format_rational(norm_value(inst, values)),
                    ki.integrable ? format_rational(ki.value) : "not integrable"});
    }
    out << prices.render("md");
    return out.str();
}

}  // namespace

CommandResult run(const Options& options) {
    CommandResult result;
    try {
        const std::string& cmd = options.command;
        if (cmd == "classify") {
            result.output = cmd_classify(resolve_instance(options), options.format);
        } else if (cmd == "nullset") {
            result.output = cmd_nullset(resolve_instance(options), options.format);
        } else if (cmd == "price") {
            if (options.op.empty()) throw UsageError("price needs --op NAME");
            result.output = cmd_price(resolve_instance(options), options);
        } else if (cmd == "check") {
            if (options.condition.empty())
                throw UsageError("check needs --condition NAME");
            result.output = cmd_check(resolve_instance(options), options);
        } else if (cmd == "martingale") {
            if (options.action.empty())
                throw UsageError("martingale needs --action NAME");
            result.output = cmd_martingale(resolve_instance(options), options);
        } else if (cmd == "sweep") {
            if (options.scenario.empty())
                throw UsageError("sweep needs --scenario ID");
            if (options.regimes.empty())
                throw UsageError("sweep needs --regimes \"M:N,M:N,...\"");
            const Payoff payoff = require_payoff(options);
            const SweepReport report =
                regime_sweep(options.scenario, payoff, parse_regimes(options.regimes));
            result.output = render_sweep(report, options.format);
        } else if (cmd == "report") {
            const Instance inst = resolve_instance(options);
            const std::string source = !options.instance_path.empty()
                                           ? options.instance_path
                                           : options.scenario;
            result.output = cmd_report(inst, source);
        } else {
            throw UsageError("unknown command '" + cmd +
                             "' (expected classify|nullset|price|check|martingale|"
                             "sweep|report)");
        }
    } catch (const UsageError& e) {
        result.exit_code = 1;
        result.error = std::string("usage error: ") + e.what();
    } catch (const MarketError& e) {
        result.exit_code = 2;
        result.error = std::string("input error: ") + e.what();
    } catch (const PayoffError& e) {
        result.exit_code = 2;
        result.error = std::string("input error: ") + e.what();
    } catch (const std::invalid_argument& e) {
        result.exit_code = 1;
        result.error = std::string("usage error: ") + e.what();
    } catch (const std::exception& e) {
        result.exit_code = 3;
        result.error = std::string("internal error: ") + e.what();
    }
    return result;
}

}  // namespace tw::cli
