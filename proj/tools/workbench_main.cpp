#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "tw/workbench.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "workbench - exact pricing, arbitrage and martingale checks on finite "
        "trajectory sets"};
    app.require_subcommand(1);

    tw::cli::Options opt;
    std::string out_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--instance", opt.instance_path, "instance JSON file");
        sub->add_option("--scenario", opt.scenario,
                        "built-in scenario id (SCN-A..SCN-E)");
        sub->add_option("--N", opt.truncation, "family truncation N");
        sub->add_option("--M", opt.maturity_cap, "portfolio maturity cap M");
        sub->add_option("--payoff", opt.payoff, "payoff expression, e.g. abs(S[1]-1)");
        sub->add_option("--out", out_path, "write the report to a file");
        sub->add_option("--format", opt.format, "output format: txt, csv or md")
            ->check(CLI::IsMember({"txt", "csv", "md"}));
    };

    for (const char* name : {"classify", "nullset", "price", "check", "martingale",
                             "sweep", "report"}) {
        CLI::App* sub = app.add_subcommand(name);
        add_common(sub);
        if (std::string(name) == "price")
            sub->add_option("--op", opt.op,
                            "replicate|ibar|sigmabar|sigmaunder|norm|integralK");
        if (std::string(name) == "check")
            sub->add_option("--condition", opt.condition,
                            "lop|mon|L|nL|K|nK-sufficient|complete|strict-mia|"
                            "null-arbitrage");
        if (std::string(name) == "martingale") {
            sub->add_option("--action", opt.action,
                            "construct|verify|expect|dual|bounds");
            sub->add_option("--measure", opt.measure_path, "measure JSON file");
            sub->add_flag("--unrestricted", opt.unrestricted_dual,
                          "dual over all fair measures (no null-set restriction)");
        }
        if (std::string(name) == "sweep")
            sub->add_option("--regimes", opt.regimes,
                            "comma-separated M:N pairs, e.g. \"3:4,6:4\"");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    opt.command = app.get_subcommands().front()->get_name();
    const tw::cli::CommandResult result = tw::cli::run(opt);
    if (!result.error.empty()) std::cerr << result.error << "\n";
    if (!result.output.empty()) {
        if (!out_path.empty()) {
            std::ofstream out(out_path);
            if (!out) {
                std::cerr << "input error: cannot write '" << out_path << "'\n";
                return 2;
            }
            out << result.output;
        } else {
            std::cout << result.output;
        }
    }
    return result.exit_code;
}
