#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tw/market.hpp"
#include "tw/martingale.hpp"
#include "tw/payoff.hpp"
#include "tw/superhedge.hpp"

namespace tw::cli {

/// One sweep row: the pricing picture of a payoff under a regime (M, N).
struct SweepRow {
    int maturity_cap = 0;
    int truncation = 0;
    bool exact = false;
    int null_size = 0;
    bool leinert = false;
    PriceResult sigma;
    std::optional<Rational> ibar;  // only for payoffs >= 0 in that regime
    PriceResult dual;
};

struct SweepReport {
    std::string scenario;
    std::string payoff;
    std::vector<SweepRow> rows;  // in input order
};

/// Runs the scenario across regimes; regimes evaluate independently and in
/// parallel (WORKBENCH_THREADS caps the worker count), output order is the
/// input order.
SweepReport regime_sweep(const std::string& scenario_id, const Payoff& payoff,
                         const std::vector<std::pair<int, int>>& regimes);

std::string render_sweep(const SweepReport& report, const std::string& format);

struct Options {
    std::string command;
    std::string instance_path;
    std::string scenario;
    int truncation = 0;    // --N
    int maturity_cap = 0;  // --M
    std::string payoff;
    std::string op;
    std::string condition;
    std::string action;
    std::string measure_path;
    bool unrestricted_dual = false;
    std::string regimes;
    std::string format = "txt";
};

struct CommandResult {
    int exit_code = 0;   // 0 ok, 1 usage, 2 input, 3 internal
    std::string output;
    std::string error;
};

/// Dispatches one workbench command; pure except for reading input files.
CommandResult run(const Options& options);

}  // namespace tw::cli
