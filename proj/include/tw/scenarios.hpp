#pragma once

#include <string>
#include <vector>

#include "tw/market.hpp"

namespace tw {

/// Built-in trajectory sets:
///   SCN-A  one period, three branches {0, 1, 2} from s0 = 1
///   SCN-B  plateau-2-jump-4 family plus the down family at 1 - 1/n
///   SCN-C  plateau-2-jump-4 family, drop-to-0, and the constant path
///   SCN-D  additive binary tree of depth 3 (children = parent +- 1)
///   SCN-E  additive trinomial tree of depth 2 (children = parent - 1, parent, parent + 1)
struct ScenarioInfo {
    std::string id;
    std::string description;
    int default_truncation;
    int default_cap;
};

const std::vector<ScenarioInfo>& scenario_catalog();

bool is_scenario_id(const std::string& id);

/// Instantiates a scenario at regime (N = truncation, M = maturity cap).
/// Pass 0 to take the scenario's default for either parameter.
Instance make_scenario(const std::string& id, int truncation, int maturity_cap);

}  // namespace tw
