#include "tw/scenarios.hpp"

#include <functional>

namespace tw {

namespace {

Trajectory path(std::vector<Rational> values) {
    return Trajectory::from_dense(values);
}

ExplicitFamily explicit_family(std::vector<Trajectory> members,
                               std::vector<std::string> names) {
    return ExplicitFamily{std::move(members), std::move(names)};
}

DelayedJumpFamily plateau_jump_up() {
    DelayedJumpFamily fam;
    fam.prefix = {Rational(1)};
    fam.plateau = 2;
    fam.jump_to = 4;
    fam.name_stem = "U";
    return fam;
}

Instance scn_a(int, int cap) {
    std::vector<Trajectory> members{path({Rational(1), Rational(0)}),
                                    path({Rational(1), Rational(1)}),
                                    path({Rational(1), Rational(2)})};
    std::vector<TrajectoryFamily> fams{
        explicit_family(std::move(members), {"T-", "T0", "T+"})};
    return build_instance(Rational(1), std::move(fams), Regime{1, cap});
}

Instance scn_b(int truncation, int cap) {
    std::vector<Trajectory> down;
    std::vector<std::string> names;
    for (int n = 1; n <= truncation; ++n) {
        down.push_back(path({Rational(1), Rational(1) - Rational(1, n)}));
        names.push_back("D" + std::to_string(n));
    }
    std::vector<TrajectoryFamily> fams{plateau_jump_up(),
                                       explicit_family(std::move(down), std::move(names))};
    return build_instance(Rational(1), std::move(fams), Regime{truncation, cap});
}

Instance scn_c(int truncation, int cap) {
    std::vector<TrajectoryFamily> fams{
        plateau_jump_up(),
        explicit_family({path({Rational(1), Rational(0)})}, {"D"}),
        explicit_family({path({Rational(1)})}, {"Z"})};
    return build_instance(Rational(1), std::move(fams), Regime{truncation, cap});
}

Instance lattice(int depth, const std::vector<int>& moves, int truncation, int cap,
                 const std::function<std::string(int)>& letter) {
    std::vector<Trajectory> members;
    std::vector<std::string> names;
    const int k = static_cast<int>(moves.size());
    std::vector<int> pick(depth, 0);
    while (true) {
        std::vector<Rational> values{Rational(1)};
        std::string name;
        for (int d = 0; d < depth; ++d) {
            values.push_back(values.back() + moves[pick[d]]);
            name += letter(pick[d]);
        }
        members.push_back(path(values));
        names.push_back(name);
        int d = depth - 1;
        while (d >= 0 && pick[d] == k - 1) pick[d--] = 0;
        if (d < 0) break;
        ++pick[d];
    }
    std::vector<TrajectoryFamily> fams{
        explicit_family(std::move(members), std::move(names))};
    return build_instance(Rational(1), std::move(fams), Regime{truncation, cap});
}

Instance scn_d(int truncation, int cap) {
    return lattice(3, {1, -1}, truncation, cap,
                   [](int i) { return i == 0 ? "U" : "D"; });
}

Instance scn_e(int truncation, int cap) {
    return lattice(2, {1, 0, -1}, truncation, cap,
                   [](int i) { return i == 0 ? "U" : (i == 1 ? "M" : "D"); });
}

}  // namespace

const std::vector<ScenarioInfo>& scenario_catalog() {
    static const std::vector<ScenarioInfo> catalog{
        {"SCN-A", "one period, three branches {0, 1, 2} from s0 = 1", 1, 1},
        {"SCN-B", "plateau-2-jump-4 family plus down family at 1 - 1/n", 6, 3},
        {"SCN-C", "plateau-2-jump-4 family, drop-to-0, constant path", 4, 3},
        {"SCN-D", "additive binary tree, depth 3", 1, 3},
        {"SCN-E", "additive trinomial tree, depth 2", 1, 2},
    };
    return catalog;
}

bool is_scenario_id(const std::string& id) {
    for (const auto& info : scenario_catalog())
        if (info.id == id) return true;
    return false;
}

Instance make_scenario(const std::string& id, int truncation, int maturity_cap) {
    const ScenarioInfo* info = nullptr;
    for (const auto& candidate : scenario_catalog())
        if (candidate.id == id) info = &candidate;
    if (!info) throw MarketError("unknown scenario '" + id + "'");
    const int n = truncation > 0 ? truncation : info->default_truncation;
    const int m = maturity_cap > 0 ? maturity_cap : info->default_cap;
    if (id == "SCN-A") return scn_a(n, m);
    if (id == "SCN-B") return scn_b(n, m);
    if (id == "SCN-C") return scn_c(n, m);
    if (id == "SCN-D") return scn_d(n, m);
    return scn_e(n, m);
}

}  // namespace tw
