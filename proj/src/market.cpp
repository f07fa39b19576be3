#include "tw/market.hpp"

#include <algorithm>
#include <map>

namespace tw {

Rational Trajectory::at(int t) const {
    Rational v = breakpoints.front().second;
    for (const auto& [time, value] : breakpoints) {
        if (time > t) break;
        v = value;
    }
    return v;
}

Trajectory Trajectory::from_dense(std::span<const Rational> values) {
    if (values.empty()) throw MarketError("trajectory needs at least one value");
    Trajectory t;
    t.breakpoints.emplace_back(0, values[0]);
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] != t.breakpoints.back().second)
            t.breakpoints.emplace_back(static_cast<int>(i), values[i]);
    }
    return t;
}

std::vector<Rational> Trajectory::dense(int upto) const {
    std::vector<Rational> out;
    out.reserve(upto + 1);
    for (int t = 0; t <= upto; ++t) out.push_back(at(t));
    return out;
}

Trajectory DelayedJumpFamily::member(int n) const {
    if (n < 1) throw MarketError("delayed-jump parameter must be >= 1");
    if (prefix.empty()) throw MarketError("delayed-jump family needs a prefix");
    if (jump_to == plateau)
        throw MarketError("delayed-jump family must jump to a different value");
    std::vector<Rational> dense = prefix;
    const int start = static_cast<int>(prefix.size());
    for (int t = start; t <= n; ++t) dense.push_back(plateau);
    dense.push_back(jump_to);
    return Trajectory::from_dense(dense);
}

Trajectory DelayedJumpFamily::limit() const {
    std::vector<Rational> dense = prefix;
    dense.push_back(plateau);
    return Trajectory::from_dense(dense);
}

std::vector<Trajectory> expand_family(const TrajectoryFamily& family, int truncation) {
    if (truncation < 1) throw MarketError("family truncation must be >= 1");
    if (const auto* ex = std::get_if<ExplicitFamily>(&family)) return ex->members;
    const auto& dj = std::get<DelayedJumpFamily>(family);
    std::vector<Trajectory> out;
    out.reserve(truncation);
    for (int n = 1; n <= truncation; ++n) out.push_back(dj.member(n));
    return out;
}

std::vector<std::string> family_member_names(const TrajectoryFamily& family,
                                             int truncation) {
    if (const auto* ex = std::get_if<ExplicitFamily>(&family)) {
        std::vector<std::string> names = ex->names;
        names.resize(ex->members.size());
        return names;
    }
    const auto& dj = std::get<DelayedJumpFamily>(family);
    std::vector<std::string> names;
    for (int n = 1; n <= truncation; ++n)
        names.push_back(dj.name_stem + std::to_string(n));
    return names;
}

int Instance::node_of(int class_id, int depth_j) const {
    if (depth_j > depth)
        throw MarketError("node depth beyond tree depth");
    return class_nodes[class_id][depth_j];
}

Rational Instance::increment(int class_id, int step) const {
    const Trajectory& t = classes[class_id];
    return t.at(step + 1) - t.at(step);
}

std::vector<Rational> Instance::path_of(int class_id) const {
    return classes[class_id].dense(depth);
}

int Instance::class_index(const std::string& name) const {
    for (int i = 0; i < num_classes(); ++i)
        if (class_names[i] == name) return i;
    return -1;
}

bool Instance::on_family_limit_path(int node_id) const {
    const Node& node = nodes[node_id];
    for (const auto& family : families) {
        const auto* dj = std::get_if<DelayedJumpFamily>(&family);
        if (!dj) continue;
        const Trajectory lim = dj->limit();
        if (lim.start() != s0) continue;
        bool on_limit = true;
        int id = node_id;
        for (int d = node.depth; d >= 0; --d) {
            if (nodes[id].value != lim.at(d)) {
                on_limit = false;
                break;
            }
            id = nodes[id].parent;
        }
        if (on_limit) return true;
    }
    return false;
}

namespace {

Instance assemble(const Rational& s0, std::vector<Trajectory> trajectories,
                  std::vector<std::string> names, std::vector<TrajectoryFamily> families,
                  const Regime& regime) {
    if (regime.maturity_cap < 1) throw MarketError("maturity cap M must be >= 1");
    if (trajectories.empty()) throw MarketError("instance has no trajectories");
    // Deduplicate as infinite paths (canonical breakpoint equality).
    std::vector<Trajectory> classes;
    std::vector<std::string> kept_names;
    for (std::size_t i = 0; i < trajectories.size(); ++i) {
        auto& t = trajectories[i];
        if (t.start() != s0)
            throw MarketError("trajectory starts at " + format_rational(t.start()) +
                              ", expected s0 = " + format_rational(s0));
        if (std::find(classes.begin(), classes.end(), t) == classes.end()) {
            classes.push_back(std::move(t));
            kept_names.push_back(i < names.size() && !names[i].empty()
                                     ? names[i]
                                     : "C" + std::to_string(classes.size() - 1));
        }
    }

    Instance inst;
    inst.s0 = s0;
    inst.classes = std::move(classes);
    inst.class_names = std::move(kept_names);
    inst.regime = regime;
    inst.families = std::move(families);
    inst.depth = 0;
    for (const auto& t : inst.classes)
        inst.depth = std::max(inst.depth, t.stabilization_time());
    inst.exact = regime.maturity_cap >= inst.depth;

    // Prefix tree, one node per distinct value path.
    const int k = inst.num_classes();
    inst.class_nodes.assign(k, std::vector<int>(inst.depth + 1, -1));
    Node root;
    root.id = 0;
    root.depth = 0;
    root.value = s0;
    for (int c = 0; c < k; ++c) root.classes.push_back(c);
    inst.nodes.push_back(std::move(root));
    for (int c = 0; c < k; ++c) inst.class_nodes[c][0] = 0;
    for (int d = 0; d < inst.depth; ++d) {
        std::vector<int> frontier;
        for (const auto& node : inst.nodes)
            if (node.depth == d) frontier.push_back(node.id);
        for (int id : frontier) {
            std::map<Rational, std::vector<int>> by_value;
            for (int c : inst.nodes[id].classes)
                by_value[inst.classes[c].at(d + 1)].push_back(c);
            for (auto& [value, members] : by_value) {
                Node child;
                child.id = static_cast<int>(inst.nodes.size());
                child.depth = d + 1;
                child.parent = id;
                child.value = value;
                child.classes = members;
                for (int c : members) inst.class_nodes[c][d + 1] = child.id;
                inst.nodes[id].children.push_back(child.id);
                inst.nodes.push_back(std::move(child));
            }
        }
    }
    return inst;
}

}  // namespace

Instance build_instance(const Rational& s0, std::vector<TrajectoryFamily> families,
                        const Regime& regime) {
    if (families.empty()) throw MarketError("instance needs at least one family");
    std::vector<Trajectory> trajectories;
    std::vector<std::string> names;
    for (const auto& family : families) {
        auto members = expand_family(family, regime.truncation);
        auto member_names = family_member_names(family, regime.truncation);
        if (members.empty()) throw MarketError("family expanded to no trajectories");
        for (std::size_t i = 0; i < members.size(); ++i) {
            trajectories.push_back(std::move(members[i]));
            names.push_back(i < member_names.size() ? member_names[i] : "");
        }
    }
    return assemble(s0, std::move(trajectories), std::move(names), std::move(families),
                    regime);
}

Instance conditional_space(const Instance& instance, int class_id, int j) {
    if (class_id < 0 || class_id >= instance.num_classes())
        throw MarketError("unknown class id");
    if (j > instance.depth) j = instance.depth;  // prefixes agree beyond depth
    const Trajectory& pivot = instance.classes[class_id];
    std::vector<Trajectory> kept;
    std::vector<std::string> names;
    for (int c = 0; c < instance.num_classes(); ++c) {
        bool same = true;
        for (int t = 0; t <= j; ++t) {
            if (instance.classes[c].at(t) != pivot.at(t)) {
                same = false;
                break;
            }
        }
        if (same) {
            kept.push_back(instance.classes[c]);
            names.push_back(instance.class_names[c]);
        }
    }
    std::vector<TrajectoryFamily> fam{ExplicitFamily{kept, names}};
    return assemble(instance.s0, std::move(kept), std::move(names), std::move(fam),
                    instance.regime);
}

Instance shifted_space(const Instance& instance, int class_id, int j) {
    if (class_id < 0 || class_id >= instance.num_classes())
        throw MarketError("unknown class id");
    if (j == 0) return conditional_space(instance, class_id, 0);
    const Trajectory& pivot = instance.classes[class_id];
    std::vector<Trajectory> kept;
    std::vector<std::string> names;
    for (int c = 0; c < instance.num_classes(); ++c) {
        bool same = true;
        for (int t = 0; t <= std::min(j, instance.depth); ++t) {
            if (instance.classes[c].at(t) != pivot.at(t)) {
                same = false;
                break;
            }
        }
        if (!same) continue;
        const Trajectory& src = instance.classes[c];
        const int upto = std::max(src.stabilization_time() - j, 0);
        std::vector<Rational> dense;
        for (int t = 0; t <= upto; ++t) dense.push_back(src.at(j + t));
        kept.push_back(Trajectory::from_dense(dense));
        names.push_back(instance.class_names[c]);
    }
    std::vector<TrajectoryFamily> fam{ExplicitFamily{kept, names}};
    return assemble(pivot.at(j), std::move(kept), std::move(names), std::move(fam),
                    instance.regime);
}

CompletenessResult check_complete(std::span<const TrajectoryFamily> families) {
    for (const auto& family : families) {
        const auto* dj = std::get_if<DelayedJumpFamily>(&family);
        if (!dj) continue;  // finite explicit sets are complete
        const Trajectory lim = dj->limit();
        bool covered = false;
        for (const auto& other : families) {
            if (const auto* ex = std::get_if<ExplicitFamily>(&other)) {
                if (std::find(ex->members.begin(), ex->members.end(), lim) !=
                    ex->members.end()) {
                    covered = true;
                    break;
                }
            }
        }
        if (!covered) return CompletenessResult{false, lim};
    }
    return CompletenessResult{true, std::nullopt};
}

CompletenessResult check_complete(const Instance& instance) {
    return check_complete(std::span<const TrajectoryFamily>(instance.families));
}

}  // namespace tw
