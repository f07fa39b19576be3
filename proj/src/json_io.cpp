#include "tw/json_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace tw {

namespace {

using nlohmann::json;

Rational rational_field(const json& j, const std::string& where) {
    if (j.is_number_integer())
        return Rational(static_cast<long long>(j.get<long long>()));
    if (!j.is_string())
        throw MarketError(where + ": expected a rational string \"p/q\"");
    auto parsed = parse_rational(j.get<std::string>());
    if (!parsed)
        throw MarketError(where + ": bad rational '" + j.get<std::string>() + "'");
    return *parsed;
}

std::vector<Rational> rational_list(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty())
        throw MarketError(where + ": expected a nonempty array");
    std::vector<Rational> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(rational_field(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

TrajectoryFamily family_from_json(const json& j, int index) {
    const std::string where = "families[" + std::to_string(index) + "]";
    if (!j.is_object() || !j.contains("kind"))
        throw MarketError(where + ": expected an object with \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "explicit") {
        if (!j.contains("paths")) throw MarketError(where + ": missing \"paths\"");
        ExplicitFamily fam;
        const auto& paths = j.at("paths");
        if (!paths.is_array() || paths.empty())
            throw MarketError(where + ".paths: expected a nonempty array");
        for (std::size_t p = 0; p < paths.size(); ++p) {
            auto values = rational_list(paths[p],
                                        where + ".paths[" + std::to_string(p) + "]");
            fam.members.push_back(Trajectory::from_dense(values));
        }
        if (j.contains("names")) {
            for (const auto& n : j.at("names"))
                fam.names.push_back(n.get<std::string>());
        }
        return fam;
    }
    if (kind == "delayed_jump") {
        DelayedJumpFamily fam;
        fam.prefix = rational_list(j.at("prefix"), where + ".prefix");
        fam.plateau = rational_field(j.at("plateau"), where + ".plateau");
        fam.jump_to = rational_field(j.at("jump_to"), where + ".jump_to");
        fam.name_stem = j.value("name_stem", std::string("J"));
        if (fam.jump_to == fam.plateau)
            throw MarketError(where + ": jump_to must differ from plateau");
        return fam;
    }
    throw MarketError(where + ": unknown family kind '" + kind + "'");
}

json rational_json(const Rational& v) { return json(format_rational(v)); }

}  // namespace

Instance load_instance_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw MarketError(std::string("instance JSON parse error: ") + e.what());
    }
    if (!doc.is_object()) throw MarketError("instance document must be an object");
    if (!doc.contains("s0")) throw MarketError("instance document: missing \"s0\"");
    const Rational s0 = rational_field(doc.at("s0"), "s0");
    if (!doc.contains("families")) throw MarketError("instance document: missing \"families\"");
    std::vector<TrajectoryFamily> families;
    const auto& fams = doc.at("families");
    if (!fams.is_array() || fams.empty())
        throw MarketError("families: expected a nonempty array");
    for (std::size_t i = 0; i < fams.size(); ++i)
        families.push_back(family_from_json(fams[i], static_cast<int>(i)));
    Regime regime;
    if (doc.contains("regime")) {
        const auto& r = doc.at("regime");
        regime.truncation = r.value("N", 1);
        regime.maturity_cap = r.value("M", 1);
    }
    if (regime.truncation < 1) throw MarketError("regime.N must be >= 1");
    if (regime.maturity_cap < 1) throw MarketError("regime.M must be >= 1");
    return build_instance(s0, std::move(families), regime);
}

Instance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MarketError("cannot open instance file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_instance_json(buf.str());
}

std::string instance_to_json(const Instance& instance) {
    json doc;
    doc["s0"] = rational_json(instance.s0);
    doc["regime"] = {{"N", instance.regime.truncation},
                     {"M", instance.regime.maturity_cap}};
    json fams = json::array();
    for (const auto& family : instance.families) {
        json fj;
        if (const auto* ex = std::get_if<ExplicitFamily>(&family)) {
            fj["kind"] = "explicit";
            json paths = json::array();
            for (const auto& t : ex->members) {
                json path = json::array();
                for (const auto& v : t.dense(t.stabilization_time()))
                    path.push_back(rational_json(v));
                paths.push_back(path);
            }
            fj["paths"] = paths;
            if (!ex->names.empty()) fj["names"] = ex->names;
        } else {
            const auto& dj = std::get<DelayedJumpFamily>(family);
            fj["kind"] = "delayed_jump";
            json prefix = json::array();
            for (const auto& v : dj.prefix) prefix.push_back(rational_json(v));
            fj["prefix"] = prefix;
            fj["plateau"] = rational_json(dj.plateau);
            fj["jump_to"] = rational_json(dj.jump_to);
            fj["name_stem"] = dj.name_stem;
        }
        fams.push_back(fj);
    }
    doc["families"] = fams;
    return doc.dump(2);
}

std::vector<Rational> load_measure_json(const std::string& text, const Instance& instance) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw MarketError(std::string("measure JSON parse error: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("weights"))
        throw MarketError("measure document must be an object with \"weights\"");
    std::vector<Rational> weights(instance.num_classes(), Rational(0));
    for (const auto& [key, value] : doc.at("weights").items()) {
        const int idx = instance.class_index(key);
        if (idx < 0) throw MarketError("measure weights: unknown class '" + key + "'");
        weights[idx] = rational_field(value, "weights." + key);
    }
    return weights;
}

std::vector<Rational> load_measure_file(const std::string& path, const Instance& instance) {
    std::ifstream in(path);
    if (!in) throw MarketError("cannot open measure file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_measure_json(buf.str(), instance);
}

std::string measure_to_json(const Instance& instance, const std::vector<Rational>& weights) {
    json w = json::object();
    for (int c = 0; c < instance.num_classes(); ++c) {
        if (weights[c] != 0) w[instance.class_names[c]] = rational_json(weights[c]);
    }
    json doc;
    doc["weights"] = w;
    return doc.dump(2);
}

}  // namespace tw
