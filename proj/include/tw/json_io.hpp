#pragma once

#include <string>
#include <vector>

#include "tw/market.hpp"

namespace tw {

/// Instance document:
///   {"s0": "p/q",
///    "families": [
///      {"kind": "explicit", "paths": [["1","0"], ...], "names": [...]},
///      {"kind": "delayed_jump", "prefix": ["1"], "plateau": "2",
///       "jump_to": "4", "name_stem": "U"}],
///    "regime": {"N": int, "M": int}}
/// Rationals are strings "p/q" (or "p"); explicit paths list values from
/// time 0, the last value persisting forever.
Instance load_instance_file(const std::string& path);
Instance load_instance_json(const std::string& text);
std::string instance_to_json(const Instance& instance);

/// Measure document: {"weights": {"<class name>": "p/q", ...}}; classes not
/// listed carry weight zero.
std::vector<Rational> load_measure_file(const std::string& path, const Instance& instance);
std::vector<Rational> load_measure_json(const std::string& text, const Instance& instance);
std::string measure_to_json(const Instance& instance, const std::vector<Rational>& weights);

}  // namespace tw
