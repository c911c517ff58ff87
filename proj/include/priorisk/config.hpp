#pragma once

#include <map>
#include <string>
#include <vector>

namespace priorisk {

// Flat key=value configuration with [section] headers composing dotted keys.
// The manifest written by every run uses the same format, so a manifest can
// be fed back through --config to reproduce the run.
using Config = std::map<std::string, std::string>;

Config parse_config(const std::string& text);
std::string serialize_config(const Config& cfg);

std::vector<int> parse_int_list(const std::string& csv);
std::vector<double> parse_double_list(const std::string& csv);
std::string join_ints(const std::vector<int>& xs);

}  // namespace priorisk
