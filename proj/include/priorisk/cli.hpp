#pragma once

#include <map>
#include <string>
#include <vector>

namespace priorisk {

// Exit codes: 0 success, 2 bad input, 3 invariant violation.
int run_cli(const std::vector<std::string>& args);

// Runs one experiment from a resolved configuration and returns the emitted
// file contents keyed by file name. Exposed for reproducibility tests.
struct ExperimentOutput {
    std::string csv_name, csv;
    std::string svg_name, svg;
    std::string manifest_name, manifest;
    std::string report;  // human-readable summary printed to stdout
};

ExperimentOutput run_experiment(const std::map<std::string, std::string>& cfg);

}  // namespace priorisk
