#pragma once

#include <string>
#include <vector>

#include "priorisk/experiments.hpp"
#include "priorisk/risk_core.hpp"

namespace priorisk {

// Doubles are written with 17 significant digits so parsed values round-trip
// bit for bit.
std::string format_double(double x);

// Columns: series,label,n,value,std_error. One row per point.
std::string emit_curve_csv(const std::vector<CurveSeries>& series);
std::vector<CurveSeries> parse_curve_csv(const std::string& text);

// Loss matrix layout: header row "theta" then action labels; each following
// row starts with its parameter value.
struct LossMatrixCsv {
    std::vector<double> thetas;
    std::vector<std::string> action_labels;
    std::vector<std::vector<double>> entries;
};
std::string emit_loss_matrix_csv(const LossMatrixCsv& m);
LossMatrixCsv parse_loss_matrix_csv(const std::string& text);

// Regressor layout: one row per observation, one column per coordinate.
std::string emit_regressor_csv(const RegressorMatrix& Z);
RegressorMatrix parse_regressor_csv(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace priorisk
