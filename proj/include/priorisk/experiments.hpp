#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "priorisk/bounds_estimation.hpp"
#include "priorisk/risk_core.hpp"

namespace priorisk {

struct CurvePoint {
    int n = 0;
    double value = 0.0;
    double std_error = 0.0;
};

struct CurveSeries {
    std::string label;
    std::vector<CurvePoint> points;
};

// Optimized two-point lower bound for Bernoulli means on [0,1] as a function
// of n. The uniform prior is labeled "minimax", everything else "prioritized".
CurveSeries bernoulli_experiment(const Prior& prior, const std::vector<int>& n_list,
                                 int grid_points = 101);

// Fixed-design comparison: closed-form bounds for two regressor matrices with
// ||Z||_F <= ||Z'||_F and a shared per-coordinate weight, plus the implied
// sample-cost thresholds (the 1/8 variants).
struct LogisticReport {
    double lambda = 0.0;
    int d = 0;
    double frob_z = 0.0, frob_zprime = 0.0;
    double bound_z = 0.0, bound_zprime = 0.0;          // (1/16) d^{3/2} / (lambda ||.||)
    double threshold_z = 0.0, threshold_zprime = 0.0;  // (1/8)  d^{3/2} / (lambda ||.||)
    bool ordering_ok = false;  // bound_z >= bound_zprime and threshold_z >= threshold_zprime
};

LogisticReport logistic_experiment(const RegressorMatrix& Z, const RegressorMatrix& Zprime,
                                   double lambda);

// Heavy-tail environment study: 50 exponents in (0,5], priority bump at 2.5,
// rank support 400, synthetic policy loss matrix, soft multi-hypothesis lower
// bounds per nested action-subset size.
struct ZipfConfig {
    int num_exponents = 50;
    double exponent_max = 5.0;
    int support = 400;
    double cap = 50.0;    // loss ceiling
    double base = 5.0;    // loss floor
    double slope = 90.0;  // cost per unit of rank-percentile mismatch
};

std::vector<double> zipf_exponent_grid(const ZipfConfig& cfg);

// L(theta_r, a_c) = E_{x ~ Zipf(theta_r)} min(cap, base + slope * |F_r(x) - F_c(x)|).
std::vector<std::vector<double>> zipf_loss_matrix(const std::vector<double>& exponents,
                                                  const ZipfConfig& cfg);

// Deterministic coverage order of a scalar set: start nearest the domain
// midpoint, then repeatedly take the point farthest from those chosen (ties
// to the smaller value). Size-s subsets are prefixes, hence nested.
std::vector<int> coverage_order(const std::vector<double>& xs);
std::vector<int> coverage_subset(const std::vector<double>& xs, int size);

std::vector<CurveSeries> zipf_experiment(const std::vector<int>& subset_sizes,
                                         const std::vector<int>& n_list, const ZipfConfig& cfg,
                                         const std::vector<std::vector<double>>* external_loss =
                                             nullptr);

// Monte Carlo prioritized risk of three posterior-mean learners under the
// Beta(1,2) priority weight; one series per learner. All learners and all
// grid cells score the same replicate draws (one substream per (n index,
// replicate)), so differences between series are paired estimates rather
// than sums of independent noise.
std::vector<CurveSeries> upper_bound_experiment(const std::vector<int>& n_list,
                                                long num_datasets, uint64_t seed,
                                                int grid_points = 101);

// Separation between two posterior-mean rules' weighted sup risks at one n,
// both rules scored on one shared dataset stream (substream per replicate
// derived from `seed`). The gap's standard error comes from batch means over
// that stream, so it measures the uncertainty of the paired difference, not
// of two independent estimates. Passing the per-n substream seed used by
// upper_bound_experiment reproduces its series values exactly.
struct SupGapEstimate {
    double sup_small = 0.0;  // weighted sup risk of the first rule
    double sup_big = 0.0;    // weighted sup risk of the second rule
    double gap = 0.0;        // sup_big - sup_small
    double std_error = 0.0;  // batch-mean standard error of the gap
};

SupGapEstimate posterior_sup_gap(double alpha_small, double beta_small, double alpha_big,
                                 double beta_big, int n, long num_datasets, uint64_t seed,
                                 int grid_points = 101);

}  // namespace priorisk
