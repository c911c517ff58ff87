#pragma once

#include <vector>

#include "priorisk/risk_core.hpp"

namespace priorisk {

// All divergences use natural logarithms. Mathematically infinite values are
// returned as +infinity rather than thrown.

enum class Exactness { Exact, UpperBound };

struct DivergenceValue {
    double kl_forward = 0.0;
    double kl_reverse = 0.0;
    double tv = 0.0;
    Exactness kl_forward_exactness = Exactness::Exact;
    Exactness kl_reverse_exactness = Exactness::Exact;
    Exactness tv_exactness = Exactness::Exact;
};

double kl_bernoulli(double p, double q);
double kl_categorical(const std::vector<double>& p, const std::vector<double>& q);
double tv_exact(const std::vector<double>& p, const std::vector<double>& q);

// min(1, sqrt(n * kl_single / 2)): Pinsker combined with tensorization of KL
// across n independent copies.
double tv_product_upper(double kl_single, int n);

// For p_a = 1/(1+e^a): (a-b)^2 upper-bounds the symmetric KL sum
// KL(p_a||p_b) + KL(p_b||p_a). Returns both sides.
struct SigmoidKlBound {
    double bound = 0.0;
    double exact_symmetric_kl = 0.0;
};
SigmoidKlBound binary_kl_sum_bound(double a, double b);

// Mixture bound on the information between a weighted index and n
// observations: n * sum_theta p(theta) KL(P_theta || P_bar) for iid families,
// the per-observation sum for fixed-design families. weights must form a
// probability vector.
double mutual_information_upper(const std::vector<Param>& points,
                                const std::vector<double>& weights, const Family& family, int n);

// Pairwise bound: n * max over ordered pairs of KL(P_theta || P_theta').
double mutual_information_pairwise_upper(const std::vector<Param>& points, const Family& family,
                                         int n);

// Exact total variation between the two n-fold dataset distributions,
// by enumeration (fast sufficient-statistic path for Bernoulli).
double tv_product_exact(const Family& family, const Param& theta0, const Param& theta1, int n,
                        long cap = kDefaultEnumerationCap);

// Sum over observations of KL between single-observation laws (n * single KL
// for iid families).
double kl_dataset_total(const Family& family, const Param& theta0, const Param& theta1, int n);

}  // namespace priorisk
