#pragma once

#include <vector>

#include "priorisk/risk_core.hpp"

namespace priorisk {

// Tiny fully-enumerable problem: ground truth for every bound. The dataset
// space (support^n) is enforced at or below the enumeration cap.
struct FiniteInstance {
    ParamGrid grid;
    std::vector<double> weights;  // probability vector of the random index
    Family family;
    LossSpec loss;  // matrix variant, rows aligned with grid
    int n = 0;
    long datasets = 0;

    static FiniteInstance make(ParamGrid grid, std::vector<double> weights, Family family,
                               LossSpec loss, int n, long cap = kDefaultEnumerationCap);
};

// Exact weighted-average optimal risk: per dataset the action minimizing the
// posterior expected (optionally prior-weighted) loss, ties to the smallest
// action index.
double bayes_risk_exact(const FiniteInstance& instance, bool weighted);

struct EnumeratedPrioritized {
    double value = 0.0;
    std::vector<int> learner_actions;  // optimal action per dataset, dataset-lexicographic
};

// Exact min over all deterministic learners of the grid-sup weighted risk,
// by enumerating every dataset-to-action table (|A|^(support^n) learners).
EnumeratedPrioritized prioritized_risk_enumerated(const FiniteInstance& instance,
                                                  long learner_cap = kDefaultEnumerationCap);

// Exact error of the optimal (posterior-mode) test for a uniformly chosen
// member generating n observations. Ties decode to the smallest index.
double optimal_test_error(const Family& family, const std::vector<Param>& members, int n,
                          long cap = kDefaultEnumerationCap);

// Exact information between a weighted index and the n-fold dataset, by full
// enumeration. Reference implementation for testing the mixture bound.
double exact_mutual_information(const std::vector<Param>& points,
                                const std::vector<double>& weights, const Family& family, int n,
                                long cap = kDefaultEnumerationCap);

}  // namespace priorisk
