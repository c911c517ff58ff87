#pragma once

#include <vector>

#include "priorisk/bounds_estimation.hpp"
#include "priorisk/risk_core.hpp"

namespace priorisk {

// Instance for the soft multi-hypothesis bound: a weighted grid, a data
// family, a loss matrix over (grid point, action), and a sample count.
// weights is the probability vector of the random index; the grid's prior
// values weight the loss when the prioritized form is requested.
struct GFanoInstance {
    ParamGrid grid;
    std::vector<double> weights;
    Family family;
    LossSpec loss;  // matrix variant, rows aligned with grid
    int n = 0;

    static GFanoInstance make(ParamGrid grid, std::vector<double> weights, Family family,
                              LossSpec loss, int n);
};

// Soft-max loss level: -max_a log sum_theta weights(theta) exp(-lambda * L~),
// where L~ is the (optionally prior-weighted) loss. Computed with max-shifted
// log-sum-exp.
double rho_star(const GFanoInstance& instance, double lambda, bool weighted);

// (rho_star - I_upper)/lambda clamped at zero, with the mixture information
// bound standing in for the exact information.
BoundResult gfano_bayes_lower(const GFanoInstance& instance, double lambda, bool weighted);

struct GFanoSearchConfig {
    int log2_lo = -10, log2_hi = 10;   // lambda grid 2^lo .. 2^hi
    double relative_tol = 1e-6;        // golden-section stopping width on lambda
};

// Prioritized bound: prior-weighted loss, lambda maximized over the dyadic
// grid and refined by golden section around the best grid point. The result
// never falls below any grid evaluation.
BoundResult gfano_prioritized_lower(const GFanoInstance& instance,
                                    const GFanoSearchConfig& cfg = {});

}  // namespace priorisk
