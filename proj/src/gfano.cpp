#include "priorisk/gfano.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "priorisk/detail/golden.hpp"
#include "priorisk/divergences.hpp"
#include "priorisk/errors.hpp"

namespace priorisk {

namespace {

void check_weights(const std::vector<double>& w) {
    double s = 0.0;
    for (double v : w) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("weights must be finite and non-negative");
        s += v;
    }
    if (std::fabs(s - 1.0) > 1e-12) throw std::invalid_argument("weights must form a probability vector");
}

}  // namespace

GFanoInstance GFanoInstance::make(ParamGrid grid, std::vector<double> weights, Family family,
                                  LossSpec loss, int n) {
    if (!loss.is_matrix()) throw std::invalid_argument("instance needs a matrix loss");
    if (loss.row_count() != grid.size()) throw std::invalid_argument("loss rows must match grid points");
    if (loss.action_count() < 1) throw EmptyActionSet("instance needs at least one action");
    if (static_cast<int>(weights.size()) != grid.size())
        throw std::invalid_argument("one weight per grid point required");
    check_weights(weights);
    if (n < 0) throw std::invalid_argument("negative sample count");
    int req = family.required_sample_count();
    if (req > 0 && n != req)
        throw std::invalid_argument("fixed-design family requires n = " + std::to_string(req));
    GFanoInstance inst{std::move(grid), std::move(weights), std::move(family), std::move(loss), n};
    return inst;
}

double rho_star(const GFanoInstance& instance, double lambda, bool weighted) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be positive");
    int rows = instance.grid.size();
    int actions = instance.loss.action_count();

    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> args(static_cast<size_t>(rows));
    for (int a = 0; a < actions; ++a) {
        // log sum_theta w(theta) exp(-lambda Lt), max-shifted.
        double m = -std::numeric_limits<double>::infinity();
        int live = 0;
        for (int t = 0; t < rows; ++t) {
            double w = instance.weights[static_cast<size_t>(t)];
            if (w == 0.0) continue;
            double lt = instance.loss.matrix_at(t, a);
            if (weighted) lt *= instance.grid.prior_value(t);
            double arg = std::log(w) - lambda * lt;
            args[static_cast<size_t>(live++)] = arg;
            m = std::max(m, arg);
        }
        if (live == 0) throw std::invalid_argument("weights are all zero");
        double s = 0.0;
        for (int t = 0; t < live; ++t) s += std::exp(args[static_cast<size_t>(t)] - m);
        best = std::max(best, m + std::log(s));
    }
    return -best;
}

BoundResult gfano_bayes_lower(const GFanoInstance& instance, double lambda, bool weighted) {
    double rs = rho_star(instance, lambda, weighted);
    double info = mutual_information_upper(instance.grid.points(), instance.weights,
                                           instance.family, instance.n);
    GFanoWitness w;
    w.lambda = lambda;
    w.rho_star = rs;
    w.info_upper = info;
    w.weighted = weighted;

    BoundResult res;
    res.method = BoundMethod::GFano;
    res.n = instance.n;
    res.value = std::max(0.0, (rs - info) / lambda);
    res.witness = std::move(w);
    return res;
}

BoundResult gfano_prioritized_lower(const GFanoInstance& instance, const GFanoSearchConfig& cfg) {
    if (cfg.log2_hi < cfg.log2_lo) throw std::invalid_argument("empty lambda range");
    double info = mutual_information_upper(instance.grid.points(), instance.weights,
                                           instance.family, instance.n);
    auto value_at = [&](double lambda) {
        return std::max(0.0, (rho_star(instance, lambda, true) - info) / lambda);
    };

    double best_lambda = std::exp2(static_cast<double>(cfg.log2_lo));
    double best_val = value_at(best_lambda);
    int best_k = cfg.log2_lo;
    for (int k = cfg.log2_lo + 1; k <= cfg.log2_hi; ++k) {
        double lambda = std::exp2(static_cast<double>(k));
        double v = value_at(lambda);
        if (v > best_val) { best_val = v; best_lambda = lambda; best_k = k; }
    }

    // Refine on the log scale between the neighbors of the best grid point.
    double t_lo = static_cast<double>(std::max(cfg.log2_lo, best_k - 1));
    double t_hi = static_cast<double>(std::min(cfg.log2_hi, best_k + 1));
    if (t_hi > t_lo) {
        double tol = std::log2(1.0 + cfg.relative_tol);
        auto [tx, tv] = detail::golden_max([&](double t) { return value_at(std::exp2(t)); }, t_lo,
                                           t_hi, tol);
        if (tv > best_val) { best_val = tv; best_lambda = std::exp2(tx); }
    }

    GFanoWitness w;
    w.lambda = best_lambda;
    w.rho_star = rho_star(instance, best_lambda, true);
    w.info_upper = info;
    w.weighted = true;

    BoundResult res;
    res.method = BoundMethod::GFano;
    res.n = instance.n;
    res.value = best_val;
    res.witness = std::move(w);
    return res;
}

}  // namespace priorisk
