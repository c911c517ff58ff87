#include "priorisk/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "priorisk/gfano.hpp"
#include "priorisk/rng.hpp"

namespace priorisk {

CurveSeries bernoulli_experiment(const Prior& prior, const std::vector<int>& n_list,
                                 int grid_points) {
    if (n_list.empty()) throw std::invalid_argument("empty n list");
    ParamGrid domain = ParamGrid::uniform_scalar(0.0, 1.0, grid_points, prior);
    Family family = Family::bernoulli();

    CurveSeries series;
    series.label = prior.label() == "uniform" ? "minimax" : "prioritized";
    for (int n : n_list) {
        BoundResult b = lecam_optimize(domain, family, prior, n);
        series.points.push_back({n, b.value, 0.0});
    }
    return series;
}

LogisticReport logistic_experiment(const RegressorMatrix& Z, const RegressorMatrix& Zprime,
                                   double lambda) {
    if (Z.dims() != Zprime.dims()) throw std::invalid_argument("coordinate count mismatch");
    if (!(lambda >= 1.0)) throw std::invalid_argument("weight must be at least 1");
    if (Z.frobenius_norm() > Zprime.frobenius_norm())
        throw std::invalid_argument("expected ||Z|| <= ||Z'||");

    int d = Z.dims();
    std::vector<double> lambdas(static_cast<size_t>(d), lambda);
    LogisticReport rep;
    rep.lambda = lambda;
    rep.d = d;
    rep.frob_z = Z.frobenius_norm();
    rep.frob_zprime = Zprime.frobenius_norm();
    rep.bound_z = logistic_closed_form(Z, lambdas).value;
    rep.bound_zprime = logistic_closed_form(Zprime, lambdas).value;
    double d32 = std::pow(static_cast<double>(d), 1.5);
    rep.threshold_z = d32 / (8.0 * lambda * rep.frob_z);
    rep.threshold_zprime = d32 / (8.0 * lambda * rep.frob_zprime);
    rep.ordering_ok =
        rep.bound_z >= rep.bound_zprime && rep.threshold_z >= rep.threshold_zprime;
    return rep;
}

std::vector<double> zipf_exponent_grid(const ZipfConfig& cfg) {
    if (cfg.num_exponents < 1) throw std::invalid_argument("need at least one exponent");
    std::vector<double> xs(static_cast<size_t>(cfg.num_exponents));
    for (int k = 1; k <= cfg.num_exponents; ++k)
        xs[static_cast<size_t>(k - 1)] = cfg.exponent_max * k / cfg.num_exponents;
    return xs;
}

std::vector<std::vector<double>> zipf_loss_matrix(const std::vector<double>& exponents,
                                                  const ZipfConfig& cfg) {
    Family family = Family::zipf(cfg.support);
    size_t t = exponents.size();

    // Per-exponent mass and CDF over ranks.
    std::vector<std::vector<double>> mass(t), cdf(t);
    for (size_t r = 0; r < t; ++r) {
        mass[r] = family.mass(Param(exponents[r]));
        cdf[r].resize(mass[r].size());
        double s = 0.0;
        for (size_t x = 0; x < mass[r].size(); ++x) {
            s += mass[r][x];
            cdf[r][x] = s;
        }
    }

    // Cost of running the policy tuned to exponent c in the environment with
    // exponent r: expected capped penalty of the rank-percentile mismatch.
    std::vector<std::vector<double>> L(t, std::vector<double>(t));
    for (size_t r = 0; r < t; ++r)
        for (size_t c = 0; c < t; ++c) {
            double e = 0.0;
            for (size_t x = 0; x < mass[r].size(); ++x)
                e += mass[r][x] * std::min(cfg.cap, cfg.base + cfg.slope * std::fabs(cdf[r][x] - cdf[c][x]));
            L[r][c] = e;
        }
    return L;
}

std::vector<int> coverage_order(const std::vector<double>& xs) {
    if (xs.empty()) throw std::invalid_argument("empty set");
    size_t m = xs.size();
    std::vector<bool> taken(m, false);
    std::vector<int> order;
    order.reserve(m);

    double lo = *std::min_element(xs.begin(), xs.end());
    double hi = *std::max_element(xs.begin(), xs.end());
    double mid = 0.5 * (lo + hi);
    size_t first = 0;
    for (size_t i = 1; i < m; ++i)
        if (std::fabs(xs[i] - mid) < std::fabs(xs[first] - mid)) first = i;
    taken[first] = true;
    order.push_back(static_cast<int>(first));

    while (order.size() < m) {
        size_t pick = m;
        double best = -1.0;
        for (size_t i = 0; i < m; ++i) {
            if (taken[i]) continue;
            double dist = std::numeric_limits<double>::infinity();
            for (int j : order) dist = std::min(dist, std::fabs(xs[i] - xs[static_cast<size_t>(j)]));
            if (dist > best || (dist == best && pick < m && xs[i] < xs[pick])) {
                best = dist;
                pick = i;
            }
        }
        taken[pick] = true;
        order.push_back(static_cast<int>(pick));
    }
    return order;
}

std::vector<int> coverage_subset(const std::vector<double>& xs, int size) {
    if (size < 1 || size > static_cast<int>(xs.size())) throw std::invalid_argument("bad subset size");
    std::vector<int> order = coverage_order(xs);
    std::vector<int> subset(order.begin(), order.begin() + size);
    std::sort(subset.begin(), subset.end());
    return subset;
}

std::vector<CurveSeries> zipf_experiment(const std::vector<int>& subset_sizes,
                                         const std::vector<int>& n_list, const ZipfConfig& cfg,
                                         const std::vector<std::vector<double>>* external_loss) {
    if (subset_sizes.empty() || n_list.empty()) throw std::invalid_argument("empty size or n list");
    std::vector<double> exponents = zipf_exponent_grid(cfg);
    std::vector<std::vector<double>> L =
        external_loss ? *external_loss : zipf_loss_matrix(exponents, cfg);
    if (L.size() != exponents.size()) throw std::invalid_argument("loss rows must match exponents");

    Prior bump = Prior::gaussian_bump(0.5 * cfg.exponent_max);
    ParamGrid grid = ParamGrid::from_scalars(exponents, bump);
    Family family = Family::zipf(cfg.support);
    std::vector<double> weights(exponents.size(), 1.0 / static_cast<double>(exponents.size()));

    std::vector<CurveSeries> out;
    for (int size : subset_sizes) {
        std::vector<int> cols = coverage_subset(exponents, size);
        std::vector<std::vector<double>> sub(L.size());
        for (size_t r = 0; r < L.size(); ++r) {
            sub[r].reserve(cols.size());
            for (int c : cols) sub[r].push_back(L[r][static_cast<size_t>(c)]);
        }
        LossSpec loss = LossSpec::matrix(sub);

        CurveSeries series;
        series.label = "|A|=" + std::to_string(size);
        for (int n : n_list) {
            GFanoInstance inst = GFanoInstance::make(grid, weights, family, loss, n);
            series.points.push_back({n, gfano_prioritized_lower(inst).value, 0.0});
        }
        out.push_back(std::move(series));
    }
    return out;
}

namespace {

struct PosteriorRule {
    double alpha = 1.0;
    double beta = 1.0;
};

// Weighted sup risk of several posterior-mean rules over a Bernoulli theta
// grid, every rule and every cell scoring the same shared replicate draws
// (substream per replicate). Sampling matches risk_mc's convention: the i-th
// observation is 1 iff the i-th uniform is >= 1 - theta. Also returns, per
// rule, the sup of each batch's mean curve so callers can measure the
// uncertainty of paired sup differences with batch means.
struct SharedSupStats {
    std::vector<double> sup;                      // per rule, weighted sup risk
    std::vector<double> se;                       // per rule, std error at the sup cell
    std::vector<std::vector<double>> batch_sup;   // [rule][batch]
};

SharedSupStats shared_posterior_sup(const std::vector<PosteriorRule>& rules,
                                    const ParamGrid& grid, int n, long num_datasets,
                                    uint64_t seed, int batches) {
    if (n < 0) throw std::invalid_argument("negative sample count");
    if (num_datasets < 2) throw std::invalid_argument("need at least 2 datasets");
    for (const PosteriorRule& rule : rules)
        if (!(rule.alpha > 0.0) || !(rule.beta > 0.0))
            throw std::invalid_argument("posterior parameters must be positive");

    size_t num_rules = rules.size();
    size_t cells = static_cast<size_t>(grid.size());
    long nds = num_datasets;
    int nb = static_cast<int>(std::min<long>(batches, nds));

    std::vector<double> thr(cells), wt(cells), theta(cells);
    for (size_t c = 0; c < cells; ++c) {
        theta[c] = grid.point(static_cast<int>(c)).scalar();
        thr[c] = 1.0 - theta[c];
        wt[c] = grid.prior_value(static_cast<int>(c));
    }

    std::vector<std::vector<double>> sum(num_rules, std::vector<double>(cells, 0.0));
    std::vector<std::vector<double>> sumsq(num_rules, std::vector<double>(cells, 0.0));
    std::vector<std::vector<std::vector<double>>> bsum(
        num_rules, std::vector<std::vector<double>>(static_cast<size_t>(nb),
                                                    std::vector<double>(cells, 0.0)));
    std::vector<long> bcount(static_cast<size_t>(nb), 0);

    std::vector<double> u(static_cast<size_t>(n));
    for (long r = 0; r < nds; ++r) {
        SplitMix64 rng(derive_seed(seed, {static_cast<uint64_t>(r)}));
        for (int i = 0; i < n; ++i) u[static_cast<size_t>(i)] = rng.uniform01();
        std::sort(u.begin(), u.end());
        size_t b = static_cast<size_t>((r * nb) / nds);
        ++bcount[b];
        for (size_t c = 0; c < cells; ++c) {
            long ones = n - (std::lower_bound(u.begin(), u.end(), thr[c]) - u.begin());
            for (size_t e = 0; e < num_rules; ++e) {
                double est = (rules[e].alpha + static_cast<double>(ones)) /
                             (rules[e].alpha + rules[e].beta + static_cast<double>(n));
                double l = wt[c] * std::fabs(est - theta[c]);
                sum[e][c] += l;
                sumsq[e][c] += l * l;
                bsum[e][b][c] += l;
            }
        }
    }

    SharedSupStats out;
    out.sup.assign(num_rules, 0.0);
    out.se.assign(num_rules, 0.0);
    out.batch_sup.assign(num_rules, std::vector<double>(static_cast<size_t>(nb), 0.0));
    double dn = static_cast<double>(nds);
    for (size_t e = 0; e < num_rules; ++e) {
        size_t arg = 0;
        double best = -1.0;
        for (size_t c = 0; c < cells; ++c) {
            double mean = sum[e][c] / dn;
            if (mean > best) {
                best = mean;
                arg = c;
            }
        }
        double var = (sumsq[e][arg] - dn * best * best) / (dn - 1.0);
        if (var < 0.0) var = 0.0;
        out.sup[e] = best;
        out.se[e] = std::sqrt(var / dn);
        for (size_t b = 0; b < static_cast<size_t>(nb); ++b) {
            double bb = 0.0;
            for (size_t c = 0; c < cells; ++c)
                bb = std::max(bb, bsum[e][b][c] / static_cast<double>(bcount[b]));
            out.batch_sup[e][b] = bb;
        }
    }
    return out;
}

}  // namespace

std::vector<CurveSeries> upper_bound_experiment(const std::vector<int>& n_list,
                                                long num_datasets, uint64_t seed,
                                                int grid_points) {
    if (n_list.empty()) throw std::invalid_argument("empty n list");
    Prior weight = Prior::beta(1.0, 2.0);
    ParamGrid grid = ParamGrid::uniform_scalar(0.0, 1.0, grid_points, weight);

    std::vector<std::string> labels = {"matched-beta-1-2", "flat-beta-1-1", "skewed-beta-1-4"};
    std::vector<PosteriorRule> rules = {{1.0, 2.0}, {1.0, 1.0}, {1.0, 4.0}};

    std::vector<CurveSeries> out(labels.size());
    for (size_t e = 0; e < labels.size(); ++e) out[e].label = labels[e];
    for (size_t k = 0; k < n_list.size(); ++k) {
        SharedSupStats stats = shared_posterior_sup(
            rules, grid, n_list[k], num_datasets, derive_seed(seed, {static_cast<uint64_t>(k)}),
            100);
        for (size_t e = 0; e < labels.size(); ++e)
            out[e].points.push_back({n_list[k], stats.sup[e], stats.se[e]});
    }
    return out;
}

SupGapEstimate posterior_sup_gap(double alpha_small, double beta_small, double alpha_big,
                                 double beta_big, int n, long num_datasets, uint64_t seed,
                                 int grid_points) {
    Prior weight = Prior::beta(1.0, 2.0);
    ParamGrid grid = ParamGrid::uniform_scalar(0.0, 1.0, grid_points, weight);
    std::vector<PosteriorRule> rules = {{alpha_small, beta_small}, {alpha_big, beta_big}};
    SharedSupStats stats = shared_posterior_sup(rules, grid, n, num_datasets, seed, 100);

    SupGapEstimate g;
    g.sup_small = stats.sup[0];
    g.sup_big = stats.sup[1];
    g.gap = g.sup_big - g.sup_small;

    size_t nb = stats.batch_sup[0].size();
    if (nb >= 2) {
        double mean = 0.0;
        for (size_t b = 0; b < nb; ++b) mean += stats.batch_sup[1][b] - stats.batch_sup[0][b];
        mean /= static_cast<double>(nb);
        double ss = 0.0;
        for (size_t b = 0; b < nb; ++b) {
            double d = stats.batch_sup[1][b] - stats.batch_sup[0][b] - mean;
            ss += d * d;
        }
        g.std_error = std::sqrt(ss / (static_cast<double>(nb - 1) * static_cast<double>(nb)));
    }
    return g;
}

}  // namespace priorisk
