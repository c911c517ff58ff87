#include "priorisk/bounds_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "priorisk/detail/golden.hpp"
#include "priorisk/errors.hpp"
#include "priorisk/oracle.hpp"

namespace priorisk {

namespace {

constexpr double kLn2 = 0.6931471805599453;

bool enumerable(const Family& family, int n, long cap) {
    long total = 1;
    for (int i = 0; i < n; ++i) {
        if (total > cap / family.support_size()) return false;
        total *= family.support_size();
    }
    return total <= cap;
}

// Total variation between the two n-fold dataset distributions, exact when
// the dataset space is enumerable.
std::pair<double, bool> product_tv(const Family& family, const Param& t0, const Param& t1, int n,
                                   long cap) {
    if (enumerable(family, n, cap)) return {tv_product_exact(family, t0, t1, n, cap), true};
    double kl_total = kl_dataset_total(family, t0, t1, n);
    return {std::min(1.0, std::sqrt(0.5 * kl_total)), false};
}

double clamp0(double x) { return x > 0.0 ? x : 0.0; }

}  // namespace

BoundResult lecam_bound(const Packing& two_point, const Family& family, int n, long exact_cap) {
    if (two_point.members.size() != 2) throw std::invalid_argument("two-point bound needs exactly two members");
    PackingCheck chk = verify_packing(two_point);
    if (!chk.valid) throw std::invalid_argument("packing invalid: balls overlap by " + std::to_string(chk.overlap));

    auto [tv_n, exact] = product_tv(family, two_point.members[0], two_point.members[1], n, exact_cap);

    LeCamWitness w;
    w.packing = two_point;
    w.n = n;
    w.divergence.tv = tv_n;
    w.divergence.tv_exactness = exact ? Exactness::Exact : Exactness::UpperBound;
    w.divergence.kl_forward = kl_dataset_total(family, two_point.members[0], two_point.members[1], n);
    w.divergence.kl_reverse = kl_dataset_total(family, two_point.members[1], two_point.members[0], n);

    BoundResult res;
    res.method = BoundMethod::LeCam;
    res.n = n;
    res.value = 0.5 * two_point.delta * clamp0(1.0 - tv_n);
    res.witness = std::move(w);
    return res;
}

BoundResult lecam_optimize(const ParamGrid& domain, const Family& family, const Prior& prior,
                           int n, const LeCamSearchConfig& cfg) {
    if (!domain.scalar()) throw std::invalid_argument("search needs a scalar domain");
    double lo = domain.min_scalar(), hi = domain.max_scalar();
    double span = hi - lo;
    if (!(span > 0.0)) throw std::invalid_argument("degenerate domain");

    // Value of the symmetric candidate (center c, half-width w) with delta at
    // its feasibility maximum.
    auto eval = [&](double c, double w) -> double {
        double t0 = c - w, t1 = c + w;
        if (!(w > 0.0) || t0 < lo || t1 > hi) return -1.0;
        double pi0 = prior(t0), pi1 = prior(t1);
        if (!(pi0 > 0.0) || !(pi1 > 0.0)) return 0.0;  // zero-weight endpoint: delta collapses
        double delta = max_delta_two_point(Param(t0), Param(t1), pi0, pi1);
        auto [tv_n, exact] = product_tv(family, Param(t0), Param(t1), n, cfg.exact_cap);
        (void)exact;
        return 0.5 * delta * clamp0(1.0 - tv_n);
    };

    double best_val = -1.0, best_c = 0.0, best_w = 0.0;
    int c_steps = static_cast<int>(std::round((cfg.center_hi - cfg.center_lo) / cfg.center_step));
    int w_steps = static_cast<int>(std::round((cfg.width_hi - cfg.width_lo) / cfg.width_step));
    for (int ic = 0; ic <= c_steps; ++ic) {
        double c = lo + (cfg.center_lo + ic * cfg.center_step) * span;
        double col_val = -1.0, col_w = 0.0;
        for (int iw = 0; iw <= w_steps; ++iw) {
            double w = (cfg.width_lo + iw * cfg.width_step) * span;
            double v = eval(c, w);
            if (v > col_val) { col_val = v; col_w = w; }
        }
        if (cfg.refine_width) {
            // The grid floor on w is too coarse once optimal widths shrink
            // like n^{-1/2}; refine within one grid step of the column best.
            double w_cap = std::min({c - lo, hi - c, cfg.width_hi * span});
            if (w_cap > 0.0) {
                double w_center = col_val > 0.0 ? col_w : cfg.width_lo * span;
                double w_lo = std::max(1e-9 * span, w_center - cfg.width_step * span);
                double w_hi = std::min(w_cap, w_center + cfg.width_step * span);
                if (w_hi > w_lo) {
                    auto [wx, wv] = detail::golden_max([&](double w) { return eval(c, w); }, w_lo,
                                                       w_hi, 1e-10 * span);
                    if (wv > col_val) { col_val = wv; col_w = wx; }
                }
            }
        }
        if (col_val > best_val) { best_val = col_val; best_c = c; best_w = col_w; }
    }
    if (best_val < 0.0) throw std::invalid_argument("no feasible candidate in the search ranges");

    Packing p;
    p.members = {Param(best_c - best_w), Param(best_c + best_w)};
    p.prior_values = {std::max(prior(best_c - best_w), 1e-300), std::max(prior(best_c + best_w), 1e-300)};
    p.metric = LossSpec::Rho::AbsDiff;
    p.delta = max_delta_two_point(p.members[0], p.members[1], p.prior_values[0], p.prior_values[1]);
    return lecam_bound(p, family, n, cfg.exact_cap);
}

BoundResult fano_bound(const Packing& packing, const Family& family, int n, InfoBound info) {
    if (packing.members.size() < 2)
        throw DegenerateIndexSet("multi-hypothesis bound needs at least two members");
    PackingCheck chk = verify_packing(packing);
    if (!chk.valid) throw std::invalid_argument("packing invalid");

    size_t m = packing.members.size();
    std::vector<double> uniform(m, 1.0 / static_cast<double>(m));
    double info_upper = info == InfoBound::Mixture
                            ? mutual_information_upper(packing.members, uniform, family, n)
                            : mutual_information_pairwise_upper(packing.members, family, n);

    FanoWitness w;
    w.packing = packing;
    w.info_upper = info_upper;
    w.info_kind = info;

    BoundResult res;
    res.method = BoundMethod::Fano;
    res.n = n;
    res.value = packing.delta *
                clamp0(1.0 - (info_upper + kLn2) / std::log(static_cast<double>(m)));
    res.witness = std::move(w);
    return res;
}

BoundResult assouad_bound(const HammingSeparation& sep, const Family& family, int n,
                          const std::vector<Param>& grid_points, long exact_cap) {
    SeparationCheck chk = verify_hamming_separation(sep, grid_points);
    if (!chk.valid) throw std::invalid_argument("separation invalid at member " + std::to_string(chk.member));

    int d = sep.d;
    size_t members = sep.members.size();
    AssouadWitness w;
    w.delta = sep.delta;
    w.d = d;

    BoundResult res;
    res.method = BoundMethod::Assouad;
    res.n = n;

    if (enumerable(family, n, exact_cap)) {
        // Exact per-coordinate total variation between the two conditioned
        // mixtures of n-fold dataset distributions.
        std::vector<std::vector<std::vector<double>>> obs_mass(members);
        for (size_t m = 0; m < members; ++m) {
            obs_mass[m].reserve(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) obs_mass[m].push_back(family.mass_at(sep.members[m], i));
        }
        std::vector<double> acc(static_cast<size_t>(d), 0.0);
        std::vector<double> mass(members);
        double half = static_cast<double>(members) / 2.0;
        for_each_dataset(family.support_size(), n, [&](const std::vector<int>& atoms) {
            for (size_t m = 0; m < members; ++m) {
                double p = 1.0;
                for (int i = 0; i < n; ++i)
                    p *= obs_mass[m][static_cast<size_t>(i)][static_cast<size_t>(atoms[static_cast<size_t>(i)])];
                mass[m] = p;
            }
            for (int j = 0; j < d; ++j) {
                double plus = 0.0, minus = 0.0;
                for (size_t m = 0; m < members; ++m)
                    ((static_cast<int>(m) >> j) & 1 ? plus : minus) += mass[m];
                acc[static_cast<size_t>(j)] += std::fabs(plus / half - minus / half);
            }
        });
        double total = 0.0;
        w.tv_terms.resize(static_cast<size_t>(d));
        for (int j = 0; j < d; ++j) {
            double tv_j = 0.5 * acc[static_cast<size_t>(j)];
            w.tv_terms[static_cast<size_t>(j)] = tv_j;
            total += clamp0(1.0 - tv_j);
        }
        w.exact = true;
        res.value = sep.delta * total;
    } else {
        // Cauchy-Schwarz over coordinates, convexity over vertex pairs, then
        // Pinsker on each pair of product distributions.
        double sum_sq = 0.0;
        for (int j = 0; j < d; ++j)
            for (size_t m = 0; m < members; ++m) {
                size_t flip = m ^ (static_cast<size_t>(1) << j);
                double sym_kl = kl_dataset_total(family, sep.members[m], sep.members[flip], n) +
                                kl_dataset_total(family, sep.members[flip], sep.members[m], n);
                sum_sq += std::min(1.0, 0.25 * sym_kl);  // bound on TV^2, itself at most 1
            }
        double cs = std::sqrt(sum_sq / (static_cast<double>(d) * static_cast<double>(members)));
        w.cs_term = cs;
        w.exact = false;
        res.value = static_cast<double>(d) * sep.delta * clamp0(1.0 - cs);
    }
    res.witness = std::move(w);
    return res;
}

BoundResult logistic_closed_form(const RegressorMatrix& Z, const std::vector<double>& lambdas) {
    int d = Z.dims();
    if (static_cast<int>(lambdas.size()) != d)
        throw std::invalid_argument("need one weight per coordinate");
    for (double l : lambdas)
        if (!(l >= 1.0)) throw std::invalid_argument("coordinate weights must be at least 1");

    double sum_sq = 0.0;
    for (int j = 0; j < d; ++j) {
        double lj2 = lambdas[static_cast<size_t>(j)] * lambdas[static_cast<size_t>(j)];
        for (int i = 0; i < Z.observations(); ++i) sum_sq += lj2 * Z.z(i, j) * Z.z(i, j);
    }

    LogisticClosedWitness w;
    w.lambdas = lambdas;
    w.denom = std::sqrt(sum_sq);
    w.equal_lambda = std::all_of(lambdas.begin(), lambdas.end(),
                                 [&](double l) { return l == lambdas.front(); });

    double d32 = std::pow(static_cast<double>(d), 1.5);
    BoundResult res;
    res.method = BoundMethod::AssouadLogisticClosed;
    res.n = Z.observations();
    res.value = sum_sq == 0.0 ? std::numeric_limits<double>::infinity() : d32 / (16.0 * w.denom);

    if (w.equal_lambda && sum_sq > 0.0) {
        w.equal_lambda_value = d32 / (16.0 * lambdas.front() * Z.frobenius_norm());
        double scale = std::max(res.value, 1.0);
        if (std::fabs(w.equal_lambda_value - res.value) > 1e-12 * scale)
            throw std::logic_error("equal-weight form disagrees with the general form");
    }
    res.witness = std::move(w);
    return res;
}

std::vector<double> lambda_from_prior(const std::vector<std::pair<double, double>>& pairs) {
    if (pairs.empty()) throw std::invalid_argument("need at least one coordinate pair");
    std::vector<double> lambdas;
    lambdas.reserve(pairs.size());
    for (auto [plus, minus] : pairs) {
        if (!(plus > 0.0 && plus < 1.0) || !(minus > 0.0 && minus < 1.0))
            throw std::invalid_argument("pair weights must lie in (0,1)");
        if (std::fabs(plus + minus - 1.0) > 1e-9)
            throw std::invalid_argument("pair weights must sum to 1");
        lambdas.push_back(0.25 * (1.0 / plus + 1.0 / minus));
    }
    return lambdas;
}

ReductionCheckResult reduction_check(const Learner& learner, const Packing& packing,
                                     const Family& family, const ParamGrid& grid, int n,
                                     const EvalSpec& spec) {
    PackingCheck chk = verify_packing(packing);
    if (!chk.valid) throw std::invalid_argument("packing invalid");

    LossSpec loss = LossSpec::pseudometric(packing.metric);
    PrioritizedRisk lhs = learner_prioritized_risk(grid, family, learner, loss, n, spec);

    // Decoder induced by the learner: nearest member in the weighted metric,
    // ties to the smallest index.
    auto decode = [&](const Param& est) {
        int best = 0;
        double best_d = packing.prior_values[0] * loss.rho(packing.members[0], est);
        for (size_t v = 1; v < packing.members.size(); ++v) {
            double dv = packing.prior_values[v] * loss.rho(packing.members[v], est);
            if (dv < best_d) { best_d = dv; best = static_cast<int>(v); }
        }
        return best;
    };

    double err = 0.0, err_se = 0.0;
    size_t members = packing.members.size();
    if (spec.mode == EvalSpec::Mode::Exact) {
        Dataset ds;
        ds.atoms.resize(static_cast<size_t>(n));
        ds.values.resize(static_cast<size_t>(n));
        for (size_t v = 0; v < members; ++v) {
            std::vector<std::vector<double>> obs_mass;
            for (int i = 0; i < n; ++i) obs_mass.push_back(family.mass_at(packing.members[v], i));
            double ev = 0.0;
            for_each_dataset(family.support_size(), n, [&](const std::vector<int>& atoms) {
                double p = 1.0;
                for (int i = 0; i < n; ++i)
                    p *= obs_mass[static_cast<size_t>(i)][static_cast<size_t>(atoms[static_cast<size_t>(i)])];
                if (p == 0.0) return;
                for (int i = 0; i < n; ++i) {
                    ds.atoms[static_cast<size_t>(i)] = atoms[static_cast<size_t>(i)];
                    ds.values[static_cast<size_t>(i)] = family.atom_value(atoms[static_cast<size_t>(i)]);
                }
                Action a = learner.rule(ds);
                const Param* est = std::get_if<Param>(&a);
                if (!est) throw std::invalid_argument("reduction check needs an estimating learner");
                if (decode(*est) != static_cast<int>(v)) ev += p;
            });
            err += ev / static_cast<double>(members);
        }
    } else {
        double sum = 0.0, count = 0.0;
        Dataset ds;
        ds.atoms.resize(static_cast<size_t>(n));
        ds.values.resize(static_cast<size_t>(n));
        for (size_t v = 0; v < members; ++v) {
            std::vector<std::vector<double>> cum;
            for (int i = 0; i < n; ++i) {
                std::vector<double> c = family.mass_at(packing.members[v], i);
                for (size_t a = 1; a < c.size(); ++a) c[a] += c[a - 1];
                c.back() = 1.0;
                cum.push_back(std::move(c));
            }
            for (long r = 0; r < spec.num_datasets; ++r) {
                SplitMix64 rng(derive_seed(spec.seed, {v, static_cast<uint64_t>(r)}));
                for (int i = 0; i < n; ++i) {
                    double u = rng.uniform01();
                    const std::vector<double>& c = cum[static_cast<size_t>(i)];
                    int atom = static_cast<int>(std::upper_bound(c.begin(), c.end(), u) - c.begin());
                    if (atom >= static_cast<int>(c.size())) atom = static_cast<int>(c.size()) - 1;
                    ds.atoms[static_cast<size_t>(i)] = atom;
                    ds.values[static_cast<size_t>(i)] = family.atom_value(atom);
                }
                Action a = learner.rule(ds);
                const Param* est = std::get_if<Param>(&a);
                if (!est) throw std::invalid_argument("reduction check needs an estimating learner");
                if (decode(*est) != static_cast<int>(v)) sum += 1.0;
                count += 1.0;
            }
        }
        err = sum / count;
        err_se = std::sqrt(std::max(0.0, err * (1.0 - err) / count));
    }

    ReductionCheckResult out;
    out.lhs = lhs.value;
    out.rhs = packing.delta * err;
    out.gap = out.lhs - out.rhs;
    out.combined_std_error =
        std::sqrt(lhs.std_error * lhs.std_error + packing.delta * packing.delta * err_se * err_se);
    double slack = spec.mode == EvalSpec::Mode::Exact ? 1e-12 : 4.0 * out.combined_std_error;
    out.holds = out.gap >= -slack;
    return out;
}

}  // namespace priorisk
