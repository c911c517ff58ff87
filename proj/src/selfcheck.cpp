#include "priorisk/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "priorisk/bounds_estimation.hpp"
#include "priorisk/csv_io.hpp"
#include "priorisk/divergences.hpp"
#include "priorisk/gfano.hpp"
#include "priorisk/rng.hpp"
#include "priorisk/svg.hpp"

namespace priorisk {

namespace {

std::vector<std::vector<double>> pairwise_matrix(const std::vector<Param>& pts) {
    size_t m = pts.size();
    std::vector<std::vector<double>> L(m, std::vector<double>(m));
    for (size_t r = 0; r < m; ++r)
        for (size_t c = 0; c < m; ++c) L[r][c] = l1_distance(pts[r], pts[c]);
    return L;
}

std::vector<double> uniform_weights(int m) {
    return std::vector<double>(static_cast<size_t>(m), 1.0 / static_cast<double>(m));
}

// Vertices t * v of the d-cube, indexed like hypercube_index.
std::vector<Param> cube_members(double t, int d) {
    std::vector<Param> out;
    for (int idx = 0; idx < (1 << d); ++idx) {
        std::vector<int> v = hypercube_vertex(idx, d);
        std::vector<double> c(static_cast<size_t>(d));
        for (int j = 0; j < d; ++j) c[static_cast<size_t>(j)] = t * v[static_cast<size_t>(j)];
        out.emplace_back(std::move(c));
    }
    return out;
}

ChainInstance estimation_instance(std::string name, const ParamGrid& grid, Family family, int n,
                                  std::vector<double> weights, LossSpec::Rho metric) {
    LossSpec loss = LossSpec::matrix(pairwise_matrix(grid.points()));
    return ChainInstance{std::move(name),
                         FiniteInstance::make(grid, std::move(weights), std::move(family),
                                              std::move(loss), n),
                         true, metric, false, {}};
}

ChainInstance matrix_instance(std::string name, const ParamGrid& grid, Family family,
                              std::vector<std::vector<double>> entries, int n,
                              std::vector<double> weights) {
    return ChainInstance{std::move(name),
                         FiniteInstance::make(grid, std::move(weights), std::move(family),
                                              LossSpec::matrix(std::move(entries)), n),
                         false, LossSpec::Rho::AbsDiff, false, {}};
}

ChainInstance separation_instance(std::string name, const HammingSeparation& sep, Family family,
                                  int n, std::vector<double> weights, LossSpec::Rho metric) {
    ParamGrid grid = ParamGrid::from_points(sep.members, sep.prior_values);
    LossSpec loss = LossSpec::matrix(pairwise_matrix(sep.members));
    return ChainInstance{std::move(name),
                         FiniteInstance::make(grid, std::move(weights), std::move(family),
                                              std::move(loss), n),
                         true, metric, true, sep};
}

}  // namespace

std::vector<ChainInstance> built_in_chain_instances() {
    std::vector<ChainInstance> out;
    const Prior uni = Prior::uniform();
    const Prior b12 = Prior::beta(1.0, 2.0);
    Family bern = Family::bernoulli();

    out.push_back(estimation_instance(
        "bern-2pt-uniform-n1", ParamGrid::from_scalars({0.3, 0.7}, uni), bern, 1,
        uniform_weights(2), LossSpec::Rho::AbsDiff));
    out.push_back(estimation_instance(
        "bern-2pt-uniform-n3", ParamGrid::from_scalars({0.3, 0.7}, uni), bern, 3,
        uniform_weights(2), LossSpec::Rho::AbsDiff));
    out.push_back(estimation_instance(
        "bern-2pt-beta12-n2", ParamGrid::from_scalars({0.2, 0.6}, b12), bern, 2,
        uniform_weights(2), LossSpec::Rho::AbsDiff));
    out.push_back(estimation_instance(
        "bern-3pt-uniform-n2", ParamGrid::from_scalars({0.2, 0.5, 0.8}, uni), bern, 2,
        uniform_weights(3), LossSpec::Rho::AbsDiff));
    out.push_back(estimation_instance(
        "bern-3pt-skewed-n2",
        ParamGrid::from_points({Param(0.25), Param(0.5), Param(0.75)}, {0.5, 1.0, 1.5}), bern, 2,
        {0.2, 0.3, 0.5}, LossSpec::Rho::AbsDiff));
    out.push_back(estimation_instance(
        "bern-4pt-uniform-n2", ParamGrid::from_scalars({0.15, 0.35, 0.65, 0.85}, uni), bern, 2,
        uniform_weights(4), LossSpec::Rho::AbsDiff));
    {
        // Five points but only four allowed estimates: distances to a grid
        // subset keep the decision problem honest while capping the actions.
        std::vector<double> pts{0.1, 0.3, 0.5, 0.7, 0.9};
        std::vector<double> acts{0.1, 0.3, 0.7, 0.9};
        std::vector<std::vector<double>> L(5, std::vector<double>(4));
        for (size_t r = 0; r < 5; ++r)
            for (size_t c = 0; c < 4; ++c) L[r][c] = std::fabs(pts[r] - acts[c]);
        out.push_back(matrix_instance("bern-5pt-4act-n2", ParamGrid::from_scalars(pts, uni), bern,
                                      std::move(L), 2, uniform_weights(5)));
    }
    out.push_back(estimation_instance(
        "bern-2pt-wide-n3", ParamGrid::from_scalars({0.1, 0.9}, uni), bern, 3, uniform_weights(2),
        LossSpec::Rho::AbsDiff));
    out.push_back(estimation_instance(
        "bern-2pt-beta12-n3", ParamGrid::from_scalars({0.3, 0.8}, b12), bern, 3, {0.6, 0.4},
        LossSpec::Rho::AbsDiff));
    out.push_back(estimation_instance(
        "bern-3pt-uniform-n3", ParamGrid::from_scalars({0.2, 0.5, 0.8}, uni), bern, 3,
        uniform_weights(3), LossSpec::Rho::AbsDiff));

    Family zipf3 = Family::zipf(3);
    out.push_back(estimation_instance(
        "zipf-2pt-n1", ParamGrid::from_scalars({0.5, 2.0}, uni), zipf3, 1, uniform_weights(2),
        LossSpec::Rho::AbsDiff));
    out.push_back(estimation_instance(
        "zipf-2pt-n2", ParamGrid::from_points({Param(0.8), Param(1.6)}, {1.2, 0.7}), zipf3, 2,
        uniform_weights(2), LossSpec::Rho::AbsDiff));
    out.push_back(estimation_instance(
        "zipf-3pt-n2", ParamGrid::from_scalars({0.5, 1.0, 2.5}, uni), zipf3, 2,
        uniform_weights(3), LossSpec::Rho::AbsDiff));

    std::vector<Param> cat3_params{Param(0.0), Param(1.0), Param(2.0)};
    Family cat3 = Family::categorical(
        cat3_params, {{0.7, 0.2, 0.1}, {0.2, 0.6, 0.2}, {0.1, 0.2, 0.7}});
    out.push_back(estimation_instance(
        "cat3-3pt-n1", ParamGrid::from_points(cat3_params, {1.0, 1.0, 1.0}), cat3, 1,
        uniform_weights(3), LossSpec::Rho::AbsDiff));
    out.push_back(estimation_instance(
        "cat3-3pt-n2", ParamGrid::from_points(cat3_params, {1.0, 1.0, 1.0}), cat3, 2,
        uniform_weights(3), LossSpec::Rho::AbsDiff));
    std::vector<Param> cat2_params{Param(0.0), Param(1.0)};
    Family cat2 = Family::categorical(cat2_params, {{0.75, 0.25}, {0.35, 0.65}});
    out.push_back(estimation_instance(
        "cat2-2pt-n3", ParamGrid::from_points(cat2_params, {1.5, 0.5}), cat2, 3,
        uniform_weights(2), LossSpec::Rho::AbsDiff));

    // Sign-symmetric vertex families: the Hamming-separation bound applies.
    {
        std::vector<Param> members = cube_members(0.5, 2);
        Family fam = Family::categorical(members, {{0.55, 0.30, 0.15},
                                                   {0.40, 0.35, 0.25},
                                                   {0.30, 0.40, 0.30},
                                                   {0.20, 0.45, 0.35}});
        HammingSeparation sep{2, members, 0.5, {1.0, 1.0, 1.0, 1.0}};
        out.push_back(separation_instance("cat-hyper-d2-n1", sep, fam, 1, uniform_weights(4),
                                          LossSpec::Rho::L1));
        out.push_back(separation_instance("cat-hyper-d2-n2", sep, fam, 2, uniform_weights(4),
                                          LossSpec::Rho::L1));
    }
    {
        HammingSeparation sep = scaled_hypercube_separation(0.4, 2, {0.8, 1.2, 1.2, 0.8});
        Family fam = Family::categorical(sep.members, {{0.50, 0.30, 0.20},
                                                       {0.35, 0.35, 0.30},
                                                       {0.25, 0.40, 0.35},
                                                       {0.15, 0.45, 0.40}});
        out.push_back(separation_instance("cat-hyper-scaled-n1", sep, fam, 1, uniform_weights(4),
                                          LossSpec::Rho::L1));
    }
    {
        RegressorMatrix Z(2, 1, {1.0, 0.5});
        std::vector<Param> members{Param(-0.8), Param(0.8)};
        HammingSeparation sep{1, members, 0.8, {1.0, 1.0}};
        out.push_back(separation_instance("logit-d1-n2", sep, Family::logistic_labels(Z), 2,
                                          uniform_weights(2), LossSpec::Rho::AbsDiff));
    }
    {
        RegressorMatrix Z(2, 2, {1.0, 0.0, 0.0, 1.0});
        HammingSeparation sep{2, cube_members(0.6, 2), 0.6, {1.0, 1.0, 1.0, 1.0}};
        out.push_back(separation_instance("logit-d2-n2", sep, Family::logistic_labels(Z), 2,
                                          uniform_weights(4), LossSpec::Rho::L1));
    }
    {
        RegressorMatrix Z(3, 2, {1.0, 0.2, 0.3, 1.0, 0.5, 0.5});
        HammingSeparation sep{2, cube_members(0.5, 2), 0.5, {1.0, 1.0, 1.0, 1.0}};
        out.push_back(separation_instance("logit-d2-n3", sep, Family::logistic_labels(Z), 3,
                                          uniform_weights(4), LossSpec::Rho::L1));
    }
    {
        RegressorMatrix Z(2, 2, {0.8, 0.1, 0.2, 0.9});
        HammingSeparation sep = scaled_hypercube_separation(0.4, 2, {0.8, 1.2, 1.2, 0.8});
        out.push_back(separation_instance("logit-d2-weighted-n2", sep, Family::logistic_labels(Z),
                                          2, uniform_weights(4), LossSpec::Rho::L1));
    }

    out.push_back(matrix_instance(
        "matrix-bern-n1", ParamGrid::from_points({Param(0.25), Param(0.75)}, {1.3, 0.7}), bern,
        {{0.0, 2.0, 5.0}, {3.0, 1.0, 0.5}}, 1, {0.4, 0.6}));
    out.push_back(matrix_instance(
        "matrix-zipf-n2", ParamGrid::from_scalars({0.7, 1.8, 3.0}, uni), zipf3,
        {{0.0, 1.0, 3.0, 6.0}, {2.0, 0.5, 1.0, 4.0}, {5.0, 2.0, 0.5, 1.0}}, 2, {0.3, 0.4, 0.3}));
    std::vector<Param> cat4_params{Param(0.0), Param(1.0), Param(2.0), Param(3.0)};
    Family cat4 = Family::categorical(cat4_params, {{0.7, 0.2, 0.1},
                                                    {0.4, 0.4, 0.2},
                                                    {0.2, 0.5, 0.3},
                                                    {0.1, 0.3, 0.6}});
    out.push_back(matrix_instance(
        "matrix-cat-n1", ParamGrid::from_points(cat4_params, {2.0, 1.0, 1.0, 0.5}), cat4,
        {{0.0, 4.0}, {1.0, 2.0}, {2.0, 1.0}, {5.0, 0.5}}, 1, uniform_weights(4)));

    return out;
}

ChainReport run_inequality_chain(const ChainInstance& ci, double tol) {
    ChainReport rep;
    rep.name = ci.name;
    const FiniteInstance& fi = ci.instance;

    rep.enumerated = prioritized_risk_enumerated(fi).value;
    rep.bayes_weighted = bayes_risk_exact(fi, true);
    GFanoInstance gi = GFanoInstance::make(fi.grid, fi.weights, fi.family, fi.loss, fi.n);
    rep.gfano = gfano_prioritized_lower(gi).value;

    rep.lecam = rep.fano_mixture = rep.fano_pairwise = rep.assouad = -1.0;
    if (ci.estimation) {
        // Best two-point sub-packing of the grid.
        double best = 0.0;
        for (int u = 0; u < fi.grid.size(); ++u)
            for (int v = u + 1; v < fi.grid.size(); ++v) {
                Packing p;
                p.members = {fi.grid.point(u), fi.grid.point(v)};
                p.prior_values = {fi.grid.prior_value(u), fi.grid.prior_value(v)};
                p.metric = ci.metric;
                p.delta = max_delta_two_point(p.members[0], p.members[1], p.prior_values[0],
                                              p.prior_values[1]);
                best = std::max(best, lecam_bound(p, fi.family, fi.n).value);
            }
        rep.lecam = best;

        // The whole grid packs at the tightest pairwise feasibility limit.
        Packing all;
        all.members = fi.grid.points();
        all.prior_values = fi.grid.prior_values();
        all.metric = ci.metric;
        double dmin = std::numeric_limits<double>::infinity();
        for (int u = 0; u < fi.grid.size(); ++u)
            for (int v = u + 1; v < fi.grid.size(); ++v)
                dmin = std::min(dmin, max_delta_two_point(fi.grid.point(u), fi.grid.point(v),
                                                          fi.grid.prior_value(u),
                                                          fi.grid.prior_value(v)));
        all.delta = dmin;
        rep.fano_mixture = fano_bound(all, fi.family, fi.n, InfoBound::Mixture).value;
        rep.fano_pairwise = fano_bound(all, fi.family, fi.n, InfoBound::Pairwise).value;
    }
    if (ci.has_separation)
        rep.assouad = assouad_bound(ci.separation, fi.family, fi.n, fi.grid.points()).value;

    auto le = [&](double a, double b) { return a <= b + tol; };
    bool ok = rep.enumerated >= -tol && rep.bayes_weighted >= -tol &&
              le(rep.bayes_weighted, rep.enumerated) && le(rep.gfano, rep.bayes_weighted);
    for (double b : {rep.lecam, rep.fano_mixture, rep.fano_pairwise, rep.assouad})
        if (b >= 0.0 && !le(b, rep.enumerated)) ok = false;
    rep.ok = ok;

    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "enum=%.12g bayes=%.12g gfano=%.12g lecam=%.12g fanoM=%.12g fanoP=%.12g "
                  "assouad=%.12g",
                  rep.enumerated, rep.bayes_weighted, rep.gfano, rep.lecam, rep.fano_mixture,
                  rep.fano_pairwise, rep.assouad);
    rep.detail = buf;
    return rep;
}

std::vector<CheckLine> run_selftest() {
    std::vector<CheckLine> out;
    char buf[256];
    Family bern = Family::bernoulli();

    {
        SplitMix64 rng(0x51ef7e57ULL);
        double worst = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < 2000; ++i) {
            double p = 0.001 + 0.998 * rng.uniform01();
            double q = 0.001 + 0.998 * rng.uniform01();
            double tv = tv_exact({1.0 - p, p}, {1.0 - q, q});
            worst = std::max(worst, tv - std::sqrt(0.5 * kl_bernoulli(p, q)));
        }
        std::snprintf(buf, sizeof buf, "worst excess %.3g over 2000 pairs", worst);
        out.push_back({"tv-below-sqrt-half-kl", worst <= 1e-12, buf});
    }
    {
        SplitMix64 rng(0x7e450a11ULL);
        double worst = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < 100; ++i) {
            double p = 0.02 + 0.96 * rng.uniform01();
            double q = 0.02 + 0.96 * rng.uniform01();
            for (int n = 1; n <= 6; ++n) {
                double exact = tv_product_exact(bern, Param(p), Param(q), n);
                double upper = tv_product_upper(kl_bernoulli(p, q), n);
                worst = std::max(worst, exact - upper);
            }
        }
        std::snprintf(buf, sizeof buf, "worst excess %.3g", worst);
        out.push_back({"tensorized-tv-upper-dominates", worst <= 1e-9, buf});
    }
    {
        SplitMix64 rng(0xb10b0a11ULL);
        double worst = 0.0;
        for (int i = 0; i < 40; ++i) {
            double p = 0.02 + 0.96 * rng.uniform01();
            double q = 0.02 + 0.96 * rng.uniform01();
            for (int n = 1; n <= 8; ++n) {
                double fast = tv_product_exact(bern, Param(p), Param(q), n);
                double direct = 0.0;
                for_each_dataset(2, n, [&](const std::vector<int>& atoms) {
                    direct += std::fabs(dataset_mass(bern, Param(p), atoms) -
                                        dataset_mass(bern, Param(q), atoms));
                });
                worst = std::max(worst, std::fabs(fast - 0.5 * direct));
            }
        }
        std::snprintf(buf, sizeof buf, "worst gap %.3g vs enumeration", worst);
        out.push_back({"grouped-product-tv-matches-enumeration", worst <= 1e-12, buf});
    }
    {
        SplitMix64 rng(0x516001dULL);
        double worst = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < 2000; ++i) {
            double a = -6.0 + 12.0 * rng.uniform01();
            double b = -6.0 + 12.0 * rng.uniform01();
            SigmoidKlBound s = binary_kl_sum_bound(a, b);
            worst = std::max(worst, s.exact_symmetric_kl - s.bound);
        }
        std::snprintf(buf, sizeof buf, "worst excess %.3g over 2000 pairs", worst);
        out.push_back({"squared-gap-dominates-symmetric-kl", worst <= 1e-12, buf});
    }
    {
        double delta = max_delta_two_point(0.3, 0.7, Prior::uniform());
        Packing p{{Param(0.3), Param(0.7)}, delta, {1.0, 1.0}, LossSpec::Rho::AbsDiff};
        bool at = verify_packing(p).valid;
        p.delta = delta * (1.0 + 1e-6);
        bool above = verify_packing(p).valid;
        std::snprintf(buf, sizeof buf, "boundary delta %.12g", delta);
        out.push_back({"packing-boundary-sharp", at && !above, buf});
    }
    {
        std::vector<Param> members = cube_members(0.3, 2);
        HammingSeparation sep{2, members, 0.3, {1.0, 1.0, 1.0, 1.0}};
        bool at = verify_hamming_separation(sep, members).valid;
        sep.delta = 0.3 * (1.0 + 1e-6);
        bool above = verify_hamming_separation(sep, members).valid;
        HammingSeparation scaled = scaled_hypercube_separation(0.4, 2, {0.8, 1.2, 1.2, 0.8});
        bool canon = verify_hamming_separation(scaled, scaled.members).valid;
        out.push_back({"separation-boundary-sharp", at && !above && canon,
                       "plain cube at delta=scale, scaled construction verified"});
    }
    {
        ParamGrid grid = ParamGrid::from_scalars({0.2, 0.5, 0.8}, Prior::uniform());
        GFanoInstance gi = GFanoInstance::make(grid, uniform_weights(3), bern,
                                               LossSpec::matrix(pairwise_matrix(grid.points())),
                                               1);
        bool mono = true;
        double prev = -std::numeric_limits<double>::infinity();
        for (int k = -6; k <= 6; ++k) {
            double v = rho_star(gi, std::exp2(k), true);
            if (v < prev - 1e-12) mono = false;
            prev = v;
        }
        out.push_back({"soft-loss-level-monotone-in-lambda", mono, "dyadic sweep 2^-6..2^6"});
    }
    {
        ParamGrid grid = ParamGrid::from_scalars({0.2, 0.5, 0.8}, Prior::uniform());
        GFanoInstance gi = GFanoInstance::make(grid, uniform_weights(3), bern,
                                               LossSpec::matrix(pairwise_matrix(grid.points())),
                                               2);
        double refined = gfano_prioritized_lower(gi).value;
        double grid_best = 0.0;
        for (int k = -10; k <= 10; ++k)
            grid_best = std::max(grid_best, gfano_bayes_lower(gi, std::exp2(k), true).value);
        std::snprintf(buf, sizeof buf, "refined %.12g vs grid %.12g", refined, grid_best);
        out.push_back({"lambda-refinement-at-least-grid", refined >= grid_best - 1e-12, buf});
    }
    {
        Learner mean = empirical_mean_learner();
        RiskEstimate exact = risk_exact(bern, Param(0.35), mean, LossSpec::abs_diff(), 3);
        RiskEstimate mc = risk_mc(bern, Param(0.35), mean, LossSpec::abs_diff(), 3, 20000, 0x135);
        double gap = std::fabs(mc.value - exact.value);
        std::snprintf(buf, sizeof buf, "|mc-exact| = %.3g, se = %.3g", gap, mc.std_error);
        out.push_back({"monte-carlo-matches-enumeration", gap <= 5.0 * mc.std_error && mc.std_error > 0.0, buf});
    }
    {
        Learner mean = empirical_mean_learner();
        RiskEstimate a = risk_mc(bern, Param(0.4), mean, LossSpec::abs_diff(), 4, 5000, 42);
        RiskEstimate b = risk_mc(bern, Param(0.4), mean, LossSpec::abs_diff(), 4, 5000, 42);
        RiskEstimate c = risk_mc(bern, Param(0.4), mean, LossSpec::abs_diff(), 4, 5000, 43);
        bool same = a.value == b.value && a.std_error == b.std_error;
        bool moved = a.value != c.value;
        out.push_back({"seeded-replay-is-bitwise", same && moved,
                       "same seed identical, shifted seed differs"});
    }
    {
        std::vector<CurveSeries> s(1);
        s[0].label = "lb";
        s[0].points = {{1, 0.12345678901234567, 0.0}, {10, 1e-17, 2.5e-3}, {100, 3.0, 0.5}};
        std::vector<CurveSeries> back = parse_curve_csv(emit_curve_csv(s));
        bool ok = back.size() == 1 && back[0].label == "lb" && back[0].points.size() == 3;
        if (ok)
            for (size_t i = 0; i < 3; ++i)
                ok = ok && back[0].points[i].n == s[0].points[i].n &&
                     back[0].points[i].value == s[0].points[i].value &&
                     back[0].points[i].std_error == s[0].points[i].std_error;
        out.push_back({"curve-csv-roundtrip-bitwise", ok, "17-digit doubles survive"});
    }
    {
        double a = svg_map(1.0, 1.0, 100.0, 70.0, 740.0, true);
        double b = svg_map(100.0, 1.0, 100.0, 70.0, 740.0, true);
        double c = svg_map(10.0, 1.0, 100.0, 70.0, 740.0, true);
        bool ok = std::fabs(a - 70.0) <= 1e-9 && std::fabs(b - 740.0) <= 1e-9 &&
                  std::fabs(c - 405.0) <= 1e-9;
        out.push_back({"axis-map-endpoints", ok, "log decade midpoint lands center"});
    }
    {
        int bad = 0;
        std::string first_bad;
        for (const ChainInstance& ci : built_in_chain_instances()) {
            ChainReport rep = run_inequality_chain(ci);
            if (!rep.ok && ++bad == 1) first_bad = rep.name + " " + rep.detail;
        }
        std::snprintf(buf, sizeof buf, "%d failing instance(s)%s%s", bad, bad ? ": " : "",
                      first_bad.c_str());
        out.push_back({"bound-chain-on-enumerable-instances", bad == 0, buf});
    }
    return out;
}

}  // namespace priorisk
