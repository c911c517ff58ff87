#include "priorisk/cli.hpp"

#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "priorisk/bounds_estimation.hpp"
#include "priorisk/config.hpp"
#include "priorisk/csv_io.hpp"
#include "priorisk/errors.hpp"
#include "priorisk/experiments.hpp"
#include "priorisk/gfano.hpp"
#include "priorisk/selfcheck.hpp"
#include "priorisk/svg.hpp"

namespace priorisk {

namespace {

std::string fmt_line(const char* fmt, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    return buf;
}

const std::string& get(const Config& cfg, const std::string& key) {
    auto it = cfg.find(key);
    if (it == cfg.end()) throw std::invalid_argument("missing config key: " + key);
    return it->second;
}

double get_double(const Config& cfg, const std::string& key) {
    const std::string& s = get(cfg, key);
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad number for " + key + ": " + s);
    return v;
}

int get_int(const Config& cfg, const std::string& key) {
    const std::string& s = get(cfg, key);
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad integer for " + key + ": " + s);
    return v;
}

Config with_defaults(Config cfg) {
    auto it = cfg.find("experiment.name");
    std::string name = it == cfg.end() ? "" : it->second;
    auto def = [&](const char* k, const char* v) { cfg.emplace(k, v); };
    if (name == "bernoulli") {
        def("bernoulli.n_list", "16,32,64,128,256,512,1024,2048,4096");
        def("bernoulli.grid_points", "101");
        def("bernoulli.alpha", "1");
        def("bernoulli.beta", "2");
    } else if (name == "logistic") {
        def("logistic.lambda", "1");
        def("logistic.z", "builtin");
        def("logistic.zprime", "builtin");
    } else if (name == "zipf") {
        def("zipf.subset_sizes", "5,15,50");
        def("zipf.n_list", "1,2,5,10,20,50,100,200,500,1000");
        def("zipf.support", "400");
        def("zipf.num_exponents", "50");
        def("zipf.exponent_max", "5");
        def("zipf.cap", "50");
        def("zipf.base", "5");
        def("zipf.slope", "90");
        def("zipf.loss_csv", "");
    } else if (name == "upper") {
        def("upper.n_list", "1,2,5,10,20,50,100,200,500,1000");
        def("upper.num_datasets", "10000");
        def("upper.grid_points", "101");
        def("experiment.seed", "20240601");
    } else {
        throw std::invalid_argument(
            "experiment.name must be bernoulli, logistic, zipf, or upper");
    }
    return cfg;
}

RegressorMatrix builtin_design(double scale) {
    std::vector<double> rows{0.9, 0.1, 0.2, 0.8, 0.5, 0.5, 0.7, 0.3,
                             0.1, 0.6, 0.4, 0.2, 0.8, 0.7, 0.3, 0.9};
    for (double& v : rows) v *= scale;
    return RegressorMatrix(8, 2, std::move(rows));
}

RegressorMatrix load_design(const std::string& which, double builtin_scale) {
    if (which == "builtin") return builtin_design(builtin_scale);
    return parse_regressor_csv(read_file(which));
}

std::string curve_tail_report(const std::vector<CurveSeries>& series) {
    std::string rep;
    for (const CurveSeries& s : series) {
        if (s.points.empty()) continue;
        const CurvePoint& a = s.points.front();
        const CurvePoint& b = s.points.back();
        rep += fmt_line("  %-18s n=%-5d %-12.6g ... n=%-5d %-12.6g\n", s.label.c_str(), a.n,
                        a.value, b.n, b.value);
    }
    return rep;
}

ExperimentOutput finish(const std::string& name, const std::vector<CurveSeries>& series,
                        const AxesConfig& axes, const Config& resolved, std::string report) {
    ExperimentOutput out;
    out.csv_name = name + "_curves.csv";
    out.csv = emit_curve_csv(series);
    out.svg_name = name + "_plot.svg";
    out.svg = emit_svg(series, axes);
    out.manifest_name = name + "_manifest.cfg";
    out.manifest = serialize_config(resolved);
    out.report = std::move(report);
    return out;
}

}  // namespace

ExperimentOutput run_experiment(const std::map<std::string, std::string>& raw) {
    Config cfg = with_defaults(raw);
    const std::string name = get(cfg, "experiment.name");

    if (name == "bernoulli") {
        std::vector<int> n_list = parse_int_list(get(cfg, "bernoulli.n_list"));
        int gp = get_int(cfg, "bernoulli.grid_points");
        double a = get_double(cfg, "bernoulli.alpha");
        double b = get_double(cfg, "bernoulli.beta");
        std::vector<CurveSeries> series{bernoulli_experiment(Prior::beta(a, b), n_list, gp),
                                        bernoulli_experiment(Prior::uniform(), n_list, gp)};
        AxesConfig axes;
        axes.log_x = axes.log_y = true;
        axes.y_label = "lower bound";
        axes.title = "optimized two-point lower bounds";
        std::string rep = "bernoulli mean estimation, two-point bound per n\n";
        rep += curve_tail_report(series);
        return finish(name, series, axes, cfg, std::move(rep));
    }

    if (name == "logistic") {
        double lambda = get_double(cfg, "logistic.lambda");
        RegressorMatrix Z = load_design(get(cfg, "logistic.z"), 1.0);
        RegressorMatrix Zp = load_design(get(cfg, "logistic.zprime"), 1.6);
        LogisticReport lr = logistic_experiment(Z, Zp, lambda);

        // Closed-form bound using only the first k observations of each design.
        auto prefix_curve = [&](const RegressorMatrix& M, const std::string& label) {
            CurveSeries s;
            s.label = label;
            for (int k = 1; k <= M.observations(); ++k) {
                std::vector<double> rows;
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < M.dims(); ++j) rows.push_back(M.z(i, j));
                RegressorMatrix head(k, M.dims(), std::move(rows));
                std::vector<double> lam(static_cast<size_t>(M.dims()), lambda);
                s.points.push_back({k, logistic_closed_form(head, lam).value, 0.0});
            }
            return s;
        };
        std::vector<CurveSeries> series{prefix_curve(Z, "design-Z"),
                                        prefix_curve(Zp, "design-Zprime")};
        AxesConfig axes;
        axes.log_x = axes.log_y = true;
        axes.x_label = "observations used";
        axes.y_label = "lower bound";
        axes.title = "fixed-design closed-form bounds";
        std::string rep = fmt_line(
            "fixed-design label model, d=%d, lambda=%.6g\n"
            "  ||Z||_F=%.6g  ||Z'||_F=%.6g\n"
            "  bound(Z)=%.6g  bound(Z')=%.6g\n"
            "  threshold(Z)=%.6g  threshold(Z')=%.6g\n"
            "  ordering_ok=%s\n",
            lr.d, lr.lambda, lr.frob_z, lr.frob_zprime, lr.bound_z, lr.bound_zprime,
            lr.threshold_z, lr.threshold_zprime, lr.ordering_ok ? "true" : "false");
        rep += curve_tail_report(series);
        return finish(name, series, axes, cfg, std::move(rep));
    }

    if (name == "zipf") {
        ZipfConfig zc;
        zc.num_exponents = get_int(cfg, "zipf.num_exponents");
        zc.exponent_max = get_double(cfg, "zipf.exponent_max");
        zc.support = get_int(cfg, "zipf.support");
        zc.cap = get_double(cfg, "zipf.cap");
        zc.base = get_double(cfg, "zipf.base");
        zc.slope = get_double(cfg, "zipf.slope");
        std::vector<int> sizes = parse_int_list(get(cfg, "zipf.subset_sizes"));
        std::vector<int> n_list = parse_int_list(get(cfg, "zipf.n_list"));

        std::vector<std::vector<double>> external;
        const std::string& loss_path = get(cfg, "zipf.loss_csv");
        if (!loss_path.empty()) external = parse_loss_matrix_csv(read_file(loss_path)).entries;
        std::vector<CurveSeries> series =
            zipf_experiment(sizes, n_list, zc, loss_path.empty() ? nullptr : &external);
        AxesConfig axes;
        axes.log_x = true;
        axes.y_label = "lower bound";
        axes.title = "soft multi-hypothesis bounds, nested action sets";
        std::string rep = fmt_line("rank-distribution policy losses, %d exponents, support %d\n",
                                   zc.num_exponents, zc.support);
        rep += curve_tail_report(series);
        return finish(name, series, axes, cfg, std::move(rep));
    }

    // upper
    std::vector<int> n_list = parse_int_list(get(cfg, "upper.n_list"));
    long reps = get_int(cfg, "upper.num_datasets");
    int gp = get_int(cfg, "upper.grid_points");
    uint64_t seed = static_cast<uint64_t>(std::stoull(get(cfg, "experiment.seed")));
    std::vector<CurveSeries> series = upper_bound_experiment(n_list, reps, seed, gp);
    AxesConfig axes;
    axes.log_x = axes.log_y = true;
    axes.y_label = "prioritized risk";
    axes.title = "posterior-mean learners, Monte Carlo";
    std::string rep = fmt_line("Monte Carlo upper bounds, %ld datasets per cell, seed %llu\n",
                               reps, static_cast<unsigned long long>(seed));
    rep += curve_tail_report(series);
    return finish(name, series, axes, cfg, std::move(rep));
}

namespace {

Prior make_prior(const std::string& kind, double a, double b, double center) {
    if (kind == "uniform") return Prior::uniform();
    if (kind == "beta") return Prior::beta(a, b);
    if (kind == "bump") return Prior::gaussian_bump(center);
    throw std::invalid_argument("unknown prior: " + kind);
}

Family scalar_family(const std::string& kind, int support) {
    if (kind == "bernoulli") return Family::bernoulli();
    if (kind == "zipf") return Family::zipf(support);
    throw std::invalid_argument("family must be bernoulli or zipf here");
}

std::vector<std::pair<double, double>> parse_pairs(const std::string& text) {
    std::vector<std::pair<double, double>> out;
    for (const std::string& part : [&] {
             std::vector<std::string> ps;
             std::string cur;
             for (char ch : text) {
                 if (ch == ',') {
                     ps.push_back(cur);
                     cur.clear();
                 } else {
                     cur += ch;
                 }
             }
             ps.push_back(cur);
             return ps;
         }()) {
        size_t colon = part.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("pair must look like 0.5:0.5, got " + part);
        out.emplace_back(std::stod(part.substr(0, colon)), std::stod(part.substr(colon + 1)));
    }
    return out;
}

// Grid packing at the tightest pairwise feasibility limit.
Packing grid_packing(const std::vector<double>& thetas, const std::vector<double>& pis) {
    if (thetas.size() != pis.size()) throw std::invalid_argument("one weight per point required");
    if (thetas.size() < 2) throw std::invalid_argument("need at least two points");
    Packing p;
    for (double t : thetas) p.members.emplace_back(t);
    p.prior_values = pis;
    p.metric = LossSpec::Rho::AbsDiff;
    double dmin = 0.0;
    bool first = true;
    for (size_t u = 0; u < thetas.size(); ++u)
        for (size_t v = u + 1; v < thetas.size(); ++v) {
            double d = max_delta_two_point(p.members[u], p.members[v], pis[u], pis[v]);
            if (first || d < dmin) dmin = d;
            first = false;
        }
    p.delta = dmin;
    return p;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"prioritized-risk lower bounds and experiments"};
    app.require_subcommand(1);
    int rc = 0;

    // ---- bound ----
    CLI::App* bound = app.add_subcommand("bound", "evaluate one lower bound");
    bound->require_subcommand(1);

    struct {
        std::string family = "bernoulli";
        int support = 400;
        double theta0 = 0.0, theta1 = 0.0, pi0 = 1.0, pi1 = 1.0;
        int n = 1;
    } lc;
    CLI::App* lecam = bound->add_subcommand("lecam", "two-point bound");
    lecam->add_option("--family", lc.family, "bernoulli or zipf");
    lecam->add_option("--support", lc.support, "rank support for zipf");
    lecam->add_option("--theta0", lc.theta0)->required();
    lecam->add_option("--theta1", lc.theta1)->required();
    lecam->add_option("--pi0", lc.pi0, "priority weight at theta0");
    lecam->add_option("--pi1", lc.pi1, "priority weight at theta1");
    lecam->add_option("-n,--samples", lc.n)->required();
    lecam->callback([&] {
        Packing p{{Param(lc.theta0), Param(lc.theta1)},
                  max_delta_two_point(Param(lc.theta0), Param(lc.theta1), lc.pi0, lc.pi1),
                  {lc.pi0, lc.pi1},
                  LossSpec::Rho::AbsDiff};
        BoundResult r = lecam_bound(p, scalar_family(lc.family, lc.support), lc.n);
        const auto& w = std::get<LeCamWitness>(r.witness);
        std::printf("value = %.17g\n", r.value);
        std::printf("delta = %.17g\n", p.delta);
        std::printf("tv = %.17g (%s)\n", w.divergence.tv,
                    w.divergence.tv_exactness == Exactness::Exact ? "exact" : "upper bound");
    });

    struct {
        std::string prior = "beta";
        double alpha = 1.0, beta = 2.0, center = 0.5;
        double lo = 0.0, hi = 1.0;
        int grid_points = 101;
        std::string family = "bernoulli";
        int support = 400;
        int n = 1;
    } lo_;
    CLI::App* lopt = bound->add_subcommand("lecam-opt", "optimized two-point bound");
    lopt->add_option("--prior", lo_.prior, "uniform, beta, or bump");
    lopt->add_option("--alpha", lo_.alpha);
    lopt->add_option("--beta", lo_.beta);
    lopt->add_option("--center", lo_.center, "bump center");
    lopt->add_option("--lo", lo_.lo);
    lopt->add_option("--hi", lo_.hi);
    lopt->add_option("--grid-points", lo_.grid_points);
    lopt->add_option("--family", lo_.family, "bernoulli or zipf");
    lopt->add_option("--support", lo_.support);
    lopt->add_option("-n,--samples", lo_.n)->required();
    lopt->callback([&] {
        Prior prior = make_prior(lo_.prior, lo_.alpha, lo_.beta, lo_.center);
        ParamGrid domain = ParamGrid::uniform_scalar(lo_.lo, lo_.hi, lo_.grid_points, prior);
        BoundResult r =
            lecam_optimize(domain, scalar_family(lo_.family, lo_.support), prior, lo_.n);
        const auto& w = std::get<LeCamWitness>(r.witness);
        std::printf("value = %.17g\n", r.value);
        std::printf("theta0 = %.17g\ntheta1 = %.17g\n", w.packing.members[0].scalar(),
                    w.packing.members[1].scalar());
        std::printf("delta = %.17g\n", w.packing.delta);
        std::printf("tv = %.17g (%s)\n", w.divergence.tv,
                    w.divergence.tv_exactness == Exactness::Exact ? "exact" : "upper bound");
    });

    struct {
        std::string family = "bernoulli";
        int support = 400;
        std::string thetas, pis, info = "mixture";
        int n = 1;
    } fa;
    CLI::App* fano = bound->add_subcommand("fano", "multi-hypothesis bound");
    fano->add_option("--family", fa.family, "bernoulli or zipf");
    fano->add_option("--support", fa.support);
    fano->add_option("--thetas", fa.thetas, "comma-separated points")->required();
    fano->add_option("--pis", fa.pis, "priority weights (default all 1)");
    fano->add_option("--info", fa.info, "mixture or pairwise");
    fano->add_option("-n,--samples", fa.n)->required();
    fano->callback([&] {
        std::vector<double> thetas = parse_double_list(fa.thetas);
        std::vector<double> pis = fa.pis.empty()
                                      ? std::vector<double>(thetas.size(), 1.0)
                                      : parse_double_list(fa.pis);
        Packing p = grid_packing(thetas, pis);
        InfoBound ib = fa.info == "pairwise" ? InfoBound::Pairwise : InfoBound::Mixture;
        BoundResult r = fano_bound(p, scalar_family(fa.family, fa.support), fa.n, ib);
        const auto& w = std::get<FanoWitness>(r.witness);
        std::printf("value = %.17g\n", r.value);
        std::printf("delta = %.17g\n", p.delta);
        std::printf("info_upper = %.17g (%s)\n", w.info_upper, fa.info.c_str());
    });

    struct {
        std::string regressors;
        double scale = 0.5;
        std::string pis;
    } as;
    CLI::App* assouad = bound->add_subcommand("assouad", "hypercube bound, fixed-design labels");
    assouad->add_option("--regressors", as.regressors, "design matrix CSV")->required();
    assouad->add_option("--scale", as.scale, "vertex magnitude before priority scaling");
    assouad->add_option("--pis", as.pis, "2^d member weights (default all 1)");
    assouad->callback([&] {
        RegressorMatrix Z = parse_regressor_csv(read_file(as.regressors));
        int d = Z.dims();
        std::vector<double> pis = as.pis.empty()
                                      ? std::vector<double>(static_cast<size_t>(1) << d, 1.0)
                                      : parse_double_list(as.pis);
        HammingSeparation sep = scaled_hypercube_separation(as.scale, d, pis);
        BoundResult r =
            assouad_bound(sep, Family::logistic_labels(Z), Z.observations(), sep.members);
        const auto& w = std::get<AssouadWitness>(r.witness);
        std::printf("value = %.17g\n", r.value);
        std::printf("delta = %.17g\nd = %d\n", sep.delta, d);
        if (w.exact) {
            for (size_t j = 0; j < w.tv_terms.size(); ++j)
                std::printf("tv[%zu] = %.17g\n", j, w.tv_terms[j]);
        } else {
            std::printf("cs_term = %.17g (weakened path)\n", w.cs_term);
        }
    });

    struct {
        std::string regressors, pairs;
        double lambda = 1.0;
    } acl;
    CLI::App* aclosed =
        bound->add_subcommand("assouad-logistic", "closed form for fixed-design labels");
    aclosed->add_option("--regressors", acl.regressors, "design matrix CSV")->required();
    aclosed->add_option("--pi-pairs", acl.pairs,
                        "per-coordinate weight pairs, e.g. 0.5:0.5,0.3:0.7");
    aclosed->add_option("--lambda", acl.lambda, "equal per-coordinate weight (>= 1)");
    aclosed->callback([&] {
        RegressorMatrix Z = parse_regressor_csv(read_file(acl.regressors));
        std::vector<double> lambdas =
            acl.pairs.empty()
                ? std::vector<double>(static_cast<size_t>(Z.dims()), acl.lambda)
                : lambda_from_prior(parse_pairs(acl.pairs));
        BoundResult r = logistic_closed_form(Z, lambdas);
        const auto& w = std::get<LogisticClosedWitness>(r.witness);
        std::printf("value = %.17g\n", r.value);
        std::printf("denom = %.17g\n", w.denom);
        std::printf("threshold = %.17g\n", 2.0 * r.value);
    });

    struct {
        std::string loss, family = "zipf", prior = "bump";
        double alpha = 1.0, beta = 2.0, center = 2.5;
        int support = 400;
        int n = 1;
        double lambda = 0.0;
    } gf;
    CLI::App* gfano = bound->add_subcommand("gfano", "soft multi-hypothesis bound");
    gfano->add_option("--loss", gf.loss, "loss matrix CSV (rows carry the points)")->required();
    gfano->add_option("--family", gf.family, "bernoulli or zipf");
    gfano->add_option("--support", gf.support);
    gfano->add_option("--prior", gf.prior, "uniform, beta, or bump");
    gfano->add_option("--alpha", gf.alpha);
    gfano->add_option("--beta", gf.beta);
    gfano->add_option("--center", gf.center);
    gfano->add_option("-n,--samples", gf.n)->required();
    gfano->add_option("--lambda", gf.lambda, "fixed level; omit to search");
    gfano->callback([&] {
        LossMatrixCsv m = parse_loss_matrix_csv(read_file(gf.loss));
        Prior prior = make_prior(gf.prior, gf.alpha, gf.beta, gf.center);
        ParamGrid grid = ParamGrid::from_scalars(m.thetas, prior);
        std::vector<double> weights(m.thetas.size(), 1.0 / static_cast<double>(m.thetas.size()));
        GFanoInstance gi = GFanoInstance::make(grid, weights, scalar_family(gf.family, gf.support),
                                               LossSpec::matrix(m.entries), gf.n);
        BoundResult r = gf.lambda > 0.0 ? gfano_bayes_lower(gi, gf.lambda, true)
                                        : gfano_prioritized_lower(gi);
        const auto& w = std::get<GFanoWitness>(r.witness);
        std::printf("value = %.17g\n", r.value);
        std::printf("lambda = %.17g\n", w.lambda);
        std::printf("rho_star = %.17g\n", w.rho_star);
        std::printf("info_upper = %.17g\n", w.info_upper);
    });

    // ---- experiment ----
    struct {
        std::string name, config, out;
        std::vector<std::string> sets;
    } ex;
    CLI::App* expc = app.add_subcommand("experiment", "run a study and write csv/svg/manifest");
    expc->add_option("name", ex.name, "bernoulli, logistic, zipf, or upper");
    expc->add_option("--config", ex.config, "key=value file; a manifest reruns its run");
    expc->add_option("--set", ex.sets, "override, key=value")->take_all();
    expc->add_option("--out", ex.out, "output directory (default $PRIORISK_OUT or .)");
    expc->callback([&] {
        Config cfg;
        if (!ex.config.empty()) cfg = parse_config(read_file(ex.config));
        for (const std::string& kv : ex.sets) {
            size_t eq = kv.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("--set expects key=value, got " + kv);
            cfg[kv.substr(0, eq)] = kv.substr(eq + 1);
        }
        if (!ex.name.empty()) cfg["experiment.name"] = ex.name;
        if (cfg.find("experiment.name") == cfg.end())
            throw std::invalid_argument("give an experiment name or a config that names one");

        ExperimentOutput out = run_experiment(cfg);
        std::string dir = ex.out;
        if (dir.empty()) {
            const char* env = std::getenv("PRIORISK_OUT");
            dir = env && *env ? env : ".";
        }
        std::filesystem::create_directories(dir);
        write_file(dir + "/" + out.csv_name, out.csv);
        write_file(dir + "/" + out.svg_name, out.svg);
        write_file(dir + "/" + out.manifest_name, out.manifest);
        std::printf("%s", out.report.c_str());
        std::printf("wrote %s/%s\nwrote %s/%s\nwrote %s/%s\n", dir.c_str(), out.csv_name.c_str(),
                    dir.c_str(), out.svg_name.c_str(), dir.c_str(), out.manifest_name.c_str());
    });

    // ---- oracle ----
    CLI::App* oracle = app.add_subcommand("oracle", "exact checks on enumerable instances");
    double tol = 1e-9;
    CLI::App* ocheck = oracle->add_subcommand("check", "bound chain on built-in instances");
    ocheck->add_option("--tol", tol, "comparison slack");
    ocheck->callback([&] {
        int bad = 0;
        for (const ChainInstance& ci : built_in_chain_instances()) {
            ChainReport rep = run_inequality_chain(ci, tol);
            std::printf("[%s] %-22s %s\n", rep.ok ? "PASS" : "FAIL", rep.name.c_str(),
                        rep.detail.c_str());
            if (!rep.ok) ++bad;
        }
        std::printf("%d failing instance(s)\n", bad);
        if (bad > 0) rc = 3;
    });

    // ---- selftest ----
    CLI::App* self = app.add_subcommand("selftest", "condensed property suite");
    self->callback([&] {
        int bad = 0;
        for (const CheckLine& line : run_selftest()) {
            std::printf("[%s] %-40s %s\n", line.pass ? "PASS" : "FAIL", line.name.c_str(),
                        line.detail.c_str());
            if (!line.pass) ++bad;
        }
        std::printf("%d failing check(s)\n", bad);
        if (bad > 0) rc = 3;
    });

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const EnumerationTooLarge& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const UnsupportedMetric& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const DegenerateIndexSet& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const EmptyActionSet& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::logic_error& e) {
        std::fprintf(stderr, "invariant violation: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return rc;
}

}  // namespace priorisk
