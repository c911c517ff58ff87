#include "priorisk/risk_core.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "priorisk/errors.hpp"

namespace priorisk {

namespace {

constexpr double kMassTol = 1e-12;

void check_probability_row(const std::vector<double>& row) {
    double s = 0.0;
    for (double m : row) {
        if (!(m >= 0.0) || !std::isfinite(m)) throw std::invalid_argument("mass entries must be finite and non-negative");
        s += m;
    }
    if (std::fabs(s - 1.0) > kMassTol) throw std::invalid_argument("mass row must sum to 1");
}

}  // namespace

Param::Param(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw std::invalid_argument("parameter point needs at least one coordinate");
}

double Param::scalar() const {
    if (dim() != 1) throw std::invalid_argument("scalar() on non-scalar parameter");
    return coords_[0];
}

double l1_distance(const Param& a, const Param& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
    double s = 0.0;
    for (int j = 0; j < a.dim(); ++j) s += std::fabs(a[j] - b[j]);
    return s;
}

Prior::Prior(std::string label, std::function<double(double)> density)
    : label_(std::move(label)), density_(std::move(density)) {
    if (!density_) throw std::invalid_argument("prior needs a density");
}

Prior Prior::uniform() {
    return Prior("uniform", [](double) { return 1.0; });
}

Prior Prior::beta(double alpha, double beta) {
    if (!(alpha > 0.0) || !(beta > 0.0)) throw std::invalid_argument("beta prior needs positive shape parameters");
    double log_norm = std::lgamma(alpha + beta) - std::lgamma(alpha) - std::lgamma(beta);
    std::string label = "beta(" + std::to_string(alpha) + "," + std::to_string(beta) + ")";
    return Prior(label, [=](double t) {
        if (t < 0.0 || t > 1.0) return 0.0;
        // Endpoint convention: a shape-1 exponent contributes 1 at its endpoint.
        double lp = 0.0;
        if (alpha != 1.0) {
            if (t == 0.0) return 0.0;
            lp += (alpha - 1.0) * std::log(t);
        }
        if (beta != 1.0) {
            if (t == 1.0) return 0.0;
            lp += (beta - 1.0) * std::log(1.0 - t);
        }
        return std::exp(log_norm + lp);
    });
}

Prior Prior::gaussian_bump(double center) {
    return Prior("bump(" + std::to_string(center) + ")",
                 [center](double t) { return std::exp(-(t - center) * (t - center)); });
}

ParamGrid::ParamGrid(std::vector<Param> points, std::vector<double> prior_values)
    : points_(std::move(points)), prior_values_(std::move(prior_values)) {}

ParamGrid ParamGrid::uniform_scalar(double lo, double hi, int count, const Prior& prior) {
    if (count < 1 || !(hi > lo)) throw std::invalid_argument("bad grid range");
    std::vector<double> pts(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i)
        pts[static_cast<size_t>(i)] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
    return from_scalars(pts, prior);
}

ParamGrid ParamGrid::from_scalars(const std::vector<double>& points, const Prior& prior) {
    std::vector<Param> ps;
    std::vector<double> ws;
    ps.reserve(points.size());
    ws.reserve(points.size());
    for (double t : points) {
        ps.emplace_back(t);
        // Density zeros at grid endpoints (e.g. a linear density vanishing at
        // 1) are floored at the smallest normal double so weighted products
        // stay finite while contributing nothing to any supremum.
        ws.push_back(std::max(prior(t), DBL_MIN));
    }
    return from_points(std::move(ps), std::move(ws));
}

ParamGrid ParamGrid::from_points(std::vector<Param> points, std::vector<double> prior_values) {
    if (points.empty()) throw std::invalid_argument("empty grid");
    if (points.size() != prior_values.size()) throw std::invalid_argument("grid/prior size mismatch");
    for (double w : prior_values)
        if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("prior values must be strictly positive");
    int d = points.front().dim();
    for (const Param& p : points)
        if (p.dim() != d) throw std::invalid_argument("mixed parameter dimensions");
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j]) throw std::invalid_argument("grid points must be distinct");
    if (d == 1)
        for (size_t i = 1; i < points.size(); ++i)
            if (!(points[i].scalar() > points[i - 1].scalar()))
                throw std::invalid_argument("scalar grid must be strictly increasing");
    return ParamGrid(std::move(points), std::move(prior_values));
}

bool ParamGrid::scalar() const { return points_.front().dim() == 1; }

double ParamGrid::min_scalar() const { return points_.front().scalar(); }

double ParamGrid::max_scalar() const { return points_.back().scalar(); }

RegressorMatrix::RegressorMatrix(int observations, int dims, std::vector<double> row_major)
    : n_(observations), d_(dims), a_(std::move(row_major)) {
    if (n_ < 1 || d_ < 1) throw std::invalid_argument("regressor matrix needs positive shape");
    if (a_.size() != static_cast<size_t>(n_) * static_cast<size_t>(d_))
        throw std::invalid_argument("regressor entry count mismatch");
    for (double v : a_)
        if (!std::isfinite(v)) throw std::invalid_argument("regressor entries must be finite");
}

double RegressorMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
}

Family Family::bernoulli() {
    Family f;
    f.kind_ = Kind::Bernoulli;
    f.support_ = 2;
    return f;
}

Family Family::categorical(std::vector<Param> params, std::vector<std::vector<double>> table) {
    if (params.empty() || params.size() != table.size())
        throw std::invalid_argument("categorical family needs one mass row per parameter");
    size_t k = table.front().size();
    if (k == 0) throw std::invalid_argument("categorical support must be non-empty");
    for (const auto& row : table) {
        if (row.size() != k) throw std::invalid_argument("ragged categorical table");
        check_probability_row(row);
    }
    Family f;
    f.kind_ = Kind::Categorical;
    f.support_ = static_cast<int>(k);
    f.cat_params_ = std::move(params);
    f.cat_table_ = std::move(table);
    return f;
}

Family Family::zipf(int support) {
    if (support < 1) throw std::invalid_argument("zipf support must be positive");
    Family f;
    f.kind_ = Kind::Zipf;
    f.support_ = support;
    return f;
}

Family Family::logistic_labels(RegressorMatrix regressors) {
    Family f;
    f.kind_ = Kind::LogisticLabels;
    f.support_ = 2;
    f.regressors_.push_back(std::move(regressors));
    return f;
}

int Family::required_sample_count() const {
    return kind_ == Kind::LogisticLabels ? regressors_.front().observations() : 0;
}

const RegressorMatrix& Family::regressors() const {
    if (kind_ != Kind::LogisticLabels) throw std::invalid_argument("family has no regressors");
    return regressors_.front();
}

std::vector<double> Family::mass(const Param& theta) const {
    if (kind_ == Kind::LogisticLabels)
        throw std::invalid_argument("per-observation family: use mass_at");
    return mass_at(theta, 0);
}

std::vector<double> Family::mass_at(const Param& theta, int obs) const {
    switch (kind_) {
        case Kind::Bernoulli: {
            double t = theta.scalar();
            if (t < 0.0 || t > 1.0) throw std::invalid_argument("bernoulli mean outside [0,1]");
            return {1.0 - t, t};
        }
        case Kind::Categorical: {
            for (size_t i = 0; i < cat_params_.size(); ++i)
                if (cat_params_[i] == theta) return cat_table_[i];
            throw std::invalid_argument("parameter not in categorical table");
        }
        case Kind::Zipf: {
            double t = theta.scalar();
            std::vector<double> w(static_cast<size_t>(support_));
            double s = 0.0;
            for (int x = 1; x <= support_; ++x) {
                double v = std::exp(-t * std::log(static_cast<double>(x)));
                w[static_cast<size_t>(x - 1)] = v;
                s += v;
            }
            for (double& v : w) v /= s;
            return w;
        }
        case Kind::LogisticLabels: {
            const RegressorMatrix& Z = regressors_.front();
            if (obs < 0 || obs >= Z.observations()) throw std::invalid_argument("observation index out of range");
            if (theta.dim() != Z.dims()) throw std::invalid_argument("parameter dimension mismatch");
            double dot = 0.0;
            for (int j = 0; j < Z.dims(); ++j) dot += Z.z(obs, j) * theta[j];
            double p_plus = 1.0 / (1.0 + std::exp(-dot));
            return {1.0 - p_plus, p_plus};  // index 0 is label -1
        }
    }
    throw std::logic_error("unreachable");
}

double Family::atom_value(int atom) const {
    switch (kind_) {
        case Kind::Bernoulli: return static_cast<double>(atom);
        case Kind::Categorical: return static_cast<double>(atom);
        case Kind::Zipf: return static_cast<double>(atom + 1);
        case Kind::LogisticLabels: return atom == 0 ? -1.0 : 1.0;
    }
    throw std::logic_error("unreachable");
}

LossSpec LossSpec::abs_diff() {
    LossSpec l;
    l.rho_ = Rho::AbsDiff;
    return l;
}

LossSpec LossSpec::l1() {
    LossSpec l;
    l.rho_ = Rho::L1;
    return l;
}

LossSpec LossSpec::matrix(std::vector<std::vector<double>> entries) {
    if (entries.empty() || entries.front().empty())
        throw EmptyActionSet("loss matrix must have rows and columns");
    size_t cols = entries.front().size();
    for (const auto& row : entries) {
        if (row.size() != cols) throw std::invalid_argument("ragged loss matrix");
        for (double v : row)
            if (!std::isfinite(v) || v < 0.0)
                throw std::invalid_argument("loss entries must be finite and non-negative");
    }
    LossSpec l;
    l.is_matrix_ = true;
    l.entries_ = std::move(entries);
    return l;
}

double LossSpec::rho(const Param& a, const Param& b) const {
    if (is_matrix_) throw std::invalid_argument("matrix loss has no pseudometric");
    if (rho_ == Rho::AbsDiff && (a.dim() != 1 || b.dim() != 1))
        throw std::invalid_argument("absolute-difference loss needs scalar parameters");
    return l1_distance(a, b);
}

double LossSpec::matrix_at(int row, int col) const {
    if (!is_matrix_) throw std::invalid_argument("pseudometric loss has no matrix");
    return entries_[static_cast<size_t>(row)][static_cast<size_t>(col)];
}

int LossSpec::row_count() const { return static_cast<int>(entries_.size()); }

int LossSpec::action_count() const {
    return entries_.empty() ? 0 : static_cast<int>(entries_.front().size());
}

double LossSpec::value(const Param& theta, int theta_row, const Action& action) const {
    if (is_matrix_) {
        if (theta_row < 0 || theta_row >= row_count())
            throw std::invalid_argument("matrix loss needs a grid row for theta");
        const int* idx = std::get_if<int>(&action);
        if (!idx) throw std::invalid_argument("matrix loss needs an action index");
        if (*idx < 0 || *idx >= action_count()) throw std::invalid_argument("action index out of range");
        return matrix_at(theta_row, *idx);
    }
    const Param* est = std::get_if<Param>(&action);
    if (!est) throw std::invalid_argument("pseudometric loss needs a parameter estimate");
    return rho(theta, *est);
}

Learner constant_learner(std::string label, Action action) {
    return {std::move(label), [a = std::move(action)](const Dataset&) { return a; }};
}

Learner empirical_mean_learner() {
    return {"empirical-mean", [](const Dataset& ds) {
                double s = std::accumulate(ds.values.begin(), ds.values.end(), 0.0);
                return Action(Param(ds.values.empty() ? 0.0 : s / ds.values.size()));
            }};
}

Learner beta_posterior_mean_learner(double alpha, double beta) {
    if (!(alpha > 0.0) || !(beta > 0.0)) throw std::invalid_argument("posterior mean needs positive shapes");
    std::string label = "posterior-mean-beta(" + std::to_string(alpha) + "," + std::to_string(beta) + ")";
    return {label, [alpha, beta](const Dataset& ds) {
                double ones = std::accumulate(ds.values.begin(), ds.values.end(), 0.0);
                return Action(Param((alpha + ones) / (alpha + beta + ds.values.size())));
            }};
}

long dataset_count(int support, int n, long cap) {
    if (support < 1 || n < 0) throw std::invalid_argument("bad enumeration shape");
    long total = 1;
    for (int i = 0; i < n; ++i) {
        if (total > cap / support)
            throw EnumerationTooLarge("dataset space exceeds cap of " + std::to_string(cap));
        total *= support;
    }
    if (total > cap) throw EnumerationTooLarge("dataset space exceeds cap of " + std::to_string(cap));
    return total;
}

void for_each_dataset(int support, int n, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> atoms(static_cast<size_t>(n), 0);
    while (true) {
        fn(atoms);
        int i = n - 1;
        while (i >= 0 && atoms[static_cast<size_t>(i)] == support - 1) {
            atoms[static_cast<size_t>(i)] = 0;
            --i;
        }
        if (i < 0) return;
        ++atoms[static_cast<size_t>(i)];
    }
}

double dataset_mass(const Family& family, const Param& theta, const std::vector<int>& atoms) {
    double w = 1.0;
    for (size_t i = 0; i < atoms.size(); ++i)
        w *= family.mass_at(theta, static_cast<int>(i))[static_cast<size_t>(atoms[i])];
    return w;
}

namespace {

void check_sample_count(const Family& family, int n) {
    if (n < 0) throw std::invalid_argument("negative sample count");
    int req = family.required_sample_count();
    if (req > 0 && n != req)
        throw std::invalid_argument("fixed-design family requires n = " + std::to_string(req));
}

std::vector<std::vector<double>> observation_masses(const Family& family, const Param& theta, int n) {
    std::vector<std::vector<double>> m;
    m.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) m.push_back(family.mass_at(theta, i));
    return m;
}

}  // namespace

RiskEstimate risk_exact(const Family& family, const Param& theta, const Learner& learner,
                        const LossSpec& loss, int n, int theta_row, long cap) {
    check_sample_count(family, n);
    dataset_count(family.support_size(), n, cap);
    auto obs_mass = observation_masses(family, theta, n);

    Dataset ds;
    ds.atoms.resize(static_cast<size_t>(n));
    ds.values.resize(static_cast<size_t>(n));
    double acc = 0.0;
    for_each_dataset(family.support_size(), n, [&](const std::vector<int>& atoms) {
        double w = 1.0;
        for (int i = 0; i < n; ++i) w *= obs_mass[static_cast<size_t>(i)][static_cast<size_t>(atoms[static_cast<size_t>(i)])];
        if (w == 0.0) return;
        for (int i = 0; i < n; ++i) {
            ds.atoms[static_cast<size_t>(i)] = atoms[static_cast<size_t>(i)];
            ds.values[static_cast<size_t>(i)] = family.atom_value(atoms[static_cast<size_t>(i)]);
        }
        acc += w * loss.value(theta, theta_row, learner.rule(ds));
    });

    RiskEstimate est;
    est.value = acc;
    est.method = RiskEstimate::Method::ExactEnumeration;
    return est;
}

RiskEstimate risk_mc(const Family& family, const Param& theta, const Learner& learner,
                     const LossSpec& loss, int n, long num_datasets, uint64_t seed,
                     int theta_row) {
    check_sample_count(family, n);
    if (num_datasets < 2) throw std::invalid_argument("need at least 2 datasets");

    auto obs_mass = observation_masses(family, theta, n);
    std::vector<std::vector<double>> cum(obs_mass.size());
    for (size_t i = 0; i < obs_mass.size(); ++i) {
        cum[i].resize(obs_mass[i].size());
        double s = 0.0;
        for (size_t a = 0; a < obs_mass[i].size(); ++a) {
            s += obs_mass[i][a];
            cum[i][a] = s;
        }
        cum[i].back() = 1.0;
    }

    Dataset ds;
    ds.atoms.resize(static_cast<size_t>(n));
    ds.values.resize(static_cast<size_t>(n));
    double sum = 0.0, sumsq = 0.0;
    for (long r = 0; r < num_datasets; ++r) {
        // Per-replicate substream: partitioning the loop cannot change results.
        SplitMix64 rng(derive_seed(seed, {static_cast<uint64_t>(r)}));
        for (int i = 0; i < n; ++i) {
            double u = rng.uniform01();
            const std::vector<double>& c = cum[static_cast<size_t>(i)];
            int atom = static_cast<int>(std::upper_bound(c.begin(), c.end(), u) - c.begin());
            if (atom >= static_cast<int>(c.size())) atom = static_cast<int>(c.size()) - 1;
            ds.atoms[static_cast<size_t>(i)] = atom;
            ds.values[static_cast<size_t>(i)] = family.atom_value(atom);
        }
        double l = loss.value(theta, theta_row, learner.rule(ds));
        sum += l;
        sumsq += l * l;
    }

    double mean = sum / static_cast<double>(num_datasets);
    double var = (sumsq - static_cast<double>(num_datasets) * mean * mean) /
                 static_cast<double>(num_datasets - 1);
    if (var < 0.0) var = 0.0;

    RiskEstimate est;
    est.value = mean;
    est.std_error = std::sqrt(var / static_cast<double>(num_datasets));
    est.method = RiskEstimate::Method::MonteCarlo;
    est.seed = seed;
    est.num_datasets = num_datasets;
    est.rng = kRngAlgorithm;
    return est;
}

PrioritizedRisk learner_prioritized_risk(const ParamGrid& grid, const Family& family,
                                         const Learner& learner, const LossSpec& loss, int n,
                                         const EvalSpec& spec) {
    PrioritizedRisk best;
    for (int i = 0; i < grid.size(); ++i) {
        RiskEstimate est;
        if (spec.mode == EvalSpec::Mode::Exact) {
            est = risk_exact(family, grid.point(i), learner, loss, n, i);
        } else {
            est = risk_mc(family, grid.point(i), learner, loss, n, spec.num_datasets,
                          derive_seed(spec.seed, {static_cast<uint64_t>(i)}), i);
        }
        double weighted = grid.prior_value(i) * est.value;
        if (best.arg_index < 0 || weighted > best.value) {
            best.value = weighted;
            best.std_error = grid.prior_value(i) * est.std_error;
            best.arg_index = i;
            best.arg_theta = grid.point(i);
        }
    }
    return best;
}

}  // namespace priorisk
