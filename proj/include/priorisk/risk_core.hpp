#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "priorisk/rng.hpp"

namespace priorisk {

inline constexpr long kDefaultEnumerationCap = 1'000'000;

// A parameter point: scalar for the one-dimensional families, a coordinate
// vector for hypercube members.
class Param {
public:
    Param() = default;
    explicit Param(double scalar) : coords_{scalar} {}
    explicit Param(std::vector<double> coords);

    int dim() const { return static_cast<int>(coords_.size()); }
    double scalar() const;  // requires dim() == 1
    double operator[](int j) const { return coords_[static_cast<size_t>(j)]; }
    const std::vector<double>& coords() const { return coords_; }

    friend bool operator==(const Param&, const Param&) = default;

private:
    std::vector<double> coords_;
};

double l1_distance(const Param& a, const Param& b);

// Priority weights are plain positive functions of a scalar parameter; grids
// store their evaluated values.
class Prior {
public:
    Prior(std::string label, std::function<double(double)> density);

    double operator()(double theta) const { return density_(theta); }
    const std::string& label() const { return label_; }

    static Prior uniform();                       // constant 1
    static Prior beta(double alpha, double beta);  // Beta density on [0,1]
    static Prior gaussian_bump(double center);     // exp(-(theta-center)^2)

private:
    std::string label_;
    std::function<double(double)> density_;
};

// Finite set of parameter points with evaluated priority weights.
// Invariants: points distinct, scalar grids strictly increasing, every
// weight strictly positive.
class ParamGrid {
public:
    static ParamGrid uniform_scalar(double lo, double hi, int count, const Prior& prior);
    static ParamGrid from_scalars(const std::vector<double>& points, const Prior& prior);
    static ParamGrid from_points(std::vector<Param> points, std::vector<double> prior_values);

    int size() const { return static_cast<int>(points_.size()); }
    const Param& point(int i) const { return points_[static_cast<size_t>(i)]; }
    double prior_value(int i) const { return prior_values_[static_cast<size_t>(i)]; }
    const std::vector<Param>& points() const { return points_; }
    const std::vector<double>& prior_values() const { return prior_values_; }

    bool scalar() const;
    double min_scalar() const;
    double max_scalar() const;

private:
    ParamGrid(std::vector<Param> points, std::vector<double> prior_values);
    std::vector<Param> points_;
    std::vector<double> prior_values_;
};

// Fixed design matrix for the conditional-label family. Stored row-major,
// one row per observation.
class RegressorMatrix {
public:
    RegressorMatrix(int observations, int dims, std::vector<double> row_major);

    int observations() const { return n_; }
    int dims() const { return d_; }
    double z(int i, int j) const { return a_[static_cast<size_t>(i) * d_ + j]; }
    double frobenius_norm() const;

private:
    int n_ = 0, d_ = 0;
    std::vector<double> a_;
};

// Data-generating families with finite per-observation support.
//  Bernoulli        atoms {0,1}, mean theta in [0,1]
//  Categorical      atoms {0..K-1}, one mass row per listed parameter
//  Zipf             atoms are ranks {1..M}, mass(x) proportional to x^-theta
//  LogisticLabels   atoms {-1,+1}; observation i has P(+1) = sigmoid(z_i . theta);
//                   observations are independent but not identically distributed
class Family {
public:
    enum class Kind { Bernoulli, Categorical, Zipf, LogisticLabels };

    static Family bernoulli();
    static Family categorical(std::vector<Param> params, std::vector<std::vector<double>> table);
    static Family zipf(int support);
    static Family logistic_labels(RegressorMatrix regressors);

    Kind kind() const { return kind_; }
    int support_size() const { return support_; }
    bool iid() const { return kind_ != Kind::LogisticLabels; }
    // LogisticLabels pins the sample count to the regressor rows; 0 = any n.
    int required_sample_count() const;

    std::vector<double> mass(const Param& theta) const;           // iid families only
    std::vector<double> mass_at(const Param& theta, int obs) const;
    double atom_value(int atom) const;
    const RegressorMatrix& regressors() const;

private:
    Family() = default;
    Kind kind_ = Kind::Bernoulli;
    int support_ = 2;
    std::vector<Param> cat_params_;
    std::vector<std::vector<double>> cat_table_;
    std::vector<RegressorMatrix> regressors_;  // empty or one element
};

// An action is either a parameter estimate or a column index into a loss
// matrix.
using Action = std::variant<Param, int>;

// Loss: a pseudometric on parameters (absolute difference for scalars, L1
// for vectors) or an explicit matrix with rows aligned to a grid.
class LossSpec {
public:
    enum class Rho { AbsDiff, L1 };

    static LossSpec abs_diff();
    static LossSpec l1();
    static LossSpec matrix(std::vector<std::vector<double>> entries);
    static LossSpec pseudometric(Rho r) { return r == Rho::AbsDiff ? abs_diff() : l1(); }

    bool is_matrix() const { return is_matrix_; }
    Rho rho_kind() const { return rho_; }
    double rho(const Param& a, const Param& b) const;
    double matrix_at(int row, int col) const;
    int row_count() const;
    int action_count() const;
    const std::vector<std::vector<double>>& entries() const { return entries_; }

    // Unified evaluation; theta_row indexes matrix rows and is ignored by
    // pseudometric losses.
    double value(const Param& theta, int theta_row, const Action& action) const;

private:
    LossSpec() = default;
    bool is_matrix_ = false;
    Rho rho_ = Rho::AbsDiff;
    std::vector<std::vector<double>> entries_;
};

// A dataset presented to a learner: atom indices plus their observation
// values (Bernoulli 0/1, ranks 1..M, labels -1/+1).
struct Dataset {
    std::vector<int> atoms;
    std::vector<double> values;
};

// Deterministic learning rule.
struct Learner {
    std::string label;
    std::function<Action(const Dataset&)> rule;
};

Learner constant_learner(std::string label, Action action);
Learner empirical_mean_learner();
// Posterior mean under a Beta(alpha,beta) prior for Bernoulli data:
// (alpha + #ones) / (alpha + beta + n).
Learner beta_posterior_mean_learner(double alpha, double beta);

struct RiskEstimate {
    enum class Method { ExactEnumeration, MonteCarlo };

    double value = 0.0;
    double std_error = 0.0;
    Method method = Method::ExactEnumeration;
    uint64_t seed = 0;
    long num_datasets = 0;
    std::string rng;  // algorithm identifier, set for Monte Carlo estimates
};

// Number of length-n datasets, throwing EnumerationTooLarge beyond cap.
long dataset_count(int support, int n, long cap = kDefaultEnumerationCap);

// Visit all length-n atom tuples in lexicographic order (first observation
// most significant).
void for_each_dataset(int support, int n, const std::function<void(const std::vector<int>&)>& fn);

// Product mass of a dataset under theta.
double dataset_mass(const Family& family, const Param& theta, const std::vector<int>& atoms);

RiskEstimate risk_exact(const Family& family, const Param& theta, const Learner& learner,
                        const LossSpec& loss, int n, int theta_row = -1,
                        long cap = kDefaultEnumerationCap);

RiskEstimate risk_mc(const Family& family, const Param& theta, const Learner& learner,
                     const LossSpec& loss, int n, long num_datasets, uint64_t seed,
                     int theta_row = -1);

struct EvalSpec {
    enum class Mode { Exact, MonteCarlo };
    Mode mode = Mode::Exact;
    long num_datasets = 0;
    uint64_t seed = 0;

    static EvalSpec exact() { return {}; }
    static EvalSpec mc(long num_datasets, uint64_t seed) {
        return {Mode::MonteCarlo, num_datasets, seed};
    }
};

struct PrioritizedRisk {
    double value = 0.0;      // max over the grid of prior(theta) * risk(theta)
    double std_error = 0.0;  // scaled standard error at the argmax point
    int arg_index = -1;
    Param arg_theta;
};

// Grid supremum of the weighted risk of one learner. Monte Carlo cells draw
// their substreams from spec.seed and the grid index, so the result does not
// depend on evaluation order. Ties keep the smallest index.
PrioritizedRisk learner_prioritized_risk(const ParamGrid& grid, const Family& family,
                                         const Learner& learner, const LossSpec& loss, int n,
                                         const EvalSpec& spec);

}  // namespace priorisk
