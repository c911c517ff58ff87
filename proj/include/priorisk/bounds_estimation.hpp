#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "priorisk/divergences.hpp"
#include "priorisk/packing.hpp"
#include "priorisk/risk_core.hpp"

namespace priorisk {

enum class BoundMethod { LeCam, Fano, Assouad, AssouadLogisticClosed, GFano };
enum class InfoBound { Mixture, Pairwise };

struct LeCamWitness {
    Packing packing;
    DivergenceValue divergence;  // tv holds the n-fold total variation
    int n = 0;
};

struct FanoWitness {
    Packing packing;
    double info_upper = 0.0;
    InfoBound info_kind = InfoBound::Mixture;
};

struct AssouadWitness {
    double delta = 0.0;
    int d = 0;
    std::vector<double> tv_terms;  // per-coordinate mixture TVs (exact path)
    double cs_term = 0.0;          // aggregated sqrt argument (weakened path)
    bool exact = false;
};

struct LogisticClosedWitness {
    std::vector<double> lambdas;
    double denom = 0.0;          // sqrt(sum_j sum_i lambda_j^2 z_ij^2)
    double equal_lambda_value = 0.0;  // Frobenius form, when all lambdas equal
    bool equal_lambda = false;
};

struct GFanoWitness {
    double lambda = 0.0;
    double rho_star = 0.0;
    double info_upper = 0.0;
    bool weighted = false;
};

using BoundWitness =
    std::variant<LeCamWitness, FanoWitness, AssouadWitness, LogisticClosedWitness, GFanoWitness>;

struct BoundResult {
    BoundMethod method = BoundMethod::LeCam;
    double value = 0.0;
    int n = 0;
    BoundWitness witness;
};

// Two-point bound: (delta/2) * [1 - TV(P0^n, P1^n)], total variation exact
// while the dataset space stays enumerable, otherwise via Pinsker and
// tensorization.
BoundResult lecam_bound(const Packing& two_point, const Family& family, int n,
                        long exact_cap = kDefaultEnumerationCap);

struct LeCamSearchConfig {
    // Candidate centers and half-widths as fractions of the domain width.
    double center_lo = 0.05, center_hi = 0.95, center_step = 0.01;
    double width_lo = 0.01, width_hi = 0.45, width_step = 0.01;
    // Golden-section refinement of the half-width around each center's best
    // grid value; needed once optimal widths drop below the grid floor.
    bool refine_width = true;
    long exact_cap = kDefaultEnumerationCap;
};

// Deterministic search over two-point packings symmetric about a center, with
// delta set to the largest feasible value for each candidate. Ties keep the
// earliest candidate.
BoundResult lecam_optimize(const ParamGrid& domain, const Family& family, const Prior& prior,
                           int n, const LeCamSearchConfig& cfg = {});

// Multi-hypothesis bound: delta * [1 - (I_upper + ln 2) / ln |V|], clamped at
// zero. The index is uniform over the packing members.
BoundResult fano_bound(const Packing& packing, const Family& family, int n, InfoBound info);

// Hypercube bound: delta * sum_j [1 - TV_j] with TV_j between the two
// coordinate-conditioned mixtures of dataset distributions; exact while
// enumerable, otherwise through the Cauchy-Schwarz + Pinsker weakening.
BoundResult assouad_bound(const HammingSeparation& sep, const Family& family, int n,
                          const std::vector<Param>& grid_points,
                          long exact_cap = kDefaultEnumerationCap);

// Closed form for the fixed-design label model:
// (1/16) d^{3/2} / sqrt(sum_j sum_i lambda_j^2 z_ij^2); with equal lambdas
// this equals (1/16) d^{3/2} / (lambda ||Z||_F). All-zero Z yields +infinity.
BoundResult logistic_closed_form(const RegressorMatrix& Z, const std::vector<double>& lambdas);

// Per-coordinate weights lambda_j = (1/4)(1/pi_plus + 1/pi_minus) from
// pairwise-normalized priors (pi_plus + pi_minus = 1).
std::vector<double> lambda_from_prior(const std::vector<std::pair<double, double>>& pairs);

// Empirical check of the estimation-to-testing reduction for one learner:
// delta * P(decoded index != true index) must not exceed the learner's
// prioritized risk.
struct ReductionCheckResult {
    bool holds = false;
    double lhs = 0.0;  // learner prioritized risk
    double rhs = 0.0;  // delta * test error of the induced decoder
    double gap = 0.0;  // lhs - rhs
    double combined_std_error = 0.0;
};

ReductionCheckResult reduction_check(const Learner& learner, const Packing& packing,
                                     const Family& family, const ParamGrid& grid, int n,
                                     const EvalSpec& spec);

}  // namespace priorisk
