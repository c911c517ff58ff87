#pragma once

#include <vector>

#include "priorisk/risk_core.hpp"

namespace priorisk {

// Weighted packing: balls of radius delta / prior(theta_v) around the members
// must be pairwise disjoint. For the shipped metrics that is equivalent to
// dist(theta_u, theta_v) >= delta/prior_u + delta/prior_v for every pair.
struct Packing {
    std::vector<Param> members;
    double delta = 0.0;
    std::vector<double> prior_values;
    LossSpec::Rho metric = LossSpec::Rho::AbsDiff;
};

struct PackingCheck {
    bool valid = true;
    int u = -1, v = -1;   // first violating pair, if any
    double overlap = 0.0;  // required separation minus actual distance
};

PackingCheck verify_packing(const Packing& candidate);

// Largest delta for which {theta0, theta1} with weights (pi0, pi1) packs:
// dist / (1/pi0 + 1/pi1).
double max_delta_two_point(const Param& theta0, const Param& theta1, double pi0, double pi1);
double max_delta_two_point(double theta0, double theta1, const Prior& prior);

// Hypercube vertex bookkeeping: member index bit j is set iff v_j = +1.
std::vector<int> hypercube_vertex(int index, int d);
int hypercube_index(const std::vector<int>& v);

// Coordinate-sign decoder; zero decodes to +1.
std::vector<int> sign_decode(const Param& theta);

// Hamming separation candidate: 2^d members theta_v with weights, and the
// requirement dist(theta_v, theta) >= (2*delta/prior_v) * H(decode(theta), v)
// for every grid point theta. The decoder is the coordinate-sign rule.
struct HammingSeparation {
    int d = 0;
    std::vector<Param> members;  // size 2^d, indexed by hypercube_index
    double delta = 0.0;
    std::vector<double> prior_values;
};

struct SeparationCheck {
    bool valid = true;
    int member = -1, grid_index = -1;
    double lhs = 0.0, rhs = 0.0;
};

SeparationCheck verify_hamming_separation(const HammingSeparation& candidate,
                                          const std::vector<Param>& grid_points);

// Members (scale / prior_v) * v. Such a family separates at delta = scale/2
// under the sign decoder.
HammingSeparation scaled_hypercube_separation(double scale, int d,
                                              const std::vector<double>& member_priors);

}  // namespace priorisk
