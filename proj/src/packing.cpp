#include "priorisk/packing.hpp"

#include <cmath>
#include <stdexcept>

#include "priorisk/errors.hpp"

namespace priorisk {

namespace {

// Relative slack so boundary-tight candidates (delta set to the exact
// feasibility maximum) verify despite rounding.
constexpr double kVerifySlack = 1e-12;

double member_distance(const Packing& c, int u, int v) {
    if (c.metric == LossSpec::Rho::AbsDiff && c.members[static_cast<size_t>(u)].dim() != 1)
        throw UnsupportedMetric("absolute-difference metric needs scalar members");
    return l1_distance(c.members[static_cast<size_t>(u)], c.members[static_cast<size_t>(v)]);
}

void check_members(const std::vector<Param>& members, const std::vector<double>& priors,
                   double delta) {
    if (members.size() < 2) throw DegenerateIndexSet("need at least two members");
    if (members.size() != priors.size()) throw std::invalid_argument("member/prior size mismatch");
    if (!(delta >= 0.0) || !std::isfinite(delta)) throw std::invalid_argument("delta must be finite and non-negative");
    for (double w : priors)
        if (!(w > 0.0)) throw std::invalid_argument("member priors must be strictly positive");
    for (size_t i = 0; i < members.size(); ++i)
        for (size_t j = i + 1; j < members.size(); ++j)
            if (members[i] == members[j]) throw std::invalid_argument("members must be distinct");
}

}  // namespace

PackingCheck verify_packing(const Packing& candidate) {
    check_members(candidate.members, candidate.prior_values, candidate.delta);
    PackingCheck out;
    int m = static_cast<int>(candidate.members.size());
    for (int u = 0; u < m; ++u)
        for (int v = u + 1; v < m; ++v) {
            double need = candidate.delta / candidate.prior_values[static_cast<size_t>(u)] +
                          candidate.delta / candidate.prior_values[static_cast<size_t>(v)];
            double dist = member_distance(candidate, u, v);
            if (dist < need * (1.0 - kVerifySlack)) {
                out.valid = false;
                out.u = u;
                out.v = v;
                out.overlap = need - dist;
                return out;
            }
        }
    return out;
}

double max_delta_two_point(const Param& theta0, const Param& theta1, double pi0, double pi1) {
    if (!(pi0 > 0.0) || !(pi1 > 0.0)) throw std::invalid_argument("priors must be strictly positive");
    if (theta0 == theta1) throw std::invalid_argument("members must be distinct");
    return l1_distance(theta0, theta1) / (1.0 / pi0 + 1.0 / pi1);
}

double max_delta_two_point(double theta0, double theta1, const Prior& prior) {
    return max_delta_two_point(Param(theta0), Param(theta1), prior(theta0), prior(theta1));
}

std::vector<int> hypercube_vertex(int index, int d) {
    std::vector<int> v(static_cast<size_t>(d));
    for (int j = 0; j < d; ++j) v[static_cast<size_t>(j)] = (index >> j) & 1 ? 1 : -1;
    return v;
}

int hypercube_index(const std::vector<int>& v) {
    int idx = 0;
    for (size_t j = 0; j < v.size(); ++j) {
        if (v[j] != 1 && v[j] != -1) throw std::invalid_argument("vertex coordinates must be +/-1");
        if (v[j] == 1) idx |= 1 << j;
    }
    return idx;
}

std::vector<int> sign_decode(const Param& theta) {
    std::vector<int> v(static_cast<size_t>(theta.dim()));
    for (int j = 0; j < theta.dim(); ++j) v[static_cast<size_t>(j)] = theta[j] < 0.0 ? -1 : 1;
    return v;
}

SeparationCheck verify_hamming_separation(const HammingSeparation& candidate,
                                          const std::vector<Param>& grid_points) {
    if (candidate.d < 1 || candidate.d > 20) throw std::invalid_argument("dimension out of range");
    size_t want = static_cast<size_t>(1) << candidate.d;
    if (candidate.members.size() != want)
        throw std::invalid_argument("need one member per hypercube vertex");
    check_members(candidate.members, candidate.prior_values, candidate.delta);
    if (grid_points.empty()) throw std::invalid_argument("empty verification grid");

    SeparationCheck out;
    for (size_t m = 0; m < candidate.members.size(); ++m) {
        std::vector<int> v = hypercube_vertex(static_cast<int>(m), candidate.d);
        for (size_t g = 0; g < grid_points.size(); ++g) {
            std::vector<int> dec = sign_decode(grid_points[g]);
            int ham = 0;
            for (int j = 0; j < candidate.d; ++j)
                if (dec[static_cast<size_t>(j)] != v[static_cast<size_t>(j)]) ++ham;
            if (ham == 0) continue;
            double lhs = l1_distance(candidate.members[m], grid_points[g]);
            double rhs = 2.0 * candidate.delta / candidate.prior_values[m] * ham;
            if (lhs < rhs * (1.0 - kVerifySlack)) {
                out.valid = false;
                out.member = static_cast<int>(m);
                out.grid_index = static_cast<int>(g);
                out.lhs = lhs;
                out.rhs = rhs;
                return out;
            }
        }
    }
    return out;
}

HammingSeparation scaled_hypercube_separation(double scale, int d,
                                              const std::vector<double>& member_priors) {
    if (!(scale > 0.0)) throw std::invalid_argument("scale must be positive");
    if (d < 1 || d > 20) throw std::invalid_argument("dimension out of range");
    size_t want = static_cast<size_t>(1) << d;
    if (member_priors.size() != want) throw std::invalid_argument("need one prior per vertex");

    HammingSeparation sep;
    sep.d = d;
    sep.delta = 0.5 * scale;
    sep.prior_values = member_priors;
    sep.members.reserve(want);
    for (size_t m = 0; m < want; ++m) {
        if (!(member_priors[m] > 0.0)) throw std::invalid_argument("member priors must be strictly positive");
        std::vector<int> v = hypercube_vertex(static_cast<int>(m), d);
        std::vector<double> coords(static_cast<size_t>(d));
        for (int j = 0; j < d; ++j)
            coords[static_cast<size_t>(j)] = scale / member_priors[m] * v[static_cast<size_t>(j)];
        sep.members.emplace_back(std::move(coords));
    }
    return sep;
}

}  // namespace priorisk
