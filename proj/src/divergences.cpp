#include "priorisk/divergences.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace priorisk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSumTol = 1e-12;

double kl_term(double p, double q) {
    if (p == 0.0) return 0.0;
    if (q == 0.0) return kInf;
    return p * std::log(p / q);
}

void check_distribution(const std::vector<double>& p) {
    double s = 0.0;
    for (double v : p) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("probabilities must be finite and non-negative");
        s += v;
    }
    if (std::fabs(s - 1.0) > kSumTol) throw std::invalid_argument("probabilities must sum to 1");
}

void check_weights(const std::vector<double>& w) {
    double s = 0.0;
    for (double v : w) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("weights must be finite and non-negative");
        s += v;
    }
    if (std::fabs(s - 1.0) > kSumTol) throw std::invalid_argument("weights must form a probability vector");
}

int effective_samples(const Family& family, int n) {
    if (n < 0) throw std::invalid_argument("negative sample count");
    int req = family.required_sample_count();
    if (req > 0 && n != req)
        throw std::invalid_argument("fixed-design family requires n = " + std::to_string(req));
    return n;
}

}  // namespace

double kl_bernoulli(double p, double q) {
    if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0))
        throw std::domain_error("bernoulli parameters must lie in [0,1]");
    return kl_term(p, q) + kl_term(1.0 - p, 1.0 - q);
}

double kl_categorical(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) throw std::invalid_argument("support size mismatch");
    check_distribution(p);
    check_distribution(q);
    double s = 0.0;
    for (size_t i = 0; i < p.size(); ++i) {
        double t = kl_term(p[i], q[i]);
        if (t == kInf) return kInf;
        s += t;
    }
    return s;
}

double tv_exact(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) throw std::invalid_argument("support size mismatch");
    check_distribution(p);
    check_distribution(q);
    double s = 0.0;
    for (size_t i = 0; i < p.size(); ++i) s += std::fabs(p[i] - q[i]);
    return 0.5 * s;
}

double tv_product_upper(double kl_single, int n) {
    if (n < 0 || !(kl_single >= 0.0)) throw std::invalid_argument("bad arguments");
    return std::min(1.0, std::sqrt(0.5 * static_cast<double>(n) * kl_single));
}

SigmoidKlBound binary_kl_sum_bound(double a, double b) {
    double pa = 1.0 / (1.0 + std::exp(a));
    double pb = 1.0 / (1.0 + std::exp(b));
    SigmoidKlBound out;
    out.bound = (a - b) * (a - b);
    out.exact_symmetric_kl = kl_bernoulli(pa, pb) + kl_bernoulli(pb, pa);
    return out;
}

double mutual_information_upper(const std::vector<Param>& points,
                                const std::vector<double>& weights, const Family& family,
                                int n) {
    if (points.empty() || points.size() != weights.size())
        throw std::invalid_argument("points/weights mismatch");
    check_weights(weights);
    effective_samples(family, n);

    int obs_kinds = family.iid() ? 1 : n;
    double total = 0.0;
    for (int i = 0; i < obs_kinds; ++i) {
        std::vector<std::vector<double>> masses;
        masses.reserve(points.size());
        for (const Param& p : points) masses.push_back(family.mass_at(p, i));
        std::vector<double> mix(masses.front().size(), 0.0);
        for (size_t v = 0; v < points.size(); ++v)
            for (size_t x = 0; x < mix.size(); ++x) mix[x] += weights[v] * masses[v][x];
        double layer = 0.0;
        for (size_t v = 0; v < points.size(); ++v) {
            if (weights[v] == 0.0) continue;
            layer += weights[v] * kl_categorical(masses[v], mix);
        }
        total += layer;
    }
    return family.iid() ? static_cast<double>(n) * total : total;
}

double mutual_information_pairwise_upper(const std::vector<Param>& points, const Family& family,
                                         int n) {
    if (points.size() < 2) throw std::invalid_argument("need at least two points");
    effective_samples(family, n);
    double worst = 0.0;
    for (size_t u = 0; u < points.size(); ++u)
        for (size_t v = 0; v < points.size(); ++v) {
            if (u == v) continue;
            worst = std::max(worst, kl_dataset_total(family, points[u], points[v], n));
        }
    return worst;
}

double kl_dataset_total(const Family& family, const Param& theta0, const Param& theta1, int n) {
    effective_samples(family, n);
    if (family.iid())
        return static_cast<double>(n) * kl_categorical(family.mass(theta0), family.mass(theta1));
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        s += kl_categorical(family.mass_at(theta0, i), family.mass_at(theta1, i));
    return s;
}

double tv_product_exact(const Family& family, const Param& theta0, const Param& theta1, int n,
                        long cap) {
    effective_samples(family, n);
    dataset_count(family.support_size(), n, cap);

    if (family.kind() == Family::Kind::Bernoulli) {
        // Datasets sharing a count of ones have identical masses under both
        // parameters, so grouping by that count reproduces the enumeration sum.
        double p0 = theta0.scalar(), p1 = theta1.scalar();
        double binom = 1.0, s = 0.0;
        for (int k = 0; k <= n; ++k) {
            double m0 = std::pow(p0, k) * std::pow(1.0 - p0, n - k);
            double m1 = std::pow(p1, k) * std::pow(1.0 - p1, n - k);
            s += binom * std::fabs(m0 - m1);
            binom = binom * (n - k) / (k + 1.0);
        }
        return 0.5 * s;
    }

    std::vector<std::vector<double>> m0(static_cast<size_t>(n)), m1(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        m0[static_cast<size_t>(i)] = family.mass_at(theta0, i);
        m1[static_cast<size_t>(i)] = family.mass_at(theta1, i);
    }
    double s = 0.0;
    for_each_dataset(family.support_size(), n, [&](const std::vector<int>& atoms) {
        double w0 = 1.0, w1 = 1.0;
        for (int i = 0; i < n; ++i) {
            w0 *= m0[static_cast<size_t>(i)][static_cast<size_t>(atoms[static_cast<size_t>(i)])];
            w1 *= m1[static_cast<size_t>(i)][static_cast<size_t>(atoms[static_cast<size_t>(i)])];
        }
        s += std::fabs(w0 - w1);
    });
    return 0.5 * s;
}

}  // namespace priorisk
