#include "doctest.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "priorisk/divergences.hpp"
#include "priorisk/errors.hpp"
#include "priorisk/oracle.hpp"
#include "priorisk/rng.hpp"

using namespace priorisk;

namespace {

// Independent n-fold total variation by raw dataset enumeration.
double tv_by_enumeration(const Family& f, const Param& a, const Param& b, int n) {
    double s = 0.0;
    for_each_dataset(f.support_size(), n, [&](const std::vector<int>& atoms) {
        s += std::fabs(dataset_mass(f, a, atoms) - dataset_mass(f, b, atoms));
    });
    return 0.5 * s;
}

// Independent n-fold KL by raw dataset enumeration.
double kl_by_enumeration(const Family& f, const Param& a, const Param& b, int n) {
    double s = 0.0;
    for_each_dataset(f.support_size(), n, [&](const std::vector<int>& atoms) {
        double p = dataset_mass(f, a, atoms);
        if (p == 0.0) return;
        s += p * std::log(p / dataset_mass(f, b, atoms));
    });
    return s;
}

}  // namespace

TEST_CASE("bernoulli kl values") {
    CHECK(kl_bernoulli(0.5, 0.25) == doctest::Approx(0.5 * std::log(4.0 / 3.0)).epsilon(1e-15));
    CHECK(kl_bernoulli(1.0, 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(kl_bernoulli(0.0, 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(kl_bernoulli(0.3, 0.3) == 0.0);
    CHECK(std::isinf(kl_bernoulli(0.5, 0.0)));
    CHECK(std::isinf(kl_bernoulli(0.5, 1.0)));
    CHECK(kl_bernoulli(0.0, 0.0) == 0.0);
    CHECK_THROWS_AS(kl_bernoulli(-0.1, 0.5), std::domain_error);
    CHECK_THROWS_AS(kl_bernoulli(0.5, 1.2), std::domain_error);
}

TEST_CASE("categorical kl and tv") {
    std::vector<double> p{0.7, 0.3}, q{0.4, 0.6};
    double want = 0.7 * std::log(0.7 / 0.4) + 0.3 * std::log(0.3 / 0.6);
    CHECK(kl_categorical(p, q) == doctest::Approx(want).epsilon(1e-15));
    CHECK(kl_categorical(p, p) == 0.0);
    CHECK(std::isinf(kl_categorical({0.5, 0.5}, {1.0, 0.0})));

    CHECK(tv_exact(p, q) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(tv_exact(q, p) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(tv_exact(p, p) == 0.0);
    CHECK(tv_exact({1.0, 0.0}, {0.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(tv_exact({0.5, 0.5}, {1.0}), std::invalid_argument);
}

TEST_CASE("pinsker and tensorized upper bound") {
    SplitMix64 rng(101);
    for (int t = 0; t < 2000; ++t) {
        double p = 0.001 + 0.998 * rng.uniform01();
        double q = 0.001 + 0.998 * rng.uniform01();
        double tv = tv_exact({1.0 - p, p}, {1.0 - q, q});
        double kl = kl_bernoulli(p, q);
        CHECK(tv <= std::sqrt(kl / 2.0) + 1e-12);
        CHECK(tv <= tv_product_upper(kl, 1) + 1e-12);
    }
    CHECK(tv_product_upper(0.08, 4) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(tv_product_upper(10.0, 50) == 1.0);
    CHECK(tv_product_upper(std::numeric_limits<double>::infinity(), 2) == 1.0);
    CHECK(tv_product_upper(0.0, 100) == 0.0);
}

TEST_CASE("kl adds across independent observations") {
    Family f = Family::bernoulli();
    SplitMix64 rng(202);
    for (int t = 0; t < 60; ++t) {
        double a = 0.05 + 0.9 * rng.uniform01();
        double b = 0.05 + 0.9 * rng.uniform01();
        for (int n = 1; n <= 5; ++n) {
            double total = kl_dataset_total(f, Param(a), Param(b), n);
            CHECK(std::fabs(total - n * kl_bernoulli(a, b)) <= 1e-9);
            CHECK(std::fabs(total - kl_by_enumeration(f, Param(a), Param(b), n)) <= 1e-9);
        }
    }

    // Fixed-design rows contribute their own per-observation terms.
    RegressorMatrix Z(2, 1, {1.0, -0.5});
    Family lf = Family::logistic_labels(Z);
    Param t0(std::vector<double>{0.3}), t1(std::vector<double>{-0.2});
    auto sig = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
    double want = kl_bernoulli(sig(1.0 * 0.3), sig(1.0 * -0.2)) +
                  kl_bernoulli(sig(-0.5 * 0.3), sig(-0.5 * -0.2));
    CHECK(kl_dataset_total(lf, t0, t1, 2) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("sigmoid symmetric kl bound") {
    SplitMix64 rng(303);
    for (int t = 0; t < 2000; ++t) {
        double a = -8.0 + 16.0 * rng.uniform01();
        double b = -8.0 + 16.0 * rng.uniform01();
        SigmoidKlBound s = binary_kl_sum_bound(a, b);
        CHECK(s.bound == doctest::Approx((a - b) * (a - b)).epsilon(1e-12));
        CHECK(s.exact_symmetric_kl >= 0.0);
        CHECK(s.exact_symmetric_kl <= s.bound + 1e-12);
        double pa = 1.0 / (1.0 + std::exp(a)), pb = 1.0 / (1.0 + std::exp(b));
        CHECK(s.exact_symmetric_kl ==
              doctest::Approx(kl_bernoulli(pa, pb) + kl_bernoulli(pb, pa)).epsilon(1e-10));
    }
    SigmoidKlBound eq = binary_kl_sum_bound(1.7, 1.7);
    CHECK(eq.bound == 0.0);
    CHECK(eq.exact_symmetric_kl == 0.0);
}

TEST_CASE("product tv matches enumeration") {
    Family f = Family::bernoulli();
    SplitMix64 rng(404);
    for (int t = 0; t < 40; ++t) {
        double a = 0.05 + 0.9 * rng.uniform01();
        double b = 0.05 + 0.9 * rng.uniform01();
        for (int n = 1; n <= 4; ++n) {
            double fast = tv_product_exact(f, Param(a), Param(b), n);
            CHECK(std::fabs(fast - tv_by_enumeration(f, Param(a), Param(b), n)) <= 1e-12);
        }
    }
    CHECK(tv_product_exact(f, Param(0.4), Param(0.6), 1) == doctest::Approx(0.2).epsilon(1e-14));

    Family z = Family::zipf(4);
    double zv = tv_product_exact(z, Param(0.5), Param(2.0), 2);
    CHECK(std::fabs(zv - tv_by_enumeration(z, Param(0.5), Param(2.0), 2)) <= 1e-12);

    // The enumeration guard trips beyond the cap.
    CHECK_THROWS_AS(tv_product_exact(f, Param(0.3), Param(0.6), 3, 4), EnumerationTooLarge);

    // More data never shrinks the distance.
    double prev = 0.0;
    for (int n = 1; n <= 6; ++n) {
        double cur = tv_product_exact(f, Param(0.45), Param(0.55), n);
        CHECK(cur >= prev - 1e-12);
        prev = cur;
    }
}

TEST_CASE("information upper bounds dominate the exact value") {
    Family f = Family::bernoulli();
    SplitMix64 rng(505);
    for (int t = 0; t < 25; ++t) {
        int k = 2 + static_cast<int>(rng.next() % 3);  // 2..4 points
        std::vector<Param> pts;
        std::vector<double> w(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) {
            double v;
            bool fresh;
            do {
                v = 0.05 + 0.9 * rng.uniform01();
                fresh = true;
                for (const Param& p : pts) fresh = fresh && p.scalar() != v;
            } while (!fresh);
            pts.push_back(Param(v));
        }
        double s = 0.0;
        for (int i = 0; i < k; ++i) {
            w[static_cast<size_t>(i)] = 0.1 + rng.uniform01();
            s += w[static_cast<size_t>(i)];
        }
        for (double& x : w) x /= s;
        for (int n = 1; n <= 3; ++n) {
            double exact = exact_mutual_information(pts, w, f, n);
            double mix = mutual_information_upper(pts, w, f, n);
            CHECK(exact >= -1e-12);
            CHECK(mix + 1e-12 >= exact);
        }
    }

    // Pairwise form: n times the largest ordered-pair divergence.
    std::vector<Param> two{Param(0.3), Param(0.6)};
    double want = 4.0 * std::max(kl_bernoulli(0.3, 0.6), kl_bernoulli(0.6, 0.3));
    CHECK(mutual_information_pairwise_upper(two, f, 4) == doctest::Approx(want).epsilon(1e-12));

    CHECK_THROWS_AS(mutual_information_upper({Param(0.5)}, {0.5}, f, 1), std::invalid_argument);
}
