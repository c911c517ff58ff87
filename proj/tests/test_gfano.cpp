#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <variant>
#include <vector>

#include "priorisk/errors.hpp"
#include "priorisk/gfano.hpp"
#include "priorisk/oracle.hpp"

using namespace priorisk;

namespace {

GFanoInstance two_point(std::vector<double> prior_values, std::vector<std::vector<double>> loss,
                        int n) {
    ParamGrid g = ParamGrid::from_points({Param(0.3), Param(0.7)}, std::move(prior_values));
    return GFanoInstance::make(g, {0.5, 0.5}, Family::bernoulli(), LossSpec::matrix(std::move(loss)),
                               n);
}

}  // namespace

TEST_CASE("instance validation") {
    ParamGrid g = ParamGrid::from_points({Param(0.3), Param(0.7)}, {1.0, 1.0});
    Family f = Family::bernoulli();
    LossSpec mat = LossSpec::matrix({{0.0, 1.0}, {1.0, 0.0}});
    CHECK_THROWS_AS(GFanoInstance::make(g, {0.6, 0.6}, f, mat, 1), std::invalid_argument);
    CHECK_THROWS_AS(GFanoInstance::make(g, {1.0}, f, mat, 1), std::invalid_argument);
    CHECK_THROWS_AS(GFanoInstance::make(g, {0.5, 0.5}, f, LossSpec::abs_diff(), 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(GFanoInstance::make(g, {0.5, 0.5}, f, LossSpec::matrix({{0.0}}), 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(GFanoInstance::make(g, {0.5, 0.5}, f, mat, -1), std::invalid_argument);

    RegressorMatrix Z(2, 1, {1.0, 0.5});
    ParamGrid vg = ParamGrid::from_points(
        {Param(std::vector<double>{-0.5}), Param(std::vector<double>{0.5})}, {1.0, 1.0});
    CHECK_THROWS_AS(GFanoInstance::make(vg, {0.5, 0.5}, Family::logistic_labels(Z), mat, 3),
                    std::invalid_argument);
}

TEST_CASE("soft loss level closed forms") {
    // One grid point: the soft level equals lambda times the cheapest loss.
    ParamGrid solo = ParamGrid::from_points({Param(0.5)}, {1.0});
    GFanoInstance one = GFanoInstance::make(solo, {1.0}, Family::bernoulli(),
                                            LossSpec::matrix({{2.0, 5.0}}), 1);
    CHECK(rho_star(one, 1.0, false) == 2.0);
    CHECK(rho_star(one, 0.5, false) == 1.0);

    // Two points, one action: -log(w0 + w1 e^{-lambda}).
    GFanoInstance pair = two_point({1.0, 1.0}, {{0.0}, {1.0}}, 1);
    double lam = std::log(2.0);
    CHECK(rho_star(pair, lam, false) ==
          doctest::Approx(-std::log(0.5 + 0.5 * std::exp(-lam))).epsilon(1e-15));
    CHECK(rho_star(pair, 1.0, false) ==
          doctest::Approx(-std::log(0.5 + 0.5 * std::exp(-1.0))).epsilon(1e-15));

    // Priority weights rescale the losses before the soft minimum.
    GFanoInstance wpair = two_point({2.0, 0.5}, {{0.0}, {1.0}}, 1);
    CHECK(rho_star(wpair, 1.0, true) ==
          doctest::Approx(-std::log(0.5 + 0.5 * std::exp(-0.5))).epsilon(1e-15));
    CHECK(rho_star(wpair, 1.0, false) ==
          doctest::Approx(-std::log(0.5 + 0.5 * std::exp(-1.0))).epsilon(1e-15));

    CHECK_THROWS_AS(rho_star(pair, 0.0, false), std::invalid_argument);
    CHECK_THROWS_AS(rho_star(pair, -1.0, false), std::invalid_argument);

    // Nondecreasing in lambda (soft minimum hardens).
    double prev = -1.0;
    for (double l : {0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
        double cur = rho_star(pair, l, false);
        CHECK(cur >= prev - 1e-12);
        prev = cur;
    }
}

TEST_CASE("soft bound against the exact average optimum") {
    ParamGrid g = ParamGrid::from_points({Param(0.3), Param(0.7)}, {1.3, 0.7});
    std::vector<double> w{0.5, 0.5};
    LossSpec mat = LossSpec::matrix({{0.0, 2.0}, {1.5, 0.0}});
    Family f = Family::bernoulli();

    // n = 0: no data, the information term vanishes and the bound is
    // rho_star / lambda exactly.
    GFanoInstance i0 = GFanoInstance::make(g, w, f, mat, 0);
    FiniteInstance fi0 = FiniteInstance::make(g, w, f, mat, 0);
    for (double lam : {0.25, 1.0, 4.0}) {
        BoundResult b = gfano_bayes_lower(i0, lam, true);
        const GFanoWitness& wit = std::get<GFanoWitness>(b.witness);
        CHECK(wit.info_upper == 0.0);
        CHECK(wit.weighted);
        CHECK(b.value == doctest::Approx(rho_star(i0, lam, true) / lam).epsilon(1e-15));
        CHECK(b.value <= bayes_risk_exact(fi0, true) + 1e-12);
    }

    // With data the mixture information enters; the bound stays below the
    // exact weighted average optimum for every lambda.
    for (int n : {1, 2, 3}) {
        GFanoInstance in = GFanoInstance::make(g, w, f, mat, n);
        FiniteInstance fin = FiniteInstance::make(g, w, f, mat, n);
        double bayes = bayes_risk_exact(fin, true);
        for (double lam : {0.0625, 0.5, 1.0, 2.0, 16.0}) {
            BoundResult b = gfano_bayes_lower(in, lam, true);
            CHECK(b.value >= 0.0);
            CHECK(b.value <= bayes + 1e-12);
        }
    }
}

TEST_CASE("lambda search dominates its own grid") {
    ParamGrid g = ParamGrid::from_points({Param(0.2), Param(0.5), Param(0.8)}, {1.5, 1.0, 0.5});
    std::vector<double> w{0.3, 0.4, 0.3};
    LossSpec mat = LossSpec::matrix({{0.0, 1.0, 3.0}, {1.0, 0.0, 1.0}, {3.0, 1.0, 0.0}});
    GFanoInstance inst = GFanoInstance::make(g, w, Family::bernoulli(), mat, 2);

    BoundResult best = gfano_prioritized_lower(inst);
    const GFanoWitness& wit = std::get<GFanoWitness>(best.witness);
    CHECK(wit.weighted);
    CHECK(wit.lambda > 0.0);
    CHECK(best.method == BoundMethod::GFano);

    for (int k = -10; k <= 10; ++k) {
        double lam = std::exp2(static_cast<double>(k));
        CHECK(best.value >= gfano_bayes_lower(inst, lam, true).value - 1e-12);
    }
    // The reported lambda reproduces the reported value.
    CHECK(gfano_bayes_lower(inst, wit.lambda, true).value ==
          doctest::Approx(best.value).epsilon(1e-12));

    BoundResult again = gfano_prioritized_lower(inst);
    CHECK(best.value == again.value);

    GFanoSearchConfig badcfg;
    badcfg.log2_lo = 3;
    badcfg.log2_hi = 1;
    CHECK_THROWS_AS(gfano_prioritized_lower(inst, badcfg), std::invalid_argument);
}
