#include "priorisk/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "priorisk/errors.hpp"

namespace priorisk {

namespace {

void check_weights(const std::vector<double>& w) {
    double s = 0.0;
    for (double v : w) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("weights must be finite and non-negative");
        s += v;
    }
    if (std::fabs(s - 1.0) > 1e-12) throw std::invalid_argument("weights must form a probability vector");
}

// Dataset masses per grid point, dataset-lexicographic. datasets x points.
std::vector<std::vector<double>> mass_table(const Family& family, const std::vector<Param>& points,
                                            int n, long datasets) {
    std::vector<std::vector<std::vector<double>>> obs(points.size());
    for (size_t t = 0; t < points.size(); ++t)
        for (int i = 0; i < n; ++i) obs[t].push_back(family.mass_at(points[t], i));

    std::vector<std::vector<double>> table(static_cast<size_t>(datasets),
                                           std::vector<double>(points.size()));
    long x = 0;
    for_each_dataset(family.support_size(), n, [&](const std::vector<int>& atoms) {
        for (size_t t = 0; t < points.size(); ++t) {
            double p = 1.0;
            for (int i = 0; i < n; ++i)
                p *= obs[t][static_cast<size_t>(i)][static_cast<size_t>(atoms[static_cast<size_t>(i)])];
            table[static_cast<size_t>(x)][t] = p;
        }
        ++x;
    });
    return table;
}

}  // namespace

FiniteInstance FiniteInstance::make(ParamGrid grid, std::vector<double> weights, Family family,
                                    LossSpec loss, int n, long cap) {
    if (!loss.is_matrix()) throw std::invalid_argument("instance needs a matrix loss");
    if (loss.row_count() != grid.size()) throw std::invalid_argument("loss rows must match grid points");
    if (loss.action_count() < 1) throw EmptyActionSet("instance needs at least one action");
    if (static_cast<int>(weights.size()) != grid.size())
        throw std::invalid_argument("one weight per grid point required");
    check_weights(weights);
    int req = family.required_sample_count();
    if (req > 0 && n != req)
        throw std::invalid_argument("fixed-design family requires n = " + std::to_string(req));
    long datasets = dataset_count(family.support_size(), n, cap);
    FiniteInstance inst{std::move(grid), std::move(weights), std::move(family), std::move(loss), n,
                        datasets};
    return inst;
}

double bayes_risk_exact(const FiniteInstance& instance, bool weighted) {
    int rows = instance.grid.size();
    int actions = instance.loss.action_count();
    auto table = mass_table(instance.family, instance.grid.points(), instance.n, instance.datasets);

    double total = 0.0;
    for (long x = 0; x < instance.datasets; ++x) {
        double best = 0.0;
        for (int a = 0; a < actions; ++a) {
            double e = 0.0;
            for (int t = 0; t < rows; ++t) {
                double lt = instance.loss.matrix_at(t, a);
                if (weighted) lt *= instance.grid.prior_value(t);
                e += instance.weights[static_cast<size_t>(t)] * table[static_cast<size_t>(x)][static_cast<size_t>(t)] * lt;
            }
            if (a == 0 || e < best) best = e;
        }
        total += best;
    }
    return total;
}

EnumeratedPrioritized prioritized_risk_enumerated(const FiniteInstance& instance,
                                                  long learner_cap) {
    int rows = instance.grid.size();
    int actions = instance.loss.action_count();
    long datasets = instance.datasets;

    // |A|^datasets deterministic learners.
    long learners = 1;
    for (long x = 0; x < datasets; ++x) {
        if (learners > learner_cap / actions)
            throw EnumerationTooLarge("learner space exceeds cap of " + std::to_string(learner_cap));
        learners *= actions;
    }

    auto table = mass_table(instance.family, instance.grid.points(), instance.n, datasets);

    EnumeratedPrioritized out;
    std::vector<int> assign(static_cast<size_t>(datasets), 0);
    bool first = true;
    while (true) {
        double sup = 0.0;
        for (int t = 0; t < rows; ++t) {
            double r = 0.0;
            for (long x = 0; x < datasets; ++x)
                r += table[static_cast<size_t>(x)][static_cast<size_t>(t)] *
                     instance.loss.matrix_at(t, assign[static_cast<size_t>(x)]);
            double weighted = instance.grid.prior_value(t) * r;
            if (weighted > sup) sup = weighted;
        }
        if (first || sup < out.value) {
            out.value = sup;
            out.learner_actions = assign;
            first = false;
        }
        long x = datasets - 1;
        while (x >= 0 && assign[static_cast<size_t>(x)] == actions - 1) {
            assign[static_cast<size_t>(x)] = 0;
            --x;
        }
        if (x < 0) break;
        ++assign[static_cast<size_t>(x)];
    }
    return out;
}

double optimal_test_error(const Family& family, const std::vector<Param>& members, int n,
                          long cap) {
    if (members.size() < 2) throw DegenerateIndexSet("need at least two members");
    long datasets = dataset_count(family.support_size(), n, cap);
    auto table = mass_table(family, members, n, datasets);

    double err = 0.0;
    for (long x = 0; x < datasets; ++x) {
        double sum = 0.0, best = 0.0;
        for (size_t v = 0; v < members.size(); ++v) {
            double p = table[static_cast<size_t>(x)][v];
            sum += p;
            if (p > best) best = p;
        }
        err += sum - best;
    }
    return err / static_cast<double>(members.size());
}

double exact_mutual_information(const std::vector<Param>& points,
                                const std::vector<double>& weights, const Family& family, int n,
                                long cap) {
    if (points.empty() || points.size() != weights.size())
        throw std::invalid_argument("points/weights mismatch");
    check_weights(weights);
    long datasets = dataset_count(family.support_size(), n, cap);
    auto table = mass_table(family, points, n, datasets);

    double info = 0.0;
    for (long x = 0; x < datasets; ++x) {
        double mix = 0.0;
        for (size_t t = 0; t < points.size(); ++t)
            mix += weights[t] * table[static_cast<size_t>(x)][t];
        for (size_t t = 0; t < points.size(); ++t) {
            double joint = weights[t] * table[static_cast<size_t>(x)][t];
            if (joint > 0.0) info += joint * std::log(table[static_cast<size_t>(x)][t] / mix);
        }
    }
    return info;
}

}  // namespace priorisk
