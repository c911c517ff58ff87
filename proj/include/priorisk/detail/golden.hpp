#pragma once

#include <cmath>
#include <functional>
#include <utility>

namespace priorisk::detail {

// Golden-section maximization on [lo, hi]; returns (argmax, max) over the
// points actually evaluated. Deterministic.
inline std::pair<double, double> golden_max(const std::function<double(double)>& f, double lo,
                                            double hi, double tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    double best_x = f1 >= f2 ? x1 : x2;
    double best_f = f1 >= f2 ? f1 : f2;
    while (b - a > tol) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
        if (f1 > best_f) { best_f = f1; best_x = x1; }
        if (f2 > best_f) { best_f = f2; best_x = x2; }
    }
    return {best_x, best_f};
}

}  // namespace priorisk::detail
