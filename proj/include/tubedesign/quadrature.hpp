#pragma once

#include <functional>

namespace tubedesign {

struct QuadratureResult {
    double value = 0.0;
    double errorEstimate = 0.0;
    long nodes = 0;
    bool converged = true;
};

// Adaptive Gauss-Kronrod 7/15 with recursive bisection on [a,b].
// Panels whose Kronrod error estimate falls below their share of the
// absolute tolerance are accepted; subdivision stops at maxDepth.  The
// summation tree is fixed by the recursion, so results do not depend on
// evaluation order.
QuadratureResult adaptiveGaussKronrod(const std::function<double(double)> &f, double a, double b,
                                      double absTol = 1e-9, int maxDepth = 40);

} // namespace tubedesign
