#pragma once

#include "nocurl/objectives.hpp"
#include "nocurl/types.hpp"

#include <functional>
#include <vector>

namespace nocurl {

struct WolfeParams {
    double c1 = 1e-4;    // sufficient-decrease slope
    double c2 = 0.9;     // curvature bound; 0 < c1 < c2 < 1
    int max_trials = 40; // objective evaluations per line search
};

struct OptimOptions {
    int memory = 10;
    double ftol = 1e-8;  // relative decrease |f_prev - f| / max(|f_prev|, |f|, 1)
    double gtol = 1e-8;  // infinity norm of the gradient
    int max_iters = 500;
    WolfeParams wolfe;
};

enum class StopReason { ftol, gtol, max_iters };

const char* stop_reason_name(StopReason r);

struct OptimReport {
    Vector x0;
    Vector x_final;
    double f_final = 0.0;
    int iterations = 0;
    StopReason converged_by = StopReason::max_iters;
    int function_evals = 0;
    std::vector<double> values;  // objective at x0, then at each accepted iterate
};

using Objective = std::function<ObjectiveEval(const Vector&)>;

// Limited-memory BFGS with strong Wolfe line search (cubic interpolation,
// bisection fallback). Deterministic: same objective, start and options give
// the same iterates. Accepted steps never increase the objective. Curvature
// pairs with y^T s <= 1e-10 ||y|| ||s|| are discarded. A failed line search
// returns the best point seen, reported as max_iters. Non-finite value or
// gradient at the start throws.
OptimReport minimize(const Objective& objective, const Vector& x0,
                     const OptimOptions& options);

}  // namespace nocurl
