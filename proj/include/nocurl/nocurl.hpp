#pragma once

#include "nocurl/lbfgs.hpp"
#include "nocurl/objectives.hpp"
#include "nocurl/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nocurl {

// Two-step learner variants.
//
//   nocurl1, nocurl2      penalized warm-up (one or two rounds), then the
//                         potential/flow resolution step, then threshold
//   nocurl1_s, nocurl2_s  warm-up only, made acyclic by incremental threshold
//   *_minus               resolution step without the flow refit (closed-form
//                         w only)
//   *_plus                full pipeline plus a final joint (w, p) refit
//   rand_init             joint refit from uniform(0,1) random (w, p)
//   rand_p                random p: w refit at fixed random p, then joint
enum class Variant {
    nocurl1,
    nocurl2,
    nocurl1_s,
    nocurl2_s,
    nocurl1_minus,
    nocurl2_minus,
    nocurl1_plus,
    nocurl2_plus,
    rand_init,
    rand_p,
};

const char* variant_name(Variant v);
std::optional<Variant> variant_from_name(const std::string& name);
const std::vector<Variant>& all_variants();

struct NoCurlConfig {
    Variant variant = Variant::nocurl2;
    // Penalty schedule for the warm-up step; empty picks the variant default
    // ([100] for the nocurl1 family, [10, 1000] for the nocurl2 family).
    // Must be positive and strictly increasing.
    std::vector<double> lambdas;
    double threshold_eps = 0.3;
    HKind h_kind = HKind::poly;
    OptimOptions optim;
    std::uint64_t seed = 0;  // drives the random draws of rand_init / rand_p
};

struct LearnResult {
    Matrix a_hat;               // final thresholded DAG
    Matrix a_raw;               // solution right before the final threshold;
                                // score metrics read this so they measure fit
                                // quality rather than the threshold's bite
    Matrix a_pre;               // thresholded warm-up result; empty when the
                                // variant skips the warm-up
    Potential p_tilde;          // empty when the variant produces no potential
    EdgeFlow w_tilde;
    std::vector<double> lambdas;  // penalty schedule actually used; empty when
                                  // the variant has no warm-up
    double final_h = 0.0;       // acyclicity measure of a_hat
    double final_threshold = 0.0;
    double wall_time = 0.0;     // seconds spent learning, excluding I/O
    std::vector<OptimReport> optim_reports;
    Variant variant = Variant::nocurl2;

    // Augmented-Lagrangian trace; only filled by notears_baseline.
    std::vector<double> rho_trace;
    std::vector<double> alpha_trace;
    std::vector<double> h_trace;
};

// Warm-up: minimize F + lambda*h over all entries starting from zero, once
// per lambda, warm-starting each round from the previous solution; the
// result is thresholded at eps.
Matrix step1(const Dataset& data, const std::vector<double>& lambdas,
             HKind kind, double eps, const OptimOptions& options,
             std::vector<OptimReport>* reports = nullptr);

struct Step2Result {
    Potential p;
    EdgeFlow w;
    Matrix a;  // gamma(w, p), not thresholded
};

// Resolution: p from topo_potential(a_pre), then w by minimizing
// F(gamma(w, p)) at fixed p, starting from the closed-form w.
Step2Result step2(const Matrix& a_pre, const Dataset& data,
                  const OptimOptions& options,
                  std::vector<OptimReport>* reports = nullptr);

// Runs the configured variant end to end. The returned a_hat is always a
// verified DAG; a non-DAG result raises an internal error.
LearnResult nocurl_run(const Dataset& data, const NoCurlConfig& config);

// Augmented-Lagrangian baseline: minimize F + (rho/2) h^2 + alpha h,
// then if h failed to shrink to a quarter of its previous value multiply
// rho by 10, otherwise fold rho*h into alpha. Starts at rho = 1, alpha = 0;
// stops when h <= 1e-8 or rho > 1e16; thresholds at eps.
LearnResult notears_baseline(const Dataset& data, HKind kind, double eps,
                             const OptimOptions& options);

// F(a_hat, data) - F(a_true, data).
double delta_f(const Matrix& a_hat, const Matrix& a_true, const Dataset& data);

}  // namespace nocurl
