#include "nocurl/nocurl.hpp"

#include "nocurl/dag_space.hpp"
#include "nocurl/graph_calculus.hpp"
#include "nocurl/rng.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nocurl {

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::nocurl1: return "nocurl1";
        case Variant::nocurl2: return "nocurl2";
        case Variant::nocurl1_s: return "nocurl1_s";
        case Variant::nocurl2_s: return "nocurl2_s";
        case Variant::nocurl1_minus: return "nocurl1_minus";
        case Variant::nocurl2_minus: return "nocurl2_minus";
        case Variant::nocurl1_plus: return "nocurl1_plus";
        case Variant::nocurl2_plus: return "nocurl2_plus";
        case Variant::rand_init: return "rand_init";
        default: return "rand_p";
    }
}

const std::vector<Variant>& all_variants() {
    static const std::vector<Variant> all = {
        Variant::nocurl1,       Variant::nocurl2,      Variant::nocurl1_s,
        Variant::nocurl2_s,     Variant::nocurl1_minus, Variant::nocurl2_minus,
        Variant::nocurl1_plus,  Variant::nocurl2_plus,  Variant::rand_init,
        Variant::rand_p,
    };
    return all;
}

std::optional<Variant> variant_from_name(const std::string& name) {
    for (Variant v : all_variants())
        if (name == variant_name(v)) return v;
    return std::nullopt;
}

namespace {

Vector flatten(const Matrix& a) {
    const Index d = a.rows();
    Vector flat(d * d);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) flat(d * i + j) = a(i, j);
    return flat;
}

Matrix unflatten(const Vector& flat, Index d) {
    Matrix a(d, d);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) a(i, j) = flat(d * i + j);
    return a;
}

void check_lambdas(const std::vector<double>& lambdas) {
    if (lambdas.empty())
        throw std::invalid_argument("penalty schedule must not be empty");
    double prev = 0.0;
    for (double lambda : lambdas) {
        if (!(lambda > prev))
            throw std::invalid_argument(
                "penalty schedule must be positive and strictly increasing");
        prev = lambda;
    }
}

bool two_lambda_family(Variant v) {
    return v == Variant::nocurl2 || v == Variant::nocurl2_s ||
           v == Variant::nocurl2_minus || v == Variant::nocurl2_plus;
}

bool warmup_family(Variant v) {
    return v != Variant::rand_init && v != Variant::rand_p;
}

// Minimizes the joint objective from (w0, p0); writes the solution back.
OptimReport joint_minimize(const Dataset& data, const SkewParams& w0,
                           const Potential& p0, const OptimOptions& options,
                           EdgeFlow& w_out, Potential& p_out) {
    const Index d = p0.size();
    const Index u = SkewParams::upper_size(d);
    Vector x0(u + d);
    x0 << w0.upper(), p0;
    auto obj = [&data, d, u](const Vector& x) {
        return joint_objective(SkewParams(d, x.head(u)), x.tail(d), data);
    };
    OptimReport rep = minimize(obj, x0, options);
    w_out = SkewParams(d, rep.x_final.head(u)).unpack();
    p_out = rep.x_final.tail(d);
    return rep;
}

}  // namespace

Matrix step1(const Dataset& data, const std::vector<double>& lambdas,
             HKind kind, double eps, const OptimOptions& options,
             std::vector<OptimReport>* reports) {
    check_lambdas(lambdas);
    const Index d = data.d();
    Vector x = Vector::Zero(d * d);
    for (double lambda : lambdas) {
        auto obj = [&data, lambda, kind](const Vector& flat) {
            return step1_objective(flat, data, lambda, kind);
        };
        OptimReport rep = minimize(obj, x, options);
        x = rep.x_final;
        if (reports) reports->push_back(std::move(rep));
    }
    return threshold(unflatten(x, d), eps);
}

Step2Result step2(const Matrix& a_pre, const Dataset& data,
                  const OptimOptions& options,
                  std::vector<OptimReport>* reports) {
    if (a_pre.rows() != a_pre.cols())
        throw std::invalid_argument("step2: a_pre must be square");
    if (a_pre.rows() != data.d())
        throw std::invalid_argument("step2: a_pre and data dimensions differ");

    Step2Result out;
    out.p = topo_potential(a_pre);
    const Index d = a_pre.rows();
    SkewParams w0 = SkewParams::pack(closed_form_w(a_pre, out.p));
    auto obj = [&data, &out, d](const Vector& upper) {
        return w_objective(SkewParams(d, upper), out.p, data);
    };
    OptimReport rep = minimize(obj, w0.upper(), options);
    out.w = SkewParams(d, rep.x_final).unpack();
    out.a = gamma(out.w, out.p);
    if (reports) reports->push_back(std::move(rep));
    return out;
}

LearnResult nocurl_run(const Dataset& data, const NoCurlConfig& config) {
    if (data.d() < 2)
        throw std::invalid_argument("nocurl_run: need at least two variables");
    if (!(config.threshold_eps > 0.0))
        throw std::invalid_argument("nocurl_run: threshold must be positive");

    std::vector<double> lambdas = config.lambdas;
    if (warmup_family(config.variant)) {
        if (lambdas.empty())
            lambdas = two_lambda_family(config.variant)
                          ? std::vector<double>{10.0, 1000.0}
                          : std::vector<double>{100.0};
        check_lambdas(lambdas);
    }

    LearnResult out;
    out.variant = config.variant;
    out.final_threshold = config.threshold_eps;
    if (warmup_family(config.variant)) out.lambdas = lambdas;
    const Index d = data.d();
    const double eps = config.threshold_eps;

    auto t0 = std::chrono::steady_clock::now();
    switch (config.variant) {
        case Variant::nocurl1:
        case Variant::nocurl2: {
            out.a_pre = step1(data, lambdas, config.h_kind, eps, config.optim,
                              &out.optim_reports);
            Step2Result s2 = step2(out.a_pre, data, config.optim, &out.optim_reports);
            out.p_tilde = s2.p;
            out.w_tilde = s2.w;
            out.a_raw = s2.a;
            out.a_hat = threshold(s2.a, eps);
            break;
        }
        case Variant::nocurl1_s:
        case Variant::nocurl2_s: {
            out.a_pre = step1(data, lambdas, config.h_kind, eps, config.optim,
                              &out.optim_reports);
            // the warm-up's last iterate, before any thresholding
            out.a_raw = unflatten(out.optim_reports.back().x_final, d);
            ThresholdResult cut = incremental_threshold(out.a_pre, eps, 0.05);
            out.a_hat = cut.a;
            out.final_threshold = cut.eps;
            break;
        }
        case Variant::nocurl1_minus:
        case Variant::nocurl2_minus: {
            out.a_pre = step1(data, lambdas, config.h_kind, eps, config.optim,
                              &out.optim_reports);
            out.p_tilde = topo_potential(out.a_pre);
            out.w_tilde = closed_form_w(out.a_pre, out.p_tilde);
            out.a_raw = gamma(out.w_tilde, out.p_tilde);
            out.a_hat = threshold(out.a_raw, eps);
            break;
        }
        case Variant::nocurl1_plus:
        case Variant::nocurl2_plus: {
            out.a_pre = step1(data, lambdas, config.h_kind, eps, config.optim,
                              &out.optim_reports);
            Step2Result s2 = step2(out.a_pre, data, config.optim, &out.optim_reports);
            out.optim_reports.push_back(joint_minimize(data, SkewParams::pack(s2.w),
                                                       s2.p, config.optim,
                                                       out.w_tilde, out.p_tilde));
            out.a_raw = gamma(out.w_tilde, out.p_tilde);
            out.a_hat = threshold(out.a_raw, eps);
            break;
        }
        case Variant::rand_init: {
            // Both blocks start uniform on [0, 1): flow entries first (packed
            // upper triangle), then the potential.
            Rng rng(config.seed);
            SkewParams w0(d, rng.draw_uniform(SkewParams::upper_size(d), 0.0, 1.0));
            Potential p0 = rng.draw_uniform(d, 0.0, 1.0);
            out.optim_reports.push_back(joint_minimize(data, w0, p0, config.optim,
                                                       out.w_tilde, out.p_tilde));
            out.a_raw = gamma(out.w_tilde, out.p_tilde);
            out.a_hat = threshold(out.a_raw, eps);
            break;
        }
        case Variant::rand_p: {
            // Fixed random potential, flow refit from zero, then a joint
            // polish of both blocks.
            Rng rng(config.seed);
            Potential p0 = rng.draw_uniform(d, 0.0, 1.0);
            auto w_obj = [&data, &p0, d](const Vector& upper) {
                return w_objective(SkewParams(d, upper), p0, data);
            };
            OptimReport rep =
                minimize(w_obj, Vector::Zero(SkewParams::upper_size(d)), config.optim);
            SkewParams w1(d, rep.x_final);
            out.optim_reports.push_back(std::move(rep));
            out.optim_reports.push_back(joint_minimize(data, w1, p0, config.optim,
                                                       out.w_tilde, out.p_tilde));
            out.a_raw = gamma(out.w_tilde, out.p_tilde);
            out.a_hat = threshold(out.a_raw, eps);
            break;
        }
    }
    auto t1 = std::chrono::steady_clock::now();
    out.wall_time = std::chrono::duration<double>(t1 - t0).count();
    out.final_h = h_value(out.a_hat, config.h_kind);

    if (!is_dag(out.a_hat))
        throw std::runtime_error("nocurl_run: internal error, result is not acyclic");
    return out;
}

LearnResult notears_baseline(const Dataset& data, HKind kind, double eps,
                             const OptimOptions& options) {
    if (!(eps > 0.0))
        throw std::invalid_argument("notears_baseline: threshold must be positive");
    const Index d = data.d();

    LearnResult out;
    auto t0 = std::chrono::steady_clock::now();

    Vector x = Vector::Zero(d * d);
    double rho = 1.0;
    double alpha = 0.0;
    double h_prev = std::numeric_limits<double>::infinity();
    double h_cur = h_prev;
    while (true) {
        auto obj = [&data, kind, d, rho, alpha](const Vector& flat) {
            Matrix a = unflatten(flat, d);
            double h = h_value(a, kind);
            ObjectiveEval eval;
            eval.value = least_squares_loss(a, data) + 0.5 * rho * h * h + alpha * h;
            eval.gradient =
                flatten(least_squares_grad(a, data) + (rho * h + alpha) * h_grad(a, kind));
            return eval;
        };
        OptimReport rep = minimize(obj, x, options);
        x = rep.x_final;
        out.optim_reports.push_back(std::move(rep));

        h_cur = h_value(unflatten(x, d), kind);
        out.rho_trace.push_back(rho);
        out.alpha_trace.push_back(alpha);
        out.h_trace.push_back(h_cur);
        if (h_cur <= 1e-8) break;

        if (h_cur > 0.25 * h_prev) {
            rho *= 10.0;
            if (rho > 1e16) break;
        } else {
            alpha += rho * h_cur;
        }
        h_prev = h_cur;
    }

    out.a_raw = unflatten(x, d);
    out.a_hat = threshold(out.a_raw, eps);
    auto t1 = std::chrono::steady_clock::now();
    out.wall_time = std::chrono::duration<double>(t1 - t0).count();
    out.final_h = h_value(out.a_hat, kind);
    out.final_threshold = eps;
    return out;
}

double delta_f(const Matrix& a_hat, const Matrix& a_true, const Dataset& data) {
    if (a_hat.rows() != a_true.rows() || a_hat.cols() != a_true.cols())
        throw std::invalid_argument("delta_f: shapes differ");
    return least_squares_loss(a_hat, data) - least_squares_loss(a_true, data);
}

}  // namespace nocurl
