#include "nocurl/lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace nocurl {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

struct Probe {
    double t = 0.0;
    Vector x;
    ObjectiveEval eval;
    double dphi = kNan;  // directional derivative along the search direction
    bool usable = false; // finite value and gradient
};

struct CurvaturePair {
    Vector s;
    Vector y;
    double ys = 0.0;
};

// Minimizer of the cubic interpolating (ta, fa, ga) and (tb, fb, gb); NaN when
// the interpolant has no interior minimizer.
double cubic_min(double ta, double fa, double ga, double tb, double fb, double gb) {
    double d1 = ga + gb - 3.0 * (fa - fb) / (ta - tb);
    double disc = d1 * d1 - ga * gb;
    if (!(disc >= 0.0)) return kNan;
    double d2 = std::sqrt(disc) * (tb >= ta ? 1.0 : -1.0);
    double denom = gb - ga + 2.0 * d2;
    if (denom == 0.0 || !std::isfinite(denom)) return kNan;
    return tb - (tb - ta) * ((gb + d2 - d1) / denom);
}

class LineSearch {
  public:
    LineSearch(const Objective& objective, int& eval_count, const Vector& x,
               const Vector& direction, double f0, double dphi0,
               const WolfeParams& wolfe)
        : objective_(objective),
          eval_count_(eval_count),
          x_(x),
          direction_(direction),
          f0_(f0),
          dphi0_(dphi0),
          wolfe_(wolfe),
          trials_left_(wolfe.max_trials) {}

    // Strong-Wolfe step if one is found; otherwise the best sufficient-decrease
    // point seen; otherwise nothing.
    std::optional<Probe> run(double t_first) {
        Probe prev;  // stands for t = 0
        prev.t = 0.0;
        prev.eval.value = f0_;
        prev.dphi = dphi0_;
        prev.usable = true;

        double t = t_first;
        while (trials_left_ > 0) {
            Probe p = probe(t);
            if (!p.usable || p.eval.value > armijo(p.t) ||
                p.eval.value >= prev.eval.value) {
                if (auto z = zoom(prev, p)) return z;
                break;
            }
            if (std::abs(p.dphi) <= -wolfe_.c2 * dphi0_) return p;
            if (p.dphi >= 0.0) {
                if (auto z = zoom(p, prev)) return z;
                break;
            }
            prev = p;
            double next = std::min(2.0 * t, 1e15);
            if (next == t) break;  // expansion cap reached
            t = next;
        }
        return best_;
    }

  private:
    double armijo(double t) const { return f0_ + wolfe_.c1 * t * dphi0_; }

    Probe probe(double t) {
        --trials_left_;
        Probe p;
        p.t = t;
        p.x = x_ + t * direction_;
        p.eval = objective_(p.x);
        ++eval_count_;
        p.usable = std::isfinite(p.eval.value) && p.eval.gradient.size() == x_.size() &&
                   p.eval.gradient.allFinite();
        p.dphi = p.usable ? p.eval.gradient.dot(direction_) : kNan;
        if (p.usable && !std::isfinite(p.dphi)) p.usable = false;
        // Strict decrease required: for tiny t the Armijo bound rounds to f0
        // itself, and a no-progress point must not count as a fallback.
        if (p.usable && p.eval.value <= armijo(t) && p.eval.value < f0_ &&
            (!best_ || p.eval.value < best_->eval.value))
            best_ = p;
        return p;
    }

    // lo always satisfies sufficient decrease; hi may even be non-finite, in
    // which case interpolation is skipped and the interval is bisected.
    std::optional<Probe> zoom(Probe lo, Probe hi) {
        while (trials_left_ > 0) {
            double t_low = std::min(lo.t, hi.t);
            double t_high = std::max(lo.t, hi.t);
            double width = t_high - t_low;
            if (!(width > 1e-16 * std::max(1.0, t_low))) break;

            double t = kNan;
            if (lo.usable && hi.usable)
                t = cubic_min(lo.t, lo.eval.value, lo.dphi, hi.t, hi.eval.value,
                              hi.dphi);
            double margin = 0.1 * width;
            if (!std::isfinite(t) || t < t_low + margin || t > t_high - margin)
                t = t_low + 0.5 * width;

            Probe p = probe(t);
            if (!p.usable || p.eval.value > armijo(p.t) ||
                p.eval.value >= lo.eval.value) {
                hi = p;
            } else {
                if (std::abs(p.dphi) <= -wolfe_.c2 * dphi0_) return p;
                if (p.dphi * (hi.t - lo.t) >= 0.0) hi = lo;
                lo = p;
            }
        }
        return std::nullopt;
    }

    const Objective& objective_;
    int& eval_count_;
    const Vector& x_;
    const Vector& direction_;
    double f0_;
    double dphi0_;
    WolfeParams wolfe_;
    int trials_left_;
    std::optional<Probe> best_;
};

Vector two_loop_direction(const Vector& gradient,
                          const std::deque<CurvaturePair>& pairs) {
    Vector q = gradient;
    std::vector<double> alpha(pairs.size());
    for (std::size_t k = pairs.size(); k-- > 0;) {
        const CurvaturePair& p = pairs[k];
        alpha[k] = p.s.dot(q) / p.ys;
        q -= alpha[k] * p.y;
    }
    if (!pairs.empty()) {
        const CurvaturePair& newest = pairs.back();
        q *= newest.ys / newest.y.squaredNorm();
    }
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const CurvaturePair& p = pairs[k];
        double beta = p.y.dot(q) / p.ys;
        q += (alpha[k] - beta) * p.s;
    }
    return -q;
}

void validate(const Vector& x0, const OptimOptions& options) {
    if (x0.size() < 1) throw std::invalid_argument("minimize: empty start vector");
    if (!x0.allFinite())
        throw std::invalid_argument("minimize: non-finite start vector");
    if (options.memory < 1) throw std::invalid_argument("minimize: memory must be >= 1");
    if (options.max_iters < 0)
        throw std::invalid_argument("minimize: max_iters must be >= 0");
    if (options.ftol < 0.0 || options.gtol < 0.0)
        throw std::invalid_argument("minimize: tolerances must be >= 0");
    const WolfeParams& w = options.wolfe;
    if (!(0.0 < w.c1 && w.c1 < w.c2 && w.c2 < 1.0))
        throw std::invalid_argument("minimize: need 0 < c1 < c2 < 1");
    if (w.max_trials < 1)
        throw std::invalid_argument("minimize: max_trials must be >= 1");
}

}  // namespace

const char* stop_reason_name(StopReason r) {
    switch (r) {
        case StopReason::ftol: return "ftol";
        case StopReason::gtol: return "gtol";
        case StopReason::max_iters: return "max_iters";
    }
    return "unknown";
}

OptimReport minimize(const Objective& objective, const Vector& x0,
                     const OptimOptions& options) {
    validate(x0, options);

    OptimReport report;
    report.x0 = x0;

    Vector x = x0;
    ObjectiveEval cur = objective(x);
    report.function_evals = 1;
    if (!std::isfinite(cur.value) || cur.gradient.size() != x.size() ||
        !cur.gradient.allFinite())
        throw std::invalid_argument("minimize: objective not finite at start");
    report.values.push_back(cur.value);

    std::deque<CurvaturePair> pairs;
    report.converged_by = StopReason::max_iters;
    for (;;) {
        if (cur.gradient.cwiseAbs().maxCoeff() < options.gtol) {
            report.converged_by = StopReason::gtol;
            break;
        }
        if (report.iterations >= options.max_iters) {
            report.converged_by = StopReason::max_iters;
            break;
        }

        Vector direction = two_loop_direction(cur.gradient, pairs);
        double dphi0 = direction.dot(cur.gradient);
        if (!(dphi0 < 0.0) || !direction.allFinite()) {
            // Stale curvature produced a non-descent direction; start over
            // from steepest descent.
            pairs.clear();
            direction = -cur.gradient;
            dphi0 = -cur.gradient.squaredNorm();
        }

        LineSearch search(objective, report.function_evals, x, direction,
                          cur.value, dphi0, options.wolfe);
        // With curvature on hand the quasi-Newton direction is already well
        // scaled and the unit step goes first; a raw gradient direction has
        // no scale yet, so open with a unit-length step along it.
        double t_first =
            pairs.empty() ? std::min(1.0 / direction.norm(), 1e10) : 1.0;
        std::optional<Probe> accepted = search.run(t_first);
        if (!accepted) {
            // Line search made no progress at all: report the best point found
            // so far under the iteration-budget diagnostic.
            report.converged_by = StopReason::max_iters;
            break;
        }

        Vector s = accepted->x - x;
        Vector y = accepted->eval.gradient - cur.gradient;
        double ys = y.dot(s);
        if (ys > 1e-10 * y.norm() * s.norm()) {
            pairs.push_back({std::move(s), std::move(y), ys});
            while (pairs.size() > static_cast<std::size_t>(options.memory))
                pairs.pop_front();
        }

        double f_prev = cur.value;
        x = accepted->x;
        cur = accepted->eval;
        ++report.iterations;
        report.values.push_back(cur.value);

        double scale = std::max({std::abs(f_prev), std::abs(cur.value), 1.0});
        if (std::abs(f_prev - cur.value) / scale < options.ftol) {
            report.converged_by = StopReason::ftol;
            break;
        }
    }

    report.x_final = std::move(x);
    report.f_final = cur.value;
    return report;
}

}  // namespace nocurl
