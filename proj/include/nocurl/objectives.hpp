#pragma once

#include "nocurl/dag_space.hpp"
#include "nocurl/types.hpp"

namespace nocurl {

// Sample matrix x holds one observation per row (n samples by d variables).
// The second-moment matrix x^T x / n is cached on construction; the losses
// below are quadratic in a, so every evaluation after the first costs O(d^3)
// regardless of n.
class Dataset {
public:
    explicit Dataset(Matrix x);

    Index n() const { return x_.rows(); }
    Index d() const { return x_.cols(); }
    const Matrix& x() const { return x_; }
    const Matrix& gram() const { return gram_; }

private:
    Matrix x_;
    Matrix gram_;
};

struct ObjectiveEval {
    double value = 0.0;
    Vector gradient;
};

enum class HKind { poly, expm };

// Least squares F(a) = ||x - x a||_F^2 / (2n). The value accumulates
// per-sample contributions in sorted order, which makes it invariant to
// permuting the samples, bit for bit.
double least_squares_loss(const Matrix& a, const Dataset& data);

// grad_a F = -(1/n) x^T (x - x a).
Matrix least_squares_grad(const Matrix& a, const Dataset& data);

// Acyclicity measures: both are zero exactly on DAGs and positive otherwise.
// h_poly(a) = tr[(I + a o a / d)^d] - d
// h_expm(a) = tr[exp(a o a)] - d
double h_poly(const Matrix& a);
Matrix h_poly_grad(const Matrix& a);
double h_expm(const Matrix& a);
Matrix h_expm_grad(const Matrix& a);
double h_value(const Matrix& a, HKind kind);
Matrix h_grad(const Matrix& a, HKind kind);

// Penalized least squares over all d^2 entries of a (row-major flattening,
// diagonal included): F(a) + lambda * h(a). Requires lambda > 0.
ObjectiveEval step1_objective(const Vector& a_flat, const Dataset& data,
                              double lambda, HKind kind);

// F(gamma(w, p_fixed)) over the packed upper triangle of w. With
// g = grad_a F at a = gamma(w, p_fixed) and r = relu(grad(p_fixed)),
// d/dw(i,j) = g(i,j) r(i,j) - g(j,i) r(j,i).
ObjectiveEval w_objective(const SkewParams& w, const Potential& p_fixed,
                          const Dataset& data);

// F(gamma(w, p)) over [packed upper triangle of w; p]. The relu subgradient
// at exact ties is taken as zero, so
// d gamma(i,j) / d p(k) = w(i,j) [p(j) > p(i)] (delta_jk - delta_ik).
ObjectiveEval joint_objective(const SkewParams& w, const Potential& p,
                              const Dataset& data);

}  // namespace nocurl
