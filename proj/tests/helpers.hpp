#pragma once

#include "nocurl/objectives.hpp"
#include "nocurl/rng.hpp"
#include "nocurl/types.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

namespace testutil {

using nocurl::Index;
using nocurl::Matrix;
using nocurl::Vector;

inline Matrix random_matrix(nocurl::Rng& rng, Index rows, Index cols,
                            double lo = -2.0, double hi = 2.0) {
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = rng.uniform(lo, hi);
    return m;
}

inline nocurl::EdgeFlow random_flow(nocurl::Rng& rng, Index dim,
                                    double lo = -3.0, double hi = 3.0) {
    nocurl::EdgeFlow y(dim);
    for (Index i = 0; i < dim; ++i)
        for (Index j = i + 1; j < dim; ++j) y.set(i, j, rng.uniform(lo, hi));
    return y;
}

// Random potential on a dyadic grid (multiples of 2^-26 in [0, 1)). Grid
// differences and their short sums are exactly representable, which lets
// tests assert identities like curl(grad(p)) == 0 with no tolerance.
inline Vector random_dyadic_potential(nocurl::Rng& rng, Index dim) {
    constexpr double grid = 1.0 / (1 << 26);
    Vector p(dim);
    for (Index i = 0; i < dim; ++i)
        p(i) = static_cast<double>(rng.below(std::uint64_t(1) << 26)) * grid;
    return p;
}

// Central finite difference of a scalar function.
// Random DAG: uniform vertex permutation, each order-respecting edge kept
// with probability prob, weights from +-[0.5, 2).
inline Matrix random_dag(nocurl::Rng& rng, Index d, double prob) {
    std::vector<Index> perm(static_cast<std::size_t>(d));
    std::iota(perm.begin(), perm.end(), Index{0});
    for (Index i = d - 1; i > 0; --i)
        std::swap(perm[static_cast<std::size_t>(i)],
                  perm[rng.below(static_cast<std::uint64_t>(i) + 1)]);

    Matrix a = Matrix::Zero(d, d);
    for (Index i = 0; i < d; ++i) {
        for (Index j = i + 1; j < d; ++j) {
            if (rng.uniform() >= prob) continue;
            double w = rng.uniform(0.5, 2.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
            a(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]) = w;
        }
    }
    return a;
}

// d x d sample matrix whose second-moment matrix equals the exact population
// covariance (I-a0)^-T (I-a0)^-1 of the unit-noise linear SEM on a0. Least
// squares on these rows behaves like the infinite-sample limit: the true
// weights are the exact minimizer over any parent set that respects the
// topological order.
// d x d data matrix whose Gram equals the exact covariance of the unit-noise
// linear model with coefficients a0; least-squares objectives built on it have
// their population minimum at a0 with value d/2.
inline Matrix population_matrix(const Matrix& a0) {
    const Index d = a0.rows();
    Matrix minv = (Matrix::Identity(d, d) - a0).inverse();
    Matrix cov = minv.transpose() * minv;
    Matrix l = cov.llt().matrixL();
    return std::sqrt(static_cast<double>(d)) * l.transpose();
}

inline nocurl::Dataset population_dataset(const Matrix& a0) {
    return nocurl::Dataset(population_matrix(a0));
}

// Potential with all pairwise gaps above 1e-3: keeps finite-difference probes
// of relu(grad(p)) away from the kinks.
inline Vector separated_potential(nocurl::Rng& rng, Index d) {
    while (true) {
        Vector p = random_matrix(rng, d, 1, -2.0, 2.0);
        double gap = std::numeric_limits<double>::infinity();
        for (Index i = 0; i < d; ++i)
            for (Index j = i + 1; j < d; ++j)
                gap = std::min(gap, std::abs(p(i) - p(j)));
        if (gap > 1e-3) return p;
    }
}

inline Vector fd_gradient(const std::function<double(const Vector&)>& f,
                          const Vector& x, double step) {
    Vector g(x.size());
    for (Index i = 0; i < x.size(); ++i) {
        Vector hi = x, lo = x;
        hi(i) += step;
        lo(i) -= step;
        g(i) = (f(hi) - f(lo)) / (2.0 * step);
    }
    return g;
}

inline double rel_gradient_error(const Vector& analytic, const Vector& fd) {
    double scale = std::max(1.0, analytic.cwiseAbs().maxCoeff());
    return (analytic - fd).cwiseAbs().maxCoeff() / scale;
}

}  // namespace testutil
