#include "nocurl/objectives.hpp"

#include "nocurl/graph_calculus.hpp"
#include "nocurl/matrix_ops.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace nocurl {

namespace {

using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void require_square(const Matrix& a, Index d, const char* who) {
    if (a.rows() != d || a.cols() != d)
        throw std::invalid_argument(std::string(who) + ": matrix must be d x d");
}

// Shared quadratic core: with m = I - a and s the cached second-moment
// matrix, F = tr(m^T s m)/2 and grad_a F = -s m, all from one product.
struct QuadEval {
    double value;
    Matrix grad;
};

QuadEval quad_loss(const Matrix& a, const Dataset& data) {
    Matrix m = Matrix::Identity(a.rows(), a.cols()) - a;
    Matrix sm = data.gram() * m;
    return QuadEval{0.5 * m.cwiseProduct(sm).sum(), -sm};
}

}  // namespace

Dataset::Dataset(Matrix x) : x_(std::move(x)) {
    if (x_.rows() < 1) throw std::invalid_argument("Dataset: need at least one sample");
    if (x_.cols() < 2) throw std::invalid_argument("Dataset: need at least two variables");
    if (!x_.allFinite()) throw std::invalid_argument("Dataset: entries must be finite");
    gram_ = (x_.transpose() * x_) / static_cast<double>(x_.rows());
}

double least_squares_loss(const Matrix& a, const Dataset& data) {
    require_square(a, data.d(), "least_squares_loss");
    Matrix residual = data.x() - data.x() * a;
    std::vector<double> per_sample(static_cast<std::size_t>(data.n()));
    for (Index k = 0; k < data.n(); ++k)
        per_sample[static_cast<std::size_t>(k)] = residual.row(k).squaredNorm();
    // Summing in sorted order fixes the accumulation order, so the value is
    // bitwise independent of how the samples were arranged.
    std::sort(per_sample.begin(), per_sample.end());
    double total = 0.0;
    for (double v : per_sample) total += v;
    return total / (2.0 * static_cast<double>(data.n()));
}

Matrix least_squares_grad(const Matrix& a, const Dataset& data) {
    require_square(a, data.d(), "least_squares_grad");
    return quad_loss(a, data).grad;
}

double h_poly(const Matrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("h_poly: matrix must be square");
    const Index d = a.rows();
    if (d == 0) return 0.0;
    Matrix m = Matrix::Identity(d, d) +
               a.cwiseProduct(a) / static_cast<double>(d);
    return matrix_power(m, d).trace() - static_cast<double>(d);
}

Matrix h_poly_grad(const Matrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("h_poly_grad: matrix must be square");
    const Index d = a.rows();
    if (d == 0) return a;
    Matrix m = Matrix::Identity(d, d) +
               a.cwiseProduct(a) / static_cast<double>(d);
    // d/dA tr(m^d) = d * (m^{d-1})^T o (2A/d); the dimension factors cancel.
    return matrix_power(m, d - 1).transpose().cwiseProduct(2.0 * a);
}

double h_expm(const Matrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("h_expm: matrix must be square");
    if (a.rows() == 0) return 0.0;
    Matrix b = a.cwiseProduct(a);
    return Matrix(b.exp()).trace() - static_cast<double>(a.rows());
}

Matrix h_expm_grad(const Matrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("h_expm_grad: matrix must be square");
    if (a.rows() == 0) return a;
    Matrix b = a.cwiseProduct(a);
    return Matrix(b.exp()).transpose().cwiseProduct(2.0 * a);
}

double h_value(const Matrix& a, HKind kind) {
    return kind == HKind::poly ? h_poly(a) : h_expm(a);
}

Matrix h_grad(const Matrix& a, HKind kind) {
    return kind == HKind::poly ? h_poly_grad(a) : h_expm_grad(a);
}

ObjectiveEval step1_objective(const Vector& a_flat, const Dataset& data,
                              double lambda, HKind kind) {
    if (lambda <= 0.0)
        throw std::invalid_argument("step1_objective: lambda must be positive");
    const Index d = data.d();
    if (a_flat.size() != d * d)
        throw std::invalid_argument("step1_objective: parameter vector must have d^2 entries");

    Matrix a = Eigen::Map<const RowMajorMatrix>(a_flat.data(), d, d);
    QuadEval quad = quad_loss(a, data);
    Matrix grad = quad.grad + lambda * h_grad(a, kind);

    ObjectiveEval out;
    out.value = quad.value + lambda * h_value(a, kind);
    out.gradient.resize(d * d);
    Eigen::Map<RowMajorMatrix>(out.gradient.data(), d, d) = grad;
    return out;
}

ObjectiveEval w_objective(const SkewParams& w, const Potential& p_fixed,
                          const Dataset& data) {
    const Index d = data.d();
    if (w.dim() != d || p_fixed.size() != d)
        throw std::invalid_argument("w_objective: dimension mismatch");

    EdgeFlow flow = w.unpack();
    Matrix r = relu_flow(grad(p_fixed));
    QuadEval quad = quad_loss(flow.matrix().cwiseProduct(r), data);

    ObjectiveEval out;
    out.value = quad.value;
    out.gradient.resize(SkewParams::upper_size(d));
    Index pos = 0;
    for (Index i = 0; i < d; ++i)
        for (Index j = i + 1; j < d; ++j)
            out.gradient(pos++) =
                quad.grad(i, j) * r(i, j) - quad.grad(j, i) * r(j, i);
    return out;
}

ObjectiveEval joint_objective(const SkewParams& w, const Potential& p,
                              const Dataset& data) {
    const Index d = data.d();
    if (w.dim() != d || p.size() != d)
        throw std::invalid_argument("joint_objective: dimension mismatch");

    EdgeFlow flow = w.unpack();
    Matrix r = relu_flow(grad(p));
    QuadEval quad = quad_loss(flow.matrix().cwiseProduct(r), data);

    const Index u = SkewParams::upper_size(d);
    ObjectiveEval out;
    out.value = quad.value;
    out.gradient.resize(u + d);
    Index pos = 0;
    for (Index i = 0; i < d; ++i)
        for (Index j = i + 1; j < d; ++j)
            out.gradient(pos++) =
                quad.grad(i, j) * r(i, j) - quad.grad(j, i) * r(j, i);

    // d gamma(i,j) / d p(k) = w(i,j) [p(j) > p(i)] (delta_jk - delta_ik); the
    // relu subgradient at an exact tie is taken as 0, and r > 0 encodes the
    // strict inequality already.
    Matrix m = quad.grad.cwiseProduct(flow.matrix())
                   .cwiseProduct((r.array() > 0.0).cast<double>().matrix());
    out.gradient.tail(d) = m.colwise().sum().transpose() - m.rowwise().sum();
    return out;
}

}  // namespace nocurl
