#include "nocurl/graph_calculus.hpp"

#include <cmath>
#include <stdexcept>

namespace nocurl {

namespace {

void require_triple(Index dim, Index i, Index j, Index k) {
    if (i < 0 || j < 0 || k < 0 || i >= dim || j >= dim || k >= dim)
        throw std::invalid_argument("curl_at: vertex index out of range");
    if (i == j || j == k || i == k)
        throw std::invalid_argument("curl_at: vertex indices must be distinct");
}

}  // namespace

EdgeFlow grad(const Potential& p) {
    const Index d = p.size();
    EdgeFlow out(d);
    for (Index i = 0; i < d; ++i)
        for (Index j = i + 1; j < d; ++j) out.set(i, j, p(j) - p(i));
    return out;
}

Vector divergence(const EdgeFlow& y) { return y.matrix().rowwise().sum(); }

Vector grad_adjoint(const EdgeFlow& y) { return -divergence(y); }

double curl_at(const EdgeFlow& y, Index i, Index j, Index k) {
    require_triple(y.dim(), i, j, k);
    return y(i, j) + y(j, k) + y(k, i);
}

TriangleFlow curl(const EdgeFlow& y) {
    const Index d = y.dim();
    TriangleFlow out(d);
    for (Index i = 0; i < d; ++i)
        for (Index j = i + 1; j < d; ++j)
            for (Index k = j + 1; k < d; ++k)
                out.set(i, j, k, y(i, j) + y(j, k) + y(k, i));
    return out;
}

double curl_max(const EdgeFlow& y) {
    const Index d = y.dim();
    double worst = 0.0;
    for (Index i = 0; i < d; ++i)
        for (Index j = i + 1; j < d; ++j)
            for (Index k = j + 1; k < d; ++k)
                worst = std::max(worst, std::abs(y(i, j) + y(j, k) + y(k, i)));
    return worst;
}

EdgeFlow curl_adjoint(const TriangleFlow& theta) {
    const Index d = theta.dim();
    EdgeFlow out(d);
    for (Index i = 0; i < d; ++i) {
        for (Index j = i + 1; j < d; ++j) {
            double acc = 0.0;
            for (Index k = 0; k < d; ++k) {
                if (k == i || k == j) continue;
                acc += theta(i, j, k);
            }
            out.set(i, j, acc);
        }
    }
    return out;
}

Vector laplacian0_apply(const Potential& p) {
    return static_cast<double>(p.size()) * p.array() - p.sum();
}

EdgeFlow helmholtzian_apply(const EdgeFlow& y) {
    const Index d = y.dim();
    EdgeFlow gg = grad(grad_adjoint(y));
    EdgeFlow cc = curl_adjoint(curl(y));
    EdgeFlow out(d);
    for (Index i = 0; i < d; ++i)
        for (Index j = i + 1; j < d; ++j) out.set(i, j, gg(i, j) + cc(i, j));
    return out;
}

Potential hodge_potential(const EdgeFlow& y) {
    const Index d = y.dim();
    if (d < 2)
        throw std::invalid_argument("hodge_potential: need at least 2 vertices");
    Vector v = divergence(y);
    const double s = v.head(d - 1).sum();
    Potential p(d);
    for (Index i = 0; i + 1 < d; ++i) p(i) = -(v(i) + s) / static_cast<double>(d);
    p(d - 1) = 0.0;
    return p;
}

EdgeFlow hodge_project(const EdgeFlow& y) { return grad(hodge_potential(y)); }

Matrix connectivity(const Matrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("connectivity: matrix must be square");
    const Index d = a.rows();
    Matrix c(d, d);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) c(i, j) = (i != j && a(i, j) != 0.0) ? 1.0 : 0.0;
    for (Index k = 0; k < d; ++k)
        for (Index i = 0; i < d; ++i)
            if (c(i, k) != 0.0)
                for (Index j = 0; j < d; ++j)
                    if (c(k, j) != 0.0) c(i, j) = 1.0;
    return c;
}

}  // namespace nocurl
