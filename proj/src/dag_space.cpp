#include "nocurl/dag_space.hpp"

#include "nocurl/graph_calculus.hpp"
#include "nocurl/objectives.hpp"

#include <queue>
#include <stdexcept>

namespace nocurl {

SkewParams::SkewParams(Index dim) : dim_(dim), upper_(Vector::Zero(upper_size(dim))) {
    if (dim < 1) throw std::invalid_argument("SkewParams: dim must be positive");
}

SkewParams::SkewParams(Index dim, Vector upper) : dim_(dim), upper_(std::move(upper)) {
    if (dim < 1) throw std::invalid_argument("SkewParams: dim must be positive");
    if (upper_.size() != upper_size(dim))
        throw std::invalid_argument("SkewParams: upper triangle size mismatch");
}

SkewParams SkewParams::pack(const EdgeFlow& w) {
    SkewParams out(w.dim());
    Index pos = 0;
    for (Index i = 0; i < w.dim(); ++i)
        for (Index j = i + 1; j < w.dim(); ++j) out.upper_(pos++) = w(i, j);
    return out;
}

EdgeFlow SkewParams::unpack() const { return EdgeFlow::from_upper(dim_, upper_); }

Matrix relu_flow(const EdgeFlow& y) { return y.matrix().cwiseMax(0.0); }

Matrix gamma(const EdgeFlow& w, const Potential& p) {
    if (w.dim() != p.size())
        throw std::invalid_argument("gamma: flow and potential dimensions differ");
    return w.matrix().cwiseProduct(relu_flow(grad(p)));
}

Matrix gamma(const DagParams& params) { return gamma(params.w, params.p); }

Potential topo_potential(const Matrix& a) {
    return hodge_potential(EdgeFlow::skew_part(connectivity(a)));
}

EdgeFlow closed_form_w(const Matrix& a, const Potential& p) {
    if (a.rows() != a.cols() || a.rows() != p.size())
        throw std::invalid_argument("closed_form_w: dimension mismatch");
    const Index d = p.size();
    EdgeFlow w(d);
    for (Index i = 0; i < d; ++i) {
        for (Index j = i + 1; j < d; ++j) {
            if (p(i) == p(j)) continue;
            const bool fwd = a(i, j) != 0.0;
            const bool bwd = a(j, i) != 0.0;
            // Mutual edges form a 2-cycle no gradient flow can reproduce;
            // they are dropped, like pairs with no edge at all.
            if (fwd == bwd) continue;
            w.set(i, j, (fwd ? a(i, j) : a(j, i)) / (p(j) - p(i)));
        }
    }
    return w;
}

TopoSortResult topological_sort(const Matrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("topological_sort: matrix must be square");
    const Index d = a.rows();

    std::vector<Index> indegree(static_cast<std::size_t>(d), 0);
    for (Index j = 0; j < d; ++j)
        for (Index i = 0; i < d; ++i)
            if (a(i, j) != 0.0) ++indegree[static_cast<std::size_t>(j)];

    std::priority_queue<Index, std::vector<Index>, std::greater<>> ready;
    for (Index i = 0; i < d; ++i)
        if (indegree[static_cast<std::size_t>(i)] == 0) ready.push(i);

    TopoSortResult result;
    result.order.reserve(static_cast<std::size_t>(d));
    while (!ready.empty()) {
        Index i = ready.top();
        ready.pop();
        result.order.push_back(i);
        for (Index j = 0; j < d; ++j) {
            if (j == i || a(i, j) == 0.0) continue;
            if (--indegree[static_cast<std::size_t>(j)] == 0) ready.push(j);
        }
    }

    result.acyclic = result.order.size() == static_cast<std::size_t>(d);
    if (!result.acyclic) {
        std::vector<bool> placed(static_cast<std::size_t>(d), false);
        for (Index i : result.order) placed[static_cast<std::size_t>(i)] = true;
        for (Index i = 0; i < d; ++i)
            if (!placed[static_cast<std::size_t>(i)]) result.cycle.push_back(i);
        result.order.clear();
    }
    return result;
}

bool is_dag(const Matrix& a) { return topological_sort(a).acyclic; }

Matrix threshold(const Matrix& a, double eps) {
    if (eps < 0.0) throw std::invalid_argument("threshold: eps must be nonnegative");
    return (a.array().abs() < eps).select(0.0, a.array()).matrix();
}

ThresholdResult incremental_threshold(const Matrix& a, double start, double step) {
    if (start < 0.0 || step <= 0.0)
        throw std::invalid_argument("incremental_threshold: need start >= 0, step > 0");
    const double cap = a.size() > 0 ? a.cwiseAbs().maxCoeff() : 0.0;
    double eps = start;
    Matrix cut = threshold(a, eps);
    // Once eps clears the largest entry the graph is empty, so this stops.
    while (h_poly(cut) >= 1e-8 && eps <= cap) {
        eps += step;
        cut = threshold(a, eps);
    }
    return ThresholdResult{std::move(cut), eps};
}

}  // namespace nocurl
