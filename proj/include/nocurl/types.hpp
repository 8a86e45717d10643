#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace nocurl {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// One scalar per vertex of the complete graph on d vertices.
using Potential = Vector;

// Skew-symmetric flow on the edges of the complete graph. Skew-symmetry is
// structural: every write stores an upper-triangle value and mirrors its
// negation, so y(i,j) == -y(j,i) holds bitwise and the diagonal stays zero.
class EdgeFlow {
public:
    EdgeFlow() = default;
    explicit EdgeFlow(Index dim) : m_(Matrix::Zero(dim, dim)) {}

    // Skew part (M - M^T)/2 of an arbitrary square matrix; each entry is
    // computed once and mirrored.
    static EdgeFlow skew_part(const Matrix& m);

    // Builds a flow from packed upper-triangle values, row-major:
    // (0,1), (0,2), ..., (0,d-1), (1,2), ...
    static EdgeFlow from_upper(Index dim, const Vector& upper);

    Index dim() const { return m_.rows(); }
    const Matrix& matrix() const { return m_; }
    double operator()(Index i, Index j) const { return m_(i, j); }

    // Sets y(i,j) = value and y(j,i) = -value; requires i != j.
    void set(Index i, Index j, double value);

private:
    Matrix m_;
};

// Alternating flow on vertex triples: theta(i,j,k) flips sign under swaps of
// any two indices and vanishes when indices repeat. Stores one value per
// combination i < j < k; reads resolve the permutation sign.
class TriangleFlow {
public:
    explicit TriangleFlow(Index dim);

    Index dim() const { return dim_; }
    double operator()(Index i, Index j, Index k) const;

    // Sets the value on the triple {i,j,k} as seen from the order (i,j,k);
    // indices must be distinct and in range.
    void set(Index i, Index j, Index k, double value);

private:
    Index offset(Index i, Index j, Index k) const;  // requires i < j < k

    Index dim_ = 0;
    std::vector<double> vals_;
};

// Parameter pair for the DAG parameterization a = w o relu(grad(p)).
struct DagParams {
    EdgeFlow w;
    Potential p;
};

}  // namespace nocurl
