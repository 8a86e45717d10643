#pragma once

#include "nocurl/types.hpp"

#include <vector>

namespace nocurl {

// Packed optimization view of an EdgeFlow: the d(d-1)/2 upper-triangle
// entries in row-major order. pack/unpack round-trip exactly.
class SkewParams {
public:
    explicit SkewParams(Index dim);
    SkewParams(Index dim, Vector upper);

    static SkewParams pack(const EdgeFlow& w);
    EdgeFlow unpack() const;

    Index dim() const { return dim_; }
    Vector& upper() { return upper_; }
    const Vector& upper() const { return upper_; }

    static Index upper_size(Index dim) { return dim * (dim - 1) / 2; }

private:
    Index dim_;
    Vector upper_;
};

// max(y, 0) entrywise; the result is a plain nonnegative matrix.
Matrix relu_flow(const EdgeFlow& y);

// The DAG parameterization a = w o relu(grad(p)). Every output is acyclic:
// edges only run from lower to strictly higher potential.
Matrix gamma(const DagParams& params);
Matrix gamma(const EdgeFlow& w, const Potential& p);

// Potential of the acyclicity projection of a: the skew part of the
// transitive closure of a, resolved into its gradient component. Whenever a
// path i -> j exists (and none back), p(j) - p(i) >= 1/d.
Potential topo_potential(const Matrix& a);

// Flow w with gamma(w, p) reproducing a wherever that is possible:
//   w(i,j) = 0                        if p(i) == p(j) (exact tie)
//          = a(i,j) / (p(j) - p(i))   if a(i,j) != 0 and a(j,i) == 0
//          = a(j,i) / (p(j) - p(i))   if a(j,i) != 0 and a(i,j) == 0
//          = 0                        otherwise (no edge, or a 2-cycle:
//                                     mutual edges cannot be reproduced and
//                                     are dropped)
EdgeFlow closed_form_w(const Matrix& a, const Potential& p);

struct TopoSortResult {
    bool acyclic = false;
    std::vector<Index> order;  // complete vertex order when acyclic
    std::vector<Index> cycle;  // vertices on or downstream of cycles otherwise
};

// Kahn's algorithm on the nonzero pattern; deterministic (lowest-index-first)
// order.
TopoSortResult topological_sort(const Matrix& a);
bool is_dag(const Matrix& a);

// Zeroes entries with |a(i,j)| < eps (strict).
Matrix threshold(const Matrix& a, double eps);

struct ThresholdResult {
    Matrix a;
    double eps;
};

// Thresholds at start, start + step, ... until the polynomial acyclicity
// measure of the result drops below 1e-8. Terminates for any input: once eps
// exceeds the largest |entry| the result is the empty graph.
ThresholdResult incremental_threshold(const Matrix& a, double start, double step);

}  // namespace nocurl
