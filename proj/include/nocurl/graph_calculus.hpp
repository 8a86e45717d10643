#pragma once

#include "nocurl/types.hpp"

namespace nocurl {

// Discrete exterior calculus on the complete graph with d vertices.
//
// Conventions (all indices 0-based):
//   (grad p)(i,j)      = p(j) - p(i)
//   (div y)(i)         = sum_j y(i,j),  grad* = -div
//   (curl y)(i,j,k)    = y(i,j) + y(j,k) + y(k,i)
//   (curl* theta)(i,j) = sum_k theta(i,j,k)
//   (lap0 p)(i)        = d*p(i) - sum_j p(j)          (= grad* grad = -div grad)
//   lap1               = grad grad* + curl* curl
//
// Flows pair via <y, z> = sum_ij y(i,j) z(i,j); potentials pair entrywise.
// Under these pairings grad and -div are adjoint, as are curl and curl*.

EdgeFlow grad(const Potential& p);

Vector divergence(const EdgeFlow& y);
Vector grad_adjoint(const EdgeFlow& y);

// Curl on one triple; vertex indices must be distinct and in range.
double curl_at(const EdgeFlow& y, Index i, Index j, Index k);

// Full curl as an alternating triangle flow (one value per i < j < k).
TriangleFlow curl(const EdgeFlow& y);

// max over triples i < j < k of |curl_at(y, i, j, k)|; 0 when d < 3.
double curl_max(const EdgeFlow& y);

EdgeFlow curl_adjoint(const TriangleFlow& theta);

Vector laplacian0_apply(const Potential& p);
EdgeFlow helmholtzian_apply(const EdgeFlow& y);

// Potential phi with grad(phi) = gradient component of y in the Hodge
// decomposition y = grad(phi) + curl*(Psi) + harmonic, pinned by phi(d-1) = 0.
//
// With the last vertex pinned, the vertex Laplacian restricted to the first
// d-1 coordinates is d*I - ones, whose inverse is (I + ones)/d, so the
// normal equations solve in closed form:
//   phi(i) = -(v(i) + sum_{j<d-1} v(j)) / d,  v = div(y).
// Requires d >= 2.
Potential hodge_potential(const EdgeFlow& y);

// grad(hodge_potential(y)): the curl-free component of y.
EdgeFlow hodge_project(const EdgeFlow& y);

// Transitive closure of the nonzero pattern of a (Warshall). Output is 0/1;
// out(i,j) = 1 iff a directed path of length >= 1 leads from i to j, so the
// diagonal marks vertices that lie on cycles.
Matrix connectivity(const Matrix& a);

}  // namespace nocurl
