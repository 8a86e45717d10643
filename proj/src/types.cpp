#include "nocurl/types.hpp"

#include <stdexcept>

namespace nocurl {

namespace {

void check_index(Index i, Index dim, const char* who) {
    if (i < 0 || i >= dim) throw std::out_of_range(std::string(who) + ": index out of range");
}

}  // namespace

EdgeFlow EdgeFlow::skew_part(const Matrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("EdgeFlow::skew_part: matrix must be square");
    EdgeFlow y(m.rows());
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = i + 1; j < m.cols(); ++j)
            y.set(i, j, 0.5 * (m(i, j) - m(j, i)));
    return y;
}

EdgeFlow EdgeFlow::from_upper(Index dim, const Vector& upper) {
    if (upper.size() != dim * (dim - 1) / 2)
        throw std::invalid_argument("EdgeFlow::from_upper: wrong number of entries");
    EdgeFlow y(dim);
    Index k = 0;
    for (Index i = 0; i < dim; ++i)
        for (Index j = i + 1; j < dim; ++j) y.set(i, j, upper(k++));
    return y;
}

void EdgeFlow::set(Index i, Index j, double value) {
    check_index(i, dim(), "EdgeFlow::set");
    check_index(j, dim(), "EdgeFlow::set");
    if (i == j) throw std::invalid_argument("EdgeFlow::set: diagonal entries are fixed at zero");
    m_(i, j) = value;
    m_(j, i) = -value;
}

TriangleFlow::TriangleFlow(Index dim) : dim_(dim) {
    if (dim < 0) throw std::invalid_argument("TriangleFlow: negative dimension");
    vals_.assign(size_t(dim * (dim - 1) * (dim - 2) / 6), 0.0);
}

// Canonical (combinadic) position of the sorted triple i < j < k.
Index TriangleFlow::offset(Index i, Index j, Index k) const {
    return k * (k - 1) * (k - 2) / 6 + j * (j - 1) / 2 + i;
}

namespace {

// Sorts the triple in place and returns the sign of the permutation applied,
// or 0 if two indices coincide.
int sort3(Index& i, Index& j, Index& k) {
    int sign = 1;
    if (i > j) { std::swap(i, j); sign = -sign; }
    if (j > k) { std::swap(j, k); sign = -sign; }
    if (i > j) { std::swap(i, j); sign = -sign; }
    if (i == j || j == k) return 0;
    return sign;
}

}  // namespace

double TriangleFlow::operator()(Index i, Index j, Index k) const {
    check_index(i, dim_, "TriangleFlow");
    check_index(j, dim_, "TriangleFlow");
    check_index(k, dim_, "TriangleFlow");
    int sign = sort3(i, j, k);
    if (sign == 0) return 0.0;
    return sign * vals_[size_t(offset(i, j, k))];
}

void TriangleFlow::set(Index i, Index j, Index k, double value) {
    check_index(i, dim_, "TriangleFlow::set");
    check_index(j, dim_, "TriangleFlow::set");
    check_index(k, dim_, "TriangleFlow::set");
    int sign = sort3(i, j, k);
    if (sign == 0)
        throw std::invalid_argument("TriangleFlow::set: indices must be distinct");
    vals_[size_t(offset(i, j, k))] = sign * value;
}

}  // namespace nocurl
