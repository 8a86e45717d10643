#pragma once

#include "nocurl/types.hpp"

#include <stdexcept>

namespace nocurl {

template <typename A, typename B>
Matrix hadamard(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("hadamard: dimension mismatch");
    return a.cwiseProduct(b);
}

// a^k by binary exponentiation; k = 0 gives the identity.
template <typename A>
Matrix matrix_power(const Eigen::MatrixBase<A>& a, long k) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("matrix_power: matrix must be square");
    if (k < 0)
        throw std::invalid_argument("matrix_power: negative exponent");
    Matrix result = Matrix::Identity(a.rows(), a.cols());
    Matrix base = a;
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return result;
}

}  // namespace nocurl
