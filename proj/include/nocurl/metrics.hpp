#pragma once

#include "nocurl/types.hpp"

namespace nocurl {

struct ShdReport {
    int shd = 0;
    int extra = 0;    // predicted edges absent from the truth in both directions
    int missing = 0;  // true edges absent from the prediction in both directions
    int reverse = 0;  // pairs present in both but flipped
};

// Structural Hamming distance between nonzero patterns; weights are ignored.
// shd = extra + missing + reverse. Requires matching square shapes.
ShdReport shd(const Matrix& a_hat, const Matrix& a_true);

}  // namespace nocurl
