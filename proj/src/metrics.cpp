#include "nocurl/metrics.hpp"

#include <stdexcept>

namespace nocurl {

ShdReport shd(const Matrix& a_hat, const Matrix& a_true) {
    if (a_hat.rows() != a_hat.cols() || a_true.rows() != a_true.cols() ||
        a_hat.rows() != a_true.rows())
        throw std::invalid_argument("shd: matrices must be square with matching shapes");

    ShdReport out;
    const Index d = a_hat.rows();
    for (Index i = 0; i < d; ++i)
        for (Index j = i + 1; j < d; ++j) {
            bool hf = a_hat(i, j) != 0.0;
            bool hb = a_hat(j, i) != 0.0;
            bool tf = a_true(i, j) != 0.0;
            bool tb = a_true(j, i) != 0.0;
            bool h = hf || hb;
            bool t = tf || tb;
            if (h && !t) ++out.extra;
            else if (!h && t) ++out.missing;
            else if (h && t && hf != tf) ++out.reverse;
        }
    out.shd = out.extra + out.missing + out.reverse;
    return out;
}

}  // namespace nocurl
