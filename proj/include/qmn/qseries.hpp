#pragma once

#include <stdexcept>

#include "qmn/rational.hpp"

namespace qmn {

/// (z;q)_n = prod_{i=0}^{n-1} (1 - q^i z). The empty product (n = 0) is 1.
/// Computed as the literal product; n stays small in this library.
template <typename Scalar>
Scalar q_pochhammer(const Scalar& z, const Scalar& q, long n) {
    if (n < 0) throw std::invalid_argument("q_pochhammer: n must be >= 0");
    Scalar result(1);
    Scalar qi_z = z;  // q^i * z
    for (long i = 0; i < n; ++i) {
        result *= Scalar(1) - qi_z;
        qi_z *= q;
    }
    return result;
}

/// Gaussian binomial coefficient (q;q)_m / ((q;q)_j (q;q)_{m-j}).
/// The denominators cannot vanish for |q| < 1, so the ratio is always
/// defined; in the rational backend the result is exact.
template <typename Scalar>
Scalar q_binomial(long m, long j, const Scalar& q) {
    if (j < 0 || j > m) {
        throw std::invalid_argument("q_binomial: requires 0 <= j <= m");
    }
    return q_pochhammer(q, q, m) /
           (q_pochhammer(q, q, j) * q_pochhammer(q, q, m - j));
}

}  // namespace qmn
