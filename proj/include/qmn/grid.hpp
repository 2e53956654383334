#pragma once

#include <vector>

#include "qmn/params.hpp"
#include "qmn/rational.hpp"

namespace qmn {

/// Default verification grid: all (q, mu, nu) triples from
/// {0, 1/10, 1/4, 1/2, 3/4, 9/10} with nu <= mu. Small exact rationals
/// keep bignum growth bounded.
template <typename Scalar>
std::vector<DeformParams<Scalar>> default_grid() {
    static const char* kValues[] = {"0", "1/10", "1/4", "1/2", "3/4", "9/10"};
    std::vector<DeformParams<Scalar>> grid;
    for (const char* qs : kValues) {
        const Scalar q = scalar_from_rational<Scalar>(parse_rational(qs));
        for (std::size_t mi = 0; mi < std::size(kValues); ++mi) {
            const Scalar mu = scalar_from_rational<Scalar>(parse_rational(kValues[mi]));
            for (std::size_t ni = 0; ni <= mi; ++ni) {
                const Scalar nu = scalar_from_rational<Scalar>(parse_rational(kValues[ni]));
                grid.emplace_back(q, mu, nu);
            }
        }
    }
    return grid;
}

/// Negative-q spot checks at q in {-1/4, -1/2}, same (mu, nu) pairs.
template <typename Scalar>
std::vector<DeformParams<Scalar>> negative_q_grid() {
    static const char* kQ[] = {"-1/4", "-1/2"};
    static const char* kValues[] = {"0", "1/10", "1/4", "1/2", "3/4", "9/10"};
    std::vector<DeformParams<Scalar>> grid;
    for (const char* qs : kQ) {
        const Scalar q = scalar_from_rational<Scalar>(parse_rational(qs));
        for (std::size_t mi = 0; mi < std::size(kValues); ++mi) {
            const Scalar mu = scalar_from_rational<Scalar>(parse_rational(kValues[mi]));
            for (std::size_t ni = 0; ni <= mi; ++ni) {
                const Scalar nu = scalar_from_rational<Scalar>(parse_rational(kValues[ni]));
                grid.emplace_back(q, mu, nu);
            }
        }
    }
    return grid;
}

}  // namespace qmn
