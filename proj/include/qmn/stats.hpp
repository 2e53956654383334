#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qmn {

/// Pearson chi-squared statistic for observed counts against expected
/// probabilities. Tail bins with expected count below min_expected are
/// pooled into the preceding bin.
inline double chi_squared_statistic(const std::vector<long>& observed,
                                    const std::vector<double>& expected_probs,
                                    long n_total, double min_expected = 5.0,
                                    long* dof_out = nullptr) {
    std::vector<double> expected;
    std::vector<double> obs;
    const std::size_t k = std::max(expected_probs.size(), observed.size());
    double e_acc = 0.0, o_acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        e_acc += (i < expected_probs.size() ? expected_probs[i] : 0.0) *
                 static_cast<double>(n_total);
        o_acc += i < observed.size() ? static_cast<double>(observed[i]) : 0.0;
        if (e_acc >= min_expected) {
            expected.push_back(e_acc);
            obs.push_back(o_acc);
            e_acc = o_acc = 0.0;
        }
    }
    if ((e_acc > 0.0 || o_acc > 0.0) && !expected.empty()) {
        expected.back() += e_acc;
        obs.back() += o_acc;
    }
    if (expected.size() < 2) throw std::invalid_argument("chi_squared: fewer than 2 bins");
    double stat = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        const double d = obs[i] - expected[i];
        stat += d * d / expected[i];
    }
    if (dof_out) *dof_out = static_cast<long>(expected.size()) - 1;
    return stat;
}

/// Upper quantile of the chi-squared distribution by the Wilson-Hilferty
/// cube approximation; accurate to well under 1% for the dof used here.
inline double chi_squared_quantile(long dof, double z_upper) {
    if (dof < 1) throw std::invalid_argument("chi_squared_quantile: dof must be >= 1");
    const double d = static_cast<double>(dof);
    const double t = 1.0 - 2.0 / (9.0 * d) + z_upper * std::sqrt(2.0 / (9.0 * d));
    return d * t * t * t;
}

/// 99.9% quantile (z = 3.090232).
inline double chi_squared_quantile_999(long dof) {
    return chi_squared_quantile(dof, 3.090232306167813);
}

}  // namespace qmn
