#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "qmn/params.hpp"
#include "qmn/qseries.hpp"

namespace qmn {

/// mu^j (nu/mu;q)_j evaluated as prod_{i=0}^{j-1} (mu - nu q^i), which is
/// defined for mu = 0 as well (the definition's divided form is not).
template <typename Scalar>
Scalar deformed_prefactor(const DeformParams<Scalar>& p, long j) {
    Scalar result(1);
    Scalar nu_qi = p.nu();  // nu * q^i
    for (long i = 0; i < j; ++i) {
        result *= p.mu() - nu_qi;
        nu_qi *= p.q();
    }
    return result;
}

/// Probability of drawing j out of headroom m under the (q,mu,nu)-deformed
/// binomial distribution.
template <typename Scalar>
Scalar pmf(const DeformParams<Scalar>& p, long j, long m) {
    if (j < 0 || j > m) throw std::invalid_argument("pmf: requires 0 <= j <= m");
    return deformed_prefactor(p, j) * q_pochhammer(p.mu(), p.q(), m - j) /
           q_pochhammer(p.nu(), p.q(), m) * q_binomial(m, j, p.q());
}

/// The weight vector (phi(0|m), ..., phi(m|m)); for the infinite-headroom
/// variant the support is truncated and `infinite` is set.
template <typename Scalar>
struct PmfTable {
    DeformParams<Scalar> params;
    long m = 0;          // support bound; ignored when infinite
    bool infinite = false;
    std::vector<Scalar> weights;
};

template <typename Scalar>
PmfTable<Scalar> pmf_table(const DeformParams<Scalar>& p, long m) {
    if (m < 0) throw std::invalid_argument("pmf_table: m must be >= 0");
    PmfTable<Scalar> table{p, m, false, {}};
    table.weights.reserve(static_cast<std::size_t>(m) + 1);
    for (long j = 0; j <= m; ++j) {
        table.weights.push_back(pmf(p, j, m));
    }
    return table;
}

namespace detail {

/// (z;q)_inf, truncated once the running factor is within 1e-17 of 1.
inline double q_pochhammer_infinite(double z, double q) {
    double result = 1.0;
    double qi_z = z;
    for (int i = 0; i < 4000; ++i) {
        if (std::abs(qi_z) < 1e-17) break;
        result *= 1.0 - qi_z;
        qi_z *= q;
    }
    return result;
}

}  // namespace detail

/// The m -> infinity limit of the distribution:
///   w_j = prod_{i<j}(mu - nu q^i) * (mu;q)_inf / (nu;q)_inf * 1/(q;q)_j,
/// truncated at the first index whose cumulative mass reaches
/// 1 - tail_epsilon. Float backend only.
inline PmfTable<double> pmf_table_infinite(const DeformParams<double>& p,
                                           double tail_epsilon = 1e-12) {
    if (!(tail_epsilon > 0)) {
        throw std::invalid_argument("pmf_table_infinite: tail_epsilon must be > 0");
    }
    constexpr long kMaxTerms = 100000;
    const double poch_ratio = detail::q_pochhammer_infinite(p.mu(), p.q()) /
                              detail::q_pochhammer_infinite(p.nu(), p.q());
    PmfTable<double> table{p, 0, true, {}};
    double prefactor = 1.0;   // prod_{i<j} (mu - nu q^i)
    double nu_qi = p.nu();
    double qq_j = 1.0;        // (q;q)_j
    double q_pow = p.q();
    double cumulative = 0.0;
    for (long j = 0; j < kMaxTerms; ++j) {
        double w = prefactor * poch_ratio / qq_j;
        table.weights.push_back(w);
        cumulative += w;
        if (cumulative >= 1.0 - tail_epsilon) {
            table.m = j;
            return table;
        }
        prefactor *= p.mu() - nu_qi;
        nu_qi *= p.q();
        qq_j *= 1.0 - q_pow;
        q_pow *= p.q();
    }
    throw std::runtime_error(
        "pmf_table_infinite: mass did not reach 1 - tail_epsilon within 1e5 terms");
}

/// Deterministic random source. Single-owner; parallel work uses
/// independent streams with distinct seeds.
class SampleStream {
public:
    explicit SampleStream(std::uint64_t seed) : rng_(seed) {}

    /// Uniform draw in [0, 1).
    double uniform() {
        return std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
    }

private:
    std::mt19937_64 rng_;
};

/// Precomputed cumulative table for inverse-CDF sampling. Ties in the
/// uniform draw resolve toward the smaller index.
class CdfTable {
public:
    template <typename Scalar>
    explicit CdfTable(const PmfTable<Scalar>& table) {
        cumulative_.reserve(table.weights.size());
        double acc = 0.0;
        for (const auto& w : table.weights) {
            acc += static_cast<double>(w);
            cumulative_.push_back(acc);
        }
        if (!cumulative_.empty()) cumulative_.back() = std::max(cumulative_.back(), 1.0);
    }

    long sample(SampleStream& stream) const {
        double u = stream.uniform();
        auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
        if (it == cumulative_.end()) --it;
        return static_cast<long>(it - cumulative_.begin());
    }

private:
    std::vector<double> cumulative_;
};

/// i.i.d. draws from the table; identical seed and table give identical
/// sequences.
template <typename Scalar>
std::vector<long> sample(const PmfTable<Scalar>& table, SampleStream& stream,
                         long count) {
    if (count < 1) throw std::invalid_argument("sample: count must be >= 1");
    CdfTable cdf(table);
    std::vector<long> draws;
    draws.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) draws.push_back(cdf.sample(stream));
    return draws;
}

}  // namespace qmn
