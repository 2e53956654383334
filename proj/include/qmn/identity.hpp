#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qmn/binomial.hpp"
#include "qmn/params.hpp"

namespace qmn {

/// S_{x,y} = sum_{j=0}^{x} phi(j|x) q^{jy}, evaluated termwise.
template <typename Scalar>
Scalar s_direct(const DeformParams<Scalar>& p, long x, long y) {
    if (x < 0 || y < 0) throw std::invalid_argument("s_direct: requires x, y >= 0");
    Scalar sum(0);
    const Scalar qy = pow_ui(p.q(), y);
    Scalar qjy(1);  // q^{jy}
    for (long j = 0; j <= x; ++j) {
        sum += pmf(p, j, x) * qjy;
        qjy *= qy;
    }
    return sum;
}

enum class Provenance { kDirect, kRecurrence };

/// The rectangle S_{x,y} for 0 <= x <= max_x, 0 <= y <= max_y.
template <typename Scalar>
struct STable {
    DeformParams<Scalar> params;
    long max_x = 0;
    long max_y = 0;
    Provenance provenance = Provenance::kDirect;
    std::vector<std::vector<Scalar>> values;  // values[x][y]

    const Scalar& at(long x, long y) const {
        return values[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
    }
};

template <typename Scalar>
STable<Scalar> s_direct_table(const DeformParams<Scalar>& p, long max_x, long max_y) {
    STable<Scalar> table{p, max_x, max_y, Provenance::kDirect, {}};
    table.values.resize(static_cast<std::size_t>(max_x) + 1);
    for (long x = 0; x <= max_x; ++x) {
        auto& row = table.values[static_cast<std::size_t>(x)];
        row.reserve(static_cast<std::size_t>(max_y) + 1);
        for (long y = 0; y <= max_y; ++y) row.push_back(s_direct(p, x, y));
    }
    return table;
}

/// Fills the rectangle from the boundary S_{x,0} = S_{0,y} = 1 and
///   (1 - nu q^x) S_{x+1,y} = (1 - nu q^y) S_{x,y+1} + mu (q^y - q^x) S_{x,y}.
/// Computing S_{x+1,y} consumes S_{x,y+1}, so row x is built out to column
/// max_y + (max_x - x) and the extended triangle is cropped at the end.
/// The divisor 1 - nu q^x cannot vanish under the parameter constraints.
template <typename Scalar>
STable<Scalar> s_recurrence_table(const DeformParams<Scalar>& p, long max_x, long max_y) {
    if (max_x < 0 || max_y < 0) {
        throw std::invalid_argument("s_recurrence_table: bounds must be >= 0");
    }
    std::vector<std::vector<Scalar>> rows(static_cast<std::size_t>(max_x) + 1);
    std::vector<Scalar> q_pow(static_cast<std::size_t>(max_x + max_y) + 1);
    q_pow[0] = Scalar(1);
    for (std::size_t i = 1; i < q_pow.size(); ++i) q_pow[i] = q_pow[i - 1] * p.q();

    rows[0].assign(static_cast<std::size_t>(max_y + max_x) + 1, Scalar(1));
    for (long x = 1; x <= max_x; ++x) {
        const long width = max_y + (max_x - x);  // columns 0..width
        const auto& prev = rows[static_cast<std::size_t>(x - 1)];
        auto& row = rows[static_cast<std::size_t>(x)];
        row.resize(static_cast<std::size_t>(width) + 1);
        row[0] = Scalar(1);
        const Scalar qx = q_pow[static_cast<std::size_t>(x - 1)];
        const Scalar divisor = Scalar(1) - p.nu() * qx;
        for (long y = 1; y <= width; ++y) {
            const Scalar& qy = q_pow[static_cast<std::size_t>(y)];
            row[static_cast<std::size_t>(y)] =
                ((Scalar(1) - p.nu() * qy) * prev[static_cast<std::size_t>(y) + 1] +
                 p.mu() * (qy - qx) * prev[static_cast<std::size_t>(y)]) /
                divisor;
        }
    }

    STable<Scalar> table{p, max_x, max_y, Provenance::kRecurrence, {}};
    table.values.resize(static_cast<std::size_t>(max_x) + 1);
    for (long x = 0; x <= max_x; ++x) {
        auto& row = rows[static_cast<std::size_t>(x)];
        row.resize(static_cast<std::size_t>(max_y) + 1);
        table.values[static_cast<std::size_t>(x)] = std::move(row);
    }
    return table;
}

/// One verification record: inputs, both sides, verdict. Reports are data,
/// not exceptions; a failed identity check is a finding, not an error.
struct CheckRecord {
    std::string check_name;
    std::string params;
    std::vector<long> indices;
    std::string lhs;
    std::string rhs;
    bool pass = true;
    double tolerance = 0.0;  // 0 means exact equality was required
    std::string note;
};

struct Report {
    std::vector<CheckRecord> records;

    bool all_pass() const {
        for (const auto& r : records) {
            if (!r.pass) return false;
        }
        return true;
    }
};

namespace detail {

template <typename Scalar>
CheckRecord exact_record(std::string name, const DeformParams<Scalar>& p,
                         std::vector<long> indices, const Scalar& lhs,
                         const Scalar& rhs) {
    CheckRecord rec;
    rec.check_name = std::move(name);
    rec.params = p.describe();
    rec.indices = std::move(indices);
    rec.lhs = to_display_string(lhs);
    rec.rhs = to_display_string(rhs);
    rec.pass = lhs == rhs;
    return rec;
}

}  // namespace detail

/// Exact check that the weights of phi(.|m) sum to 1 for every m <= max_m.
template <typename Scalar>
Report verify_normalization(const DeformParams<Scalar>& p, long max_m) {
    Report report;
    for (long m = 0; m <= max_m; ++m) {
        Scalar sum(0);
        for (long j = 0; j <= m; ++j) sum += pmf(p, j, m);
        report.records.push_back(
            detail::exact_record("normalization", p, {m}, sum, Scalar(1)));
    }
    return report;
}

/// Exact check of S_{x,y} = S_{y,x} on the direct-sum table.
template <typename Scalar>
Report verify_symmetry(const DeformParams<Scalar>& p, long max_n) {
    Report report;
    auto table = s_direct_table(p, max_n, max_n);
    for (long x = 0; x <= max_n; ++x) {
        for (long y = x + 1; y <= max_n; ++y) {
            report.records.push_back(detail::exact_record(
                "symmetry", p, {x, y}, table.at(x, y), table.at(y, x)));
        }
    }
    return report;
}

/// Plugs direct-sum values into both sides of
/// (1 - nu q^x) S_{x+1,y} = (1 - nu q^y) S_{x,y+1} + mu (q^y - q^x) S_{x,y}
/// for all x, y <= max_n and requires exact equality.
template <typename Scalar>
Report verify_recurrence_consistency(const DeformParams<Scalar>& p, long max_n) {
    Report report;
    auto table = s_direct_table(p, max_n + 1, max_n + 1);
    for (long x = 0; x <= max_n; ++x) {
        const Scalar qx = pow_ui(p.q(), x);
        for (long y = 0; y <= max_n; ++y) {
            const Scalar qy = pow_ui(p.q(), y);
            Scalar lhs = (Scalar(1) - p.nu() * qx) * table.at(x + 1, y);
            Scalar rhs = (Scalar(1) - p.nu() * qy) * table.at(x, y + 1) +
                         p.mu() * (qy - qx) * table.at(x, y);
            report.records.push_back(
                detail::exact_record("recurrence", p, {x, y}, lhs, rhs));
        }
    }
    return report;
}

/// The inductive identity behind the normalization lemma:
///   S_{m+1,0}(q,mu,nu) = (1-mu)/(1-nu) S_{m,0}(q, q mu, q nu)
///                      + mu/(1 - nu q^m) (S_{m,0} - nu/mu S_{m,1}).
/// Divides by mu, so mu = 0 grid points are recorded as vacuous.
template <typename Scalar>
Report verify_lemma_recursion(const DeformParams<Scalar>& p, long max_m) {
    Report report;
    auto vacuous = [&](const char* why) {
        CheckRecord rec;
        rec.check_name = "lemma_recursion";
        rec.params = p.describe();
        rec.pass = true;
        rec.note = why;
        report.records.push_back(std::move(rec));
        return report;
    };
    if (p.mu() == Scalar(0)) {
        return vacuous("vacuous: identity divides by mu, skipped for mu = 0");
    }
    if (p.q() < Scalar(0)) {
        // the shifted triple (q, q mu, q nu) has q mu < 0, outside the
        // parameter domain
        return vacuous("vacuous: shifted parameters leave the domain for q < 0");
    }
    const DeformParams<Scalar> shifted(p.q(), p.q() * p.mu(), p.q() * p.nu());
    for (long m = 0; m <= max_m; ++m) {
        Scalar lhs = s_direct(p, m + 1, 0);
        Scalar rhs = (Scalar(1) - p.mu()) / (Scalar(1) - p.nu()) *
                         s_direct(shifted, m, 0) +
                     p.mu() / (Scalar(1) - p.nu() * pow_ui(p.q(), m)) *
                         (s_direct(p, m, 0) -
                          p.nu() / p.mu() * s_direct(p, m, 1));
        report.records.push_back(
            detail::exact_record("lemma_recursion", p, {m}, lhs, rhs));
    }
    return report;
}

/// Monte Carlo check of E[q^{xY}] = E[q^{yX}]: each estimate must land
/// within 3 standard errors of the exact direct-sum value.
inline Report mc_duality_check(const DeformParams<double>& p, long x, long y,
                               long n_samples, std::uint64_t seed) {
    Report report;
    const double exact_xy = s_direct(p, y, x);  // E[q^{xY}], Y ~ phi(.|y)
    const double exact_yx = s_direct(p, x, y);  // E[q^{yX}], X ~ phi(.|x)

    auto run = [&](long support, long exponent, double exact, const char* name,
                   std::uint64_t stream_seed) {
        SampleStream stream(stream_seed);
        auto table = pmf_table(p, support);
        CdfTable cdf(table);
        double sum = 0.0, sum_sq = 0.0;
        for (long i = 0; i < n_samples; ++i) {
            double v = std::pow(p.q(), static_cast<double>(exponent * cdf.sample(stream)));
            sum += v;
            sum_sq += v * v;
        }
        const double mean = sum / static_cast<double>(n_samples);
        const double var =
            std::max(0.0, sum_sq / static_cast<double>(n_samples) - mean * mean);
        const double se = std::sqrt(var / static_cast<double>(n_samples));
        CheckRecord rec;
        rec.check_name = name;
        rec.params = p.describe();
        rec.indices = {x, y, n_samples};
        rec.lhs = to_display_string(mean);
        rec.rhs = to_display_string(exact);
        rec.tolerance = 3.0 * se;
        // 1e-12 floor absorbs float rounding in the zero-variance cases.
        rec.pass = std::abs(mean - exact) <= rec.tolerance + 1e-12;
        return rec;
    };

    report.records.push_back(run(y, x, exact_xy, "mc_duality_qxY", seed));
    report.records.push_back(run(x, y, exact_yx, "mc_duality_qyX", seed + 1));
    return report;
}

}  // namespace qmn
