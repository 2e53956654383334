#include <doctest.h>

#include <cmath>
#include <numeric>

#include "qmn/binomial.hpp"
#include "qmn/grid.hpp"
#include "qmn/qseries.hpp"
#include "qmn/stats.hpp"

using qmn::DeformParams;
using qmn::Rational;

namespace {

Rational rat(const char* s) { return qmn::parse_rational(s); }

DeformParams<Rational> half_params() {
    return {rat("1/2"), rat("1/2"), rat("1/4")};
}

// Independent oracle for the nu = 0 case: mu^j (mu;q)_{m-j} binom(m,j)_q,
// coded straight from the divided form.
Rational nu_zero_weight(const Rational& q, const Rational& mu, long j, long m) {
    return qmn::pow_ui(mu, j) * qmn::q_pochhammer(mu, q, m - j) * qmn::q_binomial(m, j, q);
}

}  // namespace

TEST_CASE("pmf hand values at m <= 1") {
    const auto p = half_params();
    CHECK(qmn::pmf(p, 0, 0) == 1);
    CHECK(qmn::pmf(p, 0, 1) == rat("2/3"));
    CHECK(qmn::pmf(p, 1, 1) == rat("1/3"));
    CHECK_THROWS_AS(qmn::pmf(p, 2, 1), std::invalid_argument);
}

TEST_CASE("pmf_table matches pmf and hand values") {
    const auto table = qmn::pmf_table(half_params(), 1);
    REQUIRE(table.weights.size() == 2);
    CHECK(table.weights[0] == rat("2/3"));
    CHECK(table.weights[1] == rat("1/3"));

    const auto point = qmn::pmf_table(half_params(), 0);
    REQUIRE(point.weights.size() == 1);
    CHECK(point.weights[0] == 1);
}

TEST_CASE("product form equals the divided form for mu > 0") {
    const auto p = half_params();
    for (long j = 0; j <= 6; ++j) {
        const Rational ratio = p.nu() / p.mu();
        const Rational divided = qmn::pow_ui(p.mu(), j) * qmn::q_pochhammer(ratio, p.q(), j);
        CHECK(qmn::deformed_prefactor(p, j) == divided);
    }
}

TEST_CASE("normalization is exact on the rational grid, m <= 30") {
    for (const auto& p : qmn::default_grid<Rational>()) {
        for (long m = 0; m <= 30; ++m) {
            Rational sum(0);
            for (long j = 0; j <= m; ++j) sum += qmn::pmf(p, j, m);
            REQUIRE(sum == 1);
        }
    }
}

TEST_CASE("weights are nonnegative, including negative q") {
    auto grid = qmn::default_grid<Rational>();
    auto neg = qmn::negative_q_grid<Rational>();
    grid.insert(grid.end(), neg.begin(), neg.end());
    for (const auto& p : grid) {
        for (long m = 0; m <= 12; ++m) {
            for (long j = 0; j <= m; ++j) {
                REQUIRE(qmn::pmf(p, j, m) >= 0);
            }
        }
    }
}

TEST_CASE("nu = 0 degeneration matches the independent weights") {
    for (const char* qs : {"0", "1/4", "1/2", "9/10"}) {
        for (const char* ms : {"0", "1/4", "1/2", "3/4"}) {
            const DeformParams<Rational> p(rat(qs), rat(ms), rat("0"));
            for (long m = 0; m <= 20; ++m) {
                for (long j = 0; j <= m; ++j) {
                    REQUIRE(qmn::pmf(p, j, m) == nu_zero_weight(p.q(), p.mu(), j, m));
                }
            }
        }
    }
}

TEST_CASE("nu = mu puts all mass at j = 0") {
    const DeformParams<Rational> p(rat("1/2"), rat("1/4"), rat("1/4"));
    for (long m = 0; m <= 10; ++m) {
        CHECK(qmn::pmf(p, 0, m) == 1);
        for (long j = 1; j <= m; ++j) CHECK(qmn::pmf(p, j, m) == 0);
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(DeformParams<Rational>(rat("1"), rat("1/2"), rat("1/4")),
                    std::invalid_argument);
    CHECK_THROWS_AS(DeformParams<Rational>(rat("1/2"), rat("1/4"), rat("1/2")),
                    std::invalid_argument);
    CHECK_THROWS_AS(DeformParams<Rational>(rat("1/2"), rat("1"), rat("0")),
                    std::invalid_argument);
    CHECK_THROWS_AS(DeformParams<double>(0.5, 0.5, -0.1), std::invalid_argument);
    CHECK_NOTHROW(DeformParams<Rational>(rat("-1/2"), rat("1/2"), rat("1/4")));
}

TEST_CASE("infinite-m table agrees with the finite table at m = 200") {
    const DeformParams<double> p(0.5, 0.5, 0.25);
    const auto inf = qmn::pmf_table_infinite(p, 1e-12);
    const auto finite = qmn::pmf_table(p, 200);
    for (std::size_t j = 0; j < inf.weights.size(); ++j) {
        CHECK(std::abs(inf.weights[j] - finite.weights[j]) < 1e-8);
    }
    const double mass = std::accumulate(inf.weights.begin(), inf.weights.end(), 0.0);
    CHECK(mass >= 1.0 - 1e-12);
}

TEST_CASE("infinite-m table at mu = nu = 0 is a point mass") {
    const DeformParams<double> p(0.5, 0.0, 0.0);
    const auto table = qmn::pmf_table_infinite(p, 1e-12);
    REQUIRE(!table.weights.empty());
    CHECK(table.weights[0] == doctest::Approx(1.0));
    for (std::size_t j = 1; j < table.weights.size(); ++j) CHECK(table.weights[j] == 0.0);
}

TEST_CASE("sampling: m = 0 always yields 0") {
    const auto table = qmn::pmf_table(DeformParams<double>(0.5, 0.5, 0.25), 0);
    qmn::SampleStream stream(42);
    for (long draw : qmn::sample(table, stream, 100)) CHECK(draw == 0);
}

TEST_CASE("sampling: empirical frequency matches the pmf") {
    const auto table = qmn::pmf_table(DeformParams<double>(0.5, 0.5, 0.25), 1);
    qmn::SampleStream stream(7);
    const long n = 100000;
    long zeros = 0;
    for (long draw : qmn::sample(table, stream, n)) zeros += draw == 0;
    const double p0 = 2.0 / 3.0;
    const double band = 3.0 * std::sqrt(p0 * (1.0 - p0) / static_cast<double>(n));
    CHECK(std::abs(static_cast<double>(zeros) / n - p0) <= band);
}

TEST_CASE("sampling is deterministic under a fixed seed") {
    const auto table = qmn::pmf_table(DeformParams<double>(0.5, 0.5, 0.25), 5);
    qmn::SampleStream a(123), b(123);
    CHECK(qmn::sample(table, a, 1000) == qmn::sample(table, b, 1000));
}

TEST_CASE("sampler goodness of fit at m = 5") {
    const DeformParams<double> p(0.5, 0.5, 0.25);
    const auto table = qmn::pmf_table(p, 5);
    qmn::SampleStream stream(2024);
    const long n = 100000;
    std::vector<long> counts(6, 0);
    for (long draw : qmn::sample(table, stream, n)) ++counts[static_cast<std::size_t>(draw)];
    long dof = 0;
    const double stat = qmn::chi_squared_statistic(counts, table.weights, n, 5.0, &dof);
    CHECK(stat < qmn::chi_squared_quantile_999(dof));
}
