#include <doctest.h>

#include <cmath>

#include "qmn/qseries.hpp"
#include "qmn/rational.hpp"

using qmn::Rational;

namespace {

Rational rat(const char* s) { return qmn::parse_rational(s); }

// ordinary binomial coefficient, for the q -> 1 sanity check
double binom(long m, long j) {
    double r = 1.0;
    for (long i = 0; i < j; ++i) r = r * static_cast<double>(m - i) / static_cast<double>(i + 1);
    return r;
}

}  // namespace

TEST_CASE("q_pochhammer basic values") {
    CHECK(qmn::q_pochhammer(0.7, 0.5, 0) == 1.0);
    CHECK(qmn::q_pochhammer(rat("1/2"), rat("1/2"), 2) == rat("3/8"));
    CHECK(qmn::q_pochhammer(rat("1"), rat("1/3"), 1) == 0);
    CHECK(qmn::q_pochhammer(rat("1"), rat("-1/2"), 5) == 0);
    CHECK_THROWS_AS(qmn::q_pochhammer(0.5, 0.5, -1), std::invalid_argument);
}

TEST_CASE("q_binomial hand values") {
    CHECK(qmn::q_binomial(5, 0, 0.3) == 1.0);
    CHECK(qmn::q_binomial(2, 1, rat("1/2")) == rat("3/2"));
    CHECK(qmn::q_binomial(4, 2, rat("1/2")) == rat("35/16"));
    CHECK_THROWS_AS(qmn::q_binomial(3, 4, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(qmn::q_binomial(3, -1, 0.5), std::invalid_argument);
}

TEST_CASE("Pascal identity holds exactly for rational q") {
    for (const char* qs : {"1/2", "1/4", "-1/2", "9/10"}) {
        const Rational q = rat(qs);
        for (long x = 1; x <= 20; ++x) {
            for (long j = 1; j <= x; ++j) {
                const Rational lhs = qmn::q_binomial(x + 1, j, q);
                const Rational rhs =
                    qmn::q_binomial(x, j, q) * qmn::pow_ui(q, j) + qmn::q_binomial(x, j - 1, q);
                REQUIRE(lhs == rhs);
            }
        }
    }
}

TEST_CASE("q_binomial symmetry in j") {
    const Rational q = rat("2/5");
    for (long m = 0; m <= 20; ++m) {
        for (long j = 0; j <= m; ++j) {
            REQUIRE(qmn::q_binomial(m, j, q) == qmn::q_binomial(m, m - j, q));
        }
    }
}

TEST_CASE("q -> 1 limit approaches the ordinary binomial coefficient") {
    const double q = 1.0 - 1e-6;
    for (long m = 1; m <= 10; ++m) {
        for (long j = 0; j <= m; ++j) {
            const double c = binom(m, j);
            CHECK(std::abs(qmn::q_binomial(m, j, q) - c) / c <= 1e-3);
        }
    }
}

TEST_CASE("q_binomial positive across sampled q in (-0.99, 0.99)") {
    for (double q = -0.99; q < 0.99; q += 0.11) {
        for (long m = 0; m <= 20; ++m) {
            for (long j = 0; j <= m; ++j) {
                REQUIRE(qmn::q_binomial(m, j, q) > 0.0);
            }
        }
    }
}

TEST_CASE("rational literal parsing") {
    CHECK(rat("0.25") == rat("1/4"));
    CHECK(rat("-0.5") == rat("-1/2"));
    CHECK(rat("0.05") == rat("1/20"));
    CHECK(rat("10.0") == Rational(10));
    CHECK(rat("007") == Rational(7));
    CHECK(rat("3") == Rational(3));
    CHECK(rat("9/10") == Rational(9, 10));
    CHECK_THROWS_AS(qmn::parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(qmn::parse_rational(""), std::invalid_argument);
}
