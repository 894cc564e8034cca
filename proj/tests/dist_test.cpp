#include <doctest.h>

#include <cmath>

#include "gscale/dist.hpp"
#include "support/oracles.hpp"

using namespace gscale::dist;

TEST_SUITE("dist") {

TEST_CASE("normal cdf basics") {
    auto N = DistSpec::normal();
    CHECK(cdf(N, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(cdf(N, 1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
    CHECK(cdf(N, -40.0) == doctest::Approx(0.0));
    CHECK(cdf(N, 40.0) == doctest::Approx(1.0));
}

TEST_CASE("chi-square cdf against quadrature oracle") {
    auto chi4 = DistSpec::chi_square(4.0);
    // the spec's pinned median check
    double oracle_at_median = oracles::chi2_cdf_quadrature(4.0, 3.35669398);
    CHECK(std::fabs(oracle_at_median - 0.5) < 1e-7);
    CHECK(cdf(chi4, 3.35669398) == doctest::Approx(oracle_at_median).epsilon(1e-10));

    for (double x : {0.05, 0.5, 1.0, 2.0, 4.0, 8.0, 20.0}) {
        double oracle = oracles::chi2_cdf_quadrature(4.0, x);
        CHECK(cdf(chi4, x) == doctest::Approx(oracle).epsilon(1e-10));
    }
    auto chi1 = DistSpec::chi_square(1.0);
    for (double x : {0.1, 1.0, 5.0})
        CHECK(cdf(chi1, x) ==
              doctest::Approx(oracles::chi2_cdf_quadrature(1.0, x)).epsilon(1e-9));
}

TEST_CASE("F cdf at 1 equals the beta transform") {
    auto F = DistSpec::fisher_f(2, 10);
    // I_{d1/(d1+d2)}(1, 5) = 1 - (5/6)^5
    double closed = 1.0 - std::pow(5.0 / 6.0, 5.0);
    CHECK(cdf(F, 1.0) == doctest::Approx(closed).epsilon(1e-12));
    CHECK(oracles::inc_beta_series(1.0, 5.0, 2.0 / 12.0) ==
          doctest::Approx(closed).epsilon(1e-12));
    for (double x : {0.2, 0.7, 1.5, 3.0, 10.0}) {
        double xb = 2.0 * x / (2.0 * x + 10.0);
        CHECK(cdf(F, x) ==
              doctest::Approx(oracles::inc_beta_series(1.0, 5.0, xb)).epsilon(1e-11));
    }
}

TEST_CASE("student t cdf against the beta series oracle") {
    auto t4 = DistSpec::student_t(4.0);
    CHECK(cdf(t4, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
    for (double x : {-3.0, -1.0, -0.2, 0.4, 2.0, 6.0}) {
        double tail = 0.5 * oracles::inc_beta_series(2.0, 0.5, 4.0 / (4.0 + x * x));
        double expect = x > 0 ? 1.0 - tail : tail;
        CHECK(cdf(t4, x) == doctest::Approx(expect).epsilon(1e-11));
    }
}

TEST_CASE("quantile basics") {
    CHECK(std::fabs(quantile(DistSpec::normal(), 0.5)) < 1e-12);
    double phi0 = cdf(DistSpec::normal(), 0.0);
    CHECK(std::fabs(quantile(DistSpec::student_t(4.0), phi0)) < 1e-12);

    // bisection of the quadrature CDF as an independent quantile oracle
    double lo = 0.0, hi = 40.0;
    for (int i = 0; i < 60; ++i) {
        double m = 0.5 * (lo + hi);
        (oracles::chi2_cdf_quadrature(4.0, m) < 0.95 ? lo : hi) = m;
    }
    double oracle_q = 0.5 * (lo + hi);
    double q = quantile(DistSpec::chi_square(4.0), 0.95);
    CHECK(q == doctest::Approx(oracle_q).epsilon(1e-9));
    CHECK(q == doctest::Approx(9.487729).epsilon(1e-5));
}

TEST_CASE("sf_pvalue clamps and round-trips") {
    CHECK(sf_pvalue(DistSpec::chi_square(1.0), 0.0) == doctest::Approx(1.0));
    double tiny = sf_pvalue(DistSpec::fisher_f(1, 10), 1e8);
    CHECK(tiny < 1e-6);
    CHECK(tiny > 0.0);
    double q = quantile(DistSpec::chi_square(4.0), 0.95);
    CHECK(sf_pvalue(DistSpec::chi_square(4.0), q) == doctest::Approx(0.05).epsilon(1e-6));
}

TEST_CASE("round trip over a probability grid") {
    const DistSpec specs[] = {DistSpec::normal(), DistSpec::student_t(4.0),
                              DistSpec::chi_square(4.0), DistSpec::chi_square(1.0),
                              DistSpec::fisher_f(2, 10), DistSpec::fisher_f(1, 398)};
    for (const auto& s : specs) {
        for (double p = 0.001; p < 0.9995; p += 0.0215) {
            double x = quantile(s, p);
            CHECK(std::fabs(cdf(s, x) - p) <= 1e-8);
        }
        // strictly increasing
        double prev = quantile(s, 0.001);
        for (double p = 0.051; p < 1.0 - 1e-3; p += 0.05) {
            double x = quantile(s, p);
            CHECK(x > prev);
            prev = x;
        }
    }
}

TEST_CASE("t with huge df approaches normal") {
    auto t = DistSpec::student_t(1e6);
    auto N = DistSpec::normal();
    for (double x = -4.0; x <= 4.0; x += 0.5)
        CHECK(std::fabs(cdf(t, x) - cdf(N, x)) <= 1e-4);
}

TEST_CASE("chi-square df=2 is Exponential(1/2)") {
    auto chi2 = DistSpec::chi_square(2.0);
    for (double x : {0.01, 0.3, 1.0, 2.5, 7.0, 15.0})
        CHECK(std::fabs(cdf(chi2, x) - (-std::expm1(-0.5 * x))) <= 1e-12);
}

TEST_CASE("chi2_4 tail matches the closed form") {
    auto chi4 = DistSpec::chi_square(4.0);
    for (double x : {0.5, 2.0, 5.0, 11.983, 30.0})
        CHECK(sf(chi4, x) == doctest::Approx(oracles::chi2_4_sf_closed(x)).epsilon(1e-12));
}

TEST_CASE("parameter and domain errors") {
    CHECK_THROWS_AS(DistSpec::chi_square(0.0), gscale::ParameterError);
    CHECK_THROWS_AS(DistSpec::student_t(-1.0), gscale::ParameterError);
    CHECK_THROWS_AS(DistSpec::fisher_f(0, 5), gscale::ParameterError);
    CHECK_THROWS_AS(quantile(DistSpec::normal(), 0.0), gscale::DomainError);
    CHECK_THROWS_AS(quantile(DistSpec::normal(), 1.0), gscale::DomainError);
    CHECK_THROWS_AS(cdf(DistSpec::normal(), std::nan("")), gscale::DomainError);
}

}  // TEST_SUITE
