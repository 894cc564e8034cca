#include <doctest.h>

#include <cmath>

#include "gscale/dist.hpp"
#include "gscale/loctest.hpp"
#include "gscale/rng.hpp"
#include "support/oracles.hpp"

using namespace gscale;
using namespace gscale::loctest;
using regress::ClusterCorrelation;
using regress::DesignMatrix;

TEST_SUITE("loctest") {

TEST_CASE("gl_test without clusters is the plain ANOVA F-test") {
    Rng rng = Rng::seeded(10);
    std::vector<int> g;
    for (int j = 0; j < 3; ++j) g.insert(g.end(), 20, j);
    Eigen::VectorXd y(g.size());
    for (Eigen::Index i = 0; i < y.size(); ++i) y[i] = rng.normal() + 0.4 * g[i];
    SampleData data{y, DesignMatrix::from_groups(g, 3), std::nullopt};
    auto r = gl_test(data);

    // hand ANOVA
    int n = static_cast<int>(y.size());
    double grand = y.mean();
    double ssb = 0.0, ssw = 0.0;
    for (int j = 0; j < 3; ++j) {
        double m = 0.0;
        int c = 0;
        for (int i = 0; i < n; ++i)
            if (g[i] == j) { m += y[i]; ++c; }
        m /= c;
        ssb += c * (m - grand) * (m - grand);
        for (int i = 0; i < n; ++i)
            if (g[i] == j) ssw += (y[i] - m) * (y[i] - m);
    }
    double Fh = (ssb / 2.0) / (ssw / (n - 3));
    CHECK(r.statistic == doctest::Approx(Fh).epsilon(1e-10));
    CHECK(r.df1 == 2);
    CHECK(*r.df2 == n - 3);
}

TEST_CASE("gl_test null calibration at 5%") {
    Rng rng = Rng::seeded(20);
    const int reps = 2000;
    int hits = 0;
    for (int rep = 0; rep < reps; ++rep) {
        std::vector<int> g;
        for (int j = 0; j < 3; ++j) g.insert(g.end(), 50, j);
        Eigen::VectorXd y(g.size());
        for (Eigen::Index i = 0; i < y.size(); ++i) y[i] = rng.normal();
        SampleData data{y, DesignMatrix::from_groups(g, 3), std::nullopt};
        if (gl_test(data).p_value < 0.05) ++hits;
    }
    double alpha = double(hits) / reps;
    CHECK(alpha >= 0.038);
    CHECK(alpha <= 0.066);
}

TEST_CASE("gl_test power with a one-sigma shift") {
    Rng rng = Rng::seeded(30);
    const int reps = 300;
    int hits = 0;
    for (int rep = 0; rep < reps; ++rep) {
        std::vector<int> g;
        for (int j = 0; j < 3; ++j) g.insert(g.end(), 200, j);
        Eigen::VectorXd y(g.size());
        for (Eigen::Index i = 0; i < y.size(); ++i)
            y[i] = rng.normal() + (g[i] == 2 ? 1.0 : 0.0);
        SampleData data{y, DesignMatrix::from_groups(g, 3), std::nullopt};
        if (gl_test(data).p_value < 0.05) ++hits;
    }
    CHECK(double(hits) / reps > 0.99);
}

TEST_CASE("gl_test records rho under clustering") {
    Rng rng = Rng::seeded(40);
    const int pairs = 400;
    std::vector<int> ids(2 * pairs), g(2 * pairs);
    Eigen::VectorXd y(2 * pairs);
    for (int p = 0; p < pairs; ++p) {
        auto w = rng.bvn_pair(0.55);
        for (int m = 0; m < 2; ++m) {
            ids[2 * p + m] = p;
            g[2 * p + m] = p % 2;
            y[2 * p + m] = w[m];
        }
    }
    SampleData data{y, DesignMatrix::from_groups(g, 2), ClusterCorrelation(ids)};
    auto r = gl_test(data);
    REQUIRE(r.rho_hat.has_value());
    CHECK(*r.rho_hat > 0.4);
    CHECK(*r.rho_hat < 0.7);
}

TEST_CASE("gjls combines the component p-values") {
    Rng rng = Rng::seeded(50);
    std::vector<int> g;
    for (int j = 0; j < 2; ++j) g.insert(g.end(), 30, j);
    Eigen::VectorXd y(g.size());
    for (Eigen::Index i = 0; i < y.size(); ++i) y[i] = rng.normal();
    SampleData data{y, DesignMatrix::from_groups(g, 2), std::nullopt};

    auto j = gjls_test(data, Stage1::LAD);
    CHECK(j.p_location == gl_test(data).p_value);
    CHECK(j.p_scale == scaletest::gs_test(data, Stage1::LAD).p_value);
    CHECK(j.w_f ==
          doctest::Approx(-2.0 * (std::log(j.p_location) + std::log(j.p_scale)))
              .epsilon(1e-14));
    CHECK(j.p_joint ==
          doctest::Approx(oracles::chi2_4_sf_closed(j.w_f)).epsilon(1e-10));
    CHECK(j.w_f >= 0.0);
    CHECK(!j.boundary);
}

TEST_CASE("Fisher statistic frozen value at p = 0.05, 0.05") {
    double wf = -2.0 * (std::log(0.05) + std::log(0.05));
    CHECK(wf == doctest::Approx(11.98293).epsilon(1e-6));
    CHECK(dist::sf_pvalue(dist::DistSpec::chi_square(4.0), wf) ==
          doctest::Approx(0.017459).epsilon(1e-4));
    CHECK(oracles::chi2_4_sf_closed(wf) == doctest::Approx(0.017459).epsilon(1e-4));
}

TEST_CASE("W_F is monotone decreasing in each component p") {
    for (double p1 : {0.9, 0.5, 0.1}) {
        double w_hi = -2.0 * (std::log(p1) + std::log(0.2));
        double w_lo = -2.0 * (std::log(p1) + std::log(0.4));
        CHECK(w_hi > w_lo);
    }
}

}  // TEST_SUITE
