#include <doctest.h>

#include <cmath>

#include "gscale/simgen.hpp"
#include "support/oracles.hpp"

using namespace gscale;
using namespace gscale::simgen;

TEST_SUITE("simgen") {

TEST_CASE("same seed gives bit-identical samples") {
    Model1Config cfg;
    cfg.n1 = cfg.n2 = 50;
    cfg.margin = Margin::T4;
    cfg.seed = 99;
    auto a = gen_model1(cfg);
    auto b = gen_model1(cfg);
    CHECK((a.sample.y - b.sample.y).cwiseAbs().maxCoeff() == 0.0);
    cfg.seed = 100;
    auto c = gen_model1(cfg);
    CHECK((a.sample.y - c.sample.y).cwiseAbs().maxCoeff() > 0.0);

    Model2Config m2;
    m2.n_pairs = 100;
    m2.maf = 0.3;
    m2.uncertainty_a = 0.7;
    m2.seed = 7;
    auto d = gen_model2(m2);
    auto e = gen_model2(m2);
    CHECK((d.sample.y - e.sample.y).cwiseAbs().maxCoeff() == 0.0);
    CHECK((d.probabilities - e.probabilities).cwiseAbs().maxCoeff() == 0.0);
    CHECK(d.true_genotypes == e.true_genotypes);
}

TEST_CASE("model 1 moments and within-pair correlation") {
    Model1Config cfg;
    cfg.n1 = cfg.n2 = 2000;
    cfg.seed = 123;
    auto sim = gen_model1(cfg);

    std::vector<double> g0, g1, first, second;
    const auto& X = sim.sample.design.X;
    for (int p = 0; p < 2000; ++p) {  // MZ pairs come first
        first.push_back(sim.sample.y[2 * p]);
        second.push_back(sim.sample.y[2 * p + 1]);
    }
    for (Eigen::Index i = 0; i < sim.sample.n(); ++i)
        (X(i, 1) == 0.0 ? g0 : g1).push_back(sim.sample.y[i]);

    CHECK(oracles::sample_variance(g0) > 0.9);
    CHECK(oracles::sample_variance(g0) < 1.1);
    CHECK(oracles::sample_variance(g1) > 0.9);
    CHECK(oracles::sample_variance(g1) < 1.1);
    double r = oracles::pearson_corr(first, second);
    CHECK(std::fabs(r - 0.75) < 0.03);
}

TEST_CASE("chi-square margin has the right skewness") {
    Model1Config cfg;
    cfg.n1 = cfg.n2 = 2000;  // n = 8000
    cfg.margin = Margin::ChiSq4;
    cfg.seed = 321;
    auto sim = gen_model1(cfg);
    std::vector<double> all(sim.sample.y.data(), sim.sample.y.data() + sim.sample.n());
    CHECK(std::fabs(oracles::sample_skewness(all) - std::sqrt(2.0)) < 0.2);
}

TEST_CASE("sib genotypes match Hardy-Weinberg margins and sib correlation") {
    Rng rng = Rng::seeded(55);
    const double q = 0.2;
    auto pairs = gen_sib_genotypes(5000, q, rng);
    std::array<int, 3> count{0, 0, 0};
    std::vector<double> g1, g2;
    for (const auto& pr : pairs) {
        ++count[pr.g1];
        ++count[pr.g2];
        g1.push_back(pr.g1);
        g2.push_back(pr.g2);
    }
    const double n = 10000.0;
    CHECK(std::fabs(count[0] / n - 0.64) < 0.02);
    CHECK(std::fabs(count[1] / n - 0.32) < 0.02);
    CHECK(std::fabs(count[2] / n - 0.04) < 0.02);
    CHECK(std::fabs(oracles::pearson_corr(g1, g2) - 0.5) < 0.05);
}

TEST_CASE("rare homozygotes are rare") {
    Rng rng = Rng::seeded(66);
    auto pairs = gen_sib_genotypes(5000, 0.01, rng);
    int hom = 0;
    for (const auto& pr : pairs) hom += (pr.g1 == 2) + (pr.g2 == 2);
    CHECK(hom <= 10);
}

TEST_CASE("analytic joint distribution sums to 1 and is symmetric") {
    for (double q : {0.1, 0.2, 0.5}) {
        auto J = sib_pair_joint_distribution(q);
        CHECK(J.sum() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK((J - J.transpose()).cwiseAbs().maxCoeff() < 1e-15);
        // marginals are HWE
        double p = 1.0 - q;
        Eigen::Vector3d marg = J.rowwise().sum();
        CHECK(marg[0] == doctest::Approx(p * p).epsilon(1e-13));
        CHECK(marg[1] == doctest::Approx(2 * p * q).epsilon(1e-13));
        CHECK(marg[2] == doctest::Approx(q * q).epsilon(1e-13));
    }
}

TEST_CASE("sampled joint table fits the enumerated distribution") {
    Rng rng = Rng::seeded(77);
    const double q = 0.2;
    const int n_pairs = 5000;
    auto pairs = gen_sib_genotypes(n_pairs, q, rng);
    Eigen::Matrix3d obs = Eigen::Matrix3d::Zero();
    for (const auto& pr : pairs) obs(pr.g1, pr.g2) += 1.0;
    auto J = sib_pair_joint_distribution(q);
    double stat = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double expect = n_pairs * J(i, j);
            stat += (obs(i, j) - expect) * (obs(i, j) - expect) / expect;
        }
    CHECK(stat < 20.0902);  // chi2_8 at the 1% level
}

TEST_CASE("masking at a=1 is exact one-hot") {
    Rng rng = Rng::seeded(88);
    std::vector<int> truth{0, 1, 2, 1, 0, 2, 2, 1};
    auto m = mask_genotypes(truth, 1.0, rng);
    for (int i = 0; i < 8; ++i) {
        CHECK(m.probabilities(i, truth[i]) == 1.0);
        CHECK(m.probabilities.row(i).sum() == 1.0);
        CHECK(m.best_guess[i] == truth[i]);
    }
}

TEST_CASE("masking mean concentration and best-guess accuracy") {
    Rng rng = Rng::seeded(99);
    std::vector<int> truth(5000);
    for (int i = 0; i < 5000; ++i) truth[i] = i % 3;
    auto m7 = mask_genotypes(truth, 0.7, rng);
    double mean_true = 0.0;
    for (int i = 0; i < 5000; ++i) mean_true += m7.probabilities(i, truth[i]);
    mean_true /= 5000.0;
    CHECK(std::fabs(mean_true - 0.7) < 0.02);

    auto m5 = mask_genotypes(truth, 0.5, rng);
    int correct = 0;
    for (int i = 0; i < 5000; ++i) correct += m5.best_guess[i] == truth[i];
    CHECK(std::fabs(correct / 5000.0 - 0.5) < 0.05);
}

TEST_CASE("probability rows sum to one and stay in range") {
    Model2Config cfg;
    cfg.n_pairs = 500;
    cfg.maf = 0.25;
    cfg.uncertainty_a = 0.6;
    cfg.seed = 11;
    auto sim = gen_model2(cfg);
    for (Eigen::Index i = 0; i < sim.probabilities.rows(); ++i) {
        CHECK(std::fabs(sim.probabilities.row(i).sum() - 1.0) < 1e-12);
        for (int j = 0; j < 3; ++j) {
            CHECK(sim.probabilities(i, j) >= 0.0);
            CHECK(sim.probabilities(i, j) <= 1.0);
        }
    }
    // cluster sizes are pairs
    CHECK(sim.sample.clusters->max_cluster_size() == 2);
    CHECK(sim.sample.clusters->n_clusters() == 500);
}

TEST_CASE("per-group variance ratios follow sigma under the gaussian margin") {
    Model2Config cfg;
    cfg.n_pairs = 4000;  // n = 8000
    cfg.maf = 0.3;
    cfg.sigma = {1.0, 1.3, 1.7};
    cfg.seed = 22;
    auto sim = gen_model2(cfg);
    std::array<std::vector<double>, 3> by_group;
    for (Eigen::Index i = 0; i < sim.sample.n(); ++i)
        by_group[sim.true_genotypes[i]].push_back(sim.sample.y[i]);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            double ratio = oracles::sample_variance(by_group[a]) /
                           oracles::sample_variance(by_group[b]);
            double expect = (cfg.sigma[a] / cfg.sigma[b]) * (cfg.sigma[a] / cfg.sigma[b]);
            CHECK(std::fabs(ratio / expect - 1.0) < 0.10);
        }
}

TEST_CASE("design builders drop absent categories") {
    std::vector<int> geno{0, 0, 1, 1, 0, 1};  // no genotype 2
    auto d = design_from_genotypes(geno);
    CHECK(d.cols() == 2);
    CHECK_THROWS_AS(design_from_genotypes(std::vector<int>(6, 1)),
                    InsufficientGroupError);
}

TEST_CASE("config validation") {
    Model1Config bad1;
    bad1.n1 = bad1.n2 = 0;
    CHECK_THROWS_AS(gen_model1(bad1), ConfigError);
    Model2Config bad2;
    bad2.n_pairs = 10;
    bad2.maf = 0.7;
    CHECK_THROWS_AS(gen_model2(bad2), ConfigError);
    Model2Config bad3;
    bad3.n_pairs = 10;
    bad3.uncertainty_a = 0.2;
    CHECK_THROWS_AS(gen_model2(bad3), ConfigError);
}

}  // TEST_SUITE
