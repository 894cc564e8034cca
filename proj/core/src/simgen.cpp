#include "gscale/simgen.hpp"

#include <algorithm>
#include <cmath>

#include "gscale/dist.hpp"

namespace gscale::simgen {

using regress::ClusterCorrelation;
using regress::DesignMatrix;
using scaletest::SampleData;

const char* margin_name(Margin m) {
    switch (m) {
        case Margin::Gaussian: return "gaussian";
        case Margin::T4: return "t4";
        case Margin::ChiSq4: return "chisq4";
    }
    return "?";
}

Margin margin_from_name(const std::string& s) {
    if (s == "gaussian" || s == "normal") return Margin::Gaussian;
    if (s == "t4") return Margin::T4;
    if (s == "chisq4" || s == "chi4") return Margin::ChiSq4;
    throw ConfigError("unknown margin '" + s + "' (gaussian|t4|chisq4)");
}

double transform_margin(Margin m, double w) {
    switch (m) {
        case Margin::Gaussian:
            return w;
        case Margin::T4:
            return dist::quantile(dist::DistSpec::student_t(4.0),
                                  dist::cdf(dist::DistSpec::normal(), w));
        case Margin::ChiSq4:
            return dist::quantile(dist::DistSpec::chi_square(4.0),
                                  dist::cdf(dist::DistSpec::normal(), w));
    }
    return w;
}

void Model1Config::validate() const {
    if (n1 < 0 || n2 < 0 || n1 + n2 < 1)
        throw ConfigError("model 1 needs at least one pair");
    if (!(sigma[0] > 0.0 && sigma[1] > 0.0))
        throw ConfigError("model 1 sigmas must be positive");
    if (!(rho1 > -1.0 && rho1 < 1.0 && rho2 > -1.0 && rho2 < 1.0))
        throw ConfigError("model 1 correlations must lie in (-1,1)");
}

void Model2Config::validate() const {
    if (n_pairs < 1) throw ConfigError("model 2 needs at least one pair");
    if (!(maf > 0.0 && maf <= 0.5)) throw ConfigError("maf must lie in (0, 0.5]");
    if (!(rho > -1.0 && rho < 1.0)) throw ConfigError("rho must lie in (-1,1)");
    for (double s : sigma)
        if (!(s > 0.0)) throw ConfigError("model 2 sigmas must be positive");
    if (!(uncertainty_a >= 0.5 && uncertainty_a <= 1.0))
        throw ConfigError("uncertainty a must lie in [0.5, 1]");
}

SimulatedSample gen_model1(const Model1Config& cfg) {
    cfg.validate();
    Rng rng = Rng::seeded(cfg.seed);

    const int n = 2 * (cfg.n1 + cfg.n2);
    Eigen::VectorXd y(n);
    std::vector<int> group(n);
    std::vector<int> cluster(n);

    int row = 0, cid = 0;
    for (int g = 0; g < 2; ++g) {
        const int npair = g == 0 ? cfg.n1 : cfg.n2;
        const double rho = g == 0 ? cfg.rho1 : cfg.rho2;
        const double sig = cfg.sigma[g];
        for (int p = 0; p < npair; ++p, ++cid) {
            auto w = rng.bvn_pair(rho);
            for (int m = 0; m < 2; ++m, ++row) {
                y[row] = sig * transform_margin(cfg.margin, w[m]);
                group[row] = g;
                cluster[row] = cid;
            }
        }
    }

    SimulatedSample out;
    out.cluster_id = cluster;
    out.sample = SampleData{std::move(y), DesignMatrix::from_groups(group, 2),
                            ClusterCorrelation(cluster)};
    return out;
}

std::vector<GenotypePair> gen_sib_genotypes(int n_pairs, double q, Rng& rng) {
    if (!(q > 0.0 && q <= 0.5)) throw ConfigError("maf must lie in (0, 0.5]");
    std::vector<GenotypePair> out(n_pairs);
    for (auto& pr : out) {
        const double u = rng.uniform01();
        const int d = u < 0.25 ? 0 : (u < 0.75 ? 1 : 2);
        auto allele = [&] { return rng.bernoulli(q) ? 1 : 0; };
        if (d == 2) {
            int g = allele() + allele();
            pr.g1 = pr.g2 = g;
        } else if (d == 0) {
            pr.g1 = allele() + allele();
            pr.g2 = allele() + allele();
        } else {
            int shared = allele();
            pr.g1 = shared + allele();
            pr.g2 = shared + allele();
        }
    }
    return out;
}

MaskedGenotypes mask_genotypes(const std::vector<int>& true_genotypes, double a,
                               Rng& rng) {
    if (!(a >= 0.5 && a <= 1.0)) throw ConfigError("uncertainty a must lie in [0.5, 1]");
    const int n = static_cast<int>(true_genotypes.size());
    MaskedGenotypes out;
    out.probabilities.resize(n, 3);
    out.best_guess.resize(n);
    for (int i = 0; i < n; ++i) {
        const int g = true_genotypes[i];
        if (g < 0 || g > 2) throw ParameterError("genotype out of range");
        if (a == 1.0) {
            out.probabilities.row(i).setZero();
            out.probabilities(i, g) = 1.0;
            out.best_guess[i] = g;
            continue;
        }
        std::array<double, 3> conc{0.5 * (1.0 - a), 0.5 * (1.0 - a), 0.5 * (1.0 - a)};
        conc[g] = a;
        auto p = rng.dirichlet3(conc);
        int best = 0;
        for (int j = 1; j < 3; ++j)
            if (p[j] > p[best]) best = j;
        out.probabilities(i, 0) = p[0];
        out.probabilities(i, 1) = p[1];
        out.probabilities(i, 2) = p[2];
        out.best_guess[i] = best;
    }
    return out;
}

SimulatedSample gen_model2(const Model2Config& cfg) {
    cfg.validate();
    Rng rng = Rng::seeded(cfg.seed);

    // RNG draw order: genotypes, then outcomes, then masking.
    auto pairs = gen_sib_genotypes(cfg.n_pairs, cfg.maf, rng);
    const int n = 2 * cfg.n_pairs;

    std::vector<int> genotype(n);
    std::vector<int> cluster(n);
    for (int p = 0; p < cfg.n_pairs; ++p) {
        genotype[2 * p] = pairs[p].g1;
        genotype[2 * p + 1] = pairs[p].g2;
        cluster[2 * p] = cluster[2 * p + 1] = p;
    }

    Eigen::VectorXd y(n);
    for (int p = 0; p < cfg.n_pairs; ++p) {
        auto w = rng.bvn_pair(cfg.rho);
        for (int m = 0; m < 2; ++m) {
            const int i = 2 * p + m;
            y[i] = cfg.sigma[genotype[i]] * transform_margin(cfg.margin, w[m]);
        }
    }

    auto masked = mask_genotypes(genotype, cfg.uncertainty_a, rng);

    SimulatedSample out;
    out.cluster_id = cluster;
    out.true_genotypes = genotype;
    out.probabilities = masked.probabilities;
    out.best_guess = masked.best_guess;
    out.best_guess_design = design_from_genotypes(masked.best_guess);
    out.sample = SampleData{std::move(y), design_from_probabilities(masked.probabilities),
                            ClusterCorrelation(cluster)};
    return out;
}

DesignMatrix design_from_genotypes(const std::vector<int>& genotypes) {
    std::array<bool, 3> seen{false, false, false};
    for (int g : genotypes) {
        if (g < 0 || g > 2) throw ParameterError("genotype out of range");
        seen[g] = true;
    }
    std::array<int, 3> code{-1, -1, -1};
    int k = 0;
    for (int c = 0; c < 3; ++c)
        if (seen[c]) code[c] = k++;
    if (k < 2)
        throw InsufficientGroupError("monomorphic variant: fewer than two genotype groups");
    std::vector<int> recoded(genotypes.size());
    for (std::size_t i = 0; i < genotypes.size(); ++i) recoded[i] = code[genotypes[i]];
    return DesignMatrix::from_groups(recoded, k);
}

DesignMatrix design_from_probabilities(const Eigen::MatrixXd& probs) {
    if (probs.cols() != 3) throw ParameterError("expected three probability columns");
    // keep columns 1 and 2 unless identically zero
    std::vector<int> keep;
    for (int j = 1; j < 3; ++j)
        if ((probs.col(j).array() != 0.0).any()) keep.push_back(j);
    if (keep.empty())
        throw InsufficientGroupError("monomorphic variant: fewer than two genotype groups");
    const bool col0_present = (probs.col(0).array() != 0.0).any();
    if (!col0_present && keep.size() == 1)
        throw InsufficientGroupError("monomorphic variant: fewer than two genotype groups");

    Eigen::MatrixXd X(probs.rows(), 1 + keep.size());
    std::vector<std::string> labels{"(intercept)"};
    X.col(0).setOnes();
    for (std::size_t j = 0; j < keep.size(); ++j) {
        X.col(1 + j) = probs.col(keep[j]);
        labels.push_back("p" + std::to_string(keep[j]));
    }
    if (!col0_present) {
        // category 0 absent: use the remaining categories with the first as
        // the reference column to keep the design full rank
        Eigen::MatrixXd X2(probs.rows(), keep.size());
        std::vector<std::string> l2{"(intercept)"};
        X2.col(0).setOnes();
        for (std::size_t j = 1; j < keep.size(); ++j) {
            X2.col(j) = probs.col(keep[j]);
            l2.push_back("p" + std::to_string(keep[j]));
        }
        return DesignMatrix::from_raw(std::move(X2), std::move(l2));
    }
    return DesignMatrix::from_raw(std::move(X), std::move(labels));
}

Eigen::Matrix3d sib_pair_joint_distribution(double q) {
    const double p = 1.0 - q;
    Eigen::Vector3d hwe(p * p, 2.0 * p * q, q * q);
    Eigen::Matrix3d joint = Eigen::Matrix3d::Zero();

    // D=2: identical genotypes
    for (int g = 0; g < 3; ++g) joint(g, g) += 0.25 * hwe[g];
    // D=0: independent
    for (int g1 = 0; g1 < 3; ++g1)
        for (int g2 = 0; g2 < 3; ++g2) joint(g1, g2) += 0.25 * hwe[g1] * hwe[g2];
    // D=1: one shared allele plus one own allele each
    auto bern = [&](int b) { return b == 1 ? q : p; };
    for (int s = 0; s < 2; ++s)
        for (int a1 = 0; a1 < 2; ++a1)
            for (int a2 = 0; a2 < 2; ++a2)
                joint(s + a1, s + a2) += 0.5 * bern(s) * bern(a1) * bern(a2);
    return joint;
}

}  // namespace gscale::simgen
