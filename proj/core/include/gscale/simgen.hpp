#ifndef GSCALE_SIMGEN_HPP
#define GSCALE_SIMGEN_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "gscale/rng.hpp"
#include "gscale/scaletest.hpp"

namespace gscale::simgen {

enum class Margin { Gaussian, T4, ChiSq4 };

const char* margin_name(Margin m);
Margin margin_from_name(const std::string& s);

// Marginal transform g: identity, or inverse-CDF of t4 / chi2_4 applied to
// the normal CDF, so correlated normals acquire the requested margin.
double transform_margin(Margin m, double w);

// Twin-pair model: n1 MZ pairs (group 0, within-pair correlation rho1) and
// n2 DZ pairs (group 1, rho2); y = sigma_group * g(w).
struct Model1Config {
    int n1 = 0;
    int n2 = 0;
    double rho1 = 0.75;
    double rho2 = 0.5;
    std::array<double, 2> sigma{1.0, 1.0};
    Margin margin = Margin::Gaussian;
    std::uint64_t seed = 0;
    void validate() const;
};

// Sib-pair genotype model: IBD-correlated genotypes at minor allele
// frequency maf, outcomes scaled by the true genotype's sigma, group
// probabilities masked by a Dirichlet centered on the truth.
struct Model2Config {
    int n_pairs = 0;
    double maf = 0.2;
    double rho = 0.5;
    std::array<double, 3> sigma{1.0, 1.0, 1.0};
    Margin margin = Margin::Gaussian;
    double uncertainty_a = 1.0;  // 1 = exact genotypes
    std::uint64_t seed = 0;
    void validate() const;
};

struct SimulatedSample {
    scaletest::SampleData sample;  // probabilistic design for model 2
    std::optional<regress::DesignMatrix> best_guess_design;  // model 2 only
    std::vector<int> true_genotypes;                         // model 2 only
    std::vector<int> cluster_id;
    Eigen::MatrixXd probabilities;  // n x 3 masked rows (model 2)
    std::vector<int> best_guess;    // argmax categories (model 2)
};

SimulatedSample gen_model1(const Model1Config& cfg);

struct GenotypePair {
    int g1 = 0;
    int g2 = 0;
};

// Genotypes for sibling pairs: IBD count D ~ Multinomial(.25,.5,.25), then
// shared/own alleles Bernoulli(q); marginally Hardy-Weinberg.
std::vector<GenotypePair> gen_sib_genotypes(int n_pairs, double q, Rng& rng);

struct MaskedGenotypes {
    Eigen::MatrixXd probabilities;  // n x 3, rows sum to 1
    std::vector<int> best_guess;    // argmax, lowest index on ties
};

// Dirichlet masking with concentration a on the true category and (1-a)/2
// on the other two (total mass 1). a=1 returns exact one-hot rows.
MaskedGenotypes mask_genotypes(const std::vector<int>& true_genotypes, double a,
                               Rng& rng);

SimulatedSample gen_model2(const Model2Config& cfg);

// Indicator design over the categories actually observed (absent categories
// are dropped so the design keeps full rank). Throws if fewer than two
// categories remain.
regress::DesignMatrix design_from_genotypes(const std::vector<int>& genotypes);

// Probabilistic design (1, p1, p2); falls back to dropping a column when a
// probability column is identically zero (a=1 masking with an absent
// category).
regress::DesignMatrix design_from_probabilities(const Eigen::MatrixXd& probs);

// Analytic joint distribution of a sib pair's genotypes; 3x3, sums to 1.
// Brute-force sum over the IBD state of P(D) * P(g1,g2 | D).
Eigen::Matrix3d sib_pair_joint_distribution(double q);

}  // namespace gscale::simgen

#endif
