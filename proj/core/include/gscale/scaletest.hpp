#ifndef GSCALE_SCALETEST_HPP
#define GSCALE_SCALETEST_HPP

#include <optional>
#include <string>

#include "gscale/regress.hpp"

namespace gscale::scaletest {

enum class Stage1 { OLS, LAD };

inline const char* stage1_name(Stage1 m) { return m == Stage1::OLS ? "OLS" : "LAD"; }

// One analysis unit: outcome, design (indicators or probabilities), optional
// cluster structure.
struct SampleData {
    Eigen::VectorXd y;
    regress::DesignMatrix design;
    std::optional<regress::ClusterCorrelation> clusters;

    int k() const { return design.n_groups(); }
    Eigen::Index n() const { return y.size(); }
    void validate() const;
};

struct AbsResiduals {
    Eigen::VectorXd d;
    Stage1 stage1_method = Stage1::OLS;
};

enum class Reference { F, ChiSquareScaled };

struct TestResult {
    double statistic = 0.0;
    int df1 = 0;
    std::optional<int> df2;
    double p_value = 1.0;
    std::string method;
    std::optional<double> rho_hat;
    Reference reference = Reference::F;
    bool degenerate = false;  // all-zero d: no variance information
};

// Stage 1: center y by the chosen fit (identity working covariance even when
// clusters are present), take absolute residuals.
AbsResiduals abs_residuals(const SampleData& data, Stage1 method);

// Classical k-group variance test: ANOVA F on the absolute residuals,
// reference F(k-1, n-k). Requires an indicator design and, unless
// ignore_clusters is set, independent observations.
TestResult levene_classic(const SampleData& data, Stage1 method,
                          bool ignore_clusters = false);

// Generalized scale test. Whitens the stage-2 regression by the Cholesky
// factor of the profiled compound-symmetric correlation, then forms the
// F-statistic from the full fit against the fit on the transformed intercept
// alone. With no clusters and an indicator design this reduces to
// levene_classic.
TestResult gs_test(const SampleData& data, Stage1 method);

enum class TwReference { FStat, ChiSquare };

// Cluster-sandwich Wald test on the stage-2 coefficients (the twin test for
// k=2; the joint Wald form extends it to k>2). Default reference
// F(k-1, G-1) with G the number of clusters; ChiSquare uses chi2_{k-1}.
TestResult tw_test(const SampleData& data, Stage1 method,
                   TwReference ref = TwReference::FStat);

}  // namespace gscale::scaletest

#endif
