#include "gscale/scaletest.hpp"

#include <cmath>
#include <limits>

#include "gscale/dist.hpp"

namespace gscale::scaletest {

using regress::CholFactor;
using regress::DesignMatrix;
using regress::FitResult;

namespace {

// F-statistic of the full model against the intercept-only model on
// (possibly whitened) data. ones = first design column after whitening.
struct Ftest {
    double statistic;
    double p_value;
    bool degenerate;
};

Ftest stage2_f(const Eigen::MatrixXd& Xs, const Eigen::VectorXd& ds,
               const std::vector<std::string>& labels) {
    const auto n = Xs.rows();
    const auto k = Xs.cols();
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Xs);
    if (qr.rank() < k) {
        int bad = qr.colsPermutation().indices()[k - 1];
        throw SingularDesignError("stage-2 design is rank deficient (column " +
                                      labels[bad] + ")",
                                  labels[bad]);
    }
    Eigen::VectorXd coef = qr.solve(ds);
    double rss_full = (ds - Xs * coef).squaredNorm();

    const Eigen::VectorXd ones = Xs.col(0);
    double denom = ones.squaredNorm();
    double alpha = ones.dot(ds) / denom;
    double rss_restricted = (ds - alpha * ones).squaredNorm();

    Ftest out{0.0, 1.0, false};
    const double df1 = static_cast<double>(k - 1);
    const double df2 = static_cast<double>(n - k);
    if (rss_full <= 0.0) {
        if (rss_restricted <= rss_full + 1e-300) {
            out.degenerate = true;  // no variance information at all
            return out;
        }
        out.statistic = std::numeric_limits<double>::infinity();
        out.p_value = dist::p_value_floor;
        return out;
    }
    out.statistic = ((rss_restricted - rss_full) / df1) / (rss_full / df2);
    if (out.statistic < 0.0) out.statistic = 0.0;  // roundoff guard
    out.p_value = dist::sf_pvalue(dist::DistSpec::fisher_f(df1, df2), out.statistic);
    return out;
}

// no variance information: |residuals| negligible relative to the outcome
bool degenerate_d(const Eigen::VectorXd& d, const Eigen::VectorXd& y) {
    return d.maxCoeff() <= 1e-12 * (1.0 + y.cwiseAbs().maxCoeff());
}

bool is_indicator_design(const DesignMatrix& d) {
    for (Eigen::Index i = 0; i < d.X.rows(); ++i)
        for (Eigen::Index j = 1; j < d.X.cols(); ++j) {
            double v = d.X(i, j);
            if (v != 0.0 && v != 1.0) return false;
        }
    return true;
}

}  // namespace

void SampleData::validate() const {
    if (y.size() != design.rows()) throw ParameterError("outcome/design length mismatch");
    if (design.n_groups() < 2) throw ParameterError("need at least two groups");
    if (clusters && clusters->n() != y.size())
        throw ParameterError("cluster labels must cover all observations");
}

AbsResiduals abs_residuals(const SampleData& data, Stage1 method) {
    data.validate();
    FitResult fit = method == Stage1::OLS ? regress::fit_ols(data.design, data.y)
                                          : regress::fit_lad(data.design, data.y);
    AbsResiduals out;
    out.stage1_method = method;
    out.d = fit.residuals.cwiseAbs();
    return out;
}

TestResult levene_classic(const SampleData& data, Stage1 method, bool ignore_clusters) {
    data.validate();
    if (data.clusters && !ignore_clusters)
        throw ParameterError(
            "levene_classic assumes independent observations; pass "
            "ignore_clusters=true to force it");
    if (!is_indicator_design(data.design))
        throw ParameterError("levene_classic requires an indicator design");

    // every group needs at least two members
    const auto n = data.n();
    const int k = data.k();
    std::vector<int> counts(k, 0);
    for (Eigen::Index i = 0; i < n; ++i) {
        int g = 0;
        for (int j = 1; j < k; ++j)
            if (data.design.X(i, j) == 1.0) g = j;
        ++counts[g];
    }
    for (int j = 0; j < k; ++j)
        if (counts[j] < 2)
            throw InsufficientGroupError("group " + std::to_string(j) +
                                         " has fewer than 2 observations");

    AbsResiduals ar = abs_residuals(data, method);

    TestResult r;
    r.method = std::string("Levene_") + stage1_name(method);
    r.df1 = k - 1;
    r.df2 = static_cast<int>(n) - k;
    r.reference = Reference::F;
    if (degenerate_d(ar.d, data.y)) {
        r.degenerate = true;
        r.statistic = 0.0;
        r.p_value = 1.0;
        return r;
    }
    auto ft = stage2_f(data.design.X, ar.d, data.design.column_labels);
    r.statistic = ft.statistic;
    r.p_value = ft.degenerate ? 1.0 : ft.p_value;
    r.degenerate = ft.degenerate;
    return r;
}

TestResult gs_test(const SampleData& data, Stage1 method) {
    data.validate();
    const auto n = data.n();
    const int k = data.k();

    AbsResiduals ar = abs_residuals(data, method);

    TestResult r;
    r.method = std::string("gS_") + stage1_name(method);
    r.df1 = k - 1;
    r.df2 = static_cast<int>(n) - k;
    r.reference = Reference::F;

    if (degenerate_d(ar.d, data.y)) {
        r.degenerate = true;
        r.statistic = 0.0;
        r.p_value = 1.0;
        return r;
    }

    CholFactor C = CholFactor::identity(n);
    if (data.clusters) {
        auto prof = regress::profile_rho(data.design, ar.d, *data.clusters);
        r.rho_hat = prof.rho_hat;
        C = CholFactor::compound_symmetric(*data.clusters, prof.rho_hat);
    }

    Eigen::MatrixXd Xs = C.solve_cols(data.design.X);
    Eigen::VectorXd ds = C.solve(ar.d);
    auto ft = stage2_f(Xs, ds, data.design.column_labels);
    r.statistic = ft.statistic;
    r.p_value = ft.degenerate ? 1.0 : ft.p_value;
    r.degenerate = ft.degenerate;
    return r;
}

TestResult tw_test(const SampleData& data, Stage1 method, TwReference ref) {
    data.validate();
    if (!data.clusters)
        throw ParameterError("tw_test requires cluster labels");
    const int k = data.k();
    const int G = static_cast<int>(data.clusters->n_clusters());
    if (G < k)
        throw DegenerateVarianceError("fewer clusters than groups (" +
                                      std::to_string(G) + " < " + std::to_string(k) +
                                      ")");

    AbsResiduals ar = abs_residuals(data, method);

    TestResult r;
    r.method = std::string("TW_") + stage1_name(method);
    r.df1 = k - 1;
    r.reference = ref == TwReference::FStat ? Reference::F : Reference::ChiSquareScaled;
    if (ref == TwReference::FStat) r.df2 = G - 1;

    if (degenerate_d(ar.d, data.y)) {
        r.degenerate = true;
        r.statistic = 0.0;
        r.p_value = 1.0;
        return r;
    }

    FitResult stage2 = regress::fit_ols(data.design, ar.d);
    Eigen::MatrixXd V = regress::sandwich_cov(data.design, stage2, data.clusters->ids());

    Eigen::VectorXd gamma = stage2.coefficients.tail(k - 1);
    Eigen::MatrixXd Vg = V.bottomRightCorner(k - 1, k - 1);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(Vg);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
        throw DegenerateVarianceError("sandwich covariance of the group "
                                      "coefficients is not positive definite");
    double wald = gamma.dot(ldlt.solve(gamma));
    r.statistic = wald / double(k - 1);

    if (ref == TwReference::FStat) {
        r.p_value = dist::sf_pvalue(dist::DistSpec::fisher_f(k - 1, G - 1), r.statistic);
    } else {
        r.p_value = dist::sf_pvalue(dist::DistSpec::chi_square(k - 1), wald);
    }
    return r;
}

}  // namespace gscale::scaletest
