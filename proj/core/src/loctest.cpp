#include "gscale/loctest.hpp"

#include <cmath>
#include <limits>

#include "gscale/dist.hpp"

namespace gscale::loctest {

using regress::CholFactor;
using scaletest::Reference;

TestResult gl_test(const SampleData& data) {
    data.validate();
    const auto n = data.n();
    const int k = data.k();

    TestResult r;
    r.method = "gL";
    r.df1 = k - 1;
    r.df2 = static_cast<int>(n) - k;
    r.reference = Reference::F;

    CholFactor C = CholFactor::identity(n);
    if (data.clusters) {
        auto prof = regress::profile_rho(data.design, data.y, *data.clusters);
        r.rho_hat = prof.rho_hat;
        C = CholFactor::compound_symmetric(*data.clusters, prof.rho_hat);
    }

    Eigen::MatrixXd Xs = C.solve_cols(data.design.X);
    Eigen::VectorXd ys = C.solve(data.y);

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Xs);
    if (qr.rank() < k) {
        int bad = qr.colsPermutation().indices()[k - 1];
        throw SingularDesignError("design is rank deficient (column " +
                                      data.design.column_labels[bad] + ")",
                                  data.design.column_labels[bad]);
    }
    Eigen::VectorXd coef = qr.solve(ys);
    double rss_full = (ys - Xs * coef).squaredNorm();
    const Eigen::VectorXd ones = Xs.col(0);
    double alpha = ones.dot(ys) / ones.squaredNorm();
    double rss_restricted = (ys - alpha * ones).squaredNorm();

    const double df1 = static_cast<double>(k - 1);
    const double df2 = static_cast<double>(n - k);
    if (rss_full <= 0.0) {
        if (rss_restricted <= rss_full + 1e-300) {
            r.degenerate = true;
            r.statistic = 0.0;
            r.p_value = 1.0;
            return r;
        }
        r.statistic = std::numeric_limits<double>::infinity();
        r.p_value = dist::p_value_floor;
        return r;
    }
    r.statistic = std::max(0.0, ((rss_restricted - rss_full) / df1) / (rss_full / df2));
    r.p_value = dist::sf_pvalue(dist::DistSpec::fisher_f(df1, df2), r.statistic);
    return r;
}

JointResult gjls_test(const SampleData& data, Stage1 scale_method) {
    JointResult j;
    j.location = gl_test(data);
    j.scale = scaletest::gs_test(data, scale_method);
    j.p_location = j.location.p_value;
    j.p_scale = j.scale.p_value;
    j.boundary = (j.p_location <= dist::p_value_floor) ||
                 (j.p_scale <= dist::p_value_floor);
    j.w_f = -2.0 * (std::log(j.p_location) + std::log(j.p_scale));
    if (j.w_f < 0.0) j.w_f = 0.0;
    j.p_joint = dist::sf_pvalue(dist::DistSpec::chi_square(4.0), j.w_f);
    return j;
}

}  // namespace gscale::loctest
