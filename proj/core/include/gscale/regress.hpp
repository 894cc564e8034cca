#ifndef GSCALE_REGRESS_HPP
#define GSCALE_REGRESS_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "gscale/error.hpp"

namespace gscale::regress {

// Intercept column of ones followed by k-1 group columns. Group entries are
// indicators in {0,1} or probabilities in [0,1]; the omitted group's implied
// probability 1 - sum must stay in [0,1].
struct DesignMatrix {
    Eigen::MatrixXd X;                       // n x (1 + k - 1)
    std::vector<std::string> column_labels;  // size X.cols()

    Eigen::Index rows() const { return X.rows(); }
    Eigen::Index cols() const { return X.cols(); }
    int n_groups() const { return static_cast<int>(X.cols()); }

    // Indicator design from group codes 0..k-1 (group 0 is the reference).
    static DesignMatrix from_groups(const std::vector<int>& group, int k);

    // Probabilistic design: probs is n x k with rows on the simplex; column
    // 0 is omitted.
    static DesignMatrix from_probability_rows(const Eigen::MatrixXd& probs);

    static DesignMatrix from_raw(Eigen::MatrixXd X, std::vector<std::string> labels);
};

// Compound-symmetric correlation over clusters: off-diagonal rho inside a
// cluster, identity across clusters. Cluster members don't have to be
// contiguous in the data.
struct ClusterCorrelation {
    explicit ClusterCorrelation(const std::vector<int>& cluster_id);

    const std::vector<int>& ids() const { return ids_; }
    Eigen::Index n() const { return static_cast<Eigen::Index>(ids_.size()); }
    std::size_t n_clusters() const { return blocks_.size(); }
    int max_cluster_size() const { return max_size_; }
    bool all_singletons() const { return max_size_ < 2; }

    // Positive definiteness requires rho > -1/(m-1) for the largest block m.
    double rho_lower_bound() const {
        return max_size_ < 2 ? -1.0 : -1.0 / (max_size_ - 1);
    }

    const std::vector<std::vector<int>>& blocks() const { return blocks_; }

  private:
    std::vector<int> ids_;
    std::vector<std::vector<int>> blocks_;  // member row indices per cluster
    int max_size_ = 0;
};

// Block Cholesky factor C with Sigma(rho) = C C^T, stored per cluster as the
// column recurrence of the compound-symmetric factor. Solving C z = v is
// O(m) per block.
class CholFactor {
  public:
    static CholFactor identity(Eigen::Index n);
    static CholFactor compound_symmetric(const ClusterCorrelation& clusters, double rho);

    Eigen::Index n() const { return n_; }
    double rho() const { return rho_; }
    double log_det() const { return log_det_; }
    bool is_identity() const { return identity_; }

    // z = C^{-1} v (whitening).
    Eigen::VectorXd solve(const Eigen::VectorXd& v) const;
    Eigen::MatrixXd solve_cols(const Eigen::MatrixXd& M) const;

    // y = C z (un-whitening).
    Eigen::VectorXd multiply(const Eigen::VectorXd& z) const;

    // Dense Sigma(rho) reconstruction; test support only.
    Eigen::MatrixXd dense_sigma() const;

  private:
    struct Block {
        std::vector<int> rows;
        std::vector<double> diag;   // d_j
        std::vector<double> below;  // c_j, constant below the diagonal in column j
    };
    Eigen::Index n_ = 0;
    double rho_ = 0.0;
    double log_det_ = 0.0;
    bool identity_ = true;
    std::vector<Block> blocks_;
};

struct FitResult {
    Eigen::VectorXd coefficients;
    Eigen::VectorXd fitted;     // on the whitened scale for GLS fits
    Eigen::VectorXd residuals;  // outcome - fitted, same scale as fitted
    std::optional<Eigen::VectorXd> hat_diagonal;  // OLS only
    double residual_scale = 0.0;  // sqrt(RSS/n) for LS fits, mean |r| for LAD
    double rss() const { return residuals.squaredNorm(); }
};

FitResult fit_ols(const DesignMatrix& X, const Eigen::VectorXd& y);

// Least absolute deviation fit. IRLS (weights 1/max(|r|, delta), damped)
// warm-starts an exact basis-exchange descent, so the returned coefficients
// interpolate p observations and minimize the L1 objective exactly. On
// saturated group designs the fitted values are the group medians, lower
// median for even group sizes.
FitResult fit_lad(const DesignMatrix& X, const Eigen::VectorXd& y);

double lad_objective(const DesignMatrix& X, const Eigen::VectorXd& y,
                     const Eigen::VectorXd& beta);

// GLS with a fixed factor: OLS on C^{-1}y, C^{-1}X. residual_scale is the
// conditional MLE sqrt(RSS*/n). With the identity factor this is fit_ols
// (minus the hat diagonal).
FitResult fit_gls(const DesignMatrix& X, const Eigen::VectorXd& y, const CholFactor& C);

struct ProfileResult {
    double rho_hat = 0.0;
    FitResult fit;       // fit_gls at rho_hat
    double loglik = 0.0; // profiled Gaussian log-likelihood at rho_hat
};

// Gaussian profile log-likelihood in rho:
//   l(rho) = -(n/2) log(2 pi) - n/2 - (n/2) log sigma2(rho) - log|C(rho)|
// maximized by a coarse scan plus Brent over the positive-definite range.
ProfileResult profile_rho(const DesignMatrix& X, const Eigen::VectorXd& y,
                          const ClusterCorrelation& clusters);

double profile_loglik(const DesignMatrix& X, const Eigen::VectorXd& y,
                      const ClusterCorrelation& clusters, double rho);

// Cluster-robust covariance of the coefficients:
//   (X'X)^{-1} (sum_c X_c' r_c r_c' X_c) (X'X)^{-1}
Eigen::MatrixXd sandwich_cov(const DesignMatrix& X, const FitResult& fit,
                             const std::vector<int>& cluster_id);

}  // namespace gscale::regress

#endif
