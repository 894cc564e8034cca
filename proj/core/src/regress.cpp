#include "gscale/regress.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

namespace gscale::regress {

namespace {

constexpr double kPi = 3.14159265358979323846;

void validate_design(const DesignMatrix& d) {
    const auto n = d.X.rows();
    const auto p = d.X.cols();
    if (p < 1) throw ParameterError("design matrix needs an intercept column");
    if (n <= p) throw ParameterError("design matrix needs more rows than columns");
    if (static_cast<Eigen::Index>(d.column_labels.size()) != p)
        throw ParameterError("design matrix column labels out of sync");
    for (Eigen::Index i = 0; i < n; ++i) {
        if (d.X(i, 0) != 1.0) throw ParameterError("first design column must be ones");
        double sum = 0.0;
        for (Eigen::Index j = 1; j < p; ++j) {
            double v = d.X(i, j);
            if (!(v >= 0.0 && v <= 1.0))
                throw ParameterError("group entries must lie in [0,1] (row " +
                                     std::to_string(i) + ", column " +
                                     d.column_labels[j] + ")");
            sum += v;
        }
        if (sum > 1.0 + 1e-9)
            throw ParameterError("implied omitted-group probability negative at row " +
                                 std::to_string(i));
    }
}

struct LsCore {
    Eigen::VectorXd coef;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;
};

LsCore solve_ls(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                const std::vector<std::string>& labels) {
    LsCore out;
    out.qr.compute(X);
    const auto p = X.cols();
    if (out.qr.rank() < p) {
        // Pivot order puts dependent columns last.
        int bad = out.qr.colsPermutation().indices()[p - 1];
        throw SingularDesignError(
            "design matrix is rank deficient (column " + labels[bad] + ")",
            labels[bad]);
    }
    out.coef = out.qr.solve(y);
    return out;
}

double lower_median(std::vector<double> v) {
    const std::size_t n = v.size();
    std::nth_element(v.begin(), v.begin() + (n - 1) / 2, v.end());
    return v[(n - 1) / 2];
}

// Brent maximization of f on [a,b]; deterministic, tolerance in x.
template <typename F>
double brent_max(F f, double a, double b, double xtol, int max_iter = 200) {
    const double gold = 0.3819660112501051;
    double x = a + gold * (b - a), w = x, v = x;
    double fx = f(x), fw = fx, fv = fx;
    double d = 0.0, e = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        double m = 0.5 * (a + b);
        double tol1 = xtol * (std::fabs(x) + 1e-12), tol2 = 2.0 * tol1;
        if (std::fabs(x - m) <= tol2 - 0.5 * (b - a)) break;
        double p = 0.0, q = 0.0, r = 0.0;
        bool parab = false;
        if (std::fabs(e) > tol1) {
            r = (x - w) * (fx - fv);
            q = (x - v) * (fx - fw);
            p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p;
            q = std::fabs(q);
            double etmp = e;
            e = d;
            if (std::fabs(p) < std::fabs(0.5 * q * etmp) && p > q * (a - x) &&
                p < q * (b - x)) {
                parab = true;
                d = p / q;
                double u = x + d;
                if (u - a < tol2 || b - u < tol2) d = (m > x) ? tol1 : -tol1;
            }
        }
        if (!parab) {
            e = (x < m) ? b - x : a - x;
            d = gold * e;
        }
        double u = (std::fabs(d) >= tol1) ? x + d : x + ((d > 0.0) ? tol1 : -tol1);
        double fu = f(u);
        if (fu >= fx) {
            if (u < x) b = x; else a = x;
            v = w; fv = fw; w = x; fw = fx; x = u; fx = fu;
        } else {
            if (u < x) a = u; else b = u;
            if (fu >= fw || w == x) {
                v = w; fv = fw; w = u; fw = fu;
            } else if (fu >= fv || v == x || v == w) {
                v = u; fv = fu;
            }
        }
    }
    return x;
}

}  // namespace

DesignMatrix DesignMatrix::from_groups(const std::vector<int>& group, int k) {
    if (k < 2) throw ParameterError("need at least two groups");
    const auto n = static_cast<Eigen::Index>(group.size());
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, k);
    std::vector<std::string> labels(k);
    labels[0] = "(intercept)";
    for (int j = 1; j < k; ++j) labels[j] = "g" + std::to_string(j);
    for (Eigen::Index i = 0; i < n; ++i) {
        int g = group[i];
        if (g < 0 || g >= k) throw ParameterError("group code out of range");
        X(i, 0) = 1.0;
        if (g > 0) X(i, g) = 1.0;
    }
    DesignMatrix d{std::move(X), std::move(labels)};
    validate_design(d);
    return d;
}

DesignMatrix DesignMatrix::from_probability_rows(const Eigen::MatrixXd& probs) {
    const auto n = probs.rows();
    const auto k = probs.cols();
    if (k < 2) throw ParameterError("need at least two probability columns");
    for (Eigen::Index i = 0; i < n; ++i) {
        double s = 0.0;
        for (Eigen::Index j = 0; j < k; ++j) {
            if (!(probs(i, j) >= 0.0 && probs(i, j) <= 1.0))
                throw ParameterError("probability outside [0,1] at row " +
                                     std::to_string(i));
            s += probs(i, j);
        }
        if (std::fabs(s - 1.0) > 1e-9)
            throw ParameterError("probability row " + std::to_string(i) +
                                 " does not sum to 1");
    }
    Eigen::MatrixXd X(n, k);
    X.col(0).setOnes();
    X.rightCols(k - 1) = probs.rightCols(k - 1);
    std::vector<std::string> labels(k);
    labels[0] = "(intercept)";
    for (Eigen::Index j = 1; j < k; ++j) labels[j] = "p" + std::to_string(j);
    DesignMatrix d{std::move(X), std::move(labels)};
    validate_design(d);
    return d;
}

DesignMatrix DesignMatrix::from_raw(Eigen::MatrixXd X, std::vector<std::string> labels) {
    DesignMatrix d{std::move(X), std::move(labels)};
    validate_design(d);
    return d;
}

ClusterCorrelation::ClusterCorrelation(const std::vector<int>& cluster_id)
    : ids_(cluster_id) {
    std::unordered_map<int, int> pos;
    for (int i = 0; i < static_cast<int>(ids_.size()); ++i) {
        auto [it, fresh] = pos.emplace(ids_[i], static_cast<int>(blocks_.size()));
        if (fresh) blocks_.emplace_back();
        blocks_[it->second].push_back(i);
    }
    for (const auto& b : blocks_)
        max_size_ = std::max(max_size_, static_cast<int>(b.size()));
}

CholFactor CholFactor::identity(Eigen::Index n) {
    CholFactor c;
    c.n_ = n;
    return c;
}

CholFactor CholFactor::compound_symmetric(const ClusterCorrelation& clusters,
                                          double rho) {
    CholFactor c;
    c.n_ = clusters.n();
    c.rho_ = rho;
    if (rho == 0.0) return c;  // exact identity
    if (!(rho > clusters.rho_lower_bound() && rho < 1.0))
        throw ParameterError("rho outside the positive-definite range");
    c.identity_ = false;
    for (const auto& members : clusters.blocks()) {
        Block b;
        b.rows = members;
        const int m = static_cast<int>(members.size());
        b.diag.resize(m);
        b.below.resize(m);
        // Column recurrence: below-diagonal entries of column j are constant.
        double s = 0.0;  // running sum of c_j^2
        for (int j = 0; j < m; ++j) {
            double d2 = 1.0 - s;
            if (!(d2 > 0.0)) throw ParameterError("rho outside the positive-definite range");
            b.diag[j] = std::sqrt(d2);
            b.below[j] = (rho - s) / b.diag[j];
            s += b.below[j] * b.below[j];
            c.log_det_ += std::log(b.diag[j]);
        }
        c.blocks_.push_back(std::move(b));
    }
    return c;
}

Eigen::VectorXd CholFactor::solve(const Eigen::VectorXd& v) const {
    if (v.size() != n_) throw ParameterError("factor/vector size mismatch");
    if (identity_) return v;
    Eigen::VectorXd z = v;
    for (const auto& b : blocks_) {
        double t = 0.0;
        for (std::size_t j = 0; j < b.rows.size(); ++j) {
            double zj = (v[b.rows[j]] - t) / b.diag[j];
            z[b.rows[j]] = zj;
            t += b.below[j] * zj;
        }
    }
    return z;
}

Eigen::MatrixXd CholFactor::solve_cols(const Eigen::MatrixXd& M) const {
    if (M.rows() != n_) throw ParameterError("factor/matrix size mismatch");
    if (identity_) return M;
    Eigen::MatrixXd Z = M;
    for (Eigen::Index c = 0; c < M.cols(); ++c)
        Z.col(c) = solve(M.col(c));
    return Z;
}

Eigen::VectorXd CholFactor::multiply(const Eigen::VectorXd& z) const {
    if (z.size() != n_) throw ParameterError("factor/vector size mismatch");
    if (identity_) return z;
    Eigen::VectorXd y = z;
    for (const auto& b : blocks_) {
        double t = 0.0;
        for (std::size_t j = 0; j < b.rows.size(); ++j) {
            double zj = z[b.rows[j]];
            y[b.rows[j]] = t + b.diag[j] * zj;
            t += b.below[j] * zj;
        }
    }
    return y;
}

Eigen::MatrixXd CholFactor::dense_sigma() const {
    Eigen::MatrixXd S = Eigen::MatrixXd::Identity(n_, n_);
    for (const auto& b : blocks_)
        for (std::size_t i = 0; i < b.rows.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                S(b.rows[i], b.rows[j]) = S(b.rows[j], b.rows[i]) = rho_;
    return S;
}

FitResult fit_ols(const DesignMatrix& X, const Eigen::VectorXd& y) {
    validate_design(X);
    if (y.size() != X.rows()) throw ParameterError("outcome length mismatch");
    auto ls = solve_ls(X.X, y, X.column_labels);
    FitResult f;
    f.coefficients = ls.coef;
    f.fitted = X.X * ls.coef;
    f.residuals = y - f.fitted;
    f.residual_scale = std::sqrt(f.residuals.squaredNorm() / double(y.size()));
    // h_ii = squared row norms of the thin Q factor.
    Eigen::MatrixXd Q1 = ls.qr.householderQ() *
                         Eigen::MatrixXd::Identity(X.rows(), X.cols());
    f.hat_diagonal = Q1.rowwise().squaredNorm();
    return f;
}

double lad_objective(const DesignMatrix& X, const Eigen::VectorXd& y,
                     const Eigen::VectorXd& beta) {
    return (y - X.X * beta).cwiseAbs().sum();
}

namespace {

// Exact LAD descent over interpolation bases. Each step relaxes one basis
// observation and takes the lower weighted median along that line, so ties
// on saturated designs resolve toward the lower group median.
struct LadDescent {
    const Eigen::MatrixXd& X;
    const Eigen::VectorXd& y;
    std::vector<int> basis;
    Eigen::VectorXd beta;
    Eigen::VectorXd resid;
    double obj = 0.0;

    bool refit() {
        const auto p = X.cols();
        Eigen::MatrixXd XB(p, p);
        Eigen::VectorXd yB(p);
        for (Eigen::Index s = 0; s < p; ++s) {
            XB.row(s) = X.row(basis[s]);
            yB[s] = y[basis[s]];
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(XB);
        if (!lu.isInvertible()) return false;
        beta = lu.solve(yB);
        resid = y - X * beta;
        obj = resid.cwiseAbs().sum();
        return true;
    }

    // One relax-and-exchange step on basis slot t. Returns the proposed move
    // (gamma, incoming observation, new objective); ok=false if degenerate.
    struct Move {
        bool ok = false;
        double gamma = 0.0;
        int incoming = -1;
        double new_obj = 0.0;
    };

    Move propose(Eigen::Index t) const {
        const auto p = X.cols();
        const auto n = X.rows();
        Eigen::MatrixXd XB(p, p);
        for (Eigen::Index s = 0; s < p; ++s) XB.row(s) = X.row(basis[s]);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(XB);
        if (!lu.isInvertible()) return {};
        Eigen::VectorXd eta = lu.solve(Eigen::VectorXd::Unit(p, t));
        Eigen::VectorXd u = X * eta;
        double umax = u.cwiseAbs().maxCoeff();
        if (!(umax > 0.0)) return {};
        const double utol = 1e-11 * umax;

        struct Cand { double pos; double w; int idx; };
        std::vector<Cand> cands;
        cands.reserve(n);
        double wtot = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            double ui = u[i];
            if (std::fabs(ui) <= utol) continue;
            bool in_basis = false;
            for (Eigen::Index s = 0; s < p; ++s)
                if (s != t && basis[s] == i) { in_basis = true; break; }
            if (in_basis) continue;  // pinned residuals stay zero
            cands.push_back({resid[i] / ui, std::fabs(ui), static_cast<int>(i)});
            wtot += std::fabs(ui);
        }
        if (cands.empty()) return {};
        std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
            if (a.pos != b.pos) return a.pos < b.pos;
            return a.idx < b.idx;
        });
        // lower weighted median: first point where cumulative weight reaches half
        double half = 0.5 * wtot * (1.0 - 1e-13);
        double cum = 0.0;
        std::size_t j = 0;
        for (; j < cands.size(); ++j) {
            cum += cands[j].w;
            if (cum >= half) break;
        }
        if (j == cands.size()) return {};
        Move mv;
        mv.ok = true;
        mv.gamma = cands[j].pos;
        mv.incoming = cands[j].idx;
        Eigen::VectorXd r_new = resid - mv.gamma * u;
        mv.new_obj = r_new.cwiseAbs().sum();
        return mv;
    }
};

}  // namespace

FitResult fit_lad(const DesignMatrix& Xd, const Eigen::VectorXd& y) {
    validate_design(Xd);
    if (y.size() != Xd.rows()) throw ParameterError("outcome length mismatch");
    const auto n = Xd.rows();
    const auto p = Xd.cols();
    const Eigen::MatrixXd& X = Xd.X;

    FitResult ols = fit_ols(Xd, y);
    Eigen::VectorXd beta = ols.coefficients;
    Eigen::VectorXd resid = ols.residuals;
    double obj = resid.cwiseAbs().sum();

    auto finish = [&](const Eigen::VectorXd& b) {
        FitResult f;
        f.coefficients = b;
        f.fitted = X * b;
        f.residuals = y - f.fitted;
        f.residual_scale = f.residuals.cwiseAbs().sum() / double(n);
        return f;
    };
    if (obj == 0.0) return finish(beta);

    // IRLS warm start: weights 1/max(|r|, delta), step damping 0.5 on a
    // non-decreasing objective, stop on relative change < 1e-10.
    {
        std::vector<double> abs_dev(n);
        double med = lower_median(std::vector<double>(y.data(), y.data() + n));
        for (Eigen::Index i = 0; i < n; ++i) abs_dev[i] = std::fabs(y[i] - med);
        double mad = lower_median(abs_dev);
        double delta = 1e-6 * mad;
        if (!(delta > 0.0)) delta = 1e-9 * (1.0 + std::fabs(med));

        Eigen::MatrixXd Xw(n, p);
        Eigen::VectorXd yw(n);
        for (int iter = 0; iter < 200; ++iter) {
            for (Eigen::Index i = 0; i < n; ++i) {
                double w = 1.0 / std::max(std::fabs(resid[i]), delta);
                double sw = std::sqrt(w);
                Xw.row(i) = sw * X.row(i);
                yw[i] = sw * y[i];
            }
            Eigen::VectorXd step;
            try {
                step = solve_ls(Xw, yw, Xd.column_labels).coef - beta;
            } catch (const SingularDesignError&) {
                break;  // weighted design collapsed; exact stage takes over
            }
            double factor = 1.0;
            double new_obj = obj;
            Eigen::VectorXd cand = beta;
            for (int halve = 0; halve < 40; ++halve) {
                cand = beta + factor * step;
                new_obj = (y - X * cand).cwiseAbs().sum();
                if (new_obj < obj) break;
                factor *= 0.5;
            }
            if (new_obj >= obj) break;
            bool done = (obj - new_obj) <= 1e-10 * std::max(1.0, obj);
            beta = cand;
            resid = y - X * beta;
            obj = new_obj;
            if (done) break;
        }
    }
    const double irls_obj = obj;
    const Eigen::VectorXd irls_beta = beta;

    // Build an invertible basis from the smallest residuals.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        double ra = std::fabs(resid[a]), rb = std::fabs(resid[b]);
        if (ra != rb) return ra < rb;
        return a < b;
    });
    LadDescent d{X, y, {}, beta, resid, obj};
    {
        Eigen::MatrixXd cur(0, p);
        for (int idx : order) {
            Eigen::MatrixXd trial(cur.rows() + 1, p);
            trial.topRows(cur.rows()) = cur;
            trial.row(cur.rows()) = X.row(idx);
            Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(trial);
            if (qr.rank() == trial.rows()) {
                cur = trial;
                d.basis.push_back(idx);
                if (static_cast<Eigen::Index>(d.basis.size()) == p) break;
            }
        }
    }
    if (static_cast<Eigen::Index>(d.basis.size()) < p || !d.refit())
        return finish(irls_beta);

    // Strict descent over vertices.
    const int max_exchanges = 200 * static_cast<int>(p) + 200;
    int exchanges = 0;
    bool improved = true;
    while (improved) {
        improved = false;
        for (Eigen::Index t = 0; t < p; ++t) {
            auto mv = d.propose(t);
            if (!mv.ok || mv.incoming == d.basis[t]) continue;
            if (mv.new_obj < d.obj * (1.0 - 1e-13) - 1e-300) {
                int old = d.basis[t];
                d.basis[t] = mv.incoming;
                if (!d.refit()) { d.basis[t] = old; d.refit(); continue; }
                improved = true;
                if (++exchanges > max_exchanges)
                    throw ConvergenceError("LAD basis exchange did not converge",
                                           exchanges, d.obj - irls_obj);
            }
        }
    }
    // Tie pass: on a flat optimal face, slide down so even-sized groups sit
    // at the lower median.
    for (Eigen::Index t = 0; t < p; ++t) {
        auto mv = d.propose(t);
        if (!mv.ok || mv.incoming == d.basis[t]) continue;
        if (mv.gamma < 0.0 && mv.new_obj <= d.obj * (1.0 + 1e-13) + 1e-300) {
            int old = d.basis[t];
            double prev = d.obj;
            d.basis[t] = mv.incoming;
            if (!d.refit() || d.obj > prev * (1.0 + 1e-12) + 1e-300) {
                d.basis[t] = old;
                d.refit();
            }
        }
    }

    if (d.obj <= irls_obj * (1.0 + 1e-12) + 1e-300) return finish(d.beta);
    return finish(irls_beta);
}

FitResult fit_gls(const DesignMatrix& X, const Eigen::VectorXd& y, const CholFactor& C) {
    validate_design(X);
    if (y.size() != X.rows() || C.n() != X.rows())
        throw ParameterError("outcome/factor length mismatch");
    const Eigen::MatrixXd Xs = C.solve_cols(X.X);
    const Eigen::VectorXd ys = C.solve(y);
    auto ls = solve_ls(Xs, ys, X.column_labels);
    FitResult f;
    f.coefficients = ls.coef;
    f.fitted = Xs * ls.coef;
    f.residuals = ys - f.fitted;
    f.residual_scale = std::sqrt(f.residuals.squaredNorm() / double(y.size()));
    return f;
}

double profile_loglik(const DesignMatrix& X, const Eigen::VectorXd& y,
                      const ClusterCorrelation& clusters, double rho) {
    auto C = CholFactor::compound_symmetric(clusters, rho);
    auto fit = fit_gls(X, y, C);
    const double n = static_cast<double>(y.size());
    double sigma2 = fit.rss() / n;
    return -0.5 * n * (std::log(2.0 * kPi) + 1.0) - 0.5 * n * std::log(sigma2) -
           C.log_det();
}

ProfileResult profile_rho(const DesignMatrix& X, const Eigen::VectorXd& y,
                          const ClusterCorrelation& clusters) {
    if (clusters.n() != y.size())
        throw ParameterError("cluster labels/outcome length mismatch");
    if (clusters.all_singletons())
        throw IdentifiabilityError(
            "all clusters are singletons; rho is unidentified, use fit_ols");

    const double lo = clusters.rho_lower_bound() + 1e-4;
    const double hi = 1.0 - 1e-4;
    auto ll = [&](double r) { return profile_loglik(X, y, clusters, r); };

    // Coarse scan brackets the global maximum before Brent refines it.
    const int grid = 17;
    double best_r = lo, best_v = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i) {
        double r = lo + (hi - lo) * i / (grid - 1);
        double v = ll(r);
        if (v > best_v) { best_v = v; best_r = r; }
    }
    const double step = (hi - lo) / (grid - 1);
    double a = std::max(lo, best_r - step);
    double b = std::min(hi, best_r + step);
    double rho_hat = brent_max(ll, a, b, 1e-7);

    double v_hat = ll(rho_hat);
    if (best_v > v_hat) { rho_hat = best_r; v_hat = best_v; }
    if (lo <= 0.0 && 0.0 <= hi) {
        double v0 = ll(0.0);
        if (v0 > v_hat) { rho_hat = 0.0; v_hat = v0; }
    }

    ProfileResult out;
    out.rho_hat = rho_hat;
    out.fit = fit_gls(X, y, CholFactor::compound_symmetric(clusters, rho_hat));
    out.loglik = v_hat;
    return out;
}

Eigen::MatrixXd sandwich_cov(const DesignMatrix& X, const FitResult& fit,
                             const std::vector<int>& cluster_id) {
    const auto n = X.rows();
    const auto p = X.cols();
    if (static_cast<Eigen::Index>(cluster_id.size()) != n ||
        fit.residuals.size() != n)
        throw ParameterError("cluster labels/fit length mismatch");
    ClusterCorrelation clusters(cluster_id);
    if (clusters.n_clusters() < 2)
        throw DegenerateVarianceError("need at least two clusters for the sandwich");

    Eigen::MatrixXd xtx = X.X.transpose() * X.X;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(xtx);
    Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(p, p);
    for (const auto& members : clusters.blocks()) {
        Eigen::VectorXd s = Eigen::VectorXd::Zero(p);
        for (int i : members) s += X.X.row(i).transpose() * fit.residuals[i];
        meat.noalias() += s * s.transpose();
    }
    Eigen::MatrixXd bread = ldlt.solve(Eigen::MatrixXd::Identity(p, p));
    Eigen::MatrixXd V = bread * meat * bread;
    return 0.5 * (V + V.transpose());
}

}  // namespace gscale::regress
