#pragma once

#include <Eigen/Dense>
#include <iosfwd>

namespace gascast {

// Half-integer Matern covariance between two points at distance r;
// kappa(0) = 1. Supported smoothness values: 0.5, 1.5, 2.5.
double matern_kernel(double r, double nu, double length_scale);

// Gram matrix of the kernel over the rows of X (isotropic, Euclidean
// distances on the given coordinates).
Eigen::MatrixXd matern_gram(const Eigen::MatrixXd& X, double nu, double length_scale);

// Cholesky of gram + sigma2 I. If the first attempt fails, a jitter of
// 1e-10 * mean(diagonal) is added once; a second failure throws
// NotPositiveDefinite.
Eigen::LLT<Eigen::MatrixXd> gp_decompose(Eigen::MatrixXd gram_plus_noise);

// Posterior machinery on raw targets (no scaling): coefficients
// c = (K + sigma2 I)^-1 y, predictions sum_i c_i kappa(|x* - x_i|).
Eigen::VectorXd gp_coefficients(const Eigen::MatrixXd& gram, const Eigen::VectorXd& y,
                                double sigma2);
double gp_posterior_mean(const Eigen::MatrixXd& train_X, const Eigen::VectorXd& coef,
                         const Eigen::RowVectorXd& x, double nu, double length_scale);

// Zero-mean multivariate normal log density of y under K + sigma2 I.
double gp_log_marginal_likelihood_raw(const Eigen::MatrixXd& gram, const Eigen::VectorXd& y,
                                      double sigma2);

// Full model over a standardized feature matrix. Targets are standardized
// internally (the zero-mean prior then matches the data) and predictions
// are mapped back to MSCM.
class GpModel {
public:
    void fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double nu, double length_scale,
             double sigma2);
    double predict(const Eigen::RowVectorXd& x) const;
    Eigen::VectorXd predict(const Eigen::MatrixXd& X) const;

    double nu() const { return nu_; }
    double length_scale() const { return length_scale_; }
    double sigma2() const { return sigma2_; }
    bool fitted() const { return coef_.size() > 0; }

    void save(std::ostream& out) const;
    static GpModel load(std::istream& in);

private:
    double nu_ = 1.5;
    double length_scale_ = 10.0;
    double sigma2_ = 0.1;
    double y_mean_ = 0.0;
    double y_std_ = 1.0;
    Eigen::MatrixXd train_X_;
    Eigen::VectorXd coef_;
};

// Marginal likelihood of the standardized targets, the tuning objective.
double gp_log_marginal_likelihood(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double nu,
                                  double length_scale, double sigma2);

}  // namespace gascast
