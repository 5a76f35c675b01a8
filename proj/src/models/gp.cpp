#include "gascast/models/gp.hpp"

#include <cmath>

#include "gascast/errors.hpp"
#include "gascast/models/serialize_util.hpp"

namespace gascast {

double matern_kernel(double r, double nu, double length_scale) {
    if (r < 0.0) throw Error("matern_kernel: negative distance");
    if (!(length_scale > 0.0)) throw Error("matern_kernel: length scale must be > 0");
    const double s = r / length_scale;
    if (nu == 0.5) {
        return std::exp(-s);
    }
    if (nu == 1.5) {
        const double a = std::sqrt(3.0) * s;
        return (1.0 + a) * std::exp(-a);
    }
    if (nu == 2.5) {
        const double a = std::sqrt(5.0) * s;
        return (1.0 + a + a * a / 3.0) * std::exp(-a);
    }
    throw UnsupportedNu("matern_kernel: nu must be one of 0.5, 1.5, 2.5");
}

Eigen::MatrixXd matern_gram(const Eigen::MatrixXd& X, double nu, double length_scale) {
    const Eigen::Index n = X.rows();
    // squared distances via the Gram trick; the GEMM dominates and is fast
    const Eigen::VectorXd sq = X.rowwise().squaredNorm();
    Eigen::MatrixXd d2 = sq.replicate(1, n) + sq.transpose().replicate(n, 1) -
                         2.0 * (X * X.transpose());
    Eigen::MatrixXd K(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        K(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double r = std::sqrt(std::max(d2(i, j), 0.0));
            const double v = matern_kernel(r, nu, length_scale);
            K(i, j) = v;
            K(j, i) = v;
        }
    }
    return K;
}

Eigen::LLT<Eigen::MatrixXd> gp_decompose(Eigen::MatrixXd gram_plus_noise) {
    Eigen::LLT<Eigen::MatrixXd> llt(gram_plus_noise);
    if (llt.info() == Eigen::Success) return llt;
    const double jitter = 1e-10 * gram_plus_noise.diagonal().mean();
    gram_plus_noise.diagonal().array() += jitter;
    llt.compute(gram_plus_noise);
    if (llt.info() == Eigen::Success) return llt;
    throw NotPositiveDefinite("gp: covariance matrix not positive definite even after jitter");
}

Eigen::VectorXd gp_coefficients(const Eigen::MatrixXd& gram, const Eigen::VectorXd& y,
                                double sigma2) {
    Eigen::MatrixXd A = gram;
    A.diagonal().array() += sigma2;
    return gp_decompose(std::move(A)).solve(y);
}

double gp_posterior_mean(const Eigen::MatrixXd& train_X, const Eigen::VectorXd& coef,
                         const Eigen::RowVectorXd& x, double nu, double length_scale) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < train_X.rows(); ++i) {
        const double r = (train_X.row(i) - x).norm();
        acc += coef(i) * matern_kernel(r, nu, length_scale);
    }
    return acc;
}

double gp_log_marginal_likelihood_raw(const Eigen::MatrixXd& gram, const Eigen::VectorXd& y,
                                      double sigma2) {
    Eigen::MatrixXd A = gram;
    A.diagonal().array() += sigma2;
    const auto llt = gp_decompose(std::move(A));
    const Eigen::VectorXd alpha = llt.solve(y);
    const double log_det = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
    const auto n = static_cast<double>(y.size());
    return -0.5 * y.dot(alpha) - 0.5 * log_det - 0.5 * n * std::log(2.0 * 3.14159265358979323846);
}

void GpModel::fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double nu,
                  double length_scale, double sigma2) {
    if (X.rows() != y.size() || X.rows() == 0) throw Error("gp: bad training data");
    if (sigma2 < 0.0) throw Error("gp: sigma2 must be >= 0");
    nu_ = nu;
    length_scale_ = length_scale;
    sigma2_ = sigma2;
    y_mean_ = y.mean();
    const double sd = std::sqrt((y.array() - y_mean_).square().mean());
    y_std_ = sd > 1e-12 ? sd : 1.0;
    const Eigen::VectorXd ys = (y.array() - y_mean_) / y_std_;
    train_X_ = X;
    coef_ = gp_coefficients(matern_gram(X, nu, length_scale), ys, sigma2);
}

double GpModel::predict(const Eigen::RowVectorXd& x) const {
    if (!fitted()) throw Error("gp: predict before fit");
    const double m = gp_posterior_mean(train_X_, coef_, x, nu_, length_scale_);
    return m * y_std_ + y_mean_;
}

Eigen::VectorXd GpModel::predict(const Eigen::MatrixXd& X) const {
    Eigen::VectorXd out(X.rows());
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        const Eigen::RowVectorXd r = X.row(i);
        out(i) = predict(r);
    }
    return out;
}

double gp_log_marginal_likelihood(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double nu,
                                  double length_scale, double sigma2) {
    const double mean = y.mean();
    const double sd_raw = std::sqrt((y.array() - mean).square().mean());
    const double sd = sd_raw > 1e-12 ? sd_raw : 1.0;
    const Eigen::VectorXd ys = (y.array() - mean) / sd;
    return gp_log_marginal_likelihood_raw(matern_gram(X, nu, length_scale), ys, sigma2);
}

void GpModel::save(std::ostream& out) const {
    out << "gascast-model 1\nkind gp\n";
    detail::write_scalar(out, "nu", nu_);
    detail::write_scalar(out, "length_scale", length_scale_);
    detail::write_scalar(out, "sigma2", sigma2_);
    detail::write_scalar(out, "y_mean", y_mean_);
    detail::write_scalar(out, "y_std", y_std_);
    detail::write_matrix(out, "train_X", train_X_);
    detail::write_vector(out, "coef", coef_);
}

GpModel GpModel::load(std::istream& in) {
    detail::expect_header(in, "gp");
    GpModel m;
    m.nu_ = detail::read_scalar(in, "nu");
    m.length_scale_ = detail::read_scalar(in, "length_scale");
    m.sigma2_ = detail::read_scalar(in, "sigma2");
    m.y_mean_ = detail::read_scalar(in, "y_mean");
    m.y_std_ = detail::read_scalar(in, "y_std");
    m.train_X_ = detail::read_matrix(in, "train_X");
    m.coef_ = detail::read_vector(in, "coef");
    return m;
}

}  // namespace gascast
