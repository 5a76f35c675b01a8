#include "gascast/models/ridge.hpp"

#include <istream>
#include <ostream>

#include "gascast/errors.hpp"
#include "gascast/models/serialize_util.hpp"

namespace gascast {

namespace {

Eigen::LLT<Eigen::MatrixXd> decompose_normal_matrix(const Eigen::MatrixXd& X, double lambda) {
    if (lambda < 0.0) throw Error("ridge: lambda must be >= 0");
    Eigen::MatrixXd G = X.transpose() * X;
    G.diagonal().array() += lambda;
    Eigen::LLT<Eigen::MatrixXd> llt(G);
    if (llt.info() != Eigen::Success) {
        throw SingularSystem("ridge: X'X + lambda I is not positive definite (rank-deficient X "
                             "with lambda = 0?)");
    }
    return llt;
}

}  // namespace

void RidgeModel::fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double lambda) {
    if (X.rows() != y.size() || X.rows() == 0) {
        throw Error("ridge: design matrix and target size mismatch");
    }
    const auto llt = decompose_normal_matrix(X, lambda);
    const double y_mean = y.mean();
    const Eigen::VectorXd b = X.transpose() * (y.array() - y_mean).matrix();
    beta_ = llt.solve(b);
    intercept_ = y_mean;
    lambda_ = lambda;
}

double RidgeModel::predict(const Eigen::RowVectorXd& x) const {
    if (!fitted()) throw Error("ridge: predict before fit");
    return x.dot(beta_) + intercept_;
}

Eigen::VectorXd RidgeModel::predict(const Eigen::MatrixXd& X) const {
    return (X * beta_).array() + intercept_;
}

double ridge_df(const Eigen::MatrixXd& X, double lambda) {
    const auto llt = decompose_normal_matrix(X, lambda);
    const Eigen::MatrixXd G = X.transpose() * X;
    return llt.solve(G).trace();
}

void RidgeModel::save(std::ostream& out) const {
    out << "gascast-model 1\nkind ridge\n";
    detail::write_scalar(out, "lambda", lambda_);
    detail::write_scalar(out, "intercept", intercept_);
    detail::write_vector(out, "beta", beta_);
}

RidgeModel RidgeModel::load(std::istream& in) {
    detail::expect_header(in, "ridge");
    RidgeModel m;
    m.lambda_ = detail::read_scalar(in, "lambda");
    m.intercept_ = detail::read_scalar(in, "intercept");
    m.beta_ = detail::read_vector(in, "beta");
    return m;
}

}  // namespace gascast
