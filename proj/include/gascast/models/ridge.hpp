#pragma once

#include <Eigen/Dense>
#include <iosfwd>

namespace gascast {

// Linear model with an L2 penalty on the coefficients, solved in closed
// form: beta = (X'X + lambda I)^-1 X'y. The target is centered before the
// solve so the intercept stays unpenalized; the mean is restored at
// prediction time.
class RidgeModel {
public:
    void fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double lambda);

    double predict(const Eigen::RowVectorXd& x) const;
    Eigen::VectorXd predict(const Eigen::MatrixXd& X) const;

    double lambda() const { return lambda_; }
    const Eigen::VectorXd& beta() const { return beta_; }
    double intercept() const { return intercept_; }
    bool fitted() const { return beta_.size() > 0; }

    void save(std::ostream& out) const;
    static RidgeModel load(std::istream& in);

private:
    double lambda_ = 0.0;
    Eigen::VectorXd beta_;
    double intercept_ = 0.0;
};

// Effective degrees of freedom tr(X (X'X + lambda I)^-1 X'); ranges from
// the column count down to 0 as lambda grows.
double ridge_df(const Eigen::MatrixXd& X, double lambda);

}  // namespace gascast
