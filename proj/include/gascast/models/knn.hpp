#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>

namespace gascast {

enum class KnnWeighting { uniform, inverse_distance };

std::string to_string(KnnWeighting w);

// Euclidean K-nearest-neighbour regression over standardized features.
// Inverse-distance weights are normalized 1/d; when an exact feature match
// exists, the prediction is the mean target of all exact matches.
class KnnModel {
public:
    void fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, int k, KnnWeighting weighting);
    double predict(const Eigen::RowVectorXd& x) const;
    Eigen::VectorXd predict(const Eigen::MatrixXd& X) const;

    int k() const { return k_; }
    KnnWeighting weighting() const { return weighting_; }
    bool fitted() const { return train_X_.rows() > 0; }

    void save(std::ostream& out) const;
    static KnnModel load(std::istream& in);

private:
    int k_ = 1;
    KnnWeighting weighting_ = KnnWeighting::uniform;
    Eigen::MatrixXd train_X_;
    Eigen::VectorXd train_y_;
};

}  // namespace gascast
