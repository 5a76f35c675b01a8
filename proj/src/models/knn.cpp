#include "gascast/models/knn.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gascast/errors.hpp"
#include "gascast/models/serialize_util.hpp"

namespace gascast {

std::string to_string(KnnWeighting w) {
    return w == KnnWeighting::uniform ? "uniform" : "inverse_distance";
}

void KnnModel::fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, int k,
                   KnnWeighting weighting) {
    if (X.rows() == 0) throw EmptyTrainingSet("knn: no training rows");
    if (k < 1 || k > X.rows()) {
        throw Error("knn: k must be in [1, n], got " + std::to_string(k));
    }
    train_X_ = X;
    train_y_ = y;
    k_ = k;
    weighting_ = weighting;
}

double KnnModel::predict(const Eigen::RowVectorXd& x) const {
    if (!fitted()) throw EmptyTrainingSet("knn: predict before fit");
    const Eigen::Index n = train_X_.rows();
    std::vector<std::pair<double, Eigen::Index>> dist(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        dist[static_cast<std::size_t>(i)] = {(train_X_.row(i) - x).norm(), i};
    }
    // index as tie breaker keeps neighbour choice deterministic
    std::sort(dist.begin(), dist.end());

    if (weighting_ == KnnWeighting::inverse_distance && dist.front().first == 0.0) {
        double s = 0.0;
        int c = 0;
        for (const auto& [d, i] : dist) {
            if (d > 0.0) break;
            s += train_y_(i);
            ++c;
        }
        return s / c;
    }

    double num = 0.0;
    double den = 0.0;
    for (int j = 0; j < k_; ++j) {
        const auto [d, i] = dist[static_cast<std::size_t>(j)];
        const double w = weighting_ == KnnWeighting::uniform ? 1.0 : 1.0 / d;
        num += w * train_y_(i);
        den += w;
    }
    return num / den;
}

Eigen::VectorXd KnnModel::predict(const Eigen::MatrixXd& X) const {
    Eigen::VectorXd out(X.rows());
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        const Eigen::RowVectorXd r = X.row(i);
        out(i) = predict(r);
    }
    return out;
}

void KnnModel::save(std::ostream& out) const {
    out << "gascast-model 1\nkind knn\n";
    detail::write_int(out, "k", k_);
    detail::write_int(out, "weighting", weighting_ == KnnWeighting::uniform ? 0 : 1);
    detail::write_matrix(out, "train_X", train_X_);
    detail::write_vector(out, "train_y", train_y_);
}

KnnModel KnnModel::load(std::istream& in) {
    detail::expect_header(in, "knn");
    KnnModel m;
    m.k_ = static_cast<int>(detail::read_int(in, "k"));
    m.weighting_ = detail::read_int(in, "weighting") == 0 ? KnnWeighting::uniform
                                                          : KnnWeighting::inverse_distance;
    m.train_X_ = detail::read_matrix(in, "train_X");
    m.train_y_ = detail::read_vector(in, "train_y");
    return m;
}

}  // namespace gascast
