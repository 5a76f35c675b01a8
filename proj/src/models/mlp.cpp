#include "gascast/models/mlp.hpp"

#include <cmath>
#include <numeric>

#include "gascast/errors.hpp"
#include "gascast/models/serialize_util.hpp"
#include "gascast/rng.hpp"

namespace gascast {

void MlpModel::init_weights(int input_width, std::uint64_t seed) {
    std::vector<int> widths;
    widths.push_back(input_width);
    for (int h : config_.hidden) widths.push_back(h);
    widths.push_back(1);

    Rng rng(seed);
    W_.clear();
    b_.clear();
    for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
        const int fan_in = widths[l];
        const int fan_out = widths[l + 1];
        const double limit = std::sqrt(6.0 / (fan_in + fan_out));
        Eigen::MatrixXd w(fan_out, fan_in);
        for (Eigen::Index i = 0; i < w.rows(); ++i) {
            for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) = rng.uniform(-limit, limit);
        }
        W_.push_back(std::move(w));
        b_.push_back(Eigen::VectorXd::Zero(fan_out));
    }
}

Eigen::VectorXd MlpModel::forward(const Eigen::MatrixXd& X) const {
    Eigen::MatrixXd a = X;
    for (std::size_t l = 0; l < W_.size(); ++l) {
        Eigen::MatrixXd z = (a * W_[l].transpose()).rowwise() + b_[l].transpose();
        if (l + 1 < W_.size()) z = z.cwiseMax(0.0);  // ReLU on hidden layers
        a = std::move(z);
    }
    return a.col(0);
}

MlpGradients MlpModel::loss_gradients(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) const {
    const auto batch = static_cast<double>(X.rows());
    const std::size_t layers = W_.size();

    // forward, keeping pre-activations
    std::vector<Eigen::MatrixXd> acts(layers + 1);
    acts[0] = X;
    std::vector<Eigen::MatrixXd> zs(layers);
    for (std::size_t l = 0; l < layers; ++l) {
        zs[l] = (acts[l] * W_[l].transpose()).rowwise() + b_[l].transpose();
        acts[l + 1] = (l + 1 < layers) ? zs[l].cwiseMax(0.0) : zs[l];
    }

    MlpGradients g;
    g.dW.resize(layers);
    g.db.resize(layers);

    const Eigen::VectorXd err = acts[layers].col(0) - y;
    g.loss = err.squaredNorm() / batch;

    // d loss / d z for the output layer, then backpropagate
    Eigen::MatrixXd delta = (2.0 / batch) * err;
    for (std::size_t l = layers; l-- > 0;) {
        g.dW[l] = delta.transpose() * acts[l];
        g.db[l] = delta.colwise().sum().transpose();
        if (l > 0) {
            const Eigen::MatrixXd mask = (zs[l - 1].array() > 0.0).cast<double>().matrix();
            delta = (delta * W_[l]).cwiseProduct(mask);
        }
    }
    return g;
}

void MlpModel::fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const MlpConfig& cfg) {
    if (X.rows() == 0 || X.rows() != y.size()) throw Error("mlp: bad training data");
    if (cfg.batch_size < 1 || cfg.epochs < 0) throw Error("mlp: bad batch size or epoch count");
    config_ = cfg;

    y_mean_ = y.mean();
    const double sd = std::sqrt((y.array() - y_mean_).square().mean());
    y_std_ = sd > 1e-12 ? sd : 1.0;
    const Eigen::VectorXd ys = (y.array() - y_mean_) / y_std_;

    init_weights(static_cast<int>(X.cols()), cfg.seed);
    epoch_losses_.clear();

    // one optimizer state per parameter tensor
    std::vector<Eigen::MatrixXd> mW;
    std::vector<Eigen::MatrixXd> vW;
    std::vector<Eigen::VectorXd> mb;
    std::vector<Eigen::VectorXd> vb;
    for (const auto& w : W_) {
        mW.push_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));
        vW.push_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));
    }
    for (const auto& bb : b_) {
        mb.push_back(Eigen::VectorXd::Zero(bb.size()));
        vb.push_back(Eigen::VectorXd::Zero(bb.size()));
    }

    Rng shuffle_rng(derive_seed(cfg.seed, 0x5u));
    const auto n = static_cast<std::size_t>(X.rows());
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0u);

    long long step = 0;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        shuffle_rng.shuffle(order);
        double loss_sum = 0.0;
        std::size_t batches = 0;
        for (std::size_t start = 0; start < n; start += static_cast<std::size_t>(cfg.batch_size)) {
            const std::size_t stop = std::min(n, start + static_cast<std::size_t>(cfg.batch_size));
            const auto bsz = static_cast<Eigen::Index>(stop - start);
            Eigen::MatrixXd bx(bsz, X.cols());
            Eigen::VectorXd by(bsz);
            for (Eigen::Index i = 0; i < bsz; ++i) {
                bx.row(i) = X.row(static_cast<Eigen::Index>(order[start + static_cast<std::size_t>(i)]));
                by(i) = ys(static_cast<Eigen::Index>(order[start + static_cast<std::size_t>(i)]));
            }
            const MlpGradients g = loss_gradients(bx, by);
            loss_sum += g.loss;
            ++batches;
            ++step;

            const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(step));
            const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(step));
            for (std::size_t l = 0; l < W_.size(); ++l) {
                mW[l] = cfg.beta1 * mW[l] + (1.0 - cfg.beta1) * g.dW[l];
                vW[l] = cfg.beta2 * vW[l] + (1.0 - cfg.beta2) * g.dW[l].cwiseProduct(g.dW[l]);
                W_[l] -= cfg.learning_rate *
                         (mW[l] / bc1).cwiseQuotient(((vW[l] / bc2).cwiseSqrt().array() + cfg.adam_eps).matrix());
                mb[l] = cfg.beta1 * mb[l] + (1.0 - cfg.beta1) * g.db[l];
                vb[l] = cfg.beta2 * vb[l] + (1.0 - cfg.beta2) * g.db[l].cwiseProduct(g.db[l]);
                b_[l] -= cfg.learning_rate *
                         (mb[l] / bc1).cwiseQuotient(((vb[l] / bc2).cwiseSqrt().array() + cfg.adam_eps).matrix());
            }
        }
        const double epoch_loss = loss_sum / static_cast<double>(batches);
        if (!std::isfinite(epoch_loss)) {
            throw NonFiniteLoss("mlp: loss diverged at epoch " + std::to_string(epoch) +
                                " (lr=" + std::to_string(cfg.learning_rate) + ")");
        }
        epoch_losses_.push_back(epoch_loss);
    }
}

double MlpModel::predict(const Eigen::RowVectorXd& x) const {
    if (!fitted()) throw Error("mlp: predict before fit");
    Eigen::MatrixXd m = x;
    return forward(m)(0) * y_std_ + y_mean_;
}

Eigen::VectorXd MlpModel::predict(const Eigen::MatrixXd& X) const {
    if (!fitted()) throw Error("mlp: predict before fit");
    return (forward(X).array() * y_std_ + y_mean_).matrix();
}

void MlpModel::save(std::ostream& out) const {
    out << "gascast-model 1\nkind mlp\n";
    detail::write_int(out, "layers", static_cast<long long>(W_.size()));
    detail::write_scalar(out, "learning_rate", config_.learning_rate);
    detail::write_int(out, "batch_size", config_.batch_size);
    detail::write_int(out, "epochs", config_.epochs);
    detail::write_int(out, "seed", static_cast<long long>(config_.seed));
    detail::write_scalar(out, "y_mean", y_mean_);
    detail::write_scalar(out, "y_std", y_std_);
    for (std::size_t l = 0; l < W_.size(); ++l) {
        detail::write_matrix(out, "W" + std::to_string(l), W_[l]);
        detail::write_vector(out, "b" + std::to_string(l), b_[l]);
    }
}

MlpModel MlpModel::load(std::istream& in) {
    detail::expect_header(in, "mlp");
    MlpModel m;
    const auto layers = static_cast<std::size_t>(detail::read_int(in, "layers"));
    m.config_.learning_rate = detail::read_scalar(in, "learning_rate");
    m.config_.batch_size = static_cast<int>(detail::read_int(in, "batch_size"));
    m.config_.epochs = static_cast<int>(detail::read_int(in, "epochs"));
    m.config_.seed = static_cast<std::uint64_t>(detail::read_int(in, "seed"));
    m.y_mean_ = detail::read_scalar(in, "y_mean");
    m.y_std_ = detail::read_scalar(in, "y_std");
    m.config_.hidden.clear();
    for (std::size_t l = 0; l < layers; ++l) {
        m.W_.push_back(detail::read_matrix(in, "W" + std::to_string(l)));
        m.b_.push_back(detail::read_vector(in, "b" + std::to_string(l)));
        if (l + 1 < layers) m.config_.hidden.push_back(static_cast<int>(m.W_.back().rows()));
    }
    return m;
}

}  // namespace gascast
