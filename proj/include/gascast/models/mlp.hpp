#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace gascast {

struct MlpConfig {
    std::vector<int> hidden{24, 12, 4};  // widths between input and the single output
    double learning_rate = 1e-3;
    int batch_size = 32;
    int epochs = 1000;
    std::uint64_t seed = 0;
    // moment smoothing constants of the optimizer
    double beta1 = 0.9;
    double beta2 = 0.999;
    double adam_eps = 1e-8;
};

// Gradients of the mean-squared-error loss over one batch, aligned with
// the weight/bias layout of the network.
struct MlpGradients {
    std::vector<Eigen::MatrixXd> dW;
    std::vector<Eigen::VectorXd> db;
    double loss = 0.0;
};

// Fully connected network with ReLU hidden activations and a linear
// output, trained by mini-batch ADAM on the MSE loss. Targets are
// standardized during training and mapped back at prediction. Fixing the
// seed makes training bit-reproducible on one platform.
class MlpModel {
public:
    void fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const MlpConfig& cfg);

    double predict(const Eigen::RowVectorXd& x) const;
    Eigen::VectorXd predict(const Eigen::MatrixXd& X) const;

    const MlpConfig& config() const { return config_; }
    const std::vector<Eigen::MatrixXd>& weights() const { return W_; }
    const std::vector<Eigen::VectorXd>& biases() const { return b_; }
    std::vector<Eigen::MatrixXd>& weights() { return W_; }
    std::vector<Eigen::VectorXd>& biases() { return b_; }
    const std::vector<double>& epoch_losses() const { return epoch_losses_; }
    bool fitted() const { return !W_.empty(); }

    // Forward/backward pass with the current weights on an arbitrary
    // batch; exposed so the analytic gradients can be checked externally.
    MlpGradients loss_gradients(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) const;
    // forward pass on the standardized scale
    Eigen::VectorXd forward(const Eigen::MatrixXd& X) const;

    void save(std::ostream& out) const;
    static MlpModel load(std::istream& in);

private:
    void init_weights(int input_width, std::uint64_t seed);

    MlpConfig config_;
    std::vector<Eigen::MatrixXd> W_;  // W_[l]: width_out x width_in
    std::vector<Eigen::VectorXd> b_;
    double y_mean_ = 0.0;
    double y_std_ = 1.0;
    std::vector<double> epoch_losses_;
};

}  // namespace gascast
