#pragma once

#include <Eigen/Dense>
#include <vector>

#include "tnt/rng.hpp"

namespace tnt {

struct DenseLayer {
  Eigen::MatrixXd weight;  // out x in
  Eigen::VectorXd bias;
};

// Fully-connected net, tanh after every layer except the last.
struct DenseNet {
  std::vector<DenseLayer> layers;

  int input_dim() const {
    return layers.empty() ? 0 : int(layers.front().weight.cols());
  }
  int output_dim() const {
    return layers.empty() ? 0 : int(layers.back().weight.rows());
  }
};

// Xavier-uniform weights, zero biases. sizes = {in, hidden..., out}.
DenseNet make_net(const std::vector<int>& sizes, Rng& rng);

Eigen::VectorXd net_forward(const DenseNet& net, const Eigen::VectorXd& x);

// activations[0] is the input, activations[k+1] the post-activation output of
// layer k (linear for the last layer).
struct ForwardTrace {
  std::vector<Eigen::VectorXd> activations;
};

Eigen::VectorXd net_forward(const DenseNet& net, const Eigen::VectorXd& x,
                            ForwardTrace& trace);

struct NetGradient {
  std::vector<DenseLayer> layers;
  Eigen::VectorXd input;  // dL/dx
};

// Backprop of dL/dy through the trace.
NetGradient net_backward(const DenseNet& net, const ForwardTrace& trace,
                         const Eigen::VectorXd& output_grad);

NetGradient zero_gradient(const DenseNet& net);
void accumulate(NetGradient& into, const NetGradient& g, double scale = 1.0);
void scale_gradient(NetGradient& g, double scale);

std::vector<double> net_parameters(const DenseNet& net);
void set_net_parameters(DenseNet& net, const std::vector<double>& params);

struct AdamState {
  double lr = 3e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  long step_count = 0;
  std::vector<double> m, v;
};

AdamState make_adam(const DenseNet& net, double lr);
void adam_step(DenseNet& net, const NetGradient& grad, AdamState& state);

void sgd_step(DenseNet& net, const NetGradient& grad, double lr);

// target <- (1 - tau) * target + tau * online
void polyak_update(DenseNet& target, const DenseNet& online, double tau);

// Central-difference check of net_backward on random parameter coordinates;
// returns the worst relative mismatch.
double gradient_check(DenseNet& net, const Eigen::VectorXd& x, int probes,
                      Rng& rng);

}  // namespace tnt
