#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "simgap/rng.hpp"
#include "simgap/tensor.hpp"

namespace simgap::nn {

enum class Act { Tanh, Relu, Sigmoid };

// Fully connected layer, weights stored row-major as out x in.
struct Dense {
    std::size_t in = 0;
    std::size_t out = 0;
    std::vector<double> w;
    std::vector<double> b;

    Dense() = default;
    Dense(std::size_t in_dim, std::size_t out_dim)
        : in(in_dim), out(out_dim), w(in_dim * out_dim, 0.0), b(out_dim, 0.0) {}
};

struct Activation {
    Act fn = Act::Tanh;
};

// Gradient reversal layer: identity forward, multiplies the flowing gradient
// by -lambda in the backward pass. Carries no parameters.
struct Grl {
    double lambda = 0.0;
};

using Layer = std::variant<Dense, Activation, Grl>;

// Ordered layer stack. Values only; copying a Network snapshots it.
struct Network {
    std::vector<Layer> layers;

    std::size_t param_count() const;
    std::size_t input_dim() const;  // 0 when the net has no dense layer
    std::size_t output_dim() const;

    // Flattened parameter access in layer order (w then b per dense layer).
    std::vector<double*> param_views();
    std::vector<const double*> param_views() const;
    std::vector<std::size_t> param_sizes() const;

    void set_grl_lambda(double lambda);
};

// Per-layer inputs captured during forward; enough to replay the exact
// backward pass.
struct Tape {
    std::vector<Tensor> inputs;
    Tensor output;
};

// Parameter gradients, mirroring the dense layers of a network.
struct ParamGrads {
    std::vector<std::vector<double>> dw; // one entry per layer; empty for non-dense
    std::vector<std::vector<double>> db;

    void accumulate(const ParamGrads& other, double scale = 1.0);
    void scale_all(double s);
};

ParamGrads zero_grads(const Network& net);

// Glorot-uniform init: each dense layer's weights are uniform in
// +-sqrt(6/(fan_in+fan_out)), biases zero. Draw order is layer order,
// weights before biases, so a seed pins the exact initial state.
void init_network(Network& net, Rng& rng);

Tensor forward(const Network& net, const Tensor& input, Tape* tape = nullptr);

// Exact reverse-mode gradients. Crossing a Grl multiplies the flowing
// gradient by -lambda; parameters upstream of it therefore descend the
// negated loss when the result is fed to a minimizing optimizer.
Tensor backward(const Network& net, const Tape& tape, const Tensor& upstream, ParamGrads& grads);

double sigmoid(double x);

// Numerically stable binary cross-entropy on a logit. d_logit receives
// dL/dz = sigmoid(z) - target.
double bce_with_logits(double logit, double target, double* d_logit = nullptr);

// Convenience builders used by the detector.
Network make_mlp(std::size_t in, std::size_t out, Act hidden_act, std::size_t hidden = 0);

} // namespace simgap::nn
