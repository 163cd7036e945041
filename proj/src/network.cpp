#include "simgap/network.hpp"

#include <cmath>
#include <stdexcept>

namespace simgap::nn {

std::size_t Network::param_count() const {
    std::size_t n = 0;
    for (const auto& layer : layers)
        if (const auto* d = std::get_if<Dense>(&layer)) n += d->w.size() + d->b.size();
    return n;
}

std::size_t Network::input_dim() const {
    for (const auto& layer : layers)
        if (const auto* d = std::get_if<Dense>(&layer)) return d->in;
    return 0;
}

std::size_t Network::output_dim() const {
    for (auto it = layers.rbegin(); it != layers.rend(); ++it)
        if (const auto* d = std::get_if<Dense>(&*it)) return d->out;
    return 0;
}

std::vector<double*> Network::param_views() {
    std::vector<double*> views;
    for (auto& layer : layers) {
        if (auto* d = std::get_if<Dense>(&layer)) {
            views.push_back(d->w.data());
            views.push_back(d->b.data());
        }
    }
    return views;
}

std::vector<const double*> Network::param_views() const {
    std::vector<const double*> views;
    for (const auto& layer : layers) {
        if (const auto* d = std::get_if<Dense>(&layer)) {
            views.push_back(d->w.data());
            views.push_back(d->b.data());
        }
    }
    return views;
}

std::vector<std::size_t> Network::param_sizes() const {
    std::vector<std::size_t> sizes;
    for (const auto& layer : layers) {
        if (const auto* d = std::get_if<Dense>(&layer)) {
            sizes.push_back(d->w.size());
            sizes.push_back(d->b.size());
        }
    }
    return sizes;
}

void Network::set_grl_lambda(double lambda) {
    for (auto& layer : layers)
        if (auto* g = std::get_if<Grl>(&layer)) g->lambda = lambda;
}

void ParamGrads::accumulate(const ParamGrads& other, double scale) {
    for (std::size_t l = 0; l < dw.size(); ++l) {
        for (std::size_t i = 0; i < dw[l].size(); ++i) dw[l][i] += scale * other.dw[l][i];
        for (std::size_t i = 0; i < db[l].size(); ++i) db[l][i] += scale * other.db[l][i];
    }
}

void ParamGrads::scale_all(double s) {
    for (auto& v : dw)
        for (double& x : v) x *= s;
    for (auto& v : db)
        for (double& x : v) x *= s;
}

ParamGrads zero_grads(const Network& net) {
    ParamGrads g;
    g.dw.resize(net.layers.size());
    g.db.resize(net.layers.size());
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        if (const auto* d = std::get_if<Dense>(&net.layers[l])) {
            g.dw[l].assign(d->w.size(), 0.0);
            g.db[l].assign(d->b.size(), 0.0);
        }
    }
    return g;
}

void init_network(Network& net, Rng& rng) {
    for (auto& layer : net.layers) {
        if (auto* d = std::get_if<Dense>(&layer)) {
            const double bound = std::sqrt(6.0 / static_cast<double>(d->in + d->out));
            for (double& w : d->w) w = rng.uniform(-bound, bound);
            for (double& b : d->b) b = 0.0;
        }
    }
}

namespace {

double apply_act(Act fn, double x) {
    switch (fn) {
        case Act::Tanh: return std::tanh(x);
        case Act::Relu: return x > 0.0 ? x : 0.0;
        case Act::Sigmoid: return sigmoid(x);
    }
    return x;
}

// Derivative expressed through the layer INPUT value.
double act_grad(Act fn, double x) {
    switch (fn) {
        case Act::Tanh: {
            const double t = std::tanh(x);
            return 1.0 - t * t;
        }
        case Act::Relu: return x > 0.0 ? 1.0 : 0.0;
        case Act::Sigmoid: {
            const double s = sigmoid(x);
            return s * (1.0 - s);
        }
    }
    return 1.0;
}

} // namespace

Tensor forward(const Network& net, const Tensor& input, Tape* tape) {
    Tensor x = input;
    if (tape) {
        tape->inputs.clear();
        tape->inputs.reserve(net.layers.size());
    }
    for (const auto& layer : net.layers) {
        if (tape) tape->inputs.push_back(x);
        if (const auto* d = std::get_if<Dense>(&layer)) {
            check_shape(x, d->in, "dense forward");
            Tensor y({d->out});
            for (std::size_t o = 0; o < d->out; ++o) {
                const double* row = d->w.data() + o * d->in;
                double acc = d->b[o];
                for (std::size_t i = 0; i < d->in; ++i) acc += row[i] * x.data[i];
                y.data[o] = acc;
            }
            x = std::move(y);
        } else if (const auto* a = std::get_if<Activation>(&layer)) {
            for (double& v : x.data) v = apply_act(a->fn, v);
        }
        // Grl: identity in forward mode.
    }
    if (tape) tape->output = x;
    return x;
}

Tensor backward(const Network& net, const Tape& tape, const Tensor& upstream, ParamGrads& grads) {
    if (tape.inputs.size() != net.layers.size())
        throw std::invalid_argument("backward: tape does not match network");
    check_shape(upstream, tape.output.numel(), "backward upstream");

    Tensor g = upstream;
    for (std::size_t li = net.layers.size(); li-- > 0;) {
        const Tensor& x = tape.inputs[li];
        const auto& layer = net.layers[li];
        if (const auto* d = std::get_if<Dense>(&layer)) {
            check_shape(g, d->out, "dense backward");
            auto& dw = grads.dw[li];
            auto& db = grads.db[li];
            Tensor gx({d->in});
            for (std::size_t o = 0; o < d->out; ++o) {
                const double go = g.data[o];
                db[o] += go;
                const double* row = d->w.data() + o * d->in;
                double* dwrow = dw.data() + o * d->in;
                for (std::size_t i = 0; i < d->in; ++i) {
                    dwrow[i] += go * x.data[i];
                    gx.data[i] += go * row[i];
                }
            }
            g = std::move(gx);
        } else if (const auto* a = std::get_if<Activation>(&layer)) {
            for (std::size_t i = 0; i < g.numel(); ++i) g.data[i] *= act_grad(a->fn, x.data[i]);
        } else if (const auto* r = std::get_if<Grl>(&layer)) {
            for (double& v : g.data) v *= -r->lambda;
        }
    }
    return g;
}

double sigmoid(double x) {
    if (x >= 0.0) {
        const double e = std::exp(-x);
        return 1.0 / (1.0 + e);
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

double bce_with_logits(double logit, double target, double* d_logit) {
    // max(z,0) - z*t + log(1+exp(-|z|))
    const double z = logit;
    const double loss = (z > 0.0 ? z : 0.0) - z * target + std::log1p(std::exp(-std::abs(z)));
    if (d_logit) *d_logit = sigmoid(z) - target;
    return loss;
}

Network make_mlp(std::size_t in, std::size_t out, Act hidden_act, std::size_t hidden) {
    Network net;
    if (hidden == 0) {
        net.layers.emplace_back(Dense(in, out));
    } else {
        net.layers.emplace_back(Dense(in, hidden));
        net.layers.emplace_back(Activation{hidden_act});
        net.layers.emplace_back(Dense(hidden, out));
    }
    return net;
}

} // namespace simgap::nn
