#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace simgap::nn {

// Dense row-major tensor of doubles. Everything in the training stack is
// small enough that 64-bit floats are the cheapest way to keep gradient
// checks tight.
struct Tensor {
    std::vector<std::size_t> shape;
    std::vector<double> data;

    Tensor() = default;

    Tensor(std::vector<std::size_t> s, double fill = 0.0) : shape(std::move(s)) {
        data.assign(numel_of(shape), fill);
    }

    static Tensor vec(std::vector<double> values) {
        Tensor t;
        t.shape = {values.size()};
        t.data = std::move(values);
        return t;
    }

    static std::size_t numel_of(const std::vector<std::size_t>& s) {
        std::size_t n = 1;
        for (std::size_t e : s) n *= e;
        return n;
    }

    std::size_t numel() const { return data.size(); }

    double& operator[](std::size_t i) { return data[i]; }
    double operator[](std::size_t i) const { return data[i]; }

    bool finite() const {
        for (double v : data)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

inline void check_shape(const Tensor& t, std::size_t expect, const std::string& what) {
    if (t.numel() != expect)
        throw std::invalid_argument(what + ": expected " + std::to_string(expect) +
                                    " values, got " + std::to_string(t.numel()));
}

} // namespace simgap::nn
