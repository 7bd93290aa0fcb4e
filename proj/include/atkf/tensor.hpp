#pragma once

#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace atkf {

/// Dense row-major tensor of doubles. Deliberately minimal: shape plus a flat
/// buffer, with 2-D accessors for the matrix-shaped intermediates of the
/// attention network.
struct Tensor {
    std::vector<std::size_t> shape;
    std::vector<double> data;

    Tensor() = default;

    Tensor(std::initializer_list<std::size_t> dims, std::vector<double> values)
        : shape(dims), data(std::move(values)) {
        if (data.size() != element_count(shape))
            throw std::invalid_argument("Tensor: data length does not match shape");
    }

    static Tensor zeros(std::initializer_list<std::size_t> dims) {
        Tensor t;
        t.shape.assign(dims);
        t.data.assign(element_count(t.shape), 0.0);
        return t;
    }

    static std::size_t element_count(const std::vector<std::size_t>& dims) {
        return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                               [](std::size_t a, std::size_t b) { return a * b; });
    }

    std::size_t size() const { return data.size(); }
    double* ptr() { return data.data(); }
    const double* ptr() const { return data.data(); }

    std::size_t rows() const { return shape.empty() ? 0 : shape[0]; }
    std::size_t cols() const { return shape.size() < 2 ? 1 : shape[1]; }

    double& at(std::size_t i, std::size_t j) { return data[i * cols() + j]; }
    double at(std::size_t i, std::size_t j) const { return data[i * cols() + j]; }

    bool same_shape(const Tensor& other) const { return shape == other.shape; }
};

}  // namespace atkf
