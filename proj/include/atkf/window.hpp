#pragma once

#include "atkf/tensor.hpp"

#include <Eigen/Dense>

#include <stdexcept>

namespace atkf {

/// Sliding feature window of the last `s` forward update differences and
/// innovations, oldest first. Slots that predate the filter start read back
/// as exact zeros.
class FeatureWindow {
public:
    FeatureWindow(int window, int state_dim, int obs_dim)
        : window_(window), state_dim_(state_dim), obs_dim_(obs_dim) {
        if (window < 1) throw std::invalid_argument("FeatureWindow: window size must be >= 1");
        dx_ = Tensor::zeros({static_cast<std::size_t>(window), static_cast<std::size_t>(state_dim)});
        dy_ = Tensor::zeros({static_cast<std::size_t>(window), static_cast<std::size_t>(obs_dim)});
    }

    /// Appends (dx, dy) as the newest entries, evicting the oldest.
    void push(const Eigen::VectorXd& dx, const Eigen::VectorXd& dy) {
        if (dx.size() != state_dim_ || dy.size() != obs_dim_)
            throw std::invalid_argument("FeatureWindow::push: dimension mismatch");
        shift_in(dx_, dx);
        shift_in(dy_, dy);
    }

    /// (s x m) matrix of dx entries, oldest row first.
    const Tensor& dx_window() const { return dx_; }
    /// (s x n) matrix of dy entries, oldest row first.
    const Tensor& dy_window() const { return dy_; }

    int window() const { return window_; }
    int state_dim() const { return state_dim_; }
    int obs_dim() const { return obs_dim_; }

private:
    static void shift_in(Tensor& buf, const Eigen::VectorXd& value) {
        const std::size_t rows = buf.rows(), cols = buf.cols();
        for (std::size_t r = 0; r + 1 < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) buf.at(r, c) = buf.at(r + 1, c);
        for (std::size_t c = 0; c < cols; ++c) buf.at(rows - 1, c) = value[static_cast<int>(c)];
    }

    int window_, state_dim_, obs_dim_;
    Tensor dx_, dy_;
};

}  // namespace atkf
