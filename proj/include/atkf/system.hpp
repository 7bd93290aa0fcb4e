#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <vector>

namespace atkf {

/// Discrete-time nonlinear state-space model
///   x_k = f(x_{k-1}) + w_k,  w_k ~ N(0, Q)
///   y_k = h(x_k)     + v_k,  v_k ~ N(0, R)
struct SystemModel {
    int state_dim = 0;
    int obs_dim = 0;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> f;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> h;
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> jac_f;
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> jac_h;
    Eigen::MatrixXd Q;
    Eigen::MatrixXd R;
};

/// Throws std::invalid_argument unless dimensions are consistent and Q, R are
/// symmetric positive semidefinite.
void validate_model(const SystemModel& model);

/// Parameters of the two-dimensional benchmark
///   f(x) = alpha * sin(beta * x + phi) + delta   (componentwise)
///   h(x) = a * (b * x + c)^2                     (componentwise)
struct SynthParams {
    double alpha, beta, phi, delta, a, b, c;
};

/// True system parameters (0.9, 1.1, 0.1*pi, 0.01, 1, 1, 0).
SynthParams para_s();
/// Mismatched filter-side parameters (1, 1, 0, 0, 1, 1, 0).
SynthParams para_m();

Eigen::VectorXd synth_f(const SynthParams& p, const Eigen::VectorXd& x);
Eigen::VectorXd synth_h(const SynthParams& p, const Eigen::VectorXd& x);
Eigen::MatrixXd synth_jac_f(const SynthParams& p, const Eigen::VectorXd& x);
Eigen::MatrixXd synth_jac_h(const SynthParams& p, const Eigen::VectorXd& x);

SystemModel make_synth_model(const SynthParams& p, Eigen::MatrixXd Q, Eigen::MatrixXd R);
/// Q = q2 * I, R = r2 * I on a dim-dimensional state/observation space.
SystemModel make_synth_model(const SynthParams& p, double q2, double r2, int dim = 2);

struct Trajectory {
    std::vector<Eigen::VectorXd> states;
    std::vector<Eigen::VectorXd> observations;
    int length() const { return static_cast<int>(states.size()); }
};

struct DatasetMeta {
    int count = 0;
    int length = 0;
    int state_dim = 0;
    int obs_dim = 0;
    double q2 = 0.0;
    double r2 = 0.0;
    std::uint64_t seed = 0;
};

struct Dataset {
    DatasetMeta meta;
    std::vector<Trajectory> instances;
};

/// Simulates length steps from x0. Deterministic in (model, x0, length, seed);
/// per-step draw order is w_1, v_1, w_2, v_2, ...
Trajectory simulate_trajectory(const SystemModel& model, const Eigen::VectorXd& x0, int length,
                               std::uint64_t seed);

/// count independent trajectories; instance i uses derive_seed(seed, {i}).
Dataset generate_dataset(const SystemModel& model, const Eigen::VectorXd& x0, int count, int length,
                         std::uint64_t seed);

/// Deterministic rollout of f alone: f(x0), f(f(x0)), ... (length points).
std::vector<Eigen::VectorXd> noise_free_trajectory(const SystemModel& model, const Eigen::VectorXd& x0,
                                                   int length);

}  // namespace atkf
