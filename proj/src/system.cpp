#include "atkf/system.hpp"

#include "atkf/psd.hpp"
#include "atkf/rng.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <stdexcept>

namespace atkf {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_diagonal(const Eigen::MatrixXd& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (i != j && m(i, j) != 0.0) return false;
    return true;
}

/// Noise shaping matrix S with S * S^T = cov. Diagonal covariances take the
/// elementwise square root; anything else goes through Cholesky.
Eigen::MatrixXd noise_transform(const Eigen::MatrixXd& cov, const char* name) {
    if (!is_symmetric(cov))
        throw std::invalid_argument(std::string(name) + " must be symmetric");
    if (is_diagonal(cov)) {
        Eigen::MatrixXd s = Eigen::MatrixXd::Zero(cov.rows(), cov.cols());
        for (int i = 0; i < cov.rows(); ++i) {
            if (cov(i, i) < 0.0)
                throw std::invalid_argument(std::string(name) + " has a negative diagonal entry");
            s(i, i) = std::sqrt(cov(i, i));
        }
        return s;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument(std::string(name) + " is not positive definite (Cholesky failed)");
    return llt.matrixL();
}

}  // namespace

void validate_model(const SystemModel& model) {
    if (model.state_dim <= 0 || model.obs_dim <= 0)
        throw std::invalid_argument("model dimensions must be positive");
    if (model.Q.rows() != model.state_dim || model.Q.cols() != model.state_dim)
        throw std::invalid_argument("Q has wrong dimensions");
    if (model.R.rows() != model.obs_dim || model.R.cols() != model.obs_dim)
        throw std::invalid_argument("R has wrong dimensions");
    if (!is_symmetric(model.Q)) throw std::invalid_argument("Q must be symmetric");
    if (!is_symmetric(model.R)) throw std::invalid_argument("R must be symmetric");
    // PSD check; psd_sqrt throws on a meaningfully negative eigenvalue.
    psd_sqrt(model.Q);
    psd_sqrt(model.R);
    if (!model.f || !model.h || !model.jac_f || !model.jac_h)
        throw std::invalid_argument("model is missing f/h or a Jacobian");
}

SynthParams para_s() { return {0.9, 1.1, 0.1 * kPi, 0.01, 1.0, 1.0, 0.0}; }

SynthParams para_m() { return {1.0, 1.0, 0.0, 0.0, 1.0, 1.0, 0.0}; }

Eigen::VectorXd synth_f(const SynthParams& p, const Eigen::VectorXd& x) {
    Eigen::VectorXd out(x.size());
    for (int i = 0; i < x.size(); ++i) out[i] = p.alpha * std::sin(p.beta * x[i] + p.phi) + p.delta;
    return out;
}

Eigen::VectorXd synth_h(const SynthParams& p, const Eigen::VectorXd& x) {
    Eigen::VectorXd out(x.size());
    for (int i = 0; i < x.size(); ++i) {
        const double t = p.b * x[i] + p.c;
        out[i] = p.a * t * t;
    }
    return out;
}

Eigen::MatrixXd synth_jac_f(const SynthParams& p, const Eigen::VectorXd& x) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(x.size(), x.size());
    for (int i = 0; i < x.size(); ++i) j(i, i) = p.alpha * p.beta * std::cos(p.beta * x[i] + p.phi);
    return j;
}

Eigen::MatrixXd synth_jac_h(const SynthParams& p, const Eigen::VectorXd& x) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(x.size(), x.size());
    for (int i = 0; i < x.size(); ++i) j(i, i) = 2.0 * p.a * p.b * (p.b * x[i] + p.c);
    return j;
}

SystemModel make_synth_model(const SynthParams& p, Eigen::MatrixXd Q, Eigen::MatrixXd R) {
    SystemModel model;
    model.state_dim = static_cast<int>(Q.rows());
    model.obs_dim = static_cast<int>(R.rows());
    model.f = [p](const Eigen::VectorXd& x) { return synth_f(p, x); };
    model.h = [p](const Eigen::VectorXd& x) { return synth_h(p, x); };
    model.jac_f = [p](const Eigen::VectorXd& x) { return synth_jac_f(p, x); };
    model.jac_h = [p](const Eigen::VectorXd& x) { return synth_jac_h(p, x); };
    model.Q = std::move(Q);
    model.R = std::move(R);
    return model;
}

SystemModel make_synth_model(const SynthParams& p, double q2, double r2, int dim) {
    return make_synth_model(p, q2 * Eigen::MatrixXd::Identity(dim, dim),
                            r2 * Eigen::MatrixXd::Identity(dim, dim));
}

Trajectory simulate_trajectory(const SystemModel& model, const Eigen::VectorXd& x0, int length,
                               std::uint64_t seed) {
    if (length < 1) throw std::invalid_argument("simulate_trajectory: length must be >= 1");
    if (x0.size() != model.state_dim) throw std::invalid_argument("simulate_trajectory: bad x0 size");
    const Eigen::MatrixXd sq = noise_transform(model.Q, "Q");
    const Eigen::MatrixXd sr = noise_transform(model.R, "R");

    Rng rng(seed);
    auto draw = [&rng](int n) {
        Eigen::VectorXd z(n);
        for (int i = 0; i < n; ++i) z[i] = rng.gaussian();
        return z;
    };

    Trajectory traj;
    traj.states.reserve(length);
    traj.observations.reserve(length);
    Eigen::VectorXd x = x0;
    for (int k = 0; k < length; ++k) {
        x = model.f(x) + sq * draw(model.state_dim);
        traj.states.push_back(x);
        traj.observations.push_back(model.h(x) + sr * draw(model.obs_dim));
    }
    return traj;
}

Dataset generate_dataset(const SystemModel& model, const Eigen::VectorXd& x0, int count, int length,
                         std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("generate_dataset: count must be >= 1");
    Dataset ds;
    ds.meta.count = count;
    ds.meta.length = length;
    ds.meta.state_dim = model.state_dim;
    ds.meta.obs_dim = model.obs_dim;
    ds.meta.q2 = model.Q.size() > 0 ? model.Q(0, 0) : 0.0;
    ds.meta.r2 = model.R.size() > 0 ? model.R(0, 0) : 0.0;
    ds.meta.seed = seed;
    ds.instances.reserve(count);
    for (int i = 0; i < count; ++i)
        ds.instances.push_back(
            simulate_trajectory(model, x0, length, derive_seed(seed, {static_cast<std::uint64_t>(i)})));
    return ds;
}

std::vector<Eigen::VectorXd> noise_free_trajectory(const SystemModel& model, const Eigen::VectorXd& x0,
                                                   int length) {
    if (length < 1) throw std::invalid_argument("noise_free_trajectory: length must be >= 1");
    std::vector<Eigen::VectorXd> points;
    points.reserve(length);
    Eigen::VectorXd x = x0;
    for (int k = 0; k < length; ++k) {
        x = model.f(x);
        points.push_back(x);
    }
    return points;
}

}  // namespace atkf
