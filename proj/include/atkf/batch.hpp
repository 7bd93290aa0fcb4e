#pragma once

#include "atkf/ltpwl.hpp"
#include "atkf/system.hpp"
#include "atkf/tensor.hpp"

#include <vector>

namespace atkf {

struct GaussianBelief;  // filters.hpp

/// One step of the linear time-varying system equivalent to the lattice
/// approximation: x_{k+1} = A_k x_k + u_{k+1} + w, ybar_k = C_k x_k + v.
struct LtvStep {
    Eigen::MatrixXd A;     // slope of the active f segment at x_k (diagonal)
    Eigen::MatrixXd C;     // slope of the active h segment at x_k (diagonal)
    Eigen::VectorXd u;     // intercept of the active f segment at x_{k-1}; zero for k = 1
    Eigen::VectorXd ybar;  // y_k minus the active h segment's intercept at x_k
};

/// Builds the LTV steps for a trajectory by identifying the active lattice
/// segment of every component at each true state.
std::vector<LtvStep> ltv_steps(const ComponentLtpwl& exprs, const std::vector<Eigen::VectorXd>& states,
                               const std::vector<Eigen::VectorXd>& observations);

/// Stacked generalized least-squares system over moments 1..L:
///   z = [x1_prior; u_2..u_L; ybar_1..ybar_L]
///   H = [[I], [-A_k, I] rows; blockdiag(C_k)]
///   W = blockdiag(P1_prior, Q_2..Q_L, R_1..R_L)
struct BatchSystem {
    Eigen::VectorXd z;
    Eigen::MatrixXd H;
    Eigen::MatrixXd W;
    int state_dim = 0;
    int obs_dim = 0;
    int length = 0;
};

BatchSystem assemble(const std::vector<LtvStep>& steps, const Eigen::VectorXd& prior_mean,
                     const Eigen::MatrixXd& prior_cov, const std::vector<Eigen::MatrixXd>& process_covs,
                     const std::vector<Eigen::MatrixXd>& obs_covs);

/// Constant-noise convenience overload.
BatchSystem assemble(const std::vector<LtvStep>& steps, const Eigen::VectorXd& prior_mean,
                     const Eigen::MatrixXd& prior_cov, const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R);

/// Solves (H^T W^-1 H) xhat = H^T W^-1 z by Cholesky of the normal matrix and
/// unstacks the result into per-step states.
std::vector<Eigen::VectorXd> batch_estimate(const BatchSystem& sys);

/// One pre-training sample: the zero-padded feature windows the filter would
/// see at step j, the pseudo prior, and the true state as target. The last
/// row of dy_window is the innovation used in the pre-training update.
struct PretrainPair {
    Tensor dx_window;
    Tensor dy_window;
    Eigen::VectorXd prior;
    Eigen::VectorXd target;
};

/// Derives the per-step feature windows from batch estimates xhat: pseudo
/// priors roll the filter model forward from the previous estimate
/// (prior_1 = f(x0)), innovations compare the trajectory's observations with
/// h(prior). Returns one pair per step.
std::vector<PretrainPair> build_pretrain_instance(const Trajectory& traj,
                                                  const std::vector<Eigen::VectorXd>& xhat,
                                                  const SystemModel& filter_model,
                                                  const Eigen::VectorXd& x0, int window);

struct PretrainDataset {
    DatasetMeta meta;
    int window = 0;
    std::vector<std::vector<PretrainPair>> instances;
};

}  // namespace atkf
