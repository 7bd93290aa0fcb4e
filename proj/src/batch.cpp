#include "atkf/batch.hpp"

#include "atkf/psd.hpp"
#include "atkf/window.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <stdexcept>
#include <string>

namespace atkf {

namespace {

/// Cholesky factorization that reports the failing pivot. Returns -1 on
/// success, otherwise the index of the first non-positive pivot.
int cholesky_in_place(Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    for (int j = 0; j < n; ++j) {
        double d = a(j, j);
        for (int k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
        if (!(d > 0.0) || !std::isfinite(d)) return j;
        a(j, j) = std::sqrt(d);
        for (int i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (int k = 0; k < j; ++k) s -= a(i, k) * a(j, k);
            a(i, j) = s / a(j, j);
        }
    }
    return -1;
}

Eigen::VectorXd cholesky_solve(const Eigen::MatrixXd& lower, const Eigen::VectorXd& b) {
    const int n = static_cast<int>(lower.rows());
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        double s = b[i];
        for (int k = 0; k < i; ++k) s -= lower(i, k) * y[k];
        y[i] = s / lower(i, i);
    }
    Eigen::VectorXd x(n);
    for (int i = n - 1; i >= 0; --i) {
        double s = y[i];
        for (int k = i + 1; k < n; ++k) s -= lower(k, i) * x[k];
        x[i] = s / lower(i, i);
    }
    return x;
}

void require_pd_block(const Eigen::MatrixXd& block, const std::string& name) {
    Eigen::LLT<Eigen::MatrixXd> llt(block);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("assemble: W block " + name + " is not positive definite");
}

}  // namespace

std::vector<LtvStep> ltv_steps(const ComponentLtpwl& exprs, const std::vector<Eigen::VectorXd>& states,
                               const std::vector<Eigen::VectorXd>& observations) {
    if (states.size() != observations.size())
        throw std::invalid_argument("ltv_steps: states/observations length mismatch");
    if (states.empty()) throw std::invalid_argument("ltv_steps: empty trajectory");
    const int m = static_cast<int>(exprs.f.size());

    auto active_f = [&](int c, double x) { return exprs.f[c].segments[active_segment(exprs.f[c], x)]; };
    auto active_h = [&](int c, double x) { return exprs.h[c].segments[active_segment(exprs.h[c], x)]; };

    std::vector<LtvStep> steps(states.size());
    for (std::size_t k = 0; k < states.size(); ++k) {
        LtvStep& st = steps[k];
        st.A = Eigen::MatrixXd::Zero(m, m);
        st.C = Eigen::MatrixXd::Zero(m, m);
        st.u = Eigen::VectorXd::Zero(m);
        st.ybar = Eigen::VectorXd::Zero(m);
        for (int c = 0; c < m; ++c) {
            const AffineSegment fa = active_f(c, states[k][c]);
            const AffineSegment ha = active_h(c, states[k][c]);
            st.A(c, c) = fa.slope;
            st.C(c, c) = ha.slope;
            st.ybar[c] = observations[k][c] - ha.intercept;
            if (k > 0) st.u[c] = active_f(c, states[k - 1][c]).intercept;
        }
    }
    return steps;
}

BatchSystem assemble(const std::vector<LtvStep>& steps, const Eigen::VectorXd& prior_mean,
                     const Eigen::MatrixXd& prior_cov, const std::vector<Eigen::MatrixXd>& process_covs,
                     const std::vector<Eigen::MatrixXd>& obs_covs) {
    const int L = static_cast<int>(steps.size());
    if (L < 1) throw std::invalid_argument("assemble: need at least one step");
    const int m = static_cast<int>(steps[0].A.rows());
    const int n = static_cast<int>(steps[0].C.rows());
    if (static_cast<int>(process_covs.size()) != L - 1)
        throw std::invalid_argument("assemble: expected L-1 process covariance blocks (Q_2..Q_L)");
    if (static_cast<int>(obs_covs.size()) != L)
        throw std::invalid_argument("assemble: expected L observation covariance blocks");

    BatchSystem sys;
    sys.state_dim = m;
    sys.obs_dim = n;
    sys.length = L;

    const int rows = L * m + L * n;
    const int cols = L * m;
    sys.H = Eigen::MatrixXd::Zero(rows, cols);
    sys.W = Eigen::MatrixXd::Zero(rows, rows);
    sys.z = Eigen::VectorXd::Zero(rows);

    for (int k = 0; k < L; ++k) {
        sys.H.block(k * m, k * m, m, m) = Eigen::MatrixXd::Identity(m, m);
        if (k > 0) sys.H.block(k * m, (k - 1) * m, m, m) = -steps[k - 1].A;
        sys.H.block(L * m + k * n, k * m, n, m) = steps[k].C;
        sys.z.segment(k == 0 ? 0 : k * m, m) = k == 0 ? prior_mean : steps[k].u;
        sys.z.segment(L * m + k * n, n) = steps[k].ybar;
    }

    require_pd_block(prior_cov, "P1");
    sys.W.block(0, 0, m, m) = prior_cov;
    for (int k = 1; k < L; ++k) {
        require_pd_block(process_covs[k - 1], "Q" + std::to_string(k + 1));
        sys.W.block(k * m, k * m, m, m) = process_covs[k - 1];
    }
    for (int k = 0; k < L; ++k) {
        require_pd_block(obs_covs[k], "R" + std::to_string(k + 1));
        sys.W.block(L * m + k * n, L * m + k * n, n, n) = obs_covs[k];
    }
    return sys;
}

BatchSystem assemble(const std::vector<LtvStep>& steps, const Eigen::VectorXd& prior_mean,
                     const Eigen::MatrixXd& prior_cov, const Eigen::MatrixXd& Q,
                     const Eigen::MatrixXd& R) {
    const int L = static_cast<int>(steps.size());
    return assemble(steps, prior_mean, prior_cov,
                    std::vector<Eigen::MatrixXd>(static_cast<std::size_t>(std::max(0, L - 1)), Q),
                    std::vector<Eigen::MatrixXd>(static_cast<std::size_t>(L), R), {});
}

std::vector<Eigen::VectorXd> batch_estimate(const BatchSystem& sys) {
    // W is block-diagonal; a dense solve of W X = H is still cheap at this
    // scale and keeps the code in one place.
    const Eigen::MatrixXd winv_h = sys.W.ldlt().solve(sys.H);
    Eigen::MatrixXd normal = sys.H.transpose() * winv_h;
    const Eigen::VectorXd rhs = winv_h.transpose() * sys.z;

    const int pivot = cholesky_in_place(normal);
    if (pivot >= 0)
        throw std::runtime_error("batch_estimate: normal matrix is singular at pivot " +
                                 std::to_string(pivot));
    const Eigen::VectorXd flat = cholesky_solve(normal, rhs);

    std::vector<Eigen::VectorXd> out(static_cast<std::size_t>(sys.length));
    for (int k = 0; k < sys.length; ++k) out[k] = flat.segment(k * sys.state_dim, sys.state_dim);
    return out;
}

std::vector<PretrainPair> build_pretrain_instance(const Trajectory& traj,
                                                  const std::vector<Eigen::VectorXd>& xhat,
                                                  const SystemModel& filter_model,
                                                  const Eigen::VectorXd& x0, int window) {
    const int L = traj.length();
    if (static_cast<int>(xhat.size()) != L)
        throw std::invalid_argument("build_pretrain_instance: xhat length mismatch");

    std::vector<PretrainPair> pairs;
    pairs.reserve(L);
    FeatureWindow win(window, filter_model.state_dim, filter_model.obs_dim);

    Eigen::VectorXd prev_prior;  // prior of step j-1, undefined at j = 1
    for (int j = 0; j < L; ++j) {
        const Eigen::VectorXd& prev_estimate = j == 0 ? x0 : xhat[j - 1];
        const Eigen::VectorXd prior = filter_model.f(prev_estimate);
        const Eigen::VectorXd innovation = traj.observations[j] - filter_model.h(prior);
        // dx_0 is zero by convention: at the first step there is no
        // prior/posterior split yet.
        const Eigen::VectorXd dx = j == 0 ? Eigen::VectorXd::Zero(filter_model.state_dim).eval()
                                          : (xhat[j - 1] - prev_prior).eval();
        win.push(dx, innovation);

        PretrainPair pair;
        pair.dx_window = win.dx_window();
        pair.dy_window = win.dy_window();
        pair.prior = prior;
        pair.target = traj.states[j];
        pairs.push_back(std::move(pair));
        prev_prior = prior;
    }
    return pairs;
}

}  // namespace atkf
