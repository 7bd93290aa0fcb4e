#pragma once

#include "atkf/system.hpp"

#include <functional>
#include <vector>

namespace atkf {

/// Tangent line slope * x + intercept constructed at `anchor`; by
/// construction its value at the anchor equals the linearized function there.
struct AffineSegment {
    double slope = 0.0;
    double intercept = 0.0;
    double anchor = 0.0;

    double value_at(double x) const { return slope * x + intercept; }
};

AffineSegment linearize_at(const std::function<double(double)>& fn,
                           const std::function<double(double)>& dfn, double x);

/// Max-of-min lattice representation of a continuous scalar PWL function.
/// `terms` holds one ascending index set per base region, with exact
/// duplicate terms removed; evaluation is total on R.
struct LatticeExpr {
    std::vector<AffineSegment> segments;
    std::vector<std::vector<int>> terms;
};

struct LtpwlBuildInfo {
    int duplicate_segments_removed = 0;
    int parallel_fallbacks = 0;  // consecutive parallel segments, boundary at anchor midpoint
    int duplicate_terms_removed = 0;
};

/// Builds the lattice expression for the PWL function whose pieces are the
/// given tangent segments, active in anchor order with base-region boundaries
/// at consecutive-segment intersections. Membership of segment j in region
/// i's term is decided by the sign of the affine difference at the region
/// endpoints (slope sign on unbounded ends).
LatticeExpr build_ltpwl_1d(std::vector<AffineSegment> segments, LtpwlBuildInfo* info = nullptr);

double eval_ltpwl(const LatticeExpr& expr, double x);

/// 0-based index of the segment realizing the max-of-min at x: first term
/// attaining the max, then its smallest member attaining the min.
int active_segment(const LatticeExpr& expr, double x);

/// Per-component lattice expressions for f and h of an elementwise model.
struct ComponentLtpwl {
    std::vector<LatticeExpr> f;
    std::vector<LatticeExpr> h;
};

/// Tangent lattice expressions at the component values of `points`, one pair
/// of expressions per state component. Requires diagonal Jacobians (an
/// elementwise model with obs_dim == state_dim); anchors closer than 1e-9
/// are merged.
ComponentLtpwl linearize_system(const SystemModel& model, const std::vector<Eigen::VectorXd>& points);

}  // namespace atkf
