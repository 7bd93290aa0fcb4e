#include "atkf/ltpwl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace atkf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// l_j - l_i as an affine function.
struct AffineDiff {
    double slope, intercept;
    double at(double x) const { return slope * x + intercept; }
};

AffineDiff diff(const AffineSegment& lj, const AffineSegment& li) {
    return {lj.slope - li.slope, lj.intercept - li.intercept};
}

/// l_j >= l_i on [lo, hi]? `exact_at` marks an endpoint where the two lines
/// intersect by construction, so the difference there is exactly zero and the
/// rounded evaluation must not be trusted.
bool dominates_on(const AffineSegment& lj, const AffineSegment& li, double lo, double hi,
                  bool exact_at_lo, bool exact_at_hi) {
    const AffineDiff d = diff(lj, li);
    const double tol = 1e-12;
    auto nonneg_at = [&](double x) {
        const double v = d.at(x);
        return v >= -tol * std::max(1.0, std::abs(li.value_at(x)));
    };
    if (lo == -kInf) {
        if (d.slope > 0.0) return false;
    } else if (!exact_at_lo && !nonneg_at(lo)) {
        return false;
    }
    if (hi == kInf) {
        if (d.slope < 0.0) return false;
    } else if (!exact_at_hi && !nonneg_at(hi)) {
        return false;
    }
    return true;
}

}  // namespace

AffineSegment linearize_at(const std::function<double(double)>& fn,
                           const std::function<double(double)>& dfn, double x) {
    AffineSegment seg;
    seg.anchor = x;
    seg.slope = dfn(x);
    seg.intercept = fn(x) - seg.slope * x;
    return seg;
}

LatticeExpr build_ltpwl_1d(std::vector<AffineSegment> segments, LtpwlBuildInfo* info) {
    if (segments.empty()) throw std::invalid_argument("build_ltpwl_1d: need at least one segment");

    LtpwlBuildInfo local;
    LtpwlBuildInfo& stats = info ? *info : local;

    std::sort(segments.begin(), segments.end(),
              [](const AffineSegment& a, const AffineSegment& b) { return a.anchor < b.anchor; });

    // Identical lines collapse to the first occurrence regardless of anchor.
    std::vector<AffineSegment> kept;
    for (const auto& s : segments) {
        const bool dup = std::any_of(kept.begin(), kept.end(), [&](const AffineSegment& k) {
            return k.slope == s.slope && k.intercept == s.intercept;
        });
        if (dup)
            ++stats.duplicate_segments_removed;
        else
            kept.push_back(s);
    }
    segments = std::move(kept);

    const int n = static_cast<int>(segments.size());
    for (int i = 1; i < n; ++i)
        if (!(segments[i - 1].anchor < segments[i].anchor))
            throw std::invalid_argument("build_ltpwl_1d: anchors must be strictly increasing");

    // Region boundaries at intersections of consecutive segments.
    std::vector<double> bounds(static_cast<std::size_t>(std::max(0, n - 1)));
    for (int i = 0; i + 1 < n; ++i) {
        const AffineDiff d = diff(segments[i + 1], segments[i]);
        if (d.slope == 0.0) {
            bounds[i] = 0.5 * (segments[i].anchor + segments[i + 1].anchor);
            ++stats.parallel_fallbacks;
        } else {
            bounds[i] = -d.intercept / d.slope;
        }
    }
    for (int i = 1; i + 1 < n; ++i)
        if (bounds[i] < bounds[i - 1])
            throw std::invalid_argument(
                "build_ltpwl_1d: consecutive-segment intersections are not ordered; the segments do "
                "not describe a piecewise-linear function with anchor-ordered active pieces");

    LatticeExpr expr;
    expr.segments = segments;
    for (int i = 0; i < n; ++i) {
        const double lo = i == 0 ? -kInf : bounds[i - 1];
        const double hi = i == n - 1 ? kInf : bounds[i];
        std::vector<int> term;
        for (int j = 0; j < n; ++j) {
            if (j == i) {
                term.push_back(j);
                continue;
            }
            // Adjacent pairs meet exactly at the boundary they define.
            const bool exact_lo = i > 0 && (j == i - 1);
            const bool exact_hi = i + 1 < n && (j == i + 1);
            if (dominates_on(segments[j], segments[i], lo, hi, exact_lo, exact_hi)) term.push_back(j);
        }
        if (std::find(expr.terms.begin(), expr.terms.end(), term) != expr.terms.end())
            ++stats.duplicate_terms_removed;
        else
            expr.terms.push_back(std::move(term));
    }
    return expr;
}

double eval_ltpwl(const LatticeExpr& expr, double x) {
    double best = -kInf;
    for (const auto& term : expr.terms) {
        double lo = kInf;
        for (int j : term) lo = std::min(lo, expr.segments[j].value_at(x));
        best = std::max(best, lo);
    }
    return best;
}

int active_segment(const LatticeExpr& expr, double x) {
    double best = -kInf;
    int best_idx = -1;
    for (const auto& term : expr.terms) {
        double lo = kInf;
        int lo_idx = -1;
        for (int j : term) {
            const double v = expr.segments[j].value_at(x);
            if (v < lo) {
                lo = v;
                lo_idx = j;
            }
        }
        if (lo > best) {
            best = lo;
            best_idx = lo_idx;
        }
    }
    return best_idx;
}

ComponentLtpwl linearize_system(const SystemModel& model, const std::vector<Eigen::VectorXd>& points) {
    if (points.empty()) throw std::invalid_argument("linearize_system: need at least one point");
    if (model.obs_dim != model.state_dim)
        throw std::invalid_argument(
            "linearize_system: componentwise lattice construction requires obs_dim == state_dim");
    const int m = model.state_dim;

    auto check_diagonal = [&](const Eigen::MatrixXd& j, const char* name) {
        double off = 0.0, scale = 1.0;
        for (int r = 0; r < j.rows(); ++r)
            for (int c = 0; c < j.cols(); ++c) {
                if (r == c)
                    scale = std::max(scale, std::abs(j(r, c)));
                else
                    off = std::max(off, std::abs(j(r, c)));
            }
        if (off > 1e-12 * scale)
            throw std::invalid_argument(std::string("linearize_system: ") + name +
                                        " is not diagonal; only elementwise models are supported");
    };

    ComponentLtpwl out;
    for (int c = 0; c < m; ++c) {
        // Distinct component values, merged within 1e-9, become the anchors.
        std::vector<double> anchors;
        for (const auto& p : points) anchors.push_back(p[c]);
        std::sort(anchors.begin(), anchors.end());
        anchors.erase(std::unique(anchors.begin(), anchors.end(),
                                  [](double a, double b) { return std::abs(a - b) <= 1e-9; }),
                      anchors.end());

        std::vector<AffineSegment> f_segs, h_segs;
        for (double t : anchors) {
            const Eigen::VectorXd xt = Eigen::VectorXd::Constant(m, t);
            const Eigen::MatrixXd jf = model.jac_f(xt);
            const Eigen::MatrixXd jh = model.jac_h(xt);
            check_diagonal(jf, "jac_f");
            check_diagonal(jh, "jac_h");
            AffineSegment fs{jf(c, c), model.f(xt)[c] - jf(c, c) * t, t};
            AffineSegment hs{jh(c, c), model.h(xt)[c] - jh(c, c) * t, t};
            f_segs.push_back(fs);
            h_segs.push_back(hs);
        }
        out.f.push_back(build_ltpwl_1d(std::move(f_segs)));
        out.h.push_back(build_ltpwl_1d(std::move(h_segs)));
    }
    return out;
}

}  // namespace atkf
