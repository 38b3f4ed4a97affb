#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace reebsweep {

using PointId = std::int32_t;
inline constexpr PointId kNoPoint = -1;

struct Point {
    PointId id = 0;
    std::vector<double> coords;
};

/// f(x) = w.x + b.  A zero gradient is only accepted when allow_constant is set.
class AffineFunctional {
public:
    AffineFunctional() = default;
    AffineFunctional(std::vector<double> gradient, double offset, bool allow_constant = false);

    /// Projection onto coordinate `axis` of R^dim.
    static AffineFunctional projection(std::size_t dim, std::size_t axis);

    double operator()(std::span<const double> x) const;

    const std::vector<double>& gradient() const { return gradient_; }
    double offset() const { return offset_; }
    std::size_t dim() const { return gradient_.size(); }
    double gradient_norm() const { return norm_; }
    bool is_constant() const { return norm_ == 0.0; }
    bool allow_constant() const { return allow_constant_; }

private:
    std::vector<double> gradient_;
    double offset_ = 0.0;
    double norm_ = 0.0;
    bool allow_constant_ = false;
};

/// Either a single point p (q == kNoPoint) or an unordered pair stored with p < q.
struct Label {
    PointId p = kNoPoint;
    PointId q = kNoPoint;

    static Label ball(PointId p) { return {p, kNoPoint}; }
    static Label pair(PointId a, PointId b);

    bool is_pair() const { return q != kNoPoint; }
    std::string to_string() const;

    friend auto operator<=>(const Label&, const Label&) = default;
};

/// Closed interval [lo, hi] carrying the ball or pair it came from.
struct LabeledInterval {
    double lo = 0.0;
    double hi = 0.0;
    Label label;

    bool contains(double x) const { return lo <= x && x <= hi; }
    friend bool operator==(const LabeledInterval&, const LabeledInterval&) = default;
};

struct IntervalInputs {
    std::vector<LabeledInterval> balls;
    std::vector<LabeledInterval> pairs;
};

/// f(B_eps(p)).
LabeledInterval ball_interval(const Point& p, double eps, const AffineFunctional& f);

/// f(B_eps(p) ∩ B_eps(q)), or nothing when the balls are disjoint.
///
/// The maximum is attained at the extremal cap point of one ball when that
/// point lies in the other ball; otherwise it lies on the (d-2)-sphere where
/// the two ball boundaries meet, which gives f(c) + rho * |w_perp| with c the
/// midpoint, rho the sphere radius and w_perp the part of w orthogonal to q-p.
/// The minimum is symmetric.  Tangent balls give a single-point interval.
std::optional<LabeledInterval> pair_interval(const Point& p, const Point& q, double eps,
                                             const AffineFunctional& f);

/// One ball interval per point and one pair interval per intersecting pair,
/// pairs emitted in lexicographic (p, q) order.  Θ(n² d).
IntervalInputs build_inputs(std::span<const Point> points, double eps, const AffineFunctional& f);

/// Throws InputError listing duplicated coordinate rows.
void require_distinct(std::span<const Point> points);

double squared_distance(std::span<const double> a, std::span<const double> b);

}  // namespace reebsweep
