#include "reebsweep/geometry.h"

#include "reebsweep/errors.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace reebsweep {

namespace {

void require_finite(std::span<const double> values, const char* what) {
    for (double v : values) {
        if (!std::isfinite(v)) throw InputError(std::string(what) + " has a non-finite component");
    }
}

void check_eps(double eps) {
    if (!std::isfinite(eps) || eps <= 0.0) throw InputError("eps must be a positive finite number");
}

void check_point(const Point& p, const AffineFunctional& f) {
    if (p.coords.empty()) throw InputError("point " + std::to_string(p.id) + " has no coordinates");
    if (p.coords.size() != f.dim()) {
        throw DimensionMismatch("point " + std::to_string(p.id) + " has dimension " +
                         std::to_string(p.coords.size()) + " but the functional expects " +
                         std::to_string(f.dim()));
    }
    require_finite(p.coords, "point");
}

void check_functional(const AffineFunctional& f) {
    if (f.is_constant() && !f.allow_constant()) {
        throw InputError("functional has zero gradient; constant mode must be enabled explicitly");
    }
}

// Shared by ball and pair intervals so that equal extremes are bitwise equal.
double cap_max(double centre_value, double eps, double norm) { return centre_value + eps * norm; }
double cap_min(double centre_value, double eps, double norm) { return centre_value - eps * norm; }

}  // namespace

AffineFunctional::AffineFunctional(std::vector<double> gradient, double offset, bool allow_constant)
    : gradient_(std::move(gradient)), offset_(offset), allow_constant_(allow_constant) {
    if (gradient_.empty()) throw InputError("functional gradient must have at least one component");
    require_finite(gradient_, "gradient");
    if (!std::isfinite(offset_)) throw InputError("functional offset must be finite");
    double sq = 0.0;
    for (double w : gradient_) sq += w * w;
    norm_ = std::sqrt(sq);
}

AffineFunctional AffineFunctional::projection(std::size_t dim, std::size_t axis) {
    if (axis >= dim) throw InputError("projection axis out of range");
    std::vector<double> w(dim, 0.0);
    w[axis] = 1.0;
    return AffineFunctional(std::move(w), 0.0);
}

double AffineFunctional::operator()(std::span<const double> x) const {
    double v = offset_;
    for (std::size_t i = 0; i < gradient_.size(); ++i) v += gradient_[i] * x[i];
    return v;
}

Label Label::pair(PointId a, PointId b) {
    if (a == b) throw ContractViolation("pair label needs two distinct points");
    return a < b ? Label{a, b} : Label{b, a};
}

std::string Label::to_string() const {
    if (!is_pair()) return std::to_string(p);
    return "{" + std::to_string(p) + "," + std::to_string(q) + "}";
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

LabeledInterval ball_interval(const Point& p, double eps, const AffineFunctional& f) {
    check_eps(eps);
    check_functional(f);
    check_point(p, f);
    const double c = f(p.coords);
    const double norm = f.gradient_norm();
    return {cap_min(c, eps, norm), cap_max(c, eps, norm), Label::ball(p.id)};
}

std::optional<LabeledInterval> pair_interval(const Point& p, const Point& q, double eps,
                                             const AffineFunctional& f) {
    check_eps(eps);
    check_functional(f);
    check_point(p, f);
    check_point(q, f);
    if (p.id == q.id) throw ContractViolation("pair_interval needs two distinct points");

    const double dist2 = squared_distance(p.coords, q.coords);
    if (dist2 == 0.0) throw ContractViolation("pair_interval called on coincident points");
    const double eps2 = eps * eps;
    if (dist2 > 4.0 * eps2) return std::nullopt;

    const Label label = Label::pair(p.id, q.id);
    const double fp = f(p.coords);
    const double fq = f(q.coords);
    const double norm = f.gradient_norm();
    const LabeledInterval ip{cap_min(fp, eps, norm), cap_max(fp, eps, norm), label};
    const LabeledInterval iq{cap_min(fq, eps, norm), cap_max(fq, eps, norm), label};

    if (f.is_constant()) return LabeledInterval{f.offset(), f.offset(), label};

    const std::size_t d = p.coords.size();
    const auto& w = f.gradient();

    // Is centre + sign * eps * w/|w| inside the ball around `other`?
    auto cap_inside = [&](const Point& centre, const Point& other, double sign) {
        double s = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            const double x = centre.coords[i] + sign * eps * w[i] / norm;
            const double diff = x - other.coords[i];
            s += diff * diff;
        }
        return s <= eps2;
    };

    // Intersection sphere: centre c, radius rho, in the hyperplane orthogonal to q - p.
    const double rho = std::sqrt(std::max(0.0, eps2 - dist2 / 4.0));
    std::vector<double> mid(d);
    double w_dot_u = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        mid[i] = 0.5 * (p.coords[i] + q.coords[i]);
        w_dot_u += w[i] * (q.coords[i] - p.coords[i]);
    }
    // |w_perp|^2 = |w|^2 - (w.u)^2 / |u|^2
    const double w_perp2 = std::max(0.0, norm * norm - w_dot_u * w_dot_u / dist2);
    const double w_perp = std::sqrt(w_perp2);
    const double f_mid = f(mid);

    double hi = 0.0;
    if (cap_inside(p, q, +1.0)) {
        hi = ip.hi;
    } else if (cap_inside(q, p, +1.0)) {
        hi = iq.hi;
    } else {
        hi = f_mid + rho * w_perp;
    }
    double lo = 0.0;
    if (cap_inside(p, q, -1.0)) {
        lo = ip.lo;
    } else if (cap_inside(q, p, -1.0)) {
        lo = iq.lo;
    } else {
        lo = f_mid - rho * w_perp;
    }

    // Round-off at tangency can push the sphere extremes past the ball extents.
    lo = std::max({lo, ip.lo, iq.lo});
    hi = std::min({hi, ip.hi, iq.hi});
    if (lo > hi) {
        const double common_lo = std::max(ip.lo, iq.lo);
        const double common_hi = std::min(ip.hi, iq.hi);
        if (common_lo > common_hi) return std::nullopt;
        lo = hi = std::clamp(0.5 * (lo + hi), common_lo, common_hi);
    }
    return LabeledInterval{lo, hi, label};
}

void require_distinct(std::span<const Point> points) {
    std::map<std::vector<double>, std::vector<PointId>> seen;
    for (const Point& p : points) seen[p.coords].push_back(p.id);
    std::ostringstream msg;
    bool any = false;
    for (const auto& [coords, ids] : seen) {
        if (ids.size() < 2) continue;
        msg << (any ? "; " : "duplicate points: ") << "ids";
        for (PointId id : ids) msg << ' ' << id;
        any = true;
    }
    if (any) throw InputError(msg.str());
}

IntervalInputs build_inputs(std::span<const Point> points, double eps, const AffineFunctional& f) {
    check_eps(eps);
    check_functional(f);
    require_distinct(points);
    IntervalInputs out;
    out.balls.reserve(points.size());
    for (const Point& p : points) out.balls.push_back(ball_interval(p, eps, f));

    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return points[a].id < points[b].id; });
    for (std::size_t a = 0; a < order.size(); ++a) {
        for (std::size_t b = a + 1; b < order.size(); ++b) {
            if (auto lens = pair_interval(points[order[a]], points[order[b]], eps, f)) {
                out.pairs.push_back(*lens);
            }
        }
    }
    return out;
}

}  // namespace reebsweep
