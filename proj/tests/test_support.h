#pragma once

#include "reebsweep/geometry.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace reebsweep::testing {

/// Four points p, q, r, s with ids 0..3.
inline std::vector<Point> four_points() {
    return {{0, {0.1, 1.0}}, {1, {1.4, -0.4}}, {2, {1.9, 1.3}}, {3, {0.5, 2.0}}};
}

/// Range of a*x + b*y + c over the planar lens of two eps-disks, by sampling
/// both boundary circles and adding the two corner points.
inline std::pair<double, double> sampled_lens_extent_2d(double px, double py, double qx, double qy,
                                                        double eps, double a, double b, double c,
                                                        std::size_t samples) {
    double lo = INFINITY;
    double hi = -INFINITY;
    auto take = [&](double x, double y) {
        const double v = a * x + b * y + c;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    };
    const double slack = 1e-12;
    auto ring = [&](double cx, double cy, double ox, double oy) {
        for (std::size_t k = 0; k < samples; ++k) {
            const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples);
            const double x = cx + eps * std::cos(t);
            const double y = cy + eps * std::sin(t);
            if (std::hypot(x - ox, y - oy) <= eps + slack) take(x, y);
        }
    };
    ring(px, py, qx, qy);
    ring(qx, qy, px, py);
    const double dx = qx - px;
    const double dy = qy - py;
    const double dist = std::hypot(dx, dy);
    if (dist <= 2.0 * eps) {
        const double h = std::sqrt(std::max(0.0, eps * eps - dist * dist / 4.0));
        const double mx = 0.5 * (px + qx);
        const double my = 0.5 * (py + qy);
        take(mx - h * dy / dist, my + h * dx / dist);
        take(mx + h * dy / dist, my - h * dx / dist);
    }
    return {lo, hi};
}

/// Same in R^d: the lens is symmetric about the line pq, so f is extremal in
/// the plane through that line containing the gradient direction.
inline std::pair<double, double> sampled_lens_extent(const Point& p, const Point& q, double eps,
                                                     const AffineFunctional& f, std::size_t samples) {
    const std::size_t d = p.coords.size();
    const auto& w = f.gradient();
    std::vector<double> e1(d);
    double dist = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        e1[i] = q.coords[i] - p.coords[i];
        dist += e1[i] * e1[i];
    }
    dist = std::sqrt(dist);
    for (auto& x : e1) x /= dist;
    double w1 = 0.0;
    for (std::size_t i = 0; i < d; ++i) w1 += w[i] * e1[i];
    std::vector<double> e2(d);
    double w2 = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        e2[i] = w[i] - w1 * e1[i];
        w2 += e2[i] * e2[i];
    }
    w2 = std::sqrt(w2);
    // Plane coordinates: p at (0, 0), q at (dist, 0); f = f(p) + w1 * s + w2 * t.
    return sampled_lens_extent_2d(0.0, 0.0, dist, 0.0, eps, w1, w2, f(p.coords), samples);
}

struct RandomInstance {
    std::vector<Point> points;
    double eps = 0.0;
    AffineFunctional f;
};

/// n distinct points in the unit square (snapped to a coarse grid for some
/// seeds, which creates ties), eps from sparse to dense, a random direction.
inline RandomInstance random_instance(std::uint64_t seed, std::size_t n, std::size_t dim = 2) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + n);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const bool snapped = seed % 4 == 0 && n <= 20 && dim == 2;
    RandomInstance inst;
    std::set<std::vector<double>> seen;
    while (inst.points.size() < n) {
        std::vector<double> c(dim);
        for (auto& x : c) x = snapped ? std::round(unit(rng) * 4.0) / 4.0 : unit(rng);
        if (!seen.insert(c).second) continue;
        inst.points.push_back({static_cast<PointId>(inst.points.size()), c});
    }
    inst.eps = snapped ? 0.125 * static_cast<double>(1 + seed % 5) : 0.04 + 0.5 * unit(rng);
    std::vector<double> w(dim);
    if (seed % 3 == 0) {
        w.back() = 1.0;
    } else {
        std::normal_distribution<double> g;
        for (auto& x : w) x = g(rng);
    }
    inst.f = AffineFunctional(w, unit(rng) - 0.5);
    return inst;
}

}  // namespace reebsweep::testing
