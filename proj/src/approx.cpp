#include "reebsweep/approx.h"

#include "reebsweep/errors.h"
#include "reebsweep/sweep.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>

namespace reebsweep {

namespace {

constexpr std::size_t kPolygonSides = 48;
// Absorbs round-off when a critical value sits exactly at the bound.
constexpr double kRoundOff = 1e-9;

using Vec2 = std::array<double, 2>;

struct Segment {
    Vec2 a;
    Vec2 b;
};

double norm2(double x, double y) { return std::sqrt(x * x + y * y); }

std::vector<Vec2> figure_eight_vertices(double radius, bool upper) {
    std::vector<Vec2> out;
    const double cy = upper ? radius : -radius;
    const double start = upper ? -std::numbers::pi / 2 : std::numbers::pi / 2;
    for (std::size_t k = 0; k < kPolygonSides; ++k) {
        if (k == 0) {
            out.push_back({0.0, 0.0});
            continue;
        }
        const double a = start + 2.0 * std::numbers::pi * static_cast<double>(k) / kPolygonSides;
        out.push_back({radius * std::cos(a), cy + radius * std::sin(a)});
    }
    return out;
}

std::vector<Segment> figure_eight_segments(double radius) {
    std::vector<Segment> segs;
    for (bool upper : {false, true}) {
        const auto v = figure_eight_vertices(radius, upper);
        for (std::size_t k = 0; k < v.size(); ++k) segs.push_back({v[k], v[(k + 1) % v.size()]});
    }
    return segs;
}

double segment_distance(const Segment& s, double x, double y) {
    const double dx = s.b[0] - s.a[0];
    const double dy = s.b[1] - s.a[1];
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0 ? ((x - s.a[0]) * dx + (y - s.a[1]) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return norm2(x - (s.a[0] + t * dx), y - (s.a[1] + t * dy));
}

double segment_length(const Segment& s) { return norm2(s.b[0] - s.a[0], s.b[1] - s.a[1]); }

Vec2 point_on_segments(const std::vector<Segment>& segs, double total, double s) {
    s = std::fmod(s, total);
    if (s < 0) s += total;
    for (const Segment& seg : segs) {
        const double len = segment_length(seg);
        if (s <= len) {
            const double t = len > 0 ? s / len : 0.0;
            return {seg.a[0] + t * (seg.b[0] - seg.a[0]), seg.a[1] + t * (seg.b[1] - seg.a[1])};
        }
        s -= len;
    }
    return segs.back().b;
}

Vec2 cluster_centre(const ShapeSampler& s, int which) {
    return {which == 0 ? -0.5 * s.separation : 0.5 * s.separation, 0.0};
}

double planar(const AffineFunctional& f, double x, double y) {
    const double xy[2] = {x, y};
    return f(std::span<const double>(xy, 2));
}

}  // namespace

std::string to_string(Shape shape) {
    switch (shape) {
        case Shape::circle: return "circle";
        case Shape::annulus: return "annulus";
        case Shape::two_clusters: return "two-clusters";
        case Shape::figure_eight: return "figure-eight";
    }
    return "circle";
}

Shape shape_from_string(const std::string& name) {
    for (Shape s : {Shape::circle, Shape::annulus, Shape::two_clusters, Shape::figure_eight}) {
        if (to_string(s) == name) return s;
    }
    throw InputError("unknown shape '" + name + "'");
}

std::vector<Point> ShapeSampler::sample() const {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<Point> out;
    out.reserve(samples);
    const double phase = unit(rng);
    std::vector<Segment> curve;
    double curve_length = 0.0;
    if (shape == Shape::figure_eight) {
        curve = figure_eight_segments(radius);
        for (const auto& s : curve) curve_length += segment_length(s);
    }

    for (std::size_t j = 0; j < samples; ++j) {
        double x = 0.0;
        double y = 0.0;
        switch (shape) {
            case Shape::circle: {
                const double u = evenly_spaced ? (phase + static_cast<double>(j)) / samples : unit(rng);
                x = radius * std::cos(two_pi * u);
                y = radius * std::sin(two_pi * u);
                break;
            }
            case Shape::annulus: {
                const double r2 = inner_radius * inner_radius +
                                  unit(rng) * (radius * radius - inner_radius * inner_radius);
                const double a = two_pi * unit(rng);
                x = std::sqrt(r2) * std::cos(a);
                y = std::sqrt(r2) * std::sin(a);
                break;
            }
            case Shape::two_clusters: {
                const Vec2 c = cluster_centre(*this, static_cast<int>(j % 2));
                const double r = radius * std::sqrt(unit(rng));
                const double a = two_pi * unit(rng);
                x = c[0] + r * std::cos(a);
                y = c[1] + r * std::sin(a);
                break;
            }
            case Shape::figure_eight: {
                const double u = evenly_spaced ? (phase + static_cast<double>(j)) / samples : unit(rng);
                const Vec2 p = point_on_segments(curve, curve_length, u * curve_length);
                x = p[0];
                y = p[1];
                break;
            }
        }
        if (noise > 0) {
            const double r = noise * std::sqrt(unit(rng));
            const double a = two_pi * unit(rng);
            x += r * std::cos(a);
            y += r * std::sin(a);
        }
        out.push_back({static_cast<PointId>(j), {x, y}});
    }
    return out;
}

std::vector<std::vector<double>> ShapeSampler::probe_points() const {
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<std::vector<double>> out;
    switch (shape) {
        case Shape::circle:
            for (std::size_t k = 0; k < 4000; ++k) {
                const double a = two_pi * static_cast<double>(k) / 4000;
                out.push_back({radius * std::cos(a), radius * std::sin(a)});
            }
            break;
        case Shape::annulus:
            for (std::size_t i = 0; i <= 40; ++i) {
                const double r = inner_radius + (radius - inner_radius) * static_cast<double>(i) / 40;
                for (std::size_t k = 0; k < 400; ++k) {
                    const double a = two_pi * static_cast<double>(k) / 400;
                    out.push_back({r * std::cos(a), r * std::sin(a)});
                }
            }
            break;
        case Shape::two_clusters:
            for (int c = 0; c < 2; ++c) {
                const Vec2 centre = cluster_centre(*this, c);
                for (std::size_t i = 0; i <= 20; ++i) {
                    const double r = radius * static_cast<double>(i) / 20;
                    for (std::size_t k = 0; k < 100; ++k) {
                        const double a = two_pi * static_cast<double>(k) / 100;
                        out.push_back({centre[0] + r * std::cos(a), centre[1] + r * std::sin(a)});
                    }
                }
            }
            break;
        case Shape::figure_eight: {
            const auto segs = figure_eight_segments(radius);
            double total = 0.0;
            for (const auto& s : segs) total += segment_length(s);
            for (std::size_t k = 0; k < 8000; ++k) {
                const Vec2 p = point_on_segments(segs, total, total * static_cast<double>(k) / 8000);
                out.push_back({p[0], p[1]});
            }
            break;
        }
    }
    return out;
}

double ShapeSampler::distance_to_shape(std::span<const double> p) const {
    const double x = p[0];
    const double y = p[1];
    switch (shape) {
        case Shape::circle: return std::abs(norm2(x, y) - radius);
        case Shape::annulus: {
            const double r = norm2(x, y);
            if (r < inner_radius) return inner_radius - r;
            return std::max(0.0, r - radius);
        }
        case Shape::two_clusters: {
            double best = kInf;
            for (int c = 0; c < 2; ++c) {
                const Vec2 centre = cluster_centre(*this, c);
                best = std::min(best, std::max(0.0, norm2(x - centre[0], y - centre[1]) - radius));
            }
            return best;
        }
        case Shape::figure_eight: {
            double best = kInf;
            for (const auto& s : figure_eight_segments(radius)) best = std::min(best, segment_distance(s, x, y));
            return best;
        }
    }
    return kInf;
}

ReebSummary shape_ground_truth(const ShapeSampler& s, const AffineFunctional& f) {
    if (f.dim() != 2) throw InputError("test shapes are planar; the functional must be 2-dimensional");
    const double k = f.gradient_norm();
    const double centre = f.offset();
    ReebSummary out;
    switch (s.shape) {
        case Shape::circle:
            out.betti = {1, 1};
            out.critical_values = {centre - s.radius * k, centre + s.radius * k};
            break;
        case Shape::annulus:
            out.betti = {1, 1};
            out.critical_values = {centre - s.radius * k, centre - s.inner_radius * k,
                                   centre + s.inner_radius * k, centre + s.radius * k};
            break;
        case Shape::two_clusters:
            out.betti = {2, 0};
            for (int c = 0; c < 2; ++c) {
                const Vec2 ctr = cluster_centre(s, c);
                const double v = planar(f, ctr[0], ctr[1]);
                out.critical_values.push_back(v - s.radius * k);
                out.critical_values.push_back(v + s.radius * k);
            }
            break;
        case Shape::figure_eight: {
            // The polyline's Reeb graph is the polyline itself: critical
            // vertices are those without exactly one lower and one upper neighbor.
            std::vector<Vec2> verts;
            std::vector<std::vector<std::size_t>> adj;
            for (bool upper : {false, true}) {
                const auto v = figure_eight_vertices(s.radius, upper);
                std::vector<std::size_t> ids(v.size());
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (upper && i == 0) {
                        ids[i] = 0;  // shared origin vertex
                        continue;
                    }
                    ids[i] = verts.size();
                    verts.push_back(v[i]);
                    adj.emplace_back();
                }
                for (std::size_t i = 0; i < v.size(); ++i) {
                    const std::size_t a = ids[i];
                    const std::size_t b = ids[(i + 1) % v.size()];
                    adj[a].push_back(b);
                    adj[b].push_back(a);
                }
            }
            std::size_t edge_count = 0;
            for (std::size_t i = 0; i < verts.size(); ++i) {
                edge_count += adj[i].size();
                const double fv = planar(f, verts[i][0], verts[i][1]);
                std::size_t lower = 0;
                std::size_t upper = 0;
                for (std::size_t j : adj[i]) {
                    const double fj = planar(f, verts[j][0], verts[j][1]);
                    if (fj < fv) ++lower;
                    if (fj > fv) ++upper;
                }
                if (lower != 1 || upper != 1) out.critical_values.push_back(fv);
            }
            edge_count /= 2;
            out.betti = {1, edge_count + 1 - verts.size()};
            break;
        }
    }
    std::sort(out.critical_values.begin(), out.critical_values.end());
    out.critical_values.erase(std::unique(out.critical_values.begin(), out.critical_values.end()),
                              out.critical_values.end());
    return out;
}

std::vector<double> significant_critical_values(const ReebGraph& g, double min_span) {
    const std::size_t nv = g.vertices().size();
    std::vector<std::vector<std::size_t>> up(nv);
    std::vector<std::vector<std::size_t>> down(nv);
    for (const ReebEdge& e : g.edges()) {
        up[e.lower].push_back(e.upper);
        down[e.upper].push_back(e.lower);
    }
    std::vector<bool> alive(nv, true);
    auto degree = [&](const std::vector<std::size_t>& nbrs) {
        return static_cast<std::size_t>(
            std::count_if(nbrs.begin(), nbrs.end(), [&](std::size_t w) { return alive[w]; }));
    };
    auto single = [&](const std::vector<std::size_t>& nbrs) {
        return *std::find_if(nbrs.begin(), nbrs.end(), [&](std::size_t w) { return alive[w]; });
    };
    auto lo = [&](std::size_t v) { return g.vertices()[v].extent.lo.value; };
    auto hi = [&](std::size_t v) { return g.vertices()[v].extent.hi.value; };

    // Lowest lo (or highest hi) reachable from `start` through alive vertices lying
    // entirely below (above) `level`, skipping `avoid`.
    auto extreme_below = [&](std::size_t start, double level, bool from_min, std::size_t avoid) {
        std::vector<std::size_t> stack{start};
        std::vector<bool> seen(nv, false);
        seen[start] = true;
        seen[avoid] = true;
        double best = from_min ? lo(start) : hi(start);
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            best = from_min ? std::min(best, lo(v)) : std::max(best, hi(v));
            for (const auto* nbrs : {&up[v], &down[v]}) {
                for (std::size_t w : *nbrs) {
                    if (seen[w] || !alive[w]) continue;
                    if (from_min ? hi(w) > level : lo(w) < level) continue;
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
        return best;
    };

    // Walks from an extremum along the chain of pass-through vertices and
    // prunes it when it ends in a saddle of the cancelling kind, the span is
    // short and another branch into that saddle reaches at least as far.
    auto try_prune = [&](std::size_t v, bool from_min) -> bool {
        auto& forward = from_min ? up : down;
        auto& backward = from_min ? down : up;
        std::vector<std::size_t> chain{v};
        std::size_t cur = v;
        while (true) {
            const std::size_t next = single(forward[cur]);
            if (degree(backward[next]) == 1 && degree(forward[next]) == 1) {
                chain.push_back(next);
                cur = next;
                continue;
            }
            if (degree(backward[next]) < 2) return false;
            const double span = from_min ? lo(next) - lo(v) : hi(v) - hi(next);
            if (span >= min_span) return false;
            const double level = from_min ? lo(next) : hi(next);
            bool elder_elsewhere = false;
            for (std::size_t w : backward[next]) {
                if (!alive[w] || w == cur) continue;
                const double reach = extreme_below(w, level, from_min, next);
                if (from_min ? reach <= lo(v) : reach >= hi(v)) elder_elsewhere = true;
            }
            if (!elder_elsewhere) return false;
            for (std::size_t w : chain) alive[w] = false;
            return true;
        }
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t v = 0; v < nv; ++v) {
            if (!alive[v]) continue;
            const std::size_t d = degree(down[v]);
            const std::size_t u = degree(up[v]);
            if (d == 0 && u == 1 && try_prune(v, true)) changed = true;
            if (alive[v] && u == 0 && d == 1 && try_prune(v, false)) changed = true;
        }
    }

    std::vector<double> out;
    for (std::size_t v = 0; v < nv; ++v) {
        if (!alive[v]) continue;
        if (degree(down[v]) != 1) out.push_back(lo(v));
        if (degree(up[v]) != 1) out.push_back(hi(v));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool ExperimentReport::displacement_ok() const { return max_displacement <= bound + kRoundOff; }

std::string ExperimentReport::verdict() const {
    if (!hypotheses_met()) return "hypotheses unmet";
    return betti_match() && displacement_ok() ? "pass" : "fail";
}

nlohmann::json ExperimentReport::to_json() const {
    auto summary = [](const ReebSummary& s) {
        return nlohmann::json{{"b0", s.betti.b0}, {"b1", s.betti.b1}, {"critical_values", s.critical_values}};
    };
    return {{"shape", to_string(sampler.shape)},
            {"radius", sampler.radius},
            {"inner_radius", sampler.inner_radius},
            {"separation", sampler.separation},
            {"samples", sampler.samples},
            {"noise", sampler.noise},
            {"seed", sampler.seed},
            {"evenly_spaced", sampler.evenly_spaced},
            {"eps", eps},
            {"lipschitz", lipschitz},
            {"bound", bound},
            {"truth", summary(truth)},
            {"computed", summary(computed)},
            {"computed_min", computed_min},
            {"computed_max", computed_max},
            {"pairs", pair_count},
            {"cells", cell_count},
            {"max_displacement", max_displacement},
            {"covering_ok", covering_ok},
            {"noise_ok", noise_ok},
            {"verdict", verdict()}};
}

ExperimentReport run_experiment(const ShapeSampler& sampler, double eps, const AffineFunctional& f) {
    ExperimentReport r;
    r.sampler = sampler;
    r.eps = eps;
    r.lipschitz = f.gradient_norm();
    r.bound = r.lipschitz * (eps + sampler.noise);
    r.truth = shape_ground_truth(sampler, f);

    const auto points = sampler.sample();
    r.noise_ok = std::all_of(points.begin(), points.end(), [&](const Point& p) {
        return sampler.distance_to_shape(p.coords) <= sampler.noise + kRoundOff;
    });
    const double eps2 = eps * eps;
    r.covering_ok = !points.empty();
    for (const auto& probe : sampler.probe_points()) {
        const bool covered = std::any_of(points.begin(), points.end(), [&](const Point& p) {
            return squared_distance(p.coords, probe) <= eps2;
        });
        if (!covered) {
            r.covering_ok = false;
            break;
        }
    }

    const auto inputs = build_inputs(points, eps, f);
    r.pair_count = inputs.pairs.size();
    const auto state = sweep(inputs);
    const auto g = extract(state);
    r.cell_count = g.cells().size();
    r.computed.betti = betti(g);
    r.computed.critical_values = significant_critical_values(g, 2.0 * r.bound);
    r.computed_min = kInf;
    r.computed_max = -kInf;
    for (const auto& b : inputs.balls) {
        r.computed_min = std::min(r.computed_min, b.lo);
        r.computed_max = std::max(r.computed_max, b.hi);
    }

    r.max_displacement = 0.0;
    for (double c : r.computed.critical_values) {
        double nearest = kInf;
        for (double t : r.truth.critical_values) nearest = std::min(nearest, std::abs(c - t));
        r.max_displacement = std::max(r.max_displacement, nearest);
    }
    return r;
}

ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    try {
        c.sampler.shape = shape_from_string(j.at("shape").get<std::string>());
        c.sampler.radius = j.value("radius", c.sampler.radius);
        c.sampler.inner_radius = j.value("inner_radius", c.sampler.inner_radius);
        c.sampler.separation = j.value("separation", c.sampler.separation);
        c.sampler.samples = j.value("samples", c.sampler.samples);
        c.sampler.noise = j.value("noise", c.sampler.noise);
        c.sampler.seed = j.value("seed", c.sampler.seed);
        c.sampler.evenly_spaced = j.value("evenly_spaced", c.sampler.evenly_spaced);
        c.eps = j.at("eps").get<double>();
        c.direction = j.value("direction", c.direction);
        c.offset = j.value("offset", c.offset);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad experiment config: ") + e.what());
    }
    return c;
}

std::string summary_table(const std::vector<ExperimentReport>& reports) {
    std::ostringstream s;
    s << std::left << std::setw(14) << "shape" << std::setw(8) << "N" << std::setw(8) << "eps"
      << std::setw(8) << "delta" << std::setw(10) << "truth" << std::setw(10) << "computed"
      << std::setw(10) << "bound" << std::setw(12) << "displace" << "verdict\n";
    for (const auto& r : reports) {
        auto b = [](const Betti& x) { return "(" + std::to_string(x.b0) + "," + std::to_string(x.b1) + ")"; };
        s << std::left << std::setw(14) << to_string(r.sampler.shape) << std::setw(8) << r.sampler.samples
          << std::setw(8) << r.eps << std::setw(8) << r.sampler.noise << std::setw(10) << b(r.truth.betti)
          << std::setw(10) << b(r.computed.betti) << std::setw(10) << r.bound << std::setw(12)
          << std::setprecision(4) << r.max_displacement << r.verdict() << '\n';
    }
    return s.str();
}

}  // namespace reebsweep
