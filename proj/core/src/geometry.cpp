#include "ellperc/geometry.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "ellperc/errors.hpp"

namespace ellperc {

std::string_view to_string(GrainKind kind) {
    return kind == GrainKind::disk ? "disk" : "ellipse";
}

GrainKind grain_kind_from_string(std::string_view name) {
    if (name == "ellipse") return GrainKind::ellipse;
    if (name == "disk") return GrainKind::disk;
    throw DomainError("grain kind must be 'ellipse' or 'disk', got '" + std::string(name) + "'");
}

double normalize_direction(double v) {
    double r = std::fmod(v, kPi);
    if (r <= -0.5 * kPi) r += kPi;
    if (r > 0.5 * kPi) r -= kPi;
    return r;
}

double Grain::area() const { return grain_area(R, kind); }

double grain_area(double R, GrainKind kind) {
    return kind == GrainKind::disk ? kPi * R * R : kPi * R;
}

Grain make_ellipse(Point center, double R, double V) {
    if (!std::isfinite(center.x) || !std::isfinite(center.y) || !std::isfinite(V))
        throw DomainError("grain: center and direction must be finite");
    if (!(R >= 1.0) || !std::isfinite(R))
        throw DomainError("grain: semi-major axis R must satisfy R >= 1, got R=" + std::to_string(R));
    return Grain{center, R, normalize_direction(V), GrainKind::ellipse};
}

Grain make_disk(Point center, double R) {
    if (!std::isfinite(center.x) || !std::isfinite(center.y))
        throw DomainError("grain: center must be finite");
    if (!(R >= 1.0) || !std::isfinite(R))
        throw DomainError("grain: disk radius R must satisfy R >= 1, got R=" + std::to_string(R));
    return Grain{center, R, 0.0, GrainKind::disk};
}

Box make_box(double l, double k, Point center) {
    if (!(l > 0.0) || !std::isfinite(l)) throw DomainError("box: height l must be > 0, got l=" + std::to_string(l));
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("box: aspect k must be > 0, got k=" + std::to_string(k));
    return Box{l, k, center};
}

Box box_from_extents(double xmin, double xmax, double ymin, double ymax) {
    const double l = ymax - ymin;
    return make_box(l, (xmax - xmin) / l, {0.5 * (xmin + xmax), 0.5 * (ymin + ymax)});
}

Segment box_side(const Box& box, Side side) {
    const double x0 = box.xmin(), x1 = box.xmax(), y0 = box.ymin(), y1 = box.ymax();
    switch (side) {
        case Side::left: return {{x0, y0}, {x0, y1}};
        case Side::right: return {{x1, y0}, {x1, y1}};
        case Side::bottom: return {{x0, y0}, {x1, y0}};
        case Side::top: return {{x0, y1}, {x1, y1}};
    }
    return {};
}

namespace {

struct Frame {
    double c, s;  // cos V, sin V
    double a, b;  // semi-axes along V and across
};

Frame frame_of(const Grain& g) {
    return {std::cos(g.V), std::sin(g.V), g.semi_major(), g.semi_minor()};
}

// Coordinates of p in the grain's principal frame.
Point to_local(const Grain& g, const Frame& f, Point p) {
    const double dx = p.x - g.center.x, dy = p.y - g.center.y;
    return {f.c * dx + f.s * dy, -f.s * dx + f.c * dy};
}

double gauge_squared(const Frame& f, Point local) {
    const double u = local.x / f.a, v = local.y / f.b;
    return u * u + v * v;
}

// Vertical slices of a closed convex set: its x-range and, for t in that
// range, the interval of y with (t, y) in the set.
struct Slicer {
    double xlo, xhi;
    bool box;
    double cx, cy, q11, q12, q22, det;
    double ylo, yhi;

    std::pair<double, double> slice(double t) const {
        if (box) return {ylo, yhi};
        const double dx = t - cx;
        double disc = q22 - det * dx * dx;
        if (disc < 0.0) disc = 0.0;
        const double r = std::sqrt(disc);
        return {cy + (-q12 * dx - r) / q22, cy + (-q12 * dx + r) / q22};
    }
};

Slicer slicer_of(const Grain& g) {
    const Frame f = frame_of(g);
    const double ia2 = 1.0 / (f.a * f.a), ib2 = 1.0 / (f.b * f.b);
    Slicer sl{};
    sl.box = false;
    sl.cx = g.center.x;
    sl.cy = g.center.y;
    sl.q11 = f.c * f.c * ia2 + f.s * f.s * ib2;
    sl.q12 = f.c * f.s * (ia2 - ib2);
    sl.q22 = f.s * f.s * ia2 + f.c * f.c * ib2;
    sl.det = ia2 * ib2;
    const double hw = std::sqrt(f.a * f.a * f.c * f.c + f.b * f.b * f.s * f.s);
    sl.xlo = g.center.x - hw;
    sl.xhi = g.center.x + hw;
    return sl;
}

Slicer slicer_of(const Box& b) {
    Slicer sl{};
    sl.box = true;
    sl.xlo = b.xmin();
    sl.xhi = b.xmax();
    sl.ylo = b.ymin();
    sl.yhi = b.ymax();
    return sl;
}

// Maximises the slice overlap h(t) = min(hi_i) - max(lo_i) over the common
// x-range. h is concave there, so golden-section search finds the maximum.
Feasibility common_point(std::span<const Slicer> sets) {
    double x0 = -std::numeric_limits<double>::infinity();
    double x1 = std::numeric_limits<double>::infinity();
    for (const auto& s : sets) {
        x0 = std::max(x0, s.xlo);
        x1 = std::min(x1, s.xhi);
    }
    if (x0 > x1) return feasibility_from_gap(x0 - x1);

    auto overlap = [&](double t) {
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        for (const auto& s : sets) {
            const auto [a, b] = s.slice(t);
            lo = std::max(lo, a);
            hi = std::min(hi, b);
        }
        return hi - lo;
    };

    constexpr double kDecided = 1e-6;
    double best = std::max(overlap(x0), overlap(x1));
    if (best > kDecided) return feasibility_from_gap(-best);

    constexpr double kInvPhi = 0.6180339887498949;
    double a = x0, b = x1;
    double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
    double fc = overlap(c), fd = overlap(d);
    best = std::max({best, fc, fd});
    const double resolution = 4.0 * std::numeric_limits<double>::epsilon() *
                              std::max({1.0, std::abs(x0), std::abs(x1)});
    for (int it = 0; it < 200 && b - a > resolution && best <= kDecided; ++it) {
        if (fc < fd) {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = overlap(d);
            best = std::max(best, fd);
        } else {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = overlap(c);
            best = std::max(best, fc);
        }
    }
    best = std::max(best, overlap(0.5 * (a + b)));
    return feasibility_from_gap(-best);
}

double segment_origin_distance(Point a, Point b) {
    const Point d = b - a;
    const double len2 = dot(d, d);
    double t = 0.0;
    if (len2 > 0.0) t = std::clamp(-dot(a, d) / len2, 0.0, 1.0);
    return norm(a + t * d);
}

}  // namespace

Feasibility feasibility_from_gap(double gap) {
    return Feasibility{gap <= kGeomTol, std::abs(gap) < kGeomTol, gap};
}

// ---------------------------------------------------------------------------

double point_grain_gap(Point p, const Grain& g) {
    if (g.kind == GrainKind::disk) return norm(p - g.center) - g.R;
    const Frame f = frame_of(g);
    const double rho = std::sqrt(gauge_squared(f, to_local(g, f, p)));
    // (rho - 1) * b is a lower bound on the distance for outside points and
    // has the right sign everywhere.
    return (rho - 1.0) * f.b;
}

bool point_in_grain(Point p, const Grain& g) { return point_grain_gap(p, g) <= kGeomTol; }

double disk_in_grain_gap(Point w, double eps, const Grain& g) {
    if (eps == 0.0) return point_grain_gap(w, g);
    return signed_distance(w, g) + eps;
}

bool disk_in_grain(Point w, double eps, const Grain& g) {
    if (eps < 0.0) throw DomainError("disk_in_grain: eps must be >= 0");
    return disk_in_grain_gap(w, eps, g) <= kGeomTol;
}

double segment_grain_gap(const Grain& g, const Segment& s) {
    const Frame f = frame_of(g);
    const Point la = to_local(g, f, s.a), lb = to_local(g, f, s.b);
    const Point ma{la.x / f.a, la.y / f.b}, mb{lb.x / f.a, lb.y / f.b};
    return (segment_origin_distance(ma, mb) - 1.0) * f.b;
}

bool grain_segment_intersects(const Grain& g, const Segment& s) {
    return segment_grain_gap(g, s) <= kGeomTol;
}

bool grain_box_intersects(const Grain& g, const Box& b) {
    const Aabb gb = bounding_box(g);
    const Aabb bb{b.xmin() - kGeomTol, b.xmax() + kGeomTol, b.ymin() - kGeomTol, b.ymax() + kGeomTol};
    if (!gb.overlaps(bb)) return false;
    if (b.contains(g.center)) return true;
    for (Side side : {Side::left, Side::right, Side::bottom, Side::top}) {
        if (grain_segment_intersects(g, box_side(b, side))) return true;
    }
    return false;
}

Feasibility grain_pair_feasibility(const Grain& a, const Grain& b) {
    const std::array<Slicer, 2> sets{slicer_of(a), slicer_of(b)};
    return common_point(sets);
}

bool grain_grain_intersects(const Grain& a, const Grain& b) {
    return grain_pair_feasibility(a, b).hit;
}

Feasibility triple_common_point(const Grain& a, const Grain& b, const Box& box) {
    const std::array<Slicer, 3> sets{slicer_of(a), slicer_of(b), slicer_of(box)};
    return common_point(sets);
}

// ---------------------------------------------------------------------------

double support_extent(double R, double V, GrainKind kind, double theta) {
    if (kind == GrainKind::disk) return 2.0 * R;
    const double c = std::cos(theta - V), s = std::sin(theta - V);
    return 2.0 * std::sqrt(R * R * c * c + s * s);
}

double support_extent(const Grain& g, double theta) {
    return support_extent(g.R, g.V, g.kind, theta);
}

double minkowski_hit_area(double w, double h, double R, double V, GrainKind kind) {
    const double horizontal = support_extent(R, V, kind, 0.0);
    const double vertical = support_extent(R, V, kind, 0.5 * kPi);
    return w * h + grain_area(R, kind) + w * vertical + h * horizontal;
}

Aabb bounding_box(const Grain& g) {
    const Frame f = frame_of(g);
    const double hx = std::sqrt(f.a * f.a * f.c * f.c + f.b * f.b * f.s * f.s);
    const double hy = std::sqrt(f.a * f.a * f.s * f.s + f.b * f.b * f.c * f.c);
    return {g.center.x - hx, g.center.x + hx, g.center.y - hy, g.center.y + hy};
}

// ---------------------------------------------------------------------------

namespace {

// Root of (r0 z0 / (s + r0))^2 + (z1 / (s + 1))^2 = 1 by bisection.
double ellipse_root(double r0, double z0, double z1, double g) {
    const double n0 = r0 * z0;
    double s0 = z1 - 1.0;
    double s1 = g < 0.0 ? 0.0 : std::hypot(n0, z1) - 1.0;
    double s = 0.0;
    for (int i = 0; i < 1100; ++i) {
        s = 0.5 * (s0 + s1);
        if (s == s0 || s == s1) break;
        const double ratio0 = n0 / (s + r0), ratio1 = z1 / (s + 1.0);
        const double gs = ratio0 * ratio0 + ratio1 * ratio1 - 1.0;
        if (gs > 0.0)
            s0 = s;
        else if (gs < 0.0)
            s1 = s;
        else
            break;
    }
    return s;
}

}  // namespace

double distance_point_ellipse(double e0, double e1, double y0, double y1) {
    if (y1 > 0.0) {
        if (y0 > 0.0) {
            const double z0 = y0 / e0, z1 = y1 / e1;
            const double g = z0 * z0 + z1 * z1 - 1.0;
            if (g == 0.0) return 0.0;
            const double r0 = (e0 / e1) * (e0 / e1);
            const double sbar = ellipse_root(r0, z0, z1, g);
            const double x0 = r0 * y0 / (sbar + r0), x1 = y1 / (sbar + 1.0);
            return std::hypot(x0 - y0, x1 - y1);
        }
        return std::abs(y1 - e1);
    }
    const double numer0 = e0 * y0, denom0 = e0 * e0 - e1 * e1;
    if (numer0 < denom0) {
        const double xde0 = numer0 / denom0;
        const double x0 = e0 * xde0, x1 = e1 * std::sqrt(std::max(0.0, 1.0 - xde0 * xde0));
        return std::hypot(x0 - y0, x1);
    }
    return std::abs(y0 - e0);
}

double signed_distance(Point p, const Grain& g) {
    if (g.kind == GrainKind::disk) return norm(p - g.center) - g.R;
    const Frame f = frame_of(g);
    const Point l = to_local(g, f, p);
    const double d = distance_point_ellipse(f.a, f.b, std::abs(l.x), std::abs(l.y));
    return gauge_squared(f, l) <= 1.0 ? -d : d;
}

double distance_to_grain(Point p, const Grain& g) { return std::max(0.0, signed_distance(p, g)); }

double farthest_distance(Point o, const Grain& g) {
    if (g.kind == GrainKind::disk) return norm(g.center - o) + g.R;
    const Frame f = frame_of(g);
    const Point e1{f.c, f.s}, e2{-f.s, f.c};
    const Point d = g.center - o;
    auto dist = [&](double th) {
        const Point p = d + (f.a * std::cos(th)) * e1 + (f.b * std::sin(th)) * e2;
        return norm(p);
    };
    constexpr int kSamples = 256;
    const double step = 2.0 * kPi / kSamples;
    std::array<double, kSamples> vals{};
    for (int i = 0; i < kSamples; ++i) vals[i] = dist(i * step);
    double best = *std::max_element(vals.begin(), vals.end());
    for (int i = 0; i < kSamples; ++i) {
        const double prev = vals[(i + kSamples - 1) % kSamples], next = vals[(i + 1) % kSamples];
        if (vals[i] < prev || vals[i] < next) continue;
        double a = (i - 1) * step, b = (i + 1) * step;
        constexpr double kInvPhi = 0.6180339887498949;
        double c = b - kInvPhi * (b - a), e = a + kInvPhi * (b - a);
        double fc = dist(c), fe = dist(e);
        for (int it = 0; it < 80; ++it) {
            if (fc > fe) {
                b = e;
                e = c;
                fe = fc;
                c = b - kInvPhi * (b - a);
                fc = dist(c);
            } else {
                a = c;
                c = e;
                fc = fe;
                e = a + kInvPhi * (b - a);
                fe = dist(e);
            }
        }
        best = std::max({best, fc, fe});
    }
    return best;
}

// ---------------------------------------------------------------------------

namespace {

std::pair<double, double> project(std::span<const Point> poly, Point axis) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (Point p : poly) {
        const double v = dot(p, axis);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {lo, hi};
}

bool separated_along_edges(std::span<const Point> p, std::span<const Point> q) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Point e = p[(i + 1) % p.size()] - p[i];
        const Point axis{-e.y, e.x};
        const auto [plo, phi] = project(p, axis);
        const auto [qlo, qhi] = project(q, axis);
        if (phi < qlo || qhi < plo) return true;
    }
    return false;
}

}  // namespace

bool convex_polygons_disjoint(std::span<const Point> p, std::span<const Point> q) {
    return separated_along_edges(p, q) || separated_along_edges(q, p);
}

bool convex_polygon_contains(std::span<const Point> poly, Point x) {
    bool pos = false, neg = false;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point a = poly[i], b = poly[(i + 1) % poly.size()];
        const double cr = (b.x - a.x) * (x.y - a.y) - (b.y - a.y) * (x.x - a.x);
        if (cr > 0) pos = true;
        if (cr < 0) neg = true;
    }
    return !(pos && neg);
}

}  // namespace ellperc
