#pragma once

// Closed ellipses, disks, boxes and segments in the plane, with exact
// intersection / containment predicates.
//
// An ellipse grain has semi-major axis R along direction V and semi-minor
// axis 1; a disk grain has radius R. All sets are closed, so boundary contact
// counts as intersection. Gap tests use an absolute tolerance of kGeomTol
// plane units, and a decision within the tolerance resolves to "intersecting".

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <string_view>

namespace ellperc {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kGeomTol = 1e-9;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend constexpr bool operator==(Point, Point) = default;
};

constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
constexpr Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point p) { return std::hypot(p.x, p.y); }

/// Counter-clockwise rotation of p about the origin.
inline Point rotate(Point p, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * p.x - s * p.y, s * p.x + c * p.y};
}

enum class GrainKind { ellipse, disk };

std::string_view to_string(GrainKind kind);
GrainKind grain_kind_from_string(std::string_view name);

/// Maps any axis direction to its representative in (-pi/2, pi/2].
double normalize_direction(double v);

/// One grain of the model. Construct through make_ellipse / make_disk so
/// that the invariants (R >= 1, V normalized, disks have V = 0) hold.
struct Grain {
    Point center;
    double R = 1.0;
    double V = 0.0;
    GrainKind kind = GrainKind::ellipse;

    double semi_major() const { return R; }
    double semi_minor() const { return kind == GrainKind::disk ? R : 1.0; }
    double area() const;

    friend bool operator==(const Grain&, const Grain&) = default;
};

/// Throws DomainError when R < 1 or an input is not finite.
Grain make_ellipse(Point center, double R, double V);
Grain make_disk(Point center, double R);

/// Axis-aligned rectangle of height l and width k*l centred at `center`.
struct Box {
    double l = 1.0;
    double k = 1.0;
    Point center;

    double width() const { return l * k; }
    double height() const { return l; }
    double xmin() const { return center.x - 0.5 * width(); }
    double xmax() const { return center.x + 0.5 * width(); }
    double ymin() const { return center.y - 0.5 * height(); }
    double ymax() const { return center.y + 0.5 * height(); }
    double circumradius() const { return 0.5 * std::hypot(width(), height()); }
    bool contains(Point p) const {
        return p.x >= xmin() && p.x <= xmax() && p.y >= ymin() && p.y <= ymax();
    }

    friend bool operator==(const Box&, const Box&) = default;
};

/// Throws DomainError unless l > 0 and k > 0.
Box make_box(double l, double k, Point center = {});
/// Box with explicit extents; the aspect ratio k is derived.
Box box_from_extents(double xmin, double xmax, double ymin, double ymax);

struct Segment {
    Point a;
    Point b;
};

enum class Side { left, right, bottom, top };

/// L-, L+, bottom and top sides of a box as closed segments.
Segment box_side(const Box& box, Side side);

struct Aabb {
    double xmin, xmax, ymin, ymax;
    bool overlaps(const Aabb& o) const {
        return xmin <= o.xmax && o.xmin <= xmax && ymin <= o.ymax && o.ymin <= ymax;
    }
};

Aabb bounding_box(const Grain& g);

/// Outcome of a convex feasibility test. `gap` is a signed separation in
/// plane units: positive when the sets are apart, negative when they overlap.
/// The magnitude is a proxy (exact along the search direction), not the
/// Euclidean distance.
struct Feasibility {
    bool hit = false;
    bool marginal = false;
    double gap = 0.0;

    explicit operator bool() const { return hit; }
};

Feasibility feasibility_from_gap(double gap);

// ---------------------------------------------------------------------------
// Predicates

bool point_in_grain(Point p, const Grain& g);
/// Closed disk B(w, eps) contained in the closed grain. eps == 0 reduces to
/// point_in_grain.
bool disk_in_grain(Point w, double eps, const Grain& g);
bool grain_segment_intersects(const Grain& g, const Segment& s);
bool grain_box_intersects(const Grain& g, const Box& b);
bool grain_grain_intersects(const Grain& a, const Grain& b);

/// Does a ∩ b ∩ box contain a point? Reports marginal decisions.
Feasibility triple_common_point(const Grain& a, const Grain& b, const Box& box);
/// Same search without the box; grain_grain_intersects is its `hit`.
Feasibility grain_pair_feasibility(const Grain& a, const Grain& b);

/// Signed gaps backing the boolean predicates (positive = outside / apart).
double point_grain_gap(Point p, const Grain& g);
double disk_in_grain_gap(Point w, double eps, const Grain& g);
double segment_grain_gap(const Grain& g, const Segment& s);

// ---------------------------------------------------------------------------
// Measures

/// Full width of the grain's projection onto direction `theta`.
double support_extent(const Grain& g, double theta);
double support_extent(double R, double V, GrainKind kind, double theta);

/// Lebesgue measure of the set of centres z for which the grain (R, V)
/// centred at z meets a w-by-h box.
double minkowski_hit_area(double w, double h, double R, double V, GrainKind kind);

double grain_area(double R, GrainKind kind);

// ---------------------------------------------------------------------------
// Distances

/// Euclidean distance from p to the closed grain (0 inside).
double distance_to_grain(Point p, const Grain& g);
/// Negative inside (minus the distance to the boundary), positive outside.
double signed_distance(Point p, const Grain& g);
/// max |x - o| over the grain.
double farthest_distance(Point o, const Grain& g);

/// Distance from a point (y0, y1) in the first quadrant to the ellipse with
/// semi-axes e0 >= e1 > 0 aligned with the coordinate axes. Works for points
/// inside and outside.
double distance_point_ellipse(double e0, double e1, double y0, double y1);

/// Convex polygons (counter-clockwise or clockwise) are disjoint, via
/// separating axes. Touching counts as not disjoint.
bool convex_polygons_disjoint(std::span<const Point> p, std::span<const Point> q);
bool convex_polygon_contains(std::span<const Point> poly, Point p);

}  // namespace ellperc
