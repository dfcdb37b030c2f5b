#include "ellperc/events.hpp"

#include <algorithm>
#include <cmath>

#include "ellperc/errors.hpp"
#include "ellperc/union_find.hpp"

namespace ellperc {

namespace {

// Calls f(i, j), i < j, for every pair of overlapping boxes.
template <class F>
void for_overlapping_pairs(const std::vector<Aabb>& boxes, F&& f) {
    std::vector<std::size_t> order(boxes.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return boxes[a].xmin < boxes[b].xmin; });
    for (std::size_t p = 0; p < order.size(); ++p) {
        const Aabb& bi = boxes[order[p]];
        for (std::size_t q = p + 1; q < order.size(); ++q) {
            const Aabb& bj = boxes[order[q]];
            if (bj.xmin > bi.xmax) break;
            if (bj.ymin > bi.ymax || bi.ymin > bj.ymax) continue;
            f(std::min(order[p], order[q]), std::max(order[p], order[q]));
        }
    }
}

Aabb padded(Aabb b) {
    return {b.xmin - kGeomTol, b.xmax + kGeomTol, b.ymin - kGeomTol, b.ymax + kGeomTol};
}

}  // namespace

CrossingGraph::CrossingGraph(std::span<const Grain> grains, const Box& box) {
    std::vector<Aabb> boxes;
    std::vector<std::uint8_t> marks;
    const Aabb window{box.xmin(), box.xmax(), box.ymin(), box.ymax()};
    const std::array<std::pair<Side, std::uint8_t>, 4> sides{
        {{Side::left, kLeft}, {Side::right, kRight}, {Side::bottom, kBottom}, {Side::top, kTop}}};
    for (std::size_t i = 0; i < grains.size(); ++i) {
        if (!grain_box_intersects(grains[i], box)) continue;
        nodes_.push_back(i);
        Aabb b = bounding_box(grains[i]);
        b = {std::max(b.xmin, window.xmin), std::min(b.xmax, window.xmax), std::max(b.ymin, window.ymin),
             std::min(b.ymax, window.ymax)};
        boxes.push_back(padded(b));
        std::uint8_t m = 0;
        for (const auto& [side, bit] : sides)
            if (grain_segment_intersects(grains[i], box_side(box, side))) m |= bit;
        marks.push_back(m);
    }

    UnionFind uf(nodes_.size());
    for_overlapping_pairs(boxes, [&](std::size_t i, std::size_t j) {
        if (uf.same(i, j)) return;
        if (triple_common_point(grains[nodes_[i]], grains[nodes_[j]], box).hit) {
            uf.unite(i, j);
            ++edges_;
        }
    });

    std::vector<std::size_t> root_to_component(nodes_.size(), static_cast<std::size_t>(-1));
    component_.resize(nodes_.size());
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
        const std::size_t r = uf.find(k);
        if (root_to_component[r] == static_cast<std::size_t>(-1)) {
            root_to_component[r] = component_marks_.size();
            component_marks_.push_back(0);
        }
        component_[k] = root_to_component[r];
        component_marks_[component_[k]] |= marks[k];
    }
}

bool CrossingGraph::crosses(Axis axis) const {
    const std::uint8_t need = axis == Axis::horizontal ? (kLeft | kRight) : (kBottom | kTop);
    return std::any_of(component_marks_.begin(), component_marks_.end(),
                       [&](std::uint8_t m) { return (m & need) == need; });
}

bool covered_crossing(std::span<const Grain> grains, const Box& box, Axis axis) {
    return CrossingGraph(grains, box).crosses(axis);
}

bool covered_crossing(const Configuration& config, const Box& box, Axis axis) {
    return covered_crossing(config.grains, box, axis);
}

bool vacant_lr_crossing(std::span<const Grain> grains, const Box& box) {
    return !covered_crossing(grains, box, Axis::vertical);
}

bool vacant_lr_crossing(const Configuration& config, const Box& box) { return vacant_lr_crossing(config.grains, box); }

bool one_ellipse_crossing(std::span<const Grain> grains, const Box& box) {
    const Segment left = box_side(box, Side::left), right = box_side(box, Side::right);
    return std::any_of(grains.begin(), grains.end(), [&](const Grain& g) {
        return grain_segment_intersects(g, left) && grain_segment_intersects(g, right);
    });
}

bool one_ellipse_crossing(const Configuration& config, const Box& box) {
    return one_ellipse_crossing(config.grains, box);
}

// ---------------------------------------------------------------------------

CircuitSpec CircuitSpec::make(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("circuit: scale a must be > 0");
    const double h = std::sqrt(3.0) / 2.0 * a;
    const Segment s_minus{{-h, -a / 2}, {-h, -a / 4}};
    const Segment s_plus{{h, -a / 2}, {h, -a / 4}};
    const std::array<Point, 4> strip{Point{-h, -a / 2}, Point{h, -a / 2}, Point{h, -a / 4}, Point{-h, -a / 4}};
    const std::array<Point, 4> region{Point{-a / 4, -7 * a / 16}, Point{a / 4, -7 * a / 16}, Point{a / 4, -5 * a / 16},
                                      Point{-a / 4, -5 * a / 16}};
    CircuitSpec spec;
    spec.a = a;
    for (int j = 0; j < 3; ++j) {
        const double t = 2.0 * kPi * j / 3.0;
        spec.minus[j] = {rotate(s_minus.a, t), rotate(s_minus.b, t)};
        spec.plus[j] = {rotate(s_plus.a, t), rotate(s_plus.b, t)};
        for (int c = 0; c < 4; ++c) {
            spec.strip[j][c] = rotate(strip[c], t);
            spec.region[j][c] = rotate(region[c], t);
        }
    }
    for (int j = 0; j < 3; ++j) {
        for (const Point& p : spec.region[j])
            if (!convex_polygon_contains(spec.strip[j], p)) throw DomainError("circuit: D_j must lie inside B_j");
        for (int i = 0; i < 3; ++i)
            if (i != j && !convex_polygons_disjoint(spec.region[j], spec.strip[i]))
                throw DomainError("circuit: D_j must be disjoint from B_i for i != j");
    }
    return spec;
}

bool three_ellipse_circuit(std::span<const Grain> grains, double a) {
    const CircuitSpec spec = CircuitSpec::make(a);
    for (int j = 0; j < 3; ++j) {
        const bool found = std::any_of(grains.begin(), grains.end(), [&](const Grain& g) {
            return convex_polygon_contains(spec.region[j], g.center) && grain_segment_intersects(g, spec.minus[j]) &&
                   grain_segment_intersects(g, spec.plus[j]);
        });
        if (!found) return false;
    }
    return true;
}

bool three_ellipse_circuit(const Configuration& config, double a) { return three_ellipse_circuit(config.grains, a); }

std::int64_t count_covering(std::span<const Grain> grains, Point w, double eps, double n) {
    if (!(eps >= 0.0)) throw DomainError("count_covering: eps must be >= 0");
    return std::count_if(grains.begin(), grains.end(),
                         [&](const Grain& g) { return norm(g.center) <= n && disk_in_grain(w, eps, g); });
}

std::int64_t count_covering(const Configuration& config, Point w, double eps, double n) {
    return count_covering(config.grains, w, eps, n);
}

bool annulus_connection(std::span<const Grain> grains, double r_in, double r_out) {
    if (!(r_in > 0.0) || !(r_out > r_in)) throw DomainError("annulus: need 0 < r_in < r_out");
    const Point origin{};
    std::vector<std::size_t> nodes;
    std::vector<std::uint8_t> marks;
    std::vector<Aabb> boxes;
    for (std::size_t i = 0; i < grains.size(); ++i) {
        const double dmin = distance_to_grain(origin, grains[i]);
        if (dmin > r_out + kGeomTol) continue;
        const double dmax = farthest_distance(origin, grains[i]);
        if (dmax < r_in - kGeomTol) continue;
        std::uint8_t m = 0;
        if (dmin <= r_in + kGeomTol) m |= 1;
        if (dmax >= r_out - kGeomTol) m |= 2;
        if (m == 3) return true;
        nodes.push_back(i);
        marks.push_back(m);
        boxes.push_back(padded(bounding_box(grains[i])));
    }
    UnionFind uf(nodes.size());
    for_overlapping_pairs(boxes, [&](std::size_t i, std::size_t j) {
        if (!uf.same(i, j) && grain_grain_intersects(grains[nodes[i]], grains[nodes[j]])) uf.unite(i, j);
    });
    std::vector<std::uint8_t> root_marks(nodes.size(), 0);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        auto& m = root_marks[uf.find(k)];
        m |= marks[k];
        if (m == 3) return true;
    }
    return false;
}

bool annulus_connection(const Configuration& config, double r_in, double r_out) {
    return annulus_connection(config.grains, r_in, r_out);
}

bool vacant_circuit_in_annulus(std::span<const Grain> grains, double l) {
    return !annulus_connection(grains, l, 3.0 * l);
}

bool vacant_circuit_in_annulus(const Configuration& config, double l) {
    return vacant_circuit_in_annulus(config.grains, l);
}

}  // namespace ellperc
