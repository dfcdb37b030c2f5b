#include "ellperc/raster.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "ellperc/errors.hpp"

namespace ellperc {

Raster::Raster(const Box& region, int nx, int ny)
    : region_(region),
      nx_(nx),
      ny_(ny),
      dx_(region.width() / nx),
      dy_(region.height() / ny),
      r_(std::max(dx_, dy_)),
      cells_(static_cast<std::size_t>(nx) * ny, 0) {}

Point Raster::center(int i, int j) const {
    return {region_.xmin() + (i + 0.5) * dx_, region_.ymin() + (j + 0.5) * dy_};
}

void Raster::add(const Grain& g) {
    const Aabb bb = bounding_box(g);
    const int i0 = std::max(0, static_cast<int>(std::floor((bb.xmin - r_ - region_.xmin()) / dx_)));
    const int i1 = std::min(nx_ - 1, static_cast<int>(std::floor((bb.xmax + r_ - region_.xmin()) / dx_)));
    const int j0 = std::max(0, static_cast<int>(std::floor((bb.ymin - r_ - region_.ymin()) / dy_)));
    const int j1 = std::min(ny_ - 1, static_cast<int>(std::floor((bb.ymax + r_ - region_.ymin()) / dy_)));
    if (i0 > i1 || j0 > j1) return;

    const double a = g.semi_major(), b = g.semi_minor();
    const double c = std::cos(g.V), s = std::sin(g.V);
    for (int j = j0; j <= j1; ++j) {
        for (int i = i0; i <= i1; ++i) {
            std::uint8_t& f = cells_[index(i, j)];
            if (f & kDeep) continue;
            const Point p = center(i, j);
            const double px = p.x - g.center.x, py = p.y - g.center.y;
            const double lx = c * px + s * py, ly = -s * px + c * py;
            const double rho = std::hypot(lx / a, ly / b);
            if (rho <= 1.0) {
                f |= kCovered | kNear;
                // Depth below the boundary lies in [(1 - rho) b, (1 - rho) a].
                bool deep = false;
                if ((1.0 - rho) * b >= r_)
                    deep = true;
                else if ((1.0 - rho) * a >= r_)
                    deep = -signed_distance(p, g) >= r_;
                if (deep) f |= kDeep;
            } else if (!(f & kNear)) {
                // Distance to the grain lies in [(rho - 1) b, (rho - 1) a].
                bool near = false;
                if ((rho - 1.0) * a <= r_)
                    near = true;
                else if ((rho - 1.0) * b <= r_)
                    near = signed_distance(p, g) <= r_;
                if (near) f |= kNear;
            }
        }
    }
}

std::size_t Raster::covered_count() const {
    return static_cast<std::size_t>(std::count_if(cells_.begin(), cells_.end(), [](std::uint8_t f) { return f & kCovered; }));
}

Raster rasterize_scene(std::span<const Grain> grains, const Box& region, int nx, int ny, std::size_t max_cells) {
    if (nx < 64 || ny < 64) throw DomainError("rasterize_scene: resolution must be >= 64");
    if (static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) > max_cells)
        throw ResourceLimit("rasterize_scene: " + std::to_string(nx) + "x" + std::to_string(ny) +
                            " cells exceed the budget of " + std::to_string(max_cells));
    Raster raster(region, nx, ny);
    for (const auto& g : grains) raster.add(g);
    return raster;
}

Raster rasterize_scene(std::span<const Grain> grains, const Box& region, int resolution, std::size_t max_cells) {
    return rasterize_scene(grains, region, resolution, resolution, max_cells);
}

namespace {

// Breadth-first search over 8-connected cells satisfying `open`, from cells
// satisfying `start` to any cell satisfying `goal`.
template <class Open, class Start, class Goal>
bool connected8(int nx, int ny, Open open, Start start, Goal goal) {
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(nx) * ny, 0);
    std::deque<std::pair<int, int>> queue;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            if (open(i, j) && start(i, j)) {
                seen[static_cast<std::size_t>(j) * nx + i] = 1;
                queue.emplace_back(i, j);
            }
    while (!queue.empty()) {
        const auto [i, j] = queue.front();
        queue.pop_front();
        if (goal(i, j)) return true;
        for (int dj = -1; dj <= 1; ++dj)
            for (int di = -1; di <= 1; ++di) {
                const int a = i + di, b = j + dj;
                if ((di == 0 && dj == 0) || a < 0 || b < 0 || a >= nx || b >= ny) continue;
                auto& s = seen[static_cast<std::size_t>(b) * nx + a];
                if (s || !open(a, b)) continue;
                s = 1;
                queue.emplace_back(a, b);
            }
    }
    return false;
}

}  // namespace

Verdict raster_covered_crossing(const Raster& raster, bool horizontal) {
    const int nx = raster.nx(), ny = raster.ny();
    auto start = [&](int i, int j) { return horizontal ? i == 0 : j == 0; };
    auto goal = [&](int i, int j) { return horizontal ? i == nx - 1 : j == ny - 1; };
    if (connected8(nx, ny, [&](int i, int j) { return raster.deep(i, j); }, start, goal)) return Verdict::yes;
    if (!connected8(nx, ny, [&](int i, int j) { return !raster.far(i, j); }, start, goal)) return Verdict::no;
    return Verdict::undetermined;
}

Verdict raster_vacant_lr(const Raster& raster) {
    switch (raster_covered_crossing(raster, false)) {
        case Verdict::yes: return Verdict::no;
        case Verdict::no: return Verdict::yes;
        case Verdict::undetermined: break;
    }
    return Verdict::undetermined;
}

Verdict raster_annulus_connection(const Raster& raster, double r_in, double r_out) {
    const int nx = raster.nx(), ny = raster.ny();
    const double hx = 0.5 * raster.pixel_width(), hy = 0.5 * raster.pixel_height();
    auto min_dist = [&](int i, int j) {
        const Point c = raster.center(i, j);
        const double x = std::max(0.0, std::abs(c.x) - hx), y = std::max(0.0, std::abs(c.y) - hy);
        return std::hypot(x, y);
    };
    auto max_dist = [&](int i, int j) {
        const Point c = raster.center(i, j);
        return std::hypot(std::abs(c.x) + hx, std::abs(c.y) + hy);
    };
    const bool sure = connected8(
        nx, ny, [&](int i, int j) { return raster.deep(i, j); },
        [&](int i, int j) { return min_dist(i, j) <= r_in; }, [&](int i, int j) { return max_dist(i, j) >= r_out; });
    if (sure) return Verdict::yes;
    const bool possible = connected8(
        nx, ny,
        [&](int i, int j) { return !raster.far(i, j) && min_dist(i, j) <= r_out && max_dist(i, j) >= r_in; },
        [&](int i, int j) { return min_dist(i, j) <= r_in; }, [&](int i, int j) { return max_dist(i, j) >= r_out; });
    return possible ? Verdict::undetermined : Verdict::no;
}

bool grid_crosses_lr(const std::vector<std::uint8_t>& open, int nx, int ny) {
    std::vector<std::uint8_t> seen(open.size(), 0);
    std::deque<std::pair<int, int>> queue;
    for (int j = 0; j < ny; ++j) {
        const auto idx = static_cast<std::size_t>(j) * nx;
        if (open[idx]) {
            seen[idx] = 1;
            queue.emplace_back(0, j);
        }
    }
    constexpr int kSteps[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    while (!queue.empty()) {
        const auto [i, j] = queue.front();
        queue.pop_front();
        if (i == nx - 1) return true;
        for (const auto& st : kSteps) {
            const int a = i + st[0], b = j + st[1];
            if (a < 0 || b < 0 || a >= nx || b >= ny) continue;
            const auto idx = static_cast<std::size_t>(b) * nx + a;
            if (seen[idx] || !open[idx]) continue;
            seen[idx] = 1;
            queue.emplace_back(a, b);
        }
    }
    return false;
}

}  // namespace ellperc
