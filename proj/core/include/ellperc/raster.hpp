#pragma once

// Pixel rendering of a scene, used as an independent ground truth for the
// exact event code.
//
// Besides the plain bitmap (pixel centre covered), each pixel records two
// certified classes: "deep" when the ball of radius r around its centre lies
// in a single grain (so the whole pixel is covered), and "far" when every
// grain is farther than r from its centre (so the whole pixel is vacant),
// where r is at least the pixel half-diagonal. Path searches over these
// classes give verdicts that are either certain or explicitly undetermined.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ellperc/geometry.hpp"

namespace ellperc {

inline constexpr std::size_t kDefaultRasterBudget = std::size_t{1} << 26;

enum class Verdict { no, yes, undetermined };

class Raster {
  public:
    static constexpr std::uint8_t kCovered = 1;
    static constexpr std::uint8_t kDeep = 2;
    static constexpr std::uint8_t kNear = 4;

    Raster(const Box& region, int nx, int ny);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    const Box& region() const { return region_; }
    double pixel_width() const { return dx_; }
    double pixel_height() const { return dy_; }
    double radius() const { return r_; }

    Point center(int i, int j) const;
    std::uint8_t flags(int i, int j) const { return cells_[index(i, j)]; }
    bool covered(int i, int j) const { return flags(i, j) & kCovered; }
    bool deep(int i, int j) const { return flags(i, j) & kDeep; }
    bool far(int i, int j) const { return !(flags(i, j) & kNear); }

    void add(const Grain& g);
    std::size_t covered_count() const;

  private:
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx_ + i; }

    Box region_;
    int nx_, ny_;
    double dx_, dy_, r_;
    std::vector<std::uint8_t> cells_;
};

/// Throws DomainError when resolution < 64 and ResourceLimit when
/// nx * ny exceeds the cell budget.
Raster rasterize_scene(std::span<const Grain> grains, const Box& region, int resolution,
                       std::size_t max_cells = kDefaultRasterBudget);
Raster rasterize_scene(std::span<const Grain> grains, const Box& region, int nx, int ny,
                       std::size_t max_cells = kDefaultRasterBudget);

/// Covered crossing of the raster region (left-right when horizontal,
/// bottom-top otherwise).
Verdict raster_covered_crossing(const Raster& raster, bool horizontal);
/// Vacant left-right crossing, certified by the dual covered search.
Verdict raster_vacant_lr(const Raster& raster);
/// Covered connection between the circles of radius r_in and r_out about the
/// origin. The raster region must contain B(r_out).
Verdict raster_annulus_connection(const Raster& raster, double r_in, double r_out);

/// 4-connected path search over a boolean grid: does a set cell in the first
/// column connect to a set cell in the last one?
bool grid_crosses_lr(const std::vector<std::uint8_t>& open, int nx, int ny);

}  // namespace ellperc
