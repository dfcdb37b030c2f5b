#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "ellperc/configuration.hpp"
#include "ellperc/geometry.hpp"

namespace ellperc {

enum class Axis { horizontal, vertical };

/// Grains meeting a box, joined when two of them share a point inside the
/// box, with the box sides each component touches.
class CrossingGraph {
  public:
    static constexpr std::uint8_t kLeft = 1, kRight = 2, kBottom = 4, kTop = 8;

    CrossingGraph(std::span<const Grain> grains, const Box& box);

    /// Indices (into the input span) of grains meeting the box.
    const std::vector<std::size_t>& nodes() const { return nodes_; }
    std::size_t edge_count() const { return edges_; }
    /// Side marks of the component containing node k.
    std::uint8_t component_marks(std::size_t k) const { return component_marks_[component_[k]]; }
    std::size_t component_count() const { return component_marks_.size(); }
    bool crosses(Axis axis) const;

  private:
    std::vector<std::size_t> nodes_;
    std::vector<std::size_t> component_;
    std::vector<std::uint8_t> component_marks_;
    std::size_t edges_ = 0;
};

bool covered_crossing(std::span<const Grain> grains, const Box& box, Axis axis);
bool covered_crossing(const Configuration& config, const Box& box, Axis axis);
/// Vacant left-right crossing, by duality with the covered top-bottom one.
bool vacant_lr_crossing(std::span<const Grain> grains, const Box& box);
bool vacant_lr_crossing(const Configuration& config, const Box& box);
/// Some single grain meets both vertical sides.
bool one_ellipse_crossing(std::span<const Grain> grains, const Box& box);
bool one_ellipse_crossing(const Configuration& config, const Box& box);

/// Segments S_j^-, S_j^+, strips B_j and centre regions D_j of the
/// three-grain circuit at scale a, for j = 0, 1, 2 (rotations by 2 pi j / 3).
struct CircuitSpec {
    double a = 0.0;
    std::array<Segment, 3> minus;
    std::array<Segment, 3> plus;
    std::array<std::array<Point, 4>, 3> strip;
    std::array<std::array<Point, 4>, 3> region;

    /// Throws DomainError if a <= 0 or if some D_j is not inside B_j or
    /// touches another B_i.
    static CircuitSpec make(double a);
};

bool three_ellipse_circuit(std::span<const Grain> grains, double a);
bool three_ellipse_circuit(const Configuration& config, double a);

/// Grains centred in the closed ball B(n) about the origin that contain the
/// closed disk B(w, eps).
std::int64_t count_covering(std::span<const Grain> grains, Point w, double eps, double n);
std::int64_t count_covering(const Configuration& config, Point w, double eps, double n);

/// A covered connection between the circles of radii r_in < r_out about the
/// origin.
bool annulus_connection(std::span<const Grain> grains, double r_in, double r_out);
bool annulus_connection(const Configuration& config, double r_in, double r_out);
/// A vacant circuit around the origin inside B(3l) \ B(l).
bool vacant_circuit_in_annulus(std::span<const Grain> grains, double l);
bool vacant_circuit_in_annulus(const Configuration& config, double l);

}  // namespace ellperc
