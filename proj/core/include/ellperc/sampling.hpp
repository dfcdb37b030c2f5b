#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ellperc/axis_law.hpp"
#include "ellperc/configuration.hpp"
#include "ellperc/geometry.hpp"
#include "ellperc/rng.hpp"

namespace ellperc {

/// Intensity, axis law and grain shape of a Poisson grain process.
struct GrainModel {
    double u = 0.0;
    AxisLaw law = AxisLaw::pareto(2.0);
    GrainKind kind = GrainKind::ellipse;

    /// The sub-process of grains with lo <= R < hi: intensity u * P[R in
    /// range], law conditioned on the range. A null range gives u = 0.
    GrainModel restrict_radius(double lo, double hi) const;
};

double sample_major_axis(const AxisLaw& law, double U);
/// V = pi U - pi/2 mapped into (-pi/2, pi/2].
double sample_direction(double U);

/// Expected number of grains hitting the window. Throws InfiniteIntensity
/// when E[R] (ellipses) or E[R^2] (disks) diverges.
double hitting_intensity(const Box& window, double u, const AxisLaw& law, GrainKind kind);
double hitting_intensity(const Box& window, const GrainModel& model);

struct SamplerOptions {
    /// Center-rejection attempts allowed for one grain before RejectionStall.
    std::uint64_t max_attempts = 1'000'000;
};

/// Exact sampler of the grains hitting a window. Construction evaluates the
/// intensity once; sample() may then be called for any number of replicates.
class HitProcessSampler {
  public:
    HitProcessSampler(const Box& window, const GrainModel& model, const SamplerOptions& options = {});

    double intensity() const { return model_.u * total_; }
    const Box& window() const { return window_; }
    std::vector<Grain> sample(Rng& rng) const;

  private:
    double direction(Rng& rng) const;
    Grain sample_one(Rng& rng) const;
    Grain place(double R, double V, Rng& rng) const;

    Box window_;
    GrainModel model_;
    SamplerOptions options_;
    std::array<double, 4> weights_{};
    double total_ = 0.0;
    AxisLaw area_law_;
    AxisLaw width_law_;
};

/// Exact draw of the grains hitting the window, in sampling order.
std::vector<Grain> sample_hitting_grains(const Box& window, const GrainModel& model, Rng& rng,
                                         const SamplerOptions& options = {});

Configuration sample_hitting_process(const Box& window, double u, const AxisLaw& law, GrainKind kind,
                                     std::uint64_t seed, const SamplerOptions& options = {});

struct TruncationReport {
    double radius = 0.0;
    double error_probability = 0.0;
    std::string method;  // "closed-form" or "quadrature"
};

/// Grains of the model centred in B(target, region_radius) that may reach
/// B(target, a); every grain meeting B(target, a) is included. Centres are
/// generated shell by shell with a substream per shell, so a larger region
/// radius extends the same realization.
std::vector<Grain> sample_near_target(Point target, double a, double region_radius, const GrainModel& model,
                                      Rng& rng);

/// Grains centred within trunc_radius of the window centre that hit the
/// window, with the far-field certificate. Valid for every alpha.
std::pair<Configuration, TruncationReport> sample_truncated_process(const Box& window, double u,
                                                                    const AxisLaw& law, GrainKind kind,
                                                                    double trunc_radius, std::uint64_t seed);

/// Upper bound on P[some grain centred outside B(w, trunc_radius) meets
/// B(w, a)]. Requires trunc_radius >= max(a + 1, 2a).
double truncation_error_bound(double a, double trunc_radius, double u, const AxisLaw& law,
                              GrainKind kind = GrainKind::ellipse);

/// Homogeneous Poisson points of intensity u in the box.
std::vector<Point> sample_poisson_points(const Box& region, double u, Rng& rng);

/// All grains centred in the box (independent marks).
std::vector<Grain> sample_centered_in(const Box& region, const GrainModel& model, Rng& rng);

Grain make_grain(Point center, double R, double V, GrainKind kind);

/// Keeps each point independently with probability g(point).
std::vector<Point> thin_points(const std::vector<Point>& points, const std::function<double(Point)>& g,
                               Rng& rng);

}  // namespace ellperc
