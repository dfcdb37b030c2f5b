#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ellperc/axis_law.hpp"
#include "ellperc/events.hpp"
#include "ellperc/geometry.hpp"
#include "ellperc/rng.hpp"
#include "ellperc/sampling.hpp"

namespace ellperc {

enum class EventKind {
    covered_lr,
    covered_tb,
    vacant_lr,
    one_ellipse_lr,
    circuit3,
    point_covered,
    disk_covered,
    annulus_conn,
    vacant_annulus_circuit,
};

std::string_view to_string(EventKind e);
EventKind event_from_string(std::string_view name);
const std::array<EventKind, 9>& all_events();

/// Model and geometry of one estimation. Which fields matter depends on the
/// event:
///   box events (covered_lr, covered_tb, vacant_lr, one_ellipse_lr): l, k;
///   circuit3: a;
///   point_covered, disk_covered: w, eps, and the window box(l, k) about w;
///   annulus_conn: r_in, r_out;  vacant_annulus_circuit: l (annulus B(3l) \ B(l)).
/// A positive trunc_radius switches from the exact hit process to the
/// truncated sampler with its certificate.
struct EventParams {
    GrainModel model;
    double l = 1.0;
    double k = 1.0;
    double a = 0.0;
    double eps = 0.0;
    Point w{};
    double r_in = 0.0;
    double r_out = 0.0;
    double trunc_radius = 0.0;
    bool allow_truncation_error = false;
};

/// Prepared per-replicate sampler and evaluator for one event.
class EventSampler {
  public:
    EventSampler(EventKind event, const EventParams& params);

    EventKind event() const { return event_; }
    /// Region whose hitting grains are sampled.
    const Box& window() const { return window_; }
    /// Per-replicate bound on the probability that truncation changed the
    /// sample (0 for exact sampling).
    double truncation_error() const { return truncation_error_; }

    std::vector<Grain> sample(Rng& rng) const;
    bool evaluate(std::span<const Grain> grains) const;

  private:
    EventKind event_;
    EventParams params_;
    Box window_;
    double truncation_error_ = 0.0;
    std::optional<HitProcessSampler> hit_;
    GrainModel sample_model_;
};

struct EstimateResult {
    std::string event;
    EventParams params;
    std::int64_t n = 0;
    std::int64_t successes = 0;
    double phat = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double level = 0.95;
    std::uint64_t seed = 0;
    double truncation_error = 0.0;
    double wall_time = 0.0;
};

/// Wilson score interval, clamped to [0, 1].
std::pair<double, double> wilson_ci(std::int64_t successes, std::int64_t n, double level = 0.95);

/// n replicates, replicate r drawn from substream (seed, r). Refuses
/// truncated runs whose certificate exceeds (1 - level) / 10 unless
/// params.allow_truncation_error is set.
EstimateResult estimate(EventKind event, const EventParams& params, std::int64_t n, std::uint64_t seed,
                        double level = 0.95, int threads = 1);

/// Replicate outcomes (0/1) in replicate order, for paired comparisons.
std::vector<std::uint8_t> replicate_outcomes(EventKind event, const EventParams& params, std::int64_t n,
                                             std::uint64_t seed, int threads = 1);

struct CovarianceResult {
    std::int64_t n = 0;
    double mean_a = 0.0;
    double mean_b = 0.0;
    double cov = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
};

/// Plug-in covariance of paired samples with a delta-method normal interval.
CovarianceResult covariance_of_samples(std::span<const double> a, std::span<const double> b, double level = 0.95);

/// Both events evaluated on one shared configuration per replicate, sampled
/// on the bounding box of the two event windows.
CovarianceResult covariance(EventKind event_a, const EventParams& params_a, EventKind event_b,
                            const EventParams& params_b, std::int64_t n, std::uint64_t seed, double level = 0.95,
                            int threads = 1);

struct LlnRow {
    double n = 0.0;
    double mean = 0.0;
    double variance = 0.0;
};

/// Counts of grains centred in B(n) covering B(0, eps), for every n in
/// n_list, from one realization per replicate sampled on B(max n).
std::vector<LlnRow> lln_counts(double eps, const GrainModel& model, std::span<const double> n_list,
                               std::int64_t reps, std::uint64_t seed, int threads = 1);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
    double r_squared = 0.0;
};

using PowerFit = LinearFit;

/// Ordinary least squares; needs >= 3 points.
LinearFit fit_linear(std::span<const double> x, std::span<const double> y);
/// OLS of log y on log x; DomainError on non-positive input.
PowerFit fit_power_law(std::span<const std::pair<double, double>> points);

/// One scan grid point. Rows come in lexicographic (alpha, u, l, k) order and
/// row g uses seed base_seed + g.
struct ScanRow {
    EstimateResult result;
    std::string error;
};

struct ScanGrid {
    std::vector<double> alpha;
    std::vector<double> u;
    std::vector<double> l;
    std::vector<double> k;
};

std::vector<ScanRow> scan(EventKind event, const EventParams& base, const ScanGrid& grid, std::int64_t n,
                          std::uint64_t base_seed, double level = 0.95, int threads = 1);

/// CSV schema of estimate rows.
std::string csv_header();
std::string csv_row(const EstimateResult& r);
nlohmann::json to_json(const EstimateResult& r);
/// key=value pairs (semicolon separated) for the parameters that the event
/// uses beyond alpha, u, l, k.
std::string extra_field(const EstimateResult& r);

/// Shortest round-trip decimal form of a double.
std::string format_double(double x);

}  // namespace ellperc
