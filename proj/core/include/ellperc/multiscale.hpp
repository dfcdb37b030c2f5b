#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "ellperc/axis_law.hpp"
#include "ellperc/geometry.hpp"
#include "ellperc/rng.hpp"

namespace ellperc {

// ---------------------------------------------------------------------------
// q_k recursion

struct RecursionParams {
    double C7 = 1.0;
    double alpha = 3.0;
    double u = 0.0;
    double q0 = 0.0;
};

/// q_{k+1} = min(1, C7 q_k^2 + u C7 10^((2 - alpha) k)) for k < k_max;
/// returns q_0 .. q_{k_max}.
std::vector<double> iterate_qk(const RecursionParams& params, int k_max);

/// Same recursion started from q_{k_start} = q_start; entry i is q_{k_start + i}.
std::vector<double> iterate_qk_from(double C7, double alpha, double u, int k_start, double q_start, int k_max);

struct K0U0 {
    double epsilon = 0.0;
    int k0 = 0;
    double u0 = 0.0;
    /// log10 of u0, finite even when u0 itself underflows to 0 (alpha close to 2).
    double log10_u0 = 0.0;
};

/// u C7 (100^k + 10^((2 - alpha) k)), the a-priori bound on q_k.
double crude_qk_bound(double C7, double alpha, double u, int k);

/// epsilon = 2(alpha - 2); k0 is the least k with C7 e^(eps - eps k) < 1/2
/// and C7 10^((2 - alpha) k) e^(eps (k + 1)) < 1/2; u0 is the largest
/// u <= 1 whose crude bound at k0 stays below e^(-eps k0).
K0U0 compute_k0_u0(double C7, double alpha);

struct QkCheck {
    bool pass = true;
    int first_violation = -1;
    std::vector<double> q;         // q_0 .. q_{k_max}
    std::vector<double> envelope;  // e^(-eps k)
};

/// q_k for k <= k0 from the crude bound, then the recursion seeded with the
/// crude bound at k0; passes iff q_k <= e^(-eps k) for every k <= k_max.
QkCheck check_qk_bound(double C7, double alpha, double u, double epsilon, int k0, int k_max);
bool verify_qk_bound(double C7, double alpha, double u, double epsilon, int k0, int k_max);

// ---------------------------------------------------------------------------
// Removal process on B(l; 2) = [-l, l] x [-l/2, l/2]

/// n0 with l / 2^(n0 + 1) <= 1 < l / 2^n0. Requires l > 2.
int removal_depth(double l);

struct RadiusInterval {
    double lo = 0.0;
    double hi = 0.0;
};

/// I_1 .. I_n0 (index 0 holds I_1); I_n = [l/2^(n+1), l/2^n), the last one
/// is [1, l/2^n0).
std::vector<RadiusInterval> removal_intervals(double l);

struct LevelField {
    int n = 0;
    RadiusInterval interval;
    int cols = 0;  // 2 * 2^n
    int rows = 0;  // 2^n
    double side = 0.0;
    std::vector<std::uint8_t> bits;  // row-major from the bottom row; 1 = box survives
    std::vector<Grain> grains;       // grains with R in the interval hitting B(l; 2)

    std::uint8_t at(int i, int j) const { return bits[static_cast<std::size_t>(j) * cols + i]; }
};

struct RemovalResult {
    double l = 0.0;
    double u = 0.0;
    int n0 = 0;
    std::vector<LevelField> levels;
    std::vector<std::uint8_t> survivors;  // A_{n0} on the level-n0 grid
    bool crossing = false;
};

/// Boxes of the level grid met by a grain, as (column, row) pairs.
std::vector<std::array<int, 2>> boxes_hit(const LevelField& field, double l, const Grain& g);

/// One realization; level n uses substream (seed, n).
RemovalResult removal_process(double l, double u, const AxisLaw& law, std::uint64_t seed,
                              GrainKind kind = GrainKind::ellipse);

/// A_n for n = 1 .. n0, each on the level-n grid.
std::vector<std::vector<std::uint8_t>> surviving_sets(const RemovalResult& result);

/// Every grain of a level has R in that level's interval and does not meet
/// two boxes at grid L-infinity distance >= 3.
bool structural_check(const LevelField& field, double l);
bool structural_check(const RemovalResult& result);

struct OffsetCorrelation {
    int dx = 0;
    int dy = 0;
    double covariance = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double correlation = 0.0;
    bool contains_zero = true;
};

struct DependenceReport {
    bool structural_ok = true;
    std::vector<OffsetCorrelation> offsets;
    bool all_contain_zero = true;
};

/// Covariance of X bits at grid offsets (3,0), (0,3), (3,3), (4,0) across
/// independent realizations of one level, with Bonferroni-adjusted normal
/// intervals at the given family level.
DependenceReport check_two_dependence(std::span<const LevelField> realizations, double l, double level = 0.95);

nlohmann::json to_json(const RemovalResult& result);
/// Run lengths of a 0/1 row, starting with a (possibly empty) run of 1s.
std::vector<int> run_lengths(std::span<const std::uint8_t> row);

// ---------------------------------------------------------------------------

struct FractalResult {
    int size = 0;  // N^depth boxes per side
    std::vector<std::uint8_t> survivors;
    bool crossing = false;
};

FractalResult fractal_percolation(double p, int N, int depth, Rng& rng);

struct ScheduleReport {
    bool ratios_ok = false;
    double tail_sum = 0.0;
    bool tail_ok = false;
    bool pass = false;
    bool heuristic = true;  // the tail test is a finite proxy for summability
};

/// a_n = L_n / L_{n-1} >= 9 for all n, and the sum of 1/a_n over the last
/// half of the list below tail_bound. DomainError on non-increasing input.
ScheduleReport validate_annuli_schedule(std::span<const double> L, double tail_bound = 1.0);

}  // namespace ellperc
