#include "ellperc/multiscale.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "ellperc/errors.hpp"
#include "ellperc/raster.hpp"
#include "ellperc/sampling.hpp"

namespace ellperc {

namespace {

void check_recursion_inputs(double C7, double alpha, double u) {
    if (!(C7 > 0.0) || !std::isfinite(C7)) throw DomainError("recursion: C7 must be > 0");
    if (!std::isfinite(alpha)) throw DomainError("recursion: alpha must be finite");
    if (!(u >= 0.0) || !std::isfinite(u)) throw DomainError("recursion: u must be >= 0");
}

double recursion_step(double C7, double alpha, double u, int k, double q) {
    return std::min(1.0, C7 * q * q + u * C7 * std::pow(10.0, (2.0 - alpha) * k));
}

}  // namespace

std::vector<double> iterate_qk_from(double C7, double alpha, double u, int k_start, double q_start, int k_max) {
    check_recursion_inputs(C7, alpha, u);
    if (!(q_start >= 0.0 && q_start <= 1.0)) throw DomainError("recursion: q must lie in [0, 1]");
    std::vector<double> q{q_start};
    for (int k = k_start; k < k_max; ++k) q.push_back(recursion_step(C7, alpha, u, k, q.back()));
    return q;
}

std::vector<double> iterate_qk(const RecursionParams& p, int k_max) {
    if (k_max < 1) throw DomainError("recursion: k_max must be >= 1");
    return iterate_qk_from(p.C7, p.alpha, p.u, 0, p.q0, k_max);
}

double crude_qk_bound(double C7, double alpha, double u, int k) {
    return u * C7 * (std::pow(100.0, k) + std::pow(10.0, (2.0 - alpha) * k));
}

K0U0 compute_k0_u0(double C7, double alpha) {
    if (!(alpha > 2.0) || !std::isfinite(alpha)) throw DomainError("compute_k0_u0: alpha must be > 2");
    check_recursion_inputs(C7, alpha, 0.0);
    K0U0 out;
    out.epsilon = 2.0 * (alpha - 2.0);
    const double eps = out.epsilon;
    const double log_half = std::log(0.5), log_c = std::log(C7), ln10 = std::log(10.0);
    constexpr int kSearchCap = 1'000'000;
    int k = 0;
    for (; k < kSearchCap; ++k) {
        const bool squared_term = log_c + eps - eps * k < log_half;
        const bool additive_term = log_c + (2.0 - alpha) * k * ln10 + eps * (k + 1) < log_half;
        if (squared_term && additive_term) break;
    }
    if (k == kSearchCap) throw DomainError("compute_k0_u0: no k0 below the search cap");
    out.k0 = k;
    // log10 of C7 (100^k + 10^((2 - alpha) k)), summed in log space.
    const double big = 2.0 * k, small = (2.0 - alpha) * k;
    const double log10_crude = std::log10(C7) + big + std::log10(1.0 + std::pow(10.0, small - big));
    out.log10_u0 = std::min(0.0, -eps * k / ln10 - log10_crude);
    const double envelope = std::exp(-eps * k);
    out.u0 = std::pow(10.0, out.log10_u0);
    while (out.u0 > 0.0 && crude_qk_bound(C7, alpha, out.u0, k) > envelope) out.u0 = std::nextafter(out.u0, 0.0);
    return out;
}

QkCheck check_qk_bound(double C7, double alpha, double u, double epsilon, int k0, int k_max) {
    if (!(alpha > 2.0)) throw DomainError("verify_qk_bound: alpha must be > 2");
    check_recursion_inputs(C7, alpha, u);
    if (k0 < 0 || k_max < k0) throw DomainError("verify_qk_bound: need 0 <= k0 <= k_max");
    QkCheck out;
    for (int k = 0; k <= k0; ++k) out.q.push_back(std::min(1.0, crude_qk_bound(C7, alpha, u, k)));
    const auto tail = iterate_qk_from(C7, alpha, u, k0, out.q.back(), k_max);
    out.q.insert(out.q.end(), tail.begin() + 1, tail.end());
    for (int k = 0; k <= k_max; ++k) {
        out.envelope.push_back(std::exp(-epsilon * k));
        if (out.pass && out.q[k] > out.envelope[k]) {
            out.pass = false;
            out.first_violation = k;
        }
    }
    return out;
}

bool verify_qk_bound(double C7, double alpha, double u, double epsilon, int k0, int k_max) {
    return check_qk_bound(C7, alpha, u, epsilon, k0, k_max).pass;
}

// ---------------------------------------------------------------------------

int removal_depth(double l) {
    if (!(l > 2.0) || !std::isfinite(l)) throw DomainError("removal process: l must be > 2");
    int n0 = 0;
    while (l / std::ldexp(1.0, n0 + 1) > 1.0) ++n0;
    return n0;
}

std::vector<RadiusInterval> removal_intervals(double l) {
    const int n0 = removal_depth(l);
    std::vector<RadiusInterval> out;
    for (int n = 1; n <= n0; ++n) {
        const double hi = l / std::ldexp(1.0, n);
        const double lo = n == n0 ? 1.0 : l / std::ldexp(1.0, n + 1);
        out.push_back({lo, hi});
    }
    return out;
}

namespace {

Box level_box(const LevelField& f, double l, int i, int j) {
    return box_from_extents(-l + i * f.side, -l + (i + 1) * f.side, -0.5 * l + j * f.side, -0.5 * l + (j + 1) * f.side);
}

}  // namespace

std::vector<std::array<int, 2>> boxes_hit(const LevelField& f, double l, const Grain& g) {
    const Aabb bb = bounding_box(g);
    auto clampi = [](double v, int hi) { return static_cast<int>(std::clamp(v, 0.0, static_cast<double>(hi))); };
    const int i0 = clampi(std::floor((bb.xmin - kGeomTol + l) / f.side), f.cols - 1);
    const int i1 = clampi(std::floor((bb.xmax + kGeomTol + l) / f.side), f.cols - 1);
    const int j0 = clampi(std::floor((bb.ymin - kGeomTol + 0.5 * l) / f.side), f.rows - 1);
    const int j1 = clampi(std::floor((bb.ymax + kGeomTol + 0.5 * l) / f.side), f.rows - 1);
    std::vector<std::array<int, 2>> out;
    for (int j = j0; j <= j1; ++j)
        for (int i = i0; i <= i1; ++i)
            if (grain_box_intersects(g, level_box(f, l, i, j))) out.push_back({i, j});
    return out;
}

RemovalResult removal_process(double l, double u, const AxisLaw& law, std::uint64_t seed, GrainKind kind) {
    if (!(u >= 0.0)) throw DomainError("removal process: u must be >= 0");
    RemovalResult res;
    res.l = l;
    res.u = u;
    res.n0 = removal_depth(l);
    const auto intervals = removal_intervals(l);
    const Box window = make_box(l, 2.0);
    for (int n = 1; n <= res.n0; ++n) {
        LevelField f;
        f.n = n;
        f.interval = intervals[n - 1];
        f.rows = 1 << n;
        f.cols = 2 * f.rows;
        f.side = l / f.rows;
        f.bits.assign(static_cast<std::size_t>(f.cols) * f.rows, 1);
        const GrainModel model = GrainModel{u, law, kind}.restrict_radius(f.interval.lo, f.interval.hi);
        Rng rng = make_stream(seed, {static_cast<std::uint64_t>(n)});
        if (model.u > 0.0) f.grains = HitProcessSampler(window, model).sample(rng);
        for (const auto& g : f.grains)
            for (const auto& [i, j] : boxes_hit(f, l, g)) f.bits[static_cast<std::size_t>(j) * f.cols + i] = 0;
        res.levels.push_back(std::move(f));
    }
    const auto sets = surviving_sets(res);
    res.survivors = sets.back();
    const auto& finest = res.levels.back();
    res.crossing = grid_crosses_lr(res.survivors, finest.cols, finest.rows);
    return res;
}

std::vector<std::vector<std::uint8_t>> surviving_sets(const RemovalResult& r) {
    std::vector<std::vector<std::uint8_t>> out;
    std::vector<std::uint8_t> prev{1, 1};
    int prev_cols = 2;
    for (const auto& f : r.levels) {
        std::vector<std::uint8_t> cur(f.bits.size(), 0);
        for (int j = 0; j < f.rows; ++j)
            for (int i = 0; i < f.cols; ++i) {
                const bool parent = prev[static_cast<std::size_t>(j / 2) * prev_cols + i / 2];
                cur[static_cast<std::size_t>(j) * f.cols + i] = parent && f.at(i, j);
            }
        out.push_back(cur);
        prev = std::move(cur);
        prev_cols = f.cols;
    }
    return out;
}

bool structural_check(const LevelField& f, double l) {
    for (const auto& g : f.grains) {
        if (!(g.R >= f.interval.lo && g.R < f.interval.hi)) return false;
        const auto hit = boxes_hit(f, l, g);
        if (hit.empty()) continue;
        int imin = hit[0][0], imax = imin, jmin = hit[0][1], jmax = jmin;
        for (const auto& [i, j] : hit) {
            imin = std::min(imin, i);
            imax = std::max(imax, i);
            jmin = std::min(jmin, j);
            jmax = std::max(jmax, j);
        }
        if (std::max(imax - imin, jmax - jmin) > 2) return false;
    }
    return true;
}

bool structural_check(const RemovalResult& r) {
    return std::all_of(r.levels.begin(), r.levels.end(), [&](const LevelField& f) { return structural_check(f, r.l); });
}

DependenceReport check_two_dependence(std::span<const LevelField> fields, double l, double level) {
    if (fields.size() < 2) throw DomainError("two-dependence check: need at least 2 realizations");
    const int cols = fields[0].cols, rows = fields[0].rows;
    for (const auto& f : fields)
        if (f.cols != cols || f.rows != rows) throw DomainError("two-dependence check: realizations must share a level");
    if (!(level > 0.0 && level < 1.0)) throw DomainError("two-dependence check: level must lie in (0, 1)");

    DependenceReport rep;
    for (const auto& f : fields) rep.structural_ok = rep.structural_ok && structural_check(f, l);

    const double R = static_cast<double>(fields.size());
    const std::size_t sites = static_cast<std::size_t>(cols) * rows;
    std::vector<double> mean(sites, 0.0);
    for (const auto& f : fields)
        for (std::size_t s = 0; s < sites; ++s) mean[s] += f.bits[s];
    double pbar = 0.0;
    for (auto& m : mean) {
        m /= R;
        pbar += m;
    }
    pbar /= static_cast<double>(sites);

    constexpr std::array<std::array<int, 2>, 4> kOffsets{{{3, 0}, {0, 3}, {3, 3}, {4, 0}}};
    const double per_offset = 1.0 - (1.0 - level) / kOffsets.size();
    const double z = boost::math::quantile(boost::math::normal_distribution<double>(), 0.5 + 0.5 * per_offset);
    for (const auto& [dx, dy] : kOffsets) {
        OffsetCorrelation oc;
        oc.dx = dx;
        oc.dy = dy;
        std::vector<double> phi;
        // Variance of phi under independence of the paired sites; when joint
        // survivals are rare the sample variance can miss them entirely.
        double null_var = 0.0;
        int null_pairs = 0;
        for (int j = 0; j + dy < rows; ++j)
            for (int i = 0; i + dx < cols; ++i) {
                const double a = mean[static_cast<std::size_t>(j) * cols + i];
                const double b = mean[static_cast<std::size_t>(j + dy) * cols + (i + dx)];
                null_var += a * (1.0 - a) * b * (1.0 - b);
                ++null_pairs;
            }
        if (null_pairs > 0) null_var /= static_cast<double>(null_pairs) * null_pairs;
        for (const auto& f : fields) {
            double sum = 0.0;
            int pairs = 0;
            for (int j = 0; j + dy < rows; ++j)
                for (int i = 0; i + dx < cols; ++i) {
                    const std::size_t s = static_cast<std::size_t>(j) * cols + i;
                    const std::size_t t = static_cast<std::size_t>(j + dy) * cols + (i + dx);
                    sum += (f.bits[s] - mean[s]) * (f.bits[t] - mean[t]);
                    ++pairs;
                }
            if (pairs == 0) break;
            phi.push_back(sum / pairs);
        }
        if (phi.empty()) continue;
        double m = 0.0, v = 0.0;
        for (double x : phi) m += x;
        m /= R;
        for (double x : phi) v += (x - m) * (x - m);
        v = std::max(v / (R - 1.0), null_var);
        const double half = z * std::sqrt(v / R);
        oc.covariance = m;
        oc.ci_lo = m - half;
        oc.ci_hi = m + half;
        oc.correlation = pbar > 0.0 && pbar < 1.0 ? m / (pbar * (1.0 - pbar)) : 0.0;
        oc.contains_zero = oc.ci_lo <= 0.0 && 0.0 <= oc.ci_hi;
        rep.all_contain_zero = rep.all_contain_zero && oc.contains_zero;
        rep.offsets.push_back(oc);
    }
    return rep;
}

std::vector<int> run_lengths(std::span<const std::uint8_t> row) {
    std::vector<int> runs;
    std::uint8_t current = 1;
    int count = 0;
    for (std::uint8_t b : row) {
        const std::uint8_t v = b ? 1 : 0;
        if (v == current) {
            ++count;
        } else {
            runs.push_back(count);
            current = v;
            count = 1;
        }
    }
    runs.push_back(count);
    return runs;
}

nlohmann::json to_json(const RemovalResult& r) {
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& f : r.levels) {
        nlohmann::json rows = nlohmann::json::array();
        for (int j = 0; j < f.rows; ++j)
            rows.push_back(run_lengths(std::span(f.bits).subspan(static_cast<std::size_t>(j) * f.cols, f.cols)));
        levels.push_back({{"n", f.n}, {"interval", {f.interval.lo, f.interval.hi}}, {"bits", rows}});
    }
    return {{"l", r.l}, {"u", r.u}, {"levels", levels}, {"crossing", r.crossing}};
}

// ---------------------------------------------------------------------------

FractalResult fractal_percolation(double p, int N, int depth, Rng& rng) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("fractal percolation: p must lie in [0, 1]");
    if (N < 2) throw DomainError("fractal percolation: N must be >= 2");
    if (depth < 1) throw DomainError("fractal percolation: depth must be >= 1");
    double cells = 1.0;
    for (int d = 0; d < depth; ++d) cells *= static_cast<double>(N) * N;
    if (cells > static_cast<double>(kDefaultRasterBudget))
        throw ResourceLimit("fractal percolation: N^(2 depth) boxes exceed the budget");
    FractalResult res;
    res.size = 1;
    res.survivors = {1};
    for (int d = 0; d < depth; ++d) {
        const int size = res.size * N;
        std::vector<std::uint8_t> next(static_cast<std::size_t>(size) * size, 0);
        for (int j = 0; j < size; ++j)
            for (int i = 0; i < size; ++i) {
                const bool parent = res.survivors[static_cast<std::size_t>(j / N) * res.size + i / N];
                const bool keep = rng.uniform() < p;
                next[static_cast<std::size_t>(j) * size + i] = parent && keep;
            }
        res.size = size;
        res.survivors = std::move(next);
    }
    res.crossing = grid_crosses_lr(res.survivors, res.size, res.size);
    return res;
}

ScheduleReport validate_annuli_schedule(std::span<const double> L, double tail_bound) {
    if (L.size() < 2) throw DomainError("annuli schedule: need at least two scales");
    if (!(L[0] >= 1.0)) throw DomainError("annuli schedule: L_1 must be >= 1");
    for (std::size_t i = 1; i < L.size(); ++i)
        if (!(L[i] > L[i - 1])) throw DomainError("annuli schedule: scales must be strictly increasing");
    ScheduleReport rep;
    rep.ratios_ok = true;
    std::vector<double> ratios;
    for (std::size_t i = 1; i < L.size(); ++i) {
        ratios.push_back(L[i] / L[i - 1]);
        if (ratios.back() < 9.0) rep.ratios_ok = false;
    }
    const std::size_t half = (ratios.size() + 1) / 2;
    for (std::size_t i = ratios.size() - half; i < ratios.size(); ++i) rep.tail_sum += 1.0 / ratios[i];
    rep.tail_ok = rep.tail_sum < tail_bound;
    rep.pass = rep.ratios_ok && rep.tail_ok;
    return rep;
}

}  // namespace ellperc
