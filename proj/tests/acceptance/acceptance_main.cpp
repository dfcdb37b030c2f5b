// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "ellperc/events.hpp"
#include "ellperc/geometry.hpp"
#include "ellperc/montecarlo.hpp"
#include "ellperc/multiscale.hpp"
#include "ellperc/parallel.hpp"
#include "ellperc/raster.hpp"
#include "ellperc/sampling.hpp"
#include "oracles.hpp"

using namespace ellperc;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

const int kThreads = default_thread_count();

// ---------------------------------------------------------------------------

struct Gen {
    std::mt19937_64 eng;
    explicit Gen(std::uint64_t seed) : eng(seed) {}
    double unif(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng); }
    Point point(double half) { return {unif(-half, half), unif(-half, half)}; }
    Grain grain(double half = 4.0) {
        // Log-uniform R in [1, 50] reaches aspect ratios far beyond the typical ones.
        const double R = std::exp(unif(0.0, std::log(50.0)));
        if (unif(0.0, 1.0) < 0.15) return make_disk(point(half), std::min(R, 8.0));
        return make_ellipse(point(half), R, unif(-pi / 2, pi / 2));
    }
    Box box() { return make_box(unif(0.2, 6.0), unif(0.2, 5.0), point(4.0)); }
};

Outcome geometry_oracle() {
    using oracle::Tri;
    constexpr int kInstances = 10'000;
    struct Tally {
        const char* name;
        long compared = 0, positive = 0, marginal = 0, undetermined = 0, mismatched = 0;
    };
    std::vector<Tally> t{{"point"}, {"disk"}, {"segment"}, {"box"}, {"grain-grain"}, {"triple"}};
    auto record = [](Tally& x, Tri truth, bool got, double gap) {
        if (std::abs(gap) <= 1e-6) {
            ++x.marginal;
        } else if (truth == Tri::undetermined) {
            ++x.undetermined;
        } else {
            ++x.compared;
            x.positive += truth == Tri::yes;
            x.mismatched += (truth == Tri::yes) != got;
        }
    };
    Gen gen(2024);
    for (int i = 0; i < kInstances; ++i) {
        const Grain a = gen.grain(), b = gen.grain();
        const Box box = gen.box();
        // Query points near the grain so both answers are common.
        Point p = a.center + gen.point(a.R + 1.0);
        if (gen.unif(0.0, 1.0) < 0.2) {
            // Within a relative 1e-2 .. 1e-9 of the boundary, on either side.
            const double t = gen.unif(0.0, 2 * pi), c = std::cos(a.V), s = std::sin(a.V);
            const double scale = 1.0 + (gen.unif(0.0, 1.0) < 0.5 ? -1.0 : 1.0) * std::pow(10.0, -gen.unif(2.0, 9.0));
            const double x = scale * a.semi_major() * std::cos(t), y = scale * a.semi_minor() * std::sin(t);
            p = a.center + Point{c * x - s * y, s * x + c * y};
        }
        const Segment s{a.center + gen.point(a.R + 3.0), a.center + gen.point(a.R + 3.0)};
        const double eps = gen.unif(0.0, 1.2);
        record(t[0], oracle::point_in(p, a), point_in_grain(p, a), point_grain_gap(p, a));
        record(t[1], oracle::disk_in(p, eps, a), disk_in_grain(p, eps, a), disk_in_grain_gap(p, eps, a));
        record(t[2], oracle::segment_meets(a, s), grain_segment_intersects(a, s), segment_grain_gap(a, s));
        record(t[3], oracle::box_meets(a, box), grain_box_intersects(a, box), triple_common_point(a, a, box).gap);
        record(t[4], oracle::pair_meets(a, b), grain_grain_intersects(a, b), grain_pair_feasibility(a, b).gap);
        const Feasibility tr = triple_common_point(a, b, box);
        record(t[5], oracle::triple_meets(a, b, box), tr.hit, tr.gap);
    }
    Outcome o{true, ""};
    for (const auto& x : t) {
        // The oracle may give up near tangency; it must still settle nearly all instances.
        const bool ok = x.mismatched == 0 && x.undetermined <= kInstances / 100 && x.positive > 0 &&
                        x.positive < x.compared;
        o.pass = o.pass && ok;
        o.detail += fmt("%s %ld/%ld agree (%ld true, %ld marginal, %ld undetermined); ", x.name,
                        x.compared - x.mismatched, x.compared, x.positive, x.marginal, x.undetermined);
    }
    return o;
}

// ---------------------------------------------------------------------------

Outcome hit_measure() {
    const Box window = make_box(10.0, 1.0);
    const GrainModel model{0.5, AxisLaw::point_mass(1.0), GrainKind::disk};
    const HitProcessSampler sampler(window, model);
    constexpr int kDraws = 10'000;
    std::vector<double> counts(kDraws);
    parallel_for(kDraws, kThreads, [&](std::int64_t r) {
        Rng rng = make_stream(11, {static_cast<std::uint64_t>(r)});
        counts[static_cast<std::size_t>(r)] = static_cast<double>(sampler.sample(rng).size());
    });
    double mean = 0.0;
    for (double c : counts) mean += c / kDraws;
    double ss = 0.0;
    for (double c : counts) ss += (c - mean) * (c - mean);
    const double target = 0.5 * (100.0 + pi + 40.0);
    // Index of dispersion: sum (x - mean)^2 / mean ~ chi^2(n - 1) under Poisson.
    const double d = ss / mean;
    const double upper = oracle::chi_square_sf(d, kDraws - 1);
    const double p = 2.0 * std::min(upper, 1.0 - upper);
    const double rel = std::abs(mean - target) / target;
    return {rel <= 0.01 && p > 0.01,
            fmt("mean %.4f vs %.4f (rel err %.2e, limit 1e-2); dispersion %.4f, two-sided p = %.3f (limit 0.01)", mean,
                target, rel, d / (kDraws - 1), p)};
}

// ---------------------------------------------------------------------------

Outcome single_grain_exponent() {
    constexpr int kSamples = 1'000'000;
    const std::vector<double> ds{8, 16, 32, 64};
    Outcome o{true, ""};
    for (double alpha : {1.5, 2.0, 3.0}) {
        const AxisLaw law = AxisLaw::pareto(alpha);
        std::vector<std::pair<double, double>> pts;
        for (double d : ds) {
            // A grain centred at distance d can only reach the origin when
            // R >= d, so R is drawn from the law conditioned on that event and
            // the estimate is reweighted by P[R >= d].
            const AxisLaw cond = law.at_least(d);
            std::vector<std::int64_t> hits(static_cast<std::size_t>(kThreads), 0);
            parallel_for(kThreads, kThreads, [&](std::int64_t w) {
                Rng rng = make_stream(33, {static_cast<std::uint64_t>(alpha * 10), static_cast<std::uint64_t>(d),
                                           static_cast<std::uint64_t>(w)});
                const std::int64_t share = kSamples / kThreads + (w < kSamples % kThreads ? 1 : 0);
                std::int64_t h = 0;
                for (std::int64_t i = 0; i < share; ++i) {
                    const Grain g = make_ellipse({d, 0.0}, cond.sample(rng), sample_direction(rng.uniform()));
                    h += point_in_grain({0.0, 0.0}, g);
                }
                hits[static_cast<std::size_t>(w)] = h;
            });
            std::int64_t total = 0;
            for (auto h : hits) total += h;
            pts.push_back({d, law.survival(d) * static_cast<double>(total) / kSamples});
        }
        const PowerFit f = fit_power_law(pts);
        const bool ok = std::abs(f.slope + (alpha + 1.0)) <= 0.15;
        o.pass = o.pass && ok;
        o.detail += fmt("alpha %.1f slope %.3f (target %.1f); ", alpha, f.slope, -(alpha + 1.0));
    }
    return o;
}

// ---------------------------------------------------------------------------

Outcome vacancy_dichotomy() {
    constexpr std::int64_t kReps = 10'000;
    const double u = 0.02;
    std::vector<double> radii;
    for (int j = 4; j <= 10; ++j) radii.push_back(std::ldexp(1.0, j));
    // For each replicate, the distance of the nearest centre among the grains
    // covering the origin; the region radius grows by extending the same
    // realization shell by shell, so vacancy is nested across radii.
    auto nearest_cover = [&](double alpha) {
        const GrainModel model{u, AxisLaw::pareto(alpha), GrainKind::ellipse};
        std::vector<double> dist(static_cast<std::size_t>(kReps));
        parallel_for(kReps, kThreads, [&](std::int64_t r) {
            Rng rng = make_stream(44, {static_cast<std::uint64_t>(alpha * 10), static_cast<std::uint64_t>(r)});
            double best = INFINITY;
            for (const auto& g : sample_near_target({0.0, 0.0}, 0.0, radii.back(), model, rng))
                if (point_in_grain({0.0, 0.0}, g)) best = std::min(best, norm(g.center));
            dist[static_cast<std::size_t>(r)] = best;
        });
        return dist;
    };
    auto vacant_count = [&](const std::vector<double>& dist, double T) {
        return std::count_if(dist.begin(), dist.end(), [T](double x) { return x > T; });
    };

    Outcome o{true, "alpha 0.8 phat:"};
    const auto heavy = nearest_cover(0.8);
    std::pair<double, double> prev{};
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const auto v = vacant_count(heavy, radii[i]);
        const auto ci = wilson_ci(v, kReps);
        o.detail += fmt(" %.4f", static_cast<double>(v) / kReps);
        // Each step must be a decrease that the intervals resolve.
        if (i > 0 && !(ci.second < prev.first)) o.pass = false;
        prev = ci;
    }
    o.detail += "; alpha 1.5 step/certificate:";
    const auto light = nearest_cover(1.5);
    const AxisLaw law = AxisLaw::pareto(1.5);
    for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
        const double step =
            static_cast<double>(vacant_count(light, radii[i]) - vacant_count(light, radii[i + 1])) / kReps;
        const double cert = truncation_error_bound(0.0, radii[i], u, law);
        o.detail += fmt(" %.4f/%.4f", step, cert);
        if (!(step <= cert && cert < 1.0)) o.pass = false;
    }
    return o;
}

// ---------------------------------------------------------------------------

Outcome covering_lln() {
    constexpr std::int64_t kReps = 2000;
    std::vector<double> ns;
    for (int j = 0; j <= 6; ++j) ns.push_back(8.0 * std::pow(2.0, j / 2.0));
    const auto heavy = lln_counts(0.1, {1.0, AxisLaw::pareto(0.5), GrainKind::ellipse}, ns, kReps, 55, kThreads);
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : heavy) pts.push_back({r.n, r.mean});
    const PowerFit f = fit_power_law(pts);
    const auto crit = lln_counts(0.1, {1.0, AxisLaw::pareto(1.0), GrainKind::ellipse}, ns, kReps, 56, kThreads);
    std::vector<double> x, y;
    for (const auto& r : crit) {
        x.push_back(std::log(r.n));
        y.push_back(r.mean);
    }
    const LinearFit g = fit_linear(x, y);
    return {std::abs(f.slope - 0.5) <= 0.1 && g.r_squared > 0.98,
            fmt("alpha 0.5 log-log slope %.3f (target 0.5 +- 0.1); alpha 1 mean vs log n: slope %.3f, r^2 %.4f "
                "(limit 0.98)",
                f.slope, g.slope, g.r_squared)};
}

// ---------------------------------------------------------------------------

bool overlap(const EstimateResult& a, const EstimateResult& b) { return a.ci_lo <= b.ci_hi && b.ci_lo <= a.ci_hi; }

Outcome scale_invariance() {
    std::vector<EstimateResult> rs;
    std::uint64_t seed = 66;
    for (double l : {10.0, 100.0, 1000.0}) {
        EventParams p;
        p.model = {0.5, AxisLaw::pareto(2.0), GrainKind::ellipse};
        p.l = l;
        p.k = 1.0;
        rs.push_back(estimate(EventKind::one_ellipse_lr, p, 10'000, seed++, 0.95, kThreads));
    }
    // 1 - exp(-m(l)) with m(l) the mean number of grains meeting both sides,
    // integrated independently in numpy (standard error about 1e-3). The unit
    // minor axis makes m(10) visibly larger than its large-l limit.
    const double reference[] = {0.4782, 0.4015, 0.3935};
    Outcome o{true, ""};
    for (std::size_t i = 0; i < rs.size(); ++i) {
        o.detail += fmt("l=%g phat %.4f [%.4f, %.4f] (reference %.4f); ", rs[i].params.l, rs[i].phat, rs[i].ci_lo,
                        rs[i].ci_hi, reference[i]);
        for (std::size_t j = i + 1; j < rs.size(); ++j) o.pass = o.pass && overlap(rs[i], rs[j]);
    }
    return o;
}

// ---------------------------------------------------------------------------

Outcome vacant_envelope() {
    auto params = [](double u, double l) {
        EventParams p;
        p.model = {u, AxisLaw::pareto(2.0), GrainKind::ellipse};
        p.l = l;
        p.k = 2.0;
        return p;
    };
    double chosen = 0.0;
    std::string pilot = "pilot at l=8:";
    for (double u = 0.8; u > 0.005; u /= 2.0) {
        const auto r = estimate(EventKind::vacant_lr, params(u, 8.0), 1000, 770, 0.95, kThreads);
        pilot += fmt(" u=%g:%.3f", u, r.phat);
        if (r.phat >= 0.2 && r.phat <= 0.8) {
            chosen = u;
            break;
        }
    }
    if (chosen == 0.0) return {false, pilot + "; no u in the grid gives phat in [0.2, 0.8]"};
    Outcome o{true, pilot + fmt("; u = %g:", chosen)};
    std::uint64_t seed = 77;
    for (double l : {8.0, 32.0, 128.0}) {
        const auto r = estimate(EventKind::vacant_lr, params(chosen, l), 4000, seed++, 0.95, kThreads);
        o.detail += fmt(" l=%g phat %.4f", l, r.phat);
        o.pass = o.pass && r.phat >= 0.05 && r.phat <= 0.95;
    }
    return o;
}

// ---------------------------------------------------------------------------

Outcome duality() {
    constexpr int kConfigs = 1000;
    long dual_ok = 0, determined = 0, raster_ok = 0, yes = 0;
    const double alphas[] = {1.5, 2.0, 3.0};
    for (int i = 0; i < kConfigs; ++i) {
        const double alpha = alphas[i % 3];
        Rng rng = make_stream(88, {static_cast<std::uint64_t>(i)});
        // Random intensity and box shape keep both outcomes common.
        const double u = rng.uniform(0.05, 0.4);
        const Box box = make_box(rng.uniform(3.0, 8.0), rng.uniform(0.5, 2.0));
        const auto g = sample_hitting_grains(box, {u, AxisLaw::pareto(alpha), GrainKind::ellipse}, rng);
        const bool vac = vacant_lr_crossing(g, box);
        dual_ok += vac == !covered_crossing(g, box, Axis::vertical);
        yes += vac;
        const Verdict v = raster_vacant_lr(rasterize_scene(g, box, 1024, 1024));
        if (v == Verdict::undetermined) continue;
        ++determined;
        raster_ok += vac == (v == Verdict::yes);
    }
    // Without a substantial determined share the raster comparison would be vacuous.
    const bool pass = dual_ok == kConfigs && raster_ok == determined && determined >= kConfigs / 2 &&
                      yes > kConfigs / 10 && yes < kConfigs * 9 / 10;
    return {pass, fmt("duality %ld/%d; raster agrees %ld/%ld determined; vacant crossings %ld", dual_ok, kConfigs,
                      raster_ok, determined, yes)};
}

// ---------------------------------------------------------------------------

Outcome recursion_certificate() {
    const K0U0 t = compute_k0_u0(2.0, 3.0);
    const bool holds = verify_qk_bound(2.0, 3.0, t.u0, t.epsilon, t.k0, 500);
    const K0U0 n = compute_k0_u0(2.0, 2.2);
    const QkCheck broken = check_qk_bound(2.0, 2.2, 1e6 * n.u0, n.epsilon, n.k0, 500);
    return {holds && !broken.pass,
            fmt("alpha 3: eps %.1f, k0 %d, u0 %.6e, bound to k=500 %s; alpha 2.2 with 1e6 u0: %s at k=%d", t.epsilon, t.k0,
                t.u0, holds ? "holds" : "FAILS", broken.pass ? "NOT broken" : "broken", broken.first_violation)};
}

// ---------------------------------------------------------------------------

Outcome removal_structure() {
    constexpr int kRealizations = 1000;
    // Seven level checks in all (2 levels at l = 8, 5 at l = 64), Bonferroni
    // split so the whole family is at 95%.
    const double level = 1.0 - 0.05 / 7.0;
    Outcome o{true, ""};
    for (double l : {8.0, 64.0}) {
        const int n0 = removal_depth(l);
        const auto iv = removal_intervals(l);
        bool partition = iv.size() == static_cast<std::size_t>(n0) && iv.front().hi == l / 2 && iv.back().lo == 1.0;
        for (std::size_t i = 0; i + 1 < iv.size(); ++i) partition = partition && iv[i + 1].hi == iv[i].lo;
        const bool depth_ok = l / std::ldexp(1.0, n0 + 1) <= 1.0 && 1.0 < l / std::ldexp(1.0, n0);

        std::vector<std::vector<LevelField>> per_level(static_cast<std::size_t>(n0));
        int structural = 0;
        for (int s = 0; s < kRealizations; ++s) {
            auto r = removal_process(l, 0.3, AxisLaw::pareto(2.0), 1000 + s);
            structural += structural_check(r);
            for (int n = 0; n < n0; ++n) {
                r.levels[n].grains.clear();
                per_level[n].push_back(std::move(r.levels[n]));
            }
        }
        bool zero = true;
        std::string corr;
        for (int n = 0; n < n0; ++n) {
            const auto rep = check_two_dependence(per_level[n], l, level);
            zero = zero && rep.all_contain_zero;
            double worst = 0.0;
            for (const auto& oc : rep.offsets) worst = std::max(worst, std::abs(oc.correlation));
            corr += fmt("%s%.3f", n ? "," : "", worst);
        }
        o.pass = o.pass && partition && depth_ok && structural == kRealizations && zero;
        o.detail += fmt("l=%g: n0 %d, partition %s, structural %d/%d, max |corr| per level %s, CIs %s; ", l, n0,
                        partition ? "exact" : "BROKEN", structural, kRealizations, corr.c_str(),
                        zero ? "contain 0" : "EXCLUDE 0");
    }
    return o;
}

// ---------------------------------------------------------------------------

Outcome circuit_trend() {
    auto params = [](double a) {
        EventParams p;
        p.model = {0.5, AxisLaw::pareto(1.5), GrainKind::ellipse};
        p.a = a;
        return p;
    };
    const auto p27 = estimate(EventKind::circuit3, params(27.0), 500, 990, 0.95, kThreads);
    const auto p81 = estimate(EventKind::circuit3, params(81.0), 500, 991, 0.95, kThreads);
    // The asymptotic regime shows once the probability has reached the
    // saturating part of its curve at both of the largest scales.
    const bool regime = p27.phat >= 0.5 && p81.phat >= 0.5;
    Outcome o{true, fmt("pilot phat a=27 %.3f, a=81 %.3f -> regime %s;", p27.phat, p81.phat,
                        regime ? "confirmed" : "not reached, trend only")};
    std::vector<EstimateResult> rs;
    std::uint64_t seed = 99;
    for (double a : {3.0, 9.0, 27.0, 81.0}) {
        rs.push_back(estimate(EventKind::circuit3, params(a), 2000, seed++, 0.95, kThreads));
        o.detail += fmt(" a=%g %.4f [%.4f, %.4f]", a, rs.back().phat, rs.back().ci_lo, rs.back().ci_hi);
    }
    for (std::size_t i = 0; i + 1 < rs.size(); ++i)
        if (rs[i + 1].phat < rs[i].phat && !overlap(rs[i], rs[i + 1])) o.pass = false;
    if (regime) o.pass = o.pass && rs.back().phat > 0.9;
    return o;
}

// ---------------------------------------------------------------------------

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome cli_determinism() {
    const fs::path dir = fs::temp_directory_path() / ("ellperc_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const fs::path cfg = dir / "config.json";
    const std::vector<std::pair<std::string, std::string>> cmds{
        {"sample", "sample --alpha 2 --u 0.3 --l 20 --k 1 --seed 7"},
        {"render", "render --alpha 2 --u 0.3 --l 20 --k 1 --seed 7"},
        {"estimate", "estimate --event vacant_lr --alpha 2 --u 0.1 --l 8 --k 2 --n 300 --seed 3"},
        {"scan", "scan --event covered_lr --alpha 2,3 --u 0.1,0.3 --l 4 --k 1 --n 100 --seed 5"},
        {"lln", "lln --alpha 2 --u 0.5 --eps 0.1 --n-list 4,8,16 --n 100 --seed 6"},
        {"corr", "corr --event point_covered --alpha 2 --u 0.3 --wx 0 --wx2 3 --l 1 --n 300 --seed 8"},
        {"recursion", "recursion --alpha 3 --c7 2 --kmax 200"},
        {"fractal", "fractal --p 0.9 --N 2 --depth 5 --n 200 --seed 9"},
        {"removal", "removal --alpha 2 --u 0.3 --l 32 --seed 10"},
    };
    int identical = 0;
    std::string failed;
    for (const auto& [name, args] : cmds) {
        std::string first;
        bool ok = true;
        for (int run = 0; run < 2; ++run) {
            const fs::path out = dir / (name + std::to_string(run));
            const std::string cmd = std::string("\"") + ELLPERC_CLI_PATH + "\" " + args + " --out \"" + out.string() + "\"";
            ok = ok && std::system(cmd.c_str()) == 0 && fs::exists(out);
            const std::string bytes = ok ? slurp(out) : std::string();
            if (run == 0) first = bytes;
            else ok = ok && !bytes.empty() && bytes == first;
        }
        identical += ok;
        if (!ok) failed += " " + name;
    }
    // A rendered saved configuration must match rendering from the same flags.
    const std::string via_file = std::string("\"") + ELLPERC_CLI_PATH + "\" sample --alpha 2 --u 0.3 --l 20 --k 1 --seed 7 --out \"" +
                                 cfg.string() + "\" && \"" + ELLPERC_CLI_PATH + "\" render --config \"" + cfg.string() +
                                 "\" --out \"" + (dir / "from_file.svg").string() + "\"";
    const bool render_ok = std::system(via_file.c_str()) == 0 && slurp(dir / "from_file.svg") == slurp(dir / "render0");
    fs::remove_all(dir);
    return {identical == static_cast<int>(cmds.size()) && render_ok,
            fmt("%d/%zu subcommands byte-identical%s%s; render from saved config %s", identical, cmds.size(),
                failed.empty() ? "" : ", differing:", failed.c_str(), render_ok ? "matches" : "DIFFERS")};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "geometry predicates vs oracle", 120, geometry_oracle},
        {2, "hit-measure exactness", 60, hit_measure},
        {3, "single-grain coverage exponent", 300, single_grain_exponent},
        {4, "vacancy dichotomy under truncation", 300, vacancy_dichotomy},
        {5, "law of large numbers for covering counts", 180, covering_lln},
        {6, "one-ellipse crossing scale invariance", 300, scale_invariance},
        {7, "vacant crossing envelope", 600, vacant_envelope},
        {8, "duality and raster agreement", 180, duality},
        {9, "recursion certificate", 1, recursion_certificate},
        {10, "removal-process structure", 300, removal_structure},
        {11, "circuit trend", 300, circuit_trend},
        {12, "CLI determinism", 60, cli_determinism},
    };
    int failed = 0;
    std::printf("acceptance: %zu criteria, %d worker thread(s)\n", criteria.size(), kThreads);
    std::fflush(stdout);
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.budget_s;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::printf("%s  %2d  %-42s %8.2f s (limit %g s%s)  %s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs,
                    c.budget_s, in_time ? "" : ", EXCEEDED", o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("acceptance: %zu passed, %d failed\n", criteria.size() - failed, failed);
    return failed == 0 ? 0 : 1;
}
