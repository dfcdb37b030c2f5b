#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ellperc/errors.hpp"
#include "ellperc/quadrature.hpp"
#include "ellperc/sampling.hpp"
#include "oracles.hpp"

using namespace ellperc;
using std::numbers::pi;

namespace {

// Index-of-dispersion test: sum (x - mean)^2 / mean ~ chi^2(n - 1) for
// Poisson counts. Returns the two-sided p-value.
double dispersion_p_value(const std::vector<double>& counts) {
    double mean = 0.0;
    for (double c : counts) mean += c;
    mean /= counts.size();
    double d = 0.0;
    for (double c : counts) d += (c - mean) * (c - mean);
    d /= mean;
    const double upper = oracle::chi_square_sf(d, counts.size() - 1.0);
    return 2.0 * std::min(upper, 1.0 - upper);
}

}  // namespace

TEST_SUITE("sampling") {

TEST_CASE("hitting_intensity examples") {
    CHECK(hitting_intensity(make_box(1.0, 2.0), 1.0, AxisLaw::point_mass(1.0), GrainKind::disk) ==
          doctest::Approx(8.0 + pi).epsilon(1e-12));
    CHECK(hitting_intensity(make_box(1.0, 2.0), 0.0, AxisLaw::pareto(2), GrainKind::ellipse) == 0.0);
}

TEST_CASE("hitting_intensity for pareto(2) ellipses matches a Monte Carlo mean of hit areas") {
    const double lambda = hitting_intensity(make_box(1.0, 1.0), 1.0, AxisLaw::pareto(2), GrainKind::ellipse);
    // Independent route: 1 + 2 pi + 4 m with m = E[sqrt(R^2 sin^2 V + cos^2 V)] by nested quadrature.
    const double m = integrate(
        [](double R) {
            return 2.0 * std::pow(R, -3.0) *
                   integrate([R](double V) { return std::sqrt(R * R * std::sin(V) * std::sin(V) + std::cos(V) * std::cos(V)); },
                             -pi / 2, pi / 2) /
                   pi;
        },
        1.0, INFINITY);
    CHECK(lambda == doctest::Approx(1.0 + 2.0 * pi + 4.0 * m).epsilon(1e-8));

    // Second route: Monte Carlo over V with R = U^(-1/2) on a stratified grid
    // of U, which tames the heavy tail of the hit area.
    Rng rng(77);
    double sum = 0.0;
    const int n = 10'000'000;
    for (int i = 0; i < n; ++i) {
        const double R = 1.0 / std::sqrt((i + rng.uniform_pos()) / n);
        sum += minkowski_hit_area(1.0, 1.0, R, sample_direction(rng.uniform()), GrainKind::ellipse);
    }
    CHECK(sum / n == doctest::Approx(lambda).epsilon(1e-3));
}

TEST_CASE("infinite hitting intensity is reported") {
    CHECK_THROWS_AS(hitting_intensity(make_box(1, 1), 1.0, AxisLaw::pareto(1.0), GrainKind::ellipse), InfiniteIntensity);
    CHECK_THROWS_AS(hitting_intensity(make_box(1, 1), 1.0, AxisLaw::pareto(0.8), GrainKind::ellipse), InfiniteIntensity);
    CHECK_THROWS_AS(hitting_intensity(make_box(1, 1), 1.0, AxisLaw::pareto(2.0), GrainKind::disk), InfiniteIntensity);
    CHECK_NOTHROW(hitting_intensity(make_box(1, 1), 1.0, AxisLaw::pareto(1.01), GrainKind::ellipse));
    CHECK_NOTHROW(hitting_intensity(make_box(1, 1), 1.0, AxisLaw::pareto(2.01), GrainKind::disk));
}

TEST_CASE("unrepresentable axes near alpha = 1 raise a resource limit") {
    const GrainModel model{0.1, AxisLaw::pareto(1.01), GrainKind::ellipse};
    int limits = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        Rng rng(s);
        try {
            for (const auto& g : sample_hitting_grains(make_box(4.0, 1.0), model, rng)) CHECK(std::isfinite(g.R));
        } catch (const ResourceLimit&) {
            ++limits;
        }
    }
    CHECK(limits > 0);
}

TEST_CASE("hit process: determinism and hit semantics") {
    const Box w = make_box(10.0, 1.5);
    const auto a = sample_hitting_process(w, 0.3, AxisLaw::pareto(1.7), GrainKind::ellipse, 99);
    const auto b = sample_hitting_process(w, 0.3, AxisLaw::pareto(1.7), GrainKind::ellipse, 99);
    CHECK(a == b);
    CHECK(a.grains.size() > 10);
    for (const auto& g : a.grains) {
        CHECK(grain_box_intersects(g, w));
        CHECK(g.R >= 1.0);
    }
    const auto c = sample_hitting_process(w, 0.3, AxisLaw::pareto(1.7), GrainKind::ellipse, 100);
    CHECK(c != a);
}

TEST_CASE("hit process count is Poisson with the Steiner mean") {
    const Box w = make_box(10.0, 1.0);
    const GrainModel model{0.5, AxisLaw::point_mass(1.0), GrainKind::disk};
    const HitProcessSampler sampler(w, model);
    const double mean = 0.5 * (100.0 + pi + 40.0);
    CHECK(sampler.intensity() == doctest::Approx(mean).epsilon(1e-12));
    std::vector<double> counts;
    double sum = 0.0;
    for (std::uint64_t r = 0; r < 3000; ++r) {
        Rng rng = make_stream(5, {r});
        counts.push_back(static_cast<double>(sampler.sample(rng).size()));
        sum += counts.back();
    }
    CHECK(sum / counts.size() == doctest::Approx(mean).epsilon(0.01));
    CHECK(dispersion_p_value(counts) > 0.01);
}

TEST_CASE("centres given the mark are uniform on the hit region") {
    // Unit disks hitting a 2x2 box: the hit region is the box grown by 1.
    const Box w = make_box(2.0, 1.0);
    const HitProcessSampler sampler(w, {1.0, AxisLaw::point_mass(1.0), GrainKind::disk});
    const int bins = 8;
    const double lo = -2.0, width = 4.0 / bins;
    std::vector<double> observed(bins * bins, 0.0), expected(bins * bins, 0.0);
    double total = 0.0;
    for (std::uint64_t r = 0; r < 4000; ++r) {
        Rng rng = make_stream(8, {r});
        for (const auto& g : sampler.sample(rng)) {
            const int i = std::clamp(static_cast<int>((g.center.x - lo) / width), 0, bins - 1);
            const int j = std::clamp(static_cast<int>((g.center.y - lo) / width), 0, bins - 1);
            observed[j * bins + i] += 1.0;
            total += 1.0;
        }
    }
    // Hit-region area in each bin from a fine sub-grid.
    const int sub = 100;
    double area_total = 0.0;
    for (int j = 0; j < bins; ++j)
        for (int i = 0; i < bins; ++i) {
            double a = 0.0;
            for (int s = 0; s < sub; ++s)
                for (int t = 0; t < sub; ++t) {
                    const Point z{lo + (i + (s + 0.5) / sub) * width, lo + (j + (t + 0.5) / sub) * width};
                    a += grain_box_intersects(make_disk(z, 1.0), w);
                }
            expected[j * bins + i] = a;
            area_total += a;
        }
    double chi2 = 0.0;
    int dof = -1;
    for (int c = 0; c < bins * bins; ++c) {
        const double e = expected[c] / area_total * total;
        if (e < 5.0) continue;
        chi2 += (observed[c] - e) * (observed[c] - e) / e;
        ++dof;
    }
    CHECK(oracle::chi_square_sf(chi2, dof) > 0.001);
}

TEST_CASE("origin vacancy matches exp(-u E[area])") {
    // Integral of P[0 in grain at z] over z is the mean grain area pi E[R].
    const double u = 0.2;
    const double expected = std::exp(-u * pi * 2.0);
    const Box w = make_box(20.0, 1.0);
    const HitProcessSampler sampler(w, {u, AxisLaw::pareto(2), GrainKind::ellipse});
    int vacant = 0;
    const int n = 4000;
    for (std::uint64_t r = 0; r < n; ++r) {
        Rng rng = make_stream(123, {r});
        const auto grains = sampler.sample(rng);
        vacant += std::none_of(grains.begin(), grains.end(), [](const Grain& g) { return point_in_grain({0, 0}, g); });
    }
    const double p = static_cast<double>(vacant) / n;
    CHECK(std::abs(p - expected) < 3.0 * std::sqrt(expected * (1 - expected) / n));
}

TEST_CASE("truncation certificate") {
    CHECK(truncation_error_bound(1.0, 10.0, 0.0, AxisLaw::pareto(2)) == 0.0);
    CHECK_THROWS_AS(truncation_error_bound(3.0, 5.0, 1.0, AxisLaw::pareto(2)), DomainError);
    // Monotone decay to 0 for a light tail.
    double prev = 1.0;
    for (double r = 4.0; r < 1e6; r *= 4.0) {
        const double b = truncation_error_bound(1.0, r, 1.0, AxisLaw::pareto(4));
        CHECK(b < prev);
        prev = b;
    }
    CHECK(prev < 1e-12);
    // At alpha = 2 the bound decays like 8u/r for a = 1.
    const double r = 1e6;
    CHECK(truncation_error_bound(1.0, r, 0.5, AxisLaw::pareto(2)) * r / 0.5 == doctest::Approx(8.0).epsilon(0.01));
    CHECK(truncation_error_bound(1.0, 1e3, 0.5, AxisLaw::pareto(2)) /
              truncation_error_bound(1.0, 1e6, 0.5, AxisLaw::pareto(2)) ==
          doctest::Approx(1000.0).epsilon(0.02));
    // No certificate is possible when the far field has infinite intensity.
    CHECK(truncation_error_bound(1.0, 100.0, 0.5, AxisLaw::pareto(0.8)) == 1.0);
}

TEST_CASE("truncation certificate bounds the observed far-field hits") {
    // Far-centred grains that reach B(a) are rare events; their frequency
    // must stay below the certificate.
    const double a = 2.0, r = 8.0, u = 0.5;
    const GrainModel model{u, AxisLaw::pareto(2.5), GrainKind::ellipse};
    const double bound = truncation_error_bound(a, r, u, model.law);
    int hits = 0;
    const int n = 4000;
    for (std::uint64_t k = 0; k < n; ++k) {
        Rng rng = make_stream(31, {k});
        const auto grains = sample_near_target({0, 0}, a, 512.0, model, rng);
        hits += std::any_of(grains.begin(), grains.end(), [&](const Grain& g) {
            return std::hypot(g.center.x, g.center.y) > r && distance_to_grain({0, 0}, g) <= a;
        });
    }
    CHECK(static_cast<double>(hits) / n <= bound + 3.0 * std::sqrt(bound / n));
}

TEST_CASE("truncated sampler") {
    const Box w = make_box(4.0, 1.0);
    auto [empty, rep0] = sample_truncated_process(w, 0.0, AxisLaw::pareto(0.8), GrainKind::ellipse, 64.0, 1);
    CHECK(empty.grains.empty());
    CHECK(rep0.error_probability == 0.0);
    CHECK_THROWS_AS(sample_truncated_process(w, 1.0, AxisLaw::pareto(2), GrainKind::ellipse, 2.0, 1), DomainError);

    // Nested truncation radii extend the same realization.
    auto [small, rs] = sample_truncated_process(w, 0.3, AxisLaw::pareto(0.8), GrainKind::ellipse, 32.0, 9);
    auto [large, rl] = sample_truncated_process(w, 0.3, AxisLaw::pareto(0.8), GrainKind::ellipse, 256.0, 9);
    for (const auto& g : small.grains) CHECK(std::find(large.grains.begin(), large.grains.end(), g) != large.grains.end());
    CHECK(large.grains.size() >= small.grains.size());
    CHECK(rs.error_probability == 1.0);
    CHECK(small.truncation.mode == TruncationMode::truncated);
    for (const auto& g : large.grains) CHECK(grain_box_intersects(g, w));

    auto [light, rep] = sample_truncated_process(w, 0.3, AxisLaw::pareto(3), GrainKind::ellipse, 64.0, 9);
    CHECK(rep.error_probability > 0.0);
    CHECK(rep.error_probability < 1e-3);
    CHECK(rep.method == "quadrature");
}

TEST_CASE("exact and truncated samplers agree in law") {
    const Box w = make_box(4.0, 1.0);
    const GrainModel model{0.4, AxisLaw::pareto(3), GrainKind::ellipse};
    const HitProcessSampler exact(w, model);
    double ne = 0, nt = 0;
    const int n = 3000;
    for (std::uint64_t r = 0; r < n; ++r) {
        Rng a = make_stream(3, {r});
        ne += exact.sample(a).size();
        nt += sample_truncated_process(w, model.u, model.law, model.kind, 64.0, 1000 + r).first.grains.size();
    }
    const double sd = std::sqrt(exact.intensity() / n);
    CHECK(std::abs(ne / n - exact.intensity()) < 4 * sd);
    CHECK(std::abs(nt / n - exact.intensity()) < 4 * sd);
}

TEST_CASE("thinning") {
    Rng rng(4);
    const auto pts = sample_poisson_points(make_box(10.0, 1.0), 2.0, rng);
    CHECK(thin_points(pts, [](Point) { return 1.0; }, rng) == pts);
    CHECK(thin_points(pts, [](Point) { return 0.0; }, rng).empty());

    // Chi-square goodness of fit of the retained count against Poisson(8);
    // both tails are pooled so that every bin expects at least 5 counts.
    std::vector<double> prob(16, 0.0);
    double head = 0.0;
    for (int k = 0; k < 16; ++k) {
        const double p = std::exp(oracle::poisson_log_pmf(k, 8.0));
        prob[std::max(k, 1) - 1] += p;
        head += p;
    }
    prob[15] = 1.0 - head;
    auto p_value = [&](const std::vector<double>& obs, double reps) {
        double chi2 = 0.0;
        for (int b = 0; b < 16; ++b) {
            const double e = prob[b] * reps;
            REQUIRE(e >= 5.0);
            chi2 += (obs[b] - e) * (obs[b] - e) / e;
        }
        return oracle::chi_square_sf(chi2, 15);
    };
    // Ten batches of 10^4 replicates at the 1% level: two or more chance
    // rejections would have probability about 4e-3.
    std::vector<double> pooled(16, 0.0);
    int rejected = 0;
    for (std::uint64_t batch = 0; batch < 10; ++batch) {
        std::vector<double> obs(16, 0.0);
        for (std::uint64_t r = 0; r < 10000; ++r) {
            Rng s = make_stream(17, {batch, r});
            const auto p = sample_poisson_points(make_box(4.0, 1.0), 1.0, s);
            const auto k = thin_points(p, [](Point q) { return q.x < 0.0 ? 1.0 : 0.0; }, s).size();
            obs[std::clamp(static_cast<int>(k), 1, 16) - 1] += 1.0;
        }
        rejected += p_value(obs, 1e4) <= 0.01;
        for (int b = 0; b < 16; ++b) pooled[b] += obs[b];
    }
    CHECK(rejected <= 1);
    CHECK(p_value(pooled, 1e5) > 0.01);
}

TEST_CASE("restrict_radius") {
    const GrainModel m{2.0, AxisLaw::pareto(2), GrainKind::ellipse};
    const GrainModel r = m.restrict_radius(2.0, 4.0);
    CHECK(r.u == doctest::Approx(2.0 * (0.25 - 1.0 / 16)));
    CHECK(r.law.survival(4.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(m.restrict_radius(0.5, 1.0).u == 0.0);
}

}  // TEST_SUITE
