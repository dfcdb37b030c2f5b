#include "ellperc/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ellperc/errors.hpp"
#include "ellperc/quadrature.hpp"

namespace ellperc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::int64_t sample_poisson(double mean, Rng& rng) {
    if (!(mean > 0.0)) return 0;
    std::poisson_distribution<std::int64_t> dist(mean);
    return dist(rng);
}

// Mean width of an ellipse with semi-axes R and 1, minus 4R/pi.
double ellipse_width_excess(double R) {
    if (R <= 1.0) return 4.0 / kPi * (0.5 * kPi - 1.0);
    const double k = std::sqrt(1.0 - 1.0 / (R * R));
    return 4.0 / kPi * R * (std::comp_ellint_2(k) - 1.0);
}

// E over (R, V) of the grain's extent along a fixed axis.
double mean_extent(const AxisLaw& law, GrainKind kind) {
    if (kind == GrainKind::disk) return 2.0 * law.moment(1.0);
    const double er = law.moment(1.0);
    if (!std::isfinite(er)) return kInf;
    return 4.0 / kPi * er + law.expectation(ellipse_width_excess);
}

void require_finite_intensity(const AxisLaw& law, GrainKind kind) {
    const double alpha = law.tail_exponent();
    const bool ok = kind == GrainKind::disk ? alpha > 2.0 : alpha > 1.0;
    if (!ok) {
        throw InfiniteIntensity(std::string("hitting intensity is infinite: ") +
                                (kind == GrainKind::disk ? "disk grains need a tail exponent alpha > 2"
                                                         : "ellipse grains need a tail exponent alpha > 1") +
                                " (law " + (law.kind() == AxisLaw::Kind::derived ? std::string("derived") : law.spec()) +
                                "); use a truncated sampler");
    }
}

}  // namespace

GrainModel GrainModel::restrict_radius(double lo, double hi) const {
    const double m = law.mass(lo, hi);
    if (!(m > 0.0)) return {0.0, law, kind};
    return {u * m, law.restricted(lo, hi), kind};
}

HitProcessSampler::HitProcessSampler(const Box& window, const GrainModel& model, const SamplerOptions& options)
    : window_(window), model_(model), options_(options), area_law_(model.law), width_law_(model.law) {
    if (!(model.u >= 0.0)) throw DomainError("hit-process sampler: u must be >= 0");
    if (model.u == 0.0) return;
    require_finite_intensity(model.law, model.kind);
    const double w = window.width(), h = window.height();
    const double m = mean_extent(model.law, model.kind);
    const double area = model.kind == GrainKind::disk ? kPi * model.law.moment(2.0) : kPi * model.law.moment(1.0);
    weights_ = {w * h, area, w * m, h * m};
    total_ = weights_[0] + weights_[1] + weights_[2] + weights_[3];
    area_law_ = model.law.size_biased(model.kind == GrainKind::disk ? 2.0 : 1.0);
    width_law_ = model.law.size_biased(1.0);
}

std::vector<Grain> HitProcessSampler::sample(Rng& rng) const {
    std::vector<Grain> grains;
    const std::int64_t n = sample_poisson(intensity(), rng);
    grains.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) grains.push_back(sample_one(rng));
    return grains;
}

double HitProcessSampler::direction(Rng& rng) const {
    return model_.kind == GrainKind::disk ? 0.0 : sample_direction(rng.uniform());
}

Grain HitProcessSampler::sample_one(Rng& rng) const {
    const double pick = rng.uniform() * total_;
    double R = 0.0, V = 0.0;
    if (pick < weights_[0]) {
        R = model_.law.sample(rng);
        V = direction(rng);
    } else if (pick < weights_[0] + weights_[1]) {
        R = area_law_.sample(rng);
        V = direction(rng);
    } else {
        const double theta = pick < weights_[0] + weights_[1] + weights_[2] ? 0.5 * kPi : 0.0;
        for (std::uint64_t attempt = 0;; ++attempt) {
            if (attempt >= options_.max_attempts)
                throw RejectionStall("extent-biased (R, V) sampler exceeded its attempt cap");
            R = width_law_.sample(rng);
            V = direction(rng);
            if (rng.uniform() * 2.0 * R <= support_extent(R, V, model_.kind, theta)) break;
        }
    }
    return place(R, V, rng);
}

// Uniform center on the hit region of (R, V), by rejection from the
// tighter of the axis-aligned and the grain-aligned envelope.
Grain HitProcessSampler::place(double R, double V, Rng& rng) const {
    // Squared extents below must stay finite.
    if (!(R <= 1e100))
        throw ResourceLimit("hit-process sampler: drew a semi-major axis beyond 1e100 (alpha too close to the "
                            "finiteness threshold); use truncated sampling");
    const Grain proto = make_grain({}, R, V, model_.kind);
    const Aabb bb = bounding_box(proto);
    const double ax0 = window_.xmin() + bb.xmin, ax1 = window_.xmax() + bb.xmax;
    const double ay0 = window_.ymin() + bb.ymin, ay1 = window_.ymax() + bb.ymax;
    const double axis_area = (ax1 - ax0) * (ay1 - ay0);

    const Point e1{std::cos(proto.V), std::sin(proto.V)}, e2{-e1.y, e1.x};
    double p0 = kInf, p1 = -kInf, q0 = kInf, q1 = -kInf;
    for (Point c : {Point{window_.xmin(), window_.ymin()}, Point{window_.xmax(), window_.ymin()},
                    Point{window_.xmin(), window_.ymax()}, Point{window_.xmax(), window_.ymax()}}) {
        p0 = std::min(p0, dot(c, e1));
        p1 = std::max(p1, dot(c, e1));
        q0 = std::min(q0, dot(c, e2));
        q1 = std::max(q1, dot(c, e2));
    }
    p0 -= proto.semi_major();
    p1 += proto.semi_major();
    q0 -= proto.semi_minor();
    q1 += proto.semi_minor();
    const bool oriented = (p1 - p0) * (q1 - q0) < axis_area;

    for (std::uint64_t attempt = 0; attempt < options_.max_attempts; ++attempt) {
        Point z;
        if (oriented) {
            const double s = rng.uniform(p0, p1), t = rng.uniform(q0, q1);
            z = s * e1 + t * e2;
        } else {
            z = {rng.uniform(ax0, ax1), rng.uniform(ay0, ay1)};
        }
        Grain g = proto;
        g.center = z;
        if (grain_box_intersects(g, window_)) return g;
    }
    throw RejectionStall("center sampler exceeded its attempt cap for R=" + std::to_string(R));
}

double sample_major_axis(const AxisLaw& law, double U) { return law.inverse_survival(U); }

double sample_direction(double U) {
    double v = kPi * U - 0.5 * kPi;
    if (v <= -0.5 * kPi) v += kPi;
    return v;
}

Grain make_grain(Point center, double R, double V, GrainKind kind) {
    return kind == GrainKind::disk ? make_disk(center, R) : make_ellipse(center, R, V);
}

double hitting_intensity(const Box& window, double u, const AxisLaw& law, GrainKind kind) {
    if (!(u >= 0.0)) throw DomainError("hitting intensity: u must be >= 0");
    if (u == 0.0) return 0.0;
    return HitProcessSampler(window, {u, law, kind}).intensity();
}

double hitting_intensity(const Box& window, const GrainModel& model) {
    return hitting_intensity(window, model.u, model.law, model.kind);
}

std::vector<Grain> sample_hitting_grains(const Box& window, const GrainModel& model, Rng& rng,
                                         const SamplerOptions& options) {
    return HitProcessSampler(window, model, options).sample(rng);
}

Configuration sample_hitting_process(const Box& window, double u, const AxisLaw& law, GrainKind kind,
                                     std::uint64_t seed, const SamplerOptions& options) {
    Rng rng = make_stream(seed, {});
    Configuration c;
    c.window = window;
    c.u = u;
    c.law = law;
    c.grain_kind = kind;
    c.seed = seed;
    c.grains = sample_hitting_grains(window, {u, law, kind}, rng, options);
    return c;
}

std::vector<Grain> sample_near_target(Point target, double a, double region_radius, const GrainModel& model,
                                      Rng& rng) {
    if (!(a >= 0.0) || !(region_radius >= 0.0)) throw DomainError("near-target sampler: radii must be >= 0");
    std::vector<Grain> grains;
    const std::uint64_t base = rng();
    if (model.u == 0.0) return grains;
    double inner = 0.0, outer = a + 1.0;
    for (std::uint64_t shell = 0; inner < region_radius; ++shell) {
        // Grains centred at distance >= inner reach B(target, a) only if R >= inner - a.
        const double threshold = shell == 0 ? 1.0 : std::max(1.0, inner - a);
        const double surv = model.law.survival(threshold);
        if (surv > 0.0) {
            Rng srng = make_stream(base, {shell});
            const double ring = kPi * (outer * outer - inner * inner);
            const std::int64_t n = sample_poisson(model.u * ring * surv, srng);
            const AxisLaw cond = threshold > 1.0 ? model.law.at_least(threshold) : model.law;
            for (std::int64_t i = 0; i < n; ++i) {
                const double rad = std::sqrt(inner * inner + (outer * outer - inner * inner) * srng.uniform());
                const double ang = 2.0 * kPi * srng.uniform();
                const double R = cond.sample(srng);
                const double V = model.kind == GrainKind::disk ? 0.0 : sample_direction(srng.uniform());
                if (rad <= region_radius)
                    grains.push_back(make_grain(target + Point{rad * std::cos(ang), rad * std::sin(ang)}, R, V, model.kind));
            }
        }
        inner = outer;
        outer *= 2.0;
    }
    return grains;
}

double truncation_error_bound(double a, double trunc_radius, double u, const AxisLaw& law, GrainKind kind) {
    if (!(a >= 0.0)) throw DomainError("truncation bound: a must be >= 0");
    if (!(trunc_radius >= std::max(a + 1.0, 2.0 * a)))
        throw DomainError("truncation bound: trunc_radius must be >= max(a + 1, 2a), got trunc_radius=" +
                          std::to_string(trunc_radius) + " with a=" + std::to_string(a));
    if (!(u >= 0.0)) throw DomainError("truncation bound: u must be >= 0");
    if (u == 0.0) return 0.0;
    const double alpha = law.tail_exponent();
    if (kind == GrainKind::ellipse ? alpha <= 1.0 : alpha <= 2.0) return 1.0;

    // Integrand in x = log s over centres at distance s: P[R >= s - a] times
    // the probability that the direction lets the unit-width strip reach the
    // ball, times the ring length 2 pi s, times ds/dx = s.
    auto integrand = [&](double x) {
        const double s = std::exp(x);
        if (std::isinf(s)) return 0.0;
        double p = law.survival(s - a);
        if (p == 0.0) return 0.0;
        if (kind == GrainKind::ellipse) p *= 2.0 / kPi * std::asin(std::min(1.0, (a + 1.0) / s));
        return p * 2.0 * kPi * s * s;
    };

    std::vector<double> breaks{trunc_radius};
    for (const auto& seg : law.segments()) {
        for (double t : {seg.lo + a, seg.hi + a})
            if (std::isfinite(t) && t > trunc_radius) breaks.push_back(t);
    }
    for (const auto& atom : law.atoms())
        if (atom.r + a > trunc_radius) breaks.push_back(atom.r + a);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    double total = 0.0;
    for (std::size_t i = 0; i < breaks.size(); ++i) {
        const double lo = std::log(breaks[i]);
        const double hi = i + 1 < breaks.size() ? std::log(breaks[i + 1]) : kInf;
        total += integrate(integrand, lo, hi, kQuadratureRelTol, 1e-300);
    }
    return -std::expm1(-u * total);
}

std::pair<Configuration, TruncationReport> sample_truncated_process(const Box& window, double u,
                                                                    const AxisLaw& law, GrainKind kind,
                                                                    double trunc_radius, std::uint64_t seed) {
    const double a = window.circumradius();
    if (!(trunc_radius >= a + 1.0))
        throw DomainError("truncated sampler: trunc_radius must be >= window circumradius + 1 = " +
                          std::to_string(a + 1.0) + ", got " + std::to_string(trunc_radius));
    if (!(u >= 0.0)) throw DomainError("truncated sampler: u must be >= 0");
    Rng rng = make_stream(seed, {});
    auto near = sample_near_target(window.center, a, trunc_radius, {u, law, kind}, rng);

    TruncationReport report{trunc_radius, 0.0, "closed-form"};
    const double alpha = law.tail_exponent();
    if (u == 0.0) {
        report.error_probability = 0.0;
    } else if (trunc_radius < std::max(a + 1.0, 2.0 * a) ||
               (kind == GrainKind::ellipse ? alpha <= 1.0 : alpha <= 2.0)) {
        report.error_probability = 1.0;
    } else {
        report.error_probability = truncation_error_bound(a, trunc_radius, u, law, kind);
        report.method = "quadrature";
    }

    Configuration c;
    c.window = window;
    c.u = u;
    c.law = law;
    c.grain_kind = kind;
    c.seed = seed;
    c.truncation = {TruncationMode::truncated, trunc_radius, report.error_probability};
    for (auto& g : near)
        if (grain_box_intersects(g, window)) c.grains.push_back(g);
    return {std::move(c), report};
}

std::vector<Point> sample_poisson_points(const Box& region, double u, Rng& rng) {
    const std::int64_t n = sample_poisson(u * region.width() * region.height(), rng);
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        const double x = rng.uniform(region.xmin(), region.xmax());
        const double y = rng.uniform(region.ymin(), region.ymax());
        pts.push_back({x, y});
    }
    return pts;
}

std::vector<Grain> sample_centered_in(const Box& region, const GrainModel& model, Rng& rng) {
    std::vector<Grain> grains;
    for (Point p : sample_poisson_points(region, model.u, rng)) {
        const double R = model.law.sample(rng);
        const double V = model.kind == GrainKind::disk ? 0.0 : sample_direction(rng.uniform());
        grains.push_back(make_grain(p, R, V, model.kind));
    }
    return grains;
}

std::vector<Point> thin_points(const std::vector<Point>& points, const std::function<double(Point)>& g, Rng& rng) {
    std::vector<Point> kept;
    for (Point p : points)
        if (rng.uniform() < g(p)) kept.push_back(p);
    return kept;
}

}  // namespace ellperc
