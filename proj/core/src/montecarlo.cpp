#include "ellperc/montecarlo.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>

#include "ellperc/errors.hpp"
#include "ellperc/parallel.hpp"

namespace ellperc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr std::array<EventKind, 9> kEvents{
    EventKind::covered_lr,    EventKind::covered_tb,   EventKind::vacant_lr,
    EventKind::one_ellipse_lr, EventKind::circuit3,    EventKind::point_covered,
    EventKind::disk_covered,  EventKind::annulus_conn, EventKind::vacant_annulus_circuit,
};

double normal_quantile_two_sided(double level) {
    if (!(level > 0.0 && level < 1.0)) throw DomainError("confidence level must lie in (0, 1)");
    return boost::math::quantile(boost::math::normal_distribution<double>(), 0.5 + 0.5 * level);
}

// Truncation certificate for grains centred outside B(center of window,
// radius) and hitting the window.
double certificate(const Box& window, double radius, const GrainModel& model) {
    const double a = window.circumradius();
    if (!(radius >= a + 1.0))
        throw DomainError("trunc_radius must be >= window circumradius + 1 = " + format_double(a + 1.0) +
                          ", got " + format_double(radius));
    if (model.u == 0.0) return 0.0;
    if (radius < std::max(a + 1.0, 2.0 * a)) return 1.0;
    return truncation_error_bound(a, radius, model.u, model.law, model.kind);
}

std::vector<Grain> sample_truncated(const Box& window, double radius, const GrainModel& model, Rng& rng) {
    auto near = sample_near_target(window.center, window.circumradius(), radius, model, rng);
    std::erase_if(near, [&](const Grain& g) { return !grain_box_intersects(g, window); });
    return near;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

std::string_view to_string(EventKind e) {
    switch (e) {
        case EventKind::covered_lr: return "covered_lr";
        case EventKind::covered_tb: return "covered_tb";
        case EventKind::vacant_lr: return "vacant_lr";
        case EventKind::one_ellipse_lr: return "one_ellipse_lr";
        case EventKind::circuit3: return "circuit3";
        case EventKind::point_covered: return "point_covered";
        case EventKind::disk_covered: return "disk_covered";
        case EventKind::annulus_conn: return "annulus_conn";
        case EventKind::vacant_annulus_circuit: return "vacant_annulus_circuit";
    }
    return "";
}

EventKind event_from_string(std::string_view name) {
    for (EventKind e : kEvents)
        if (to_string(e) == name) return e;
    throw DomainError("unknown event '" + std::string(name) +
                      "'; expected one of covered_lr, covered_tb, vacant_lr, one_ellipse_lr, circuit3, "
                      "point_covered, disk_covered, annulus_conn, vacant_annulus_circuit");
}

const std::array<EventKind, 9>& all_events() { return kEvents; }

// ---------------------------------------------------------------------------

EventSampler::EventSampler(EventKind event, const EventParams& params)
    : event_(event), params_(params), sample_model_(params.model) {
    if (!(params.model.u >= 0.0)) throw DomainError("u must be >= 0");
    switch (event) {
        case EventKind::covered_lr:
        case EventKind::covered_tb:
        case EventKind::vacant_lr:
            window_ = make_box(params.l, params.k);
            break;
        case EventKind::one_ellipse_lr:
            window_ = make_box(params.l, params.k);
            // Meeting both vertical sides needs a horizontal extent >= lk.
            if (params.l * params.k / 2.0 > 1.0) sample_model_ = params.model.restrict_radius(params.l * params.k / 2.0, kInf);
            break;
        case EventKind::circuit3:
            CircuitSpec::make(params.a);
            window_ = make_box(1.1 * params.a, 1.0);
            return;
        case EventKind::point_covered:
            window_ = make_box(params.l, params.k, params.w);
            break;
        case EventKind::disk_covered:
            if (!(params.eps >= 0.0)) throw DomainError("disk_covered: eps must be >= 0");
            window_ = make_box(params.l, params.k, params.w);
            if (window_.width() < 2.0 * params.eps || window_.height() < 2.0 * params.eps)
                throw DomainError("disk_covered: the window box(l, k) must contain B(w, eps)");
            break;
        case EventKind::annulus_conn:
            if (!(params.r_in > 0.0) || !(params.r_out > params.r_in))
                throw DomainError("annulus_conn: need 0 < r_in < r_out");
            window_ = make_box(2.0 * params.r_out, 1.0);
            break;
        case EventKind::vacant_annulus_circuit:
            if (!(params.l > 0.0)) throw DomainError("vacant_annulus_circuit: l must be > 0");
            window_ = make_box(6.0 * params.l, 1.0);
            break;
    }
    if (params.trunc_radius > 0.0)
        truncation_error_ = certificate(window_, params.trunc_radius, sample_model_);
    else
        hit_.emplace(window_, sample_model_);
}

std::vector<Grain> EventSampler::sample(Rng& rng) const {
    if (event_ == EventKind::circuit3) return sample_centered_in(window_, params_.model, rng);
    if (hit_) return hit_->sample(rng);
    return sample_truncated(window_, params_.trunc_radius, sample_model_, rng);
}

bool EventSampler::evaluate(std::span<const Grain> grains) const {
    switch (event_) {
        case EventKind::covered_lr: return covered_crossing(grains, window_, Axis::horizontal);
        case EventKind::covered_tb: return covered_crossing(grains, window_, Axis::vertical);
        case EventKind::vacant_lr: return vacant_lr_crossing(grains, window_);
        case EventKind::one_ellipse_lr: return one_ellipse_crossing(grains, window_);
        case EventKind::circuit3: return three_ellipse_circuit(grains, params_.a);
        case EventKind::point_covered:
            return std::any_of(grains.begin(), grains.end(), [&](const Grain& g) { return point_in_grain(params_.w, g); });
        case EventKind::disk_covered:
            return std::any_of(grains.begin(), grains.end(),
                               [&](const Grain& g) { return disk_in_grain(params_.w, params_.eps, g); });
        case EventKind::annulus_conn: return annulus_connection(grains, params_.r_in, params_.r_out);
        case EventKind::vacant_annulus_circuit: return vacant_circuit_in_annulus(grains, params_.l);
    }
    return false;
}

// ---------------------------------------------------------------------------

std::pair<double, double> wilson_ci(std::int64_t successes, std::int64_t n, double level) {
    if (n < 1 || successes < 0 || successes > n) throw DomainError("wilson_ci: need 0 <= successes <= n, n >= 1");
    const double z = normal_quantile_two_sided(level);
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
    double lo = std::max(0.0, center - half), hi = std::min(1.0, center + half);
    if (successes == 0) lo = 0.0;
    if (successes == n) hi = 1.0;
    return {std::min(lo, p), std::max(hi, p)};
}

std::vector<std::uint8_t> replicate_outcomes(EventKind event, const EventParams& params, std::int64_t n,
                                             std::uint64_t seed, int threads) {
    if (n < 1) throw DomainError("replicate count n must be >= 1");
    const EventSampler sampler(event, params);
    std::vector<std::uint8_t> out(static_cast<std::size_t>(n), 0);
    parallel_for(n, threads, [&](std::int64_t r) {
        Rng rng = make_stream(seed, {static_cast<std::uint64_t>(r)});
        const auto grains = sampler.sample(rng);
        out[static_cast<std::size_t>(r)] = sampler.evaluate(grains) ? 1 : 0;
    });
    return out;
}

EstimateResult estimate(EventKind event, const EventParams& params, std::int64_t n, std::uint64_t seed, double level,
                        int threads) {
    const auto start = std::chrono::steady_clock::now();
    if (n < 1) throw DomainError("replicate count n must be >= 1");
    normal_quantile_two_sided(level);
    const EventSampler sampler(event, params);
    const double limit = (1.0 - level) / 10.0;
    if (sampler.truncation_error() > limit && !params.allow_truncation_error)
        throw DomainError("truncated sampling certificate " + format_double(sampler.truncation_error()) +
                          " exceeds (1 - level)/10 = " + format_double(limit) +
                          "; raise trunc_radius or allow the truncation error explicitly");
    std::vector<std::uint8_t> out(static_cast<std::size_t>(n), 0);
    parallel_for(n, threads, [&](std::int64_t r) {
        Rng rng = make_stream(seed, {static_cast<std::uint64_t>(r)});
        const auto grains = sampler.sample(rng);
        out[static_cast<std::size_t>(r)] = sampler.evaluate(grains) ? 1 : 0;
    });

    EstimateResult res;
    res.event = std::string(to_string(event));
    res.params = params;
    res.n = n;
    res.successes = std::count(out.begin(), out.end(), std::uint8_t{1});
    res.phat = static_cast<double>(res.successes) / static_cast<double>(n);
    std::tie(res.ci_lo, res.ci_hi) = wilson_ci(res.successes, n, level);
    res.level = level;
    res.seed = seed;
    res.truncation_error = sampler.truncation_error();
    res.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

// ---------------------------------------------------------------------------

CovarianceResult covariance_of_samples(std::span<const double> a, std::span<const double> b, double level) {
    if (a.size() != b.size() || a.size() < 2) throw DomainError("covariance: need two equally long samples of size >= 2");
    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double cov = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) cov += (a[i] - ma) * (b[i] - mb);
    cov /= n;
    double var = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double phi = (a[i] - ma) * (b[i] - mb) - cov;
        var += phi * phi;
    }
    var /= n * n;
    const double half = normal_quantile_two_sided(level) * std::sqrt(var);
    return {static_cast<std::int64_t>(a.size()), ma, mb, cov, cov - half, cov + half};
}

CovarianceResult covariance(EventKind event_a, const EventParams& params_a, EventKind event_b,
                            const EventParams& params_b, std::int64_t n, std::uint64_t seed, double level,
                            int threads) {
    if (event_a == EventKind::circuit3 || event_b == EventKind::circuit3)
        throw DomainError("covariance: circuit3 samples centres only and cannot share a configuration");
    if (n < 2) throw DomainError("covariance: n must be >= 2");
    const EventSampler sa(event_a, params_a), sb(event_b, params_b);
    const Box& wa = sa.window();
    const Box& wb = sb.window();
    const Box joint = box_from_extents(std::min(wa.xmin(), wb.xmin()), std::max(wa.xmax(), wb.xmax()),
                                       std::min(wa.ymin(), wb.ymin()), std::max(wa.ymax(), wb.ymax()));
    const GrainModel& model = params_a.model;
    const double radius = std::max(params_a.trunc_radius, params_b.trunc_radius);
    std::optional<HitProcessSampler> hit;
    if (radius > 0.0) {
        const double cert = certificate(joint, radius, model);
        if (cert > (1.0 - level) / 10.0 && !(params_a.allow_truncation_error || params_b.allow_truncation_error))
            throw DomainError("covariance: truncation certificate " + format_double(cert) + " is too large");
    } else {
        hit.emplace(joint, model);
    }
    std::vector<double> xa(static_cast<std::size_t>(n)), xb(static_cast<std::size_t>(n));
    parallel_for(n, threads, [&](std::int64_t r) {
        Rng rng = make_stream(seed, {static_cast<std::uint64_t>(r)});
        const auto grains = hit ? hit->sample(rng) : sample_truncated(joint, radius, model, rng);
        xa[static_cast<std::size_t>(r)] = sa.evaluate(grains) ? 1.0 : 0.0;
        xb[static_cast<std::size_t>(r)] = sb.evaluate(grains) ? 1.0 : 0.0;
    });
    return covariance_of_samples(xa, xb, level);
}

// ---------------------------------------------------------------------------

std::vector<LlnRow> lln_counts(double eps, const GrainModel& model, std::span<const double> n_list, std::int64_t reps,
                               std::uint64_t seed, int threads) {
    if (!(eps >= 0.0 && eps < 0.5)) throw DomainError("lln: eps must lie in [0, 1/2)");
    if (n_list.empty() || reps < 2) throw DomainError("lln: need a non-empty n list and reps >= 2");
    for (double n : n_list)
        if (!(n > 0.0)) throw DomainError("lln: every n must be > 0");
    const double n_max = *std::max_element(n_list.begin(), n_list.end());
    const std::size_t m = n_list.size();
    std::vector<double> counts(static_cast<std::size_t>(reps) * m, 0.0);
    parallel_for(reps, threads, [&](std::int64_t r) {
        Rng rng = make_stream(seed, {static_cast<std::uint64_t>(r)});
        const auto grains = sample_near_target({0.0, 0.0}, eps, n_max, model, rng);
        for (std::size_t i = 0; i < m; ++i)
            counts[static_cast<std::size_t>(r) * m + i] =
                static_cast<double>(count_covering(grains, {0.0, 0.0}, eps, n_list[i]));
    });
    std::vector<LlnRow> rows;
    for (std::size_t i = 0; i < m; ++i) {
        double sum = 0.0, sum2 = 0.0;
        for (std::int64_t r = 0; r < reps; ++r) {
            const double c = counts[static_cast<std::size_t>(r) * m + i];
            sum += c;
            sum2 += c * c;
        }
        const double nr = static_cast<double>(reps);
        const double mean = sum / nr;
        rows.push_back({n_list[i], mean, std::max(0.0, (sum2 - nr * mean * mean) / (nr - 1.0))});
    }
    return rows;
}

LinearFit fit_linear(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 3) throw DomainError("fit: need at least 3 (x, y) points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw DomainError("fit: x values must not all coincide");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (fit.intercept + fit.slope * x[i]);
        sse += e * e;
    }
    fit.stderr_slope = std::sqrt(sse / (n - 2.0) / sxx);
    fit.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
    return fit;
}

PowerFit fit_power_law(std::span<const std::pair<double, double>> points) {
    std::vector<double> lx, ly;
    for (const auto& [x, y] : points) {
        if (!(x > 0.0) || !(y > 0.0)) throw DomainError("power-law fit: coordinates must be > 0");
        lx.push_back(std::log(x));
        ly.push_back(std::log(y));
    }
    return fit_linear(lx, ly);
}

// ---------------------------------------------------------------------------

std::vector<ScanRow> scan(EventKind event, const EventParams& base, const ScanGrid& grid, std::int64_t n,
                          std::uint64_t base_seed, double level, int threads) {
    if (grid.alpha.empty() || grid.u.empty() || grid.l.empty() || grid.k.empty())
        throw DomainError("scan: every grid axis needs at least one value");
    std::vector<ScanRow> rows;
    std::uint64_t index = 0;
    for (double alpha : grid.alpha)
        for (double u : grid.u)
            for (double l : grid.l)
                for (double k : grid.k) {
                    ScanRow row;
                    EventParams p = base;
                    p.model.u = u;
                    p.l = l;
                    p.k = k;
                    const std::uint64_t seed = base_seed + index++;
                    row.result.event = std::string(to_string(event));
                    row.result.params = p;
                    row.result.seed = seed;
                    row.result.level = level;
                    try {
                        p.model.law = AxisLaw::pareto(alpha);
                        row.result.params = p;
                        row.result = estimate(event, p, n, seed, level, threads);
                    } catch (const Error& e) {
                        row.error = e.what();
                    }
                    rows.push_back(std::move(row));
                }
    return rows;
}

// ---------------------------------------------------------------------------

std::string extra_field(const EstimateResult& r) {
    std::vector<std::string> kv;
    const auto& p = r.params;
    const auto event = event_from_string(r.event);
    switch (event) {
        case EventKind::circuit3: kv.push_back("a=" + format_double(p.a)); break;
        case EventKind::point_covered:
            kv.push_back("wx=" + format_double(p.w.x));
            kv.push_back("wy=" + format_double(p.w.y));
            break;
        case EventKind::disk_covered:
            kv.push_back("wx=" + format_double(p.w.x));
            kv.push_back("wy=" + format_double(p.w.y));
            kv.push_back("eps=" + format_double(p.eps));
            break;
        case EventKind::annulus_conn:
            kv.push_back("r_in=" + format_double(p.r_in));
            kv.push_back("r_out=" + format_double(p.r_out));
            break;
        default: break;
    }
    if (p.model.kind == GrainKind::disk) kv.push_back("grain=disk");
    if (p.model.law.kind() != AxisLaw::Kind::pareto && p.model.law.kind() != AxisLaw::Kind::derived)
        kv.push_back("law=" + p.model.law.spec());
    if (p.trunc_radius > 0.0) {
        kv.push_back("trunc_radius=" + format_double(p.trunc_radius));
        kv.push_back("trunc_error=" + format_double(r.truncation_error));
    }
    if (r.level != 0.95) kv.push_back("level=" + format_double(r.level));
    std::string out;
    for (std::size_t i = 0; i < kv.size(); ++i) {
        if (i) out += ';';
        out += kv[i];
    }
    return out;
}

std::string csv_header() { return "event,alpha,u,l,k,extra,n,successes,phat,ci_lo,ci_hi,seed"; }

std::string csv_row(const EstimateResult& r) {
    const auto& p = r.params;
    std::string out = r.event;
    for (const std::string& field :
         {format_double(p.model.law.tail_exponent()), format_double(p.model.u), format_double(p.l), format_double(p.k),
          extra_field(r), std::to_string(r.n), std::to_string(r.successes), format_double(r.phat),
          format_double(r.ci_lo), format_double(r.ci_hi), std::to_string(r.seed)}) {
        out += ',';
        out += field;
    }
    return out;
}

nlohmann::json to_json(const EstimateResult& r) {
    const auto& p = r.params;
    return {
        {"event", r.event},
        {"alpha", p.model.law.tail_exponent()},
        {"u", p.model.u},
        {"l", p.l},
        {"k", p.k},
        {"extra", extra_field(r)},
        {"n", r.n},
        {"successes", r.successes},
        {"phat", r.phat},
        {"ci_lo", r.ci_lo},
        {"ci_hi", r.ci_hi},
        {"seed", r.seed},
    };
}

}  // namespace ellperc
