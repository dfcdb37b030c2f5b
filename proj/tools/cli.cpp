#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "ellperc/errors.hpp"
#include "ellperc/montecarlo.hpp"
#include "ellperc/multiscale.hpp"
#include "ellperc/parallel.hpp"
#include "ellperc/sampling.hpp"

namespace ellperc::cli {

namespace {

using nlohmann::json;

struct ModelFlags {
    std::optional<double> alpha;
    std::string law;
    double u = 0.1;
    std::string grain = "ellipse";
};

void add_model_flags(CLI::App* sub, ModelFlags& m, bool with_u = true) {
    auto* alpha = sub->add_option("--alpha", m.alpha,
                                  "tail exponent of the major-axis law, P[R >= r] = r^-alpha [dimensionless, default 2]");
    auto* law = sub->add_option("--law", m.law,
                                "major-axis law: pareto:ALPHA | pointmass:R | piecewise:1:A1,T2:A2,... "
                                "[thresholds and R in minor-axis units]");
    alpha->excludes(law);
    if (with_u) sub->add_option("--u", m.u, "centre intensity [grains per unit area]")->capture_default_str();
    sub->add_option("--grain", m.grain, "grain shape: ellipse (semi-axes R and 1) | disk (radius R) [-]")
        ->check(CLI::IsMember({"ellipse", "disk"}))
        ->capture_default_str();
}

AxisLaw resolve_law(const ModelFlags& m) {
    if (!m.law.empty()) return AxisLaw::parse(m.law);
    return AxisLaw::pareto(m.alpha.value_or(2.0));
}

GrainModel resolve_model(const ModelFlags& m) {
    if (!(m.u >= 0.0) || !std::isfinite(m.u)) throw DomainError("--u must be a finite intensity >= 0, got " + format_double(m.u));
    return {m.u, resolve_law(m), grain_kind_from_string(m.grain)};
}

std::string describe_law(const AxisLaw& law) {
    return law.kind() == AxisLaw::Kind::pareto ? "--alpha " + format_double(law.parameter()) : "--law " + law.spec();
}

// The exact hit process has finite intensity only when E[R] (ellipses) or
// E[R^2] (disks) is finite.
void require_exact_sampling(const GrainModel& m) {
    const double order = m.kind == GrainKind::disk ? 2.0 : 1.0;
    if (m.u > 0.0 && !std::isfinite(m.law.moment(order)))
        throw DomainError(std::string("exact sampling needs a finite hitting intensity, i.e. ") +
                          (m.kind == GrainKind::disk ? "alpha > 2 for disks" : "alpha > 1 for ellipses") +
                          "; got " + describe_law(m.law) + ". Pass --trunc-radius for truncated sampling");
}

void require_positive(double v, const char* flag) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(flag) + " must be > 0, got " + format_double(v));
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty() || path == "-")
        out << content;
    else
        write_file_atomic(path, content);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::system_error(errno, std::generic_category(), "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

bool wants_json(const std::string& format, const std::string& path) {
    if (!format.empty()) return format == "json";
    return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}

struct EventFlags {
    std::string event;
    double l = 10.0;
    double k = 1.0;
    double a = 9.0;
    double eps = 0.0;
    double wx = 0.0;
    double wy = 0.0;
    double r_in = 1.0;
    double r_out = 4.0;
    double trunc_radius = 0.0;
    bool allow_truncation_error = false;
};

void add_geometry_flags(CLI::App* sub, EventFlags& f, bool lists_for_box) {
    if (!lists_for_box) {
        sub->add_option("--l", f.l, "box height; box events use [-lk/2, lk/2] x [-l/2, l/2] [length]")
            ->capture_default_str();
        sub->add_option("--k", f.k, "box aspect ratio, width = l*k [dimensionless]")->capture_default_str();
    }
    sub->add_option("--a", f.a, "circuit3 scale a [length]")->capture_default_str();
    sub->add_option("--eps", f.eps, "disk_covered target radius [length]")->capture_default_str();
    sub->add_option("--wx", f.wx, "x of the target point w for point/disk events [length]")->capture_default_str();
    sub->add_option("--wy", f.wy, "y of the target point w for point/disk events [length]")->capture_default_str();
    sub->add_option("--r-in", f.r_in, "annulus_conn inner radius [length]")->capture_default_str();
    sub->add_option("--r-out", f.r_out, "annulus_conn outer radius [length]")->capture_default_str();
    sub->add_option("--trunc-radius", f.trunc_radius,
                    "centre-truncation radius about the window centre; 0 = exact hit process [length]")
        ->capture_default_str();
    sub->add_flag("--allow-truncation-error", f.allow_truncation_error,
                  "accept a truncation certificate above (1 - level)/10 [-]");
}

EventParams make_params(const EventFlags& f, const GrainModel& model) {
    EventParams p;
    p.model = model;
    p.l = f.l;
    p.k = f.k;
    p.a = f.a;
    p.eps = f.eps;
    p.w = {f.wx, f.wy};
    p.r_in = f.r_in;
    p.r_out = f.r_out;
    p.trunc_radius = f.trunc_radius;
    p.allow_truncation_error = f.allow_truncation_error;
    return p;
}

void validate_event_params(EventKind e, const EventParams& p) {
    if (p.trunc_radius < 0.0) throw DomainError("--trunc-radius must be >= 0, got " + format_double(p.trunc_radius));
    if (e != EventKind::circuit3 && e != EventKind::annulus_conn) {
        require_positive(p.l, "--l");
        require_positive(p.k, "--k");
    }
    if (e != EventKind::circuit3 && p.trunc_radius == 0.0) require_exact_sampling(p.model);
}

void add_run_flags(CLI::App* sub, std::int64_t& n, std::uint64_t& seed, double* level) {
    sub->add_option("--n", n, "replicates [count]")->capture_default_str();
    sub->add_option("--seed", seed, "base seed; replicate r uses substream (seed, r) [integer]")->capture_default_str();
    if (level) sub->add_option("--level", *level, "confidence level in (0, 1) [probability]")->capture_default_str();
}

// ---------------------------------------------------------------------------

std::string render_recursion(double C7, double alpha, std::optional<double> u, int k_max) {
    const K0U0 t = compute_k0_u0(C7, alpha);
    const double uu = u.value_or(t.u0);
    if (k_max < t.k0) throw DomainError("--kmax must be >= k0 = " + std::to_string(t.k0) + ", got " + std::to_string(k_max));
    const QkCheck check = check_qk_bound(C7, alpha, uu, t.epsilon, t.k0, k_max);
    json j = {{"alpha", alpha},
              {"C7", C7},
              {"epsilon", t.epsilon},
              {"k0", t.k0},
              {"u0", t.u0},
              {"log10_u0", t.log10_u0},
              {"u", uu},
              {"k_max", k_max},
              {"pass", check.pass},
              {"first_violation", check.first_violation},
              {"q", check.q},
              {"envelope", check.envelope}};
    return j.dump(2) + "\n";
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::system_error(errno, std::generic_category(), "cannot write " + tmp.string());
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        f.flush();
        if (!f) throw std::system_error(errno, std::generic_category(), "write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::system_error(ec, "cannot rename onto " + path.string());
    }
}

std::string render_svg(const Configuration& c) {
    const Box& w = c.window;
    const double margin = 0.02 * std::max(w.width(), w.height());
    const double vx = w.xmin() - margin, vy = -(w.ymax() + margin);
    const double vw = w.width() + 2.0 * margin, vh = w.height() + 2.0 * margin;
    const double stroke = 0.002 * std::max(vw, vh);
    const double px_w = 800.0, px_h = std::round(800.0 * vh / vw);
    const auto f = format_double;

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + f(px_w) + "\" height=\"" + f(px_h) +
         "\" viewBox=\"" + f(vx) + " " + f(vy) + " " + f(vw) + " " + f(vh) + "\">\n";
    s += "<g transform=\"scale(1,-1)\" stroke-width=\"" + f(stroke) + "\">\n";
    s += "<rect x=\"" + f(w.xmin()) + "\" y=\"" + f(w.ymin()) + "\" width=\"" + f(w.width()) + "\" height=\"" +
         f(w.height()) + "\" fill=\"none\" stroke=\"black\"/>\n";
    for (const Grain& g : c.grains) {
        const double deg = g.V * 180.0 / std::numbers::pi;
        s += "<ellipse cx=\"" + f(g.center.x) + "\" cy=\"" + f(g.center.y) + "\" rx=\"" + f(g.semi_major()) +
             "\" ry=\"" + f(g.semi_minor()) + "\" transform=\"rotate(" + f(deg) + " " + f(g.center.x) + " " +
             f(g.center.y) + ")\" fill=\"#3b6ea5\" fill-opacity=\"0.35\" stroke=\"#1d3857\"/>\n";
    }
    s += "</g>\n</svg>\n";
    return s;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Simulation lab for the Poisson Boolean model of (u, rho)-ellipses.\n"
                 "Lengths are in units of the grain semi-minor axis (which is 1)."};
    app.name("ellipseperc");
    app.require_subcommand(1);
    const int threads = default_thread_count();

    // sample / render
    ModelFlags sample_m;
    EventFlags sample_g;
    std::uint64_t sample_seed = 1;
    std::string sample_out;
    auto* sample = app.add_subcommand("sample", "Sample the grains hitting box(l, k) and write the configuration as JSON");
    add_model_flags(sample, sample_m);
    sample->add_option("--l", sample_g.l, "window height [length]")->capture_default_str();
    sample->add_option("--k", sample_g.k, "window aspect ratio, width = l*k [dimensionless]")->capture_default_str();
    sample->add_option("--seed", sample_seed, "seed [integer]")->capture_default_str();
    sample->add_option("--trunc-radius", sample_g.trunc_radius,
                       "centre-truncation radius about the window centre; 0 = exact hit process [length]")
        ->capture_default_str();
    sample->add_option("--out", sample_out, "configuration JSON path; stdout when omitted [file]");

    ModelFlags render_m;
    EventFlags render_g;
    std::uint64_t render_seed = 1;
    std::string render_config, render_out;
    auto* render = app.add_subcommand("render", "Render a configuration (from --config, or sampled from the flags) as SVG");
    render->add_option("--config", render_config, "configuration JSON written by 'sample' [file]")
        ->check(CLI::ExistingFile);
    add_model_flags(render, render_m);
    render->add_option("--l", render_g.l, "window height when sampling [length]")->capture_default_str();
    render->add_option("--k", render_g.k, "window aspect ratio when sampling [dimensionless]")->capture_default_str();
    render->add_option("--seed", render_seed, "seed when sampling [integer]")->capture_default_str();
    render->add_option("--out", render_out, "SVG path; stdout when omitted [file]");

    // estimate
    ModelFlags est_m;
    EventFlags est_g;
    std::int64_t est_n = 1000;
    std::uint64_t est_seed = 1;
    double est_level = 0.95;
    std::string est_out, est_format;
    auto* est = app.add_subcommand("estimate", "Estimate an event probability with a Wilson interval");
    est->add_option("--event", est_g.event, "event name")
        ->required()
        ->check(CLI::IsMember({"covered_lr", "covered_tb", "vacant_lr", "one_ellipse_lr", "circuit3", "point_covered",
                               "disk_covered", "annulus_conn", "vacant_annulus_circuit"}));
    add_model_flags(est, est_m);
    add_geometry_flags(est, est_g, false);
    add_run_flags(est, est_n, est_seed, &est_level);
    est->add_option("--format", est_format, "csv | json; default from the --out extension [-]")
        ->check(CLI::IsMember({"csv", "json"}));
    est->add_option("--out", est_out, "output path; stdout when omitted [file]");

    // scan
    ModelFlags scan_m;
    EventFlags scan_g;
    std::vector<double> scan_alpha{2.0}, scan_u{0.1}, scan_l{10.0}, scan_k{1.0};
    std::int64_t scan_n = 1000;
    std::uint64_t scan_seed = 1;
    double scan_level = 0.95;
    std::string scan_out;
    auto* sc = app.add_subcommand("scan", "Estimate one event over an (alpha, u, l, k) grid; row g uses seed + g");
    sc->add_option("--event", scan_g.event, "event name")
        ->required()
        ->check(CLI::IsMember({"covered_lr", "covered_tb", "vacant_lr", "one_ellipse_lr", "circuit3", "point_covered",
                               "disk_covered", "annulus_conn", "vacant_annulus_circuit"}));
    sc->add_option("--alpha", scan_alpha, "comma-separated pareto tail exponents [dimensionless]")
        ->delimiter(',')
        ->capture_default_str();
    sc->add_option("--u", scan_u, "comma-separated centre intensities [grains per unit area]")
        ->delimiter(',')
        ->capture_default_str();
    sc->add_option("--l", scan_l, "comma-separated box heights [length]")->delimiter(',')->capture_default_str();
    sc->add_option("--k", scan_k, "comma-separated box aspect ratios [dimensionless]")
        ->delimiter(',')
        ->capture_default_str();
    sc->add_option("--grain", scan_m.grain, "grain shape: ellipse | disk [-]")
        ->check(CLI::IsMember({"ellipse", "disk"}))
        ->capture_default_str();
    add_geometry_flags(sc, scan_g, true);
    add_run_flags(sc, scan_n, scan_seed, &scan_level);
    sc->add_option("--out", scan_out, "CSV path; stdout when omitted [file]");

    // lln
    ModelFlags lln_m;
    double lln_eps = 0.1;
    std::vector<double> lln_list{8, 16, 32, 64};
    std::int64_t lln_reps = 1000;
    std::uint64_t lln_seed = 1;
    std::string lln_out;
    auto* lln = app.add_subcommand("lln", "Mean and variance of the number of grains centred in B(n) that cover B(0, eps)");
    add_model_flags(lln, lln_m);
    lln->add_option("--eps", lln_eps, "radius of the covered disk, in [0, 1/2) [length]")->capture_default_str();
    lln->add_option("--n-list", lln_list, "comma-separated centre-region radii n [length]")
        ->delimiter(',')
        ->capture_default_str();
    lln->add_option("--n", lln_reps, "replicates [count]")->capture_default_str();
    lln->add_option("--seed", lln_seed, "base seed [integer]")->capture_default_str();
    lln->add_option("--out", lln_out, "CSV path (n,mean,variance); stdout when omitted [file]");

    // corr
    ModelFlags corr_m;
    EventFlags corr_g;
    std::string corr_event_b;
    double corr_wx2 = 10.0, corr_wy2 = 0.0;
    std::int64_t corr_n = 1000;
    std::uint64_t corr_seed = 1;
    double corr_level = 0.95;
    std::string corr_out;
    const auto corr_events = CLI::IsMember({"covered_lr", "covered_tb", "vacant_lr", "one_ellipse_lr", "point_covered",
                                            "disk_covered", "annulus_conn", "vacant_annulus_circuit"});
    auto* corr = app.add_subcommand("corr", "Covariance of two events evaluated on one shared configuration");
    corr->add_option("--event", corr_g.event, "first event")->required()->check(corr_events);
    corr->add_option("--event-b", corr_event_b, "second event; defaults to --event")->check(corr_events);
    add_model_flags(corr, corr_m);
    add_geometry_flags(corr, corr_g, false);
    corr->add_option("--wx2", corr_wx2, "x of the second event's target point [length]")->capture_default_str();
    corr->add_option("--wy2", corr_wy2, "y of the second event's target point [length]")->capture_default_str();
    add_run_flags(corr, corr_n, corr_seed, &corr_level);
    corr->add_option("--out", corr_out, "JSON path; stdout when omitted [file]");

    // recursion
    double rec_alpha = 3.0, rec_c7 = 2.0;
    int rec_kmax = 200;
    std::optional<double> rec_u;
    std::string rec_out;
    auto* rec = app.add_subcommand("recursion", "Compute (k0, u0) and check q_k <= exp(-2(alpha - 2) k) up to kmax");
    rec->add_option("--alpha", rec_alpha, "tail exponent, > 2 [dimensionless]")->capture_default_str();
    rec->add_option("--c7", rec_c7, "recursion constant C7 > 0 [dimensionless]")->capture_default_str();
    rec->add_option("--kmax", rec_kmax, "last scale index checked [count]")->capture_default_str();
    rec->add_option("--u", rec_u, "intensity to check; defaults to the computed u0 [grains per unit area]");
    rec->add_option("--out", rec_out, "JSON path; stdout when omitted [file]");

    // fractal
    double fr_p = 0.9;
    int fr_N = 2, fr_depth = 4;
    std::int64_t fr_n = 100;
    std::uint64_t fr_seed = 1;
    std::string fr_out;
    auto* fr = app.add_subcommand("fractal", "Fractal percolation crossing frequency");
    fr->add_option("--p", fr_p, "retention probability in [0, 1] [probability]")->capture_default_str();
    fr->add_option("--N", fr_N, "subdivision factor per side, >= 2 [count]")->capture_default_str();
    fr->add_option("--depth", fr_depth, "number of levels, >= 1 [count]")->capture_default_str();
    add_run_flags(fr, fr_n, fr_seed, nullptr);
    fr->add_option("--out", fr_out, "JSON path; stdout when omitted [file]");

    // removal
    ModelFlags rm_m;
    rm_m.u = 0.3;
    double rm_l = 8.0;
    std::uint64_t rm_seed = 1;
    std::string rm_out;
    auto* rm = app.add_subcommand("removal", "One realization of the dyadic removal process on [-l, l] x [-l/2, l/2]");
    add_model_flags(rm, rm_m);
    rm->add_option("--l", rm_l, "scale l > 2; the box is 2l by l [length]")->capture_default_str();
    rm->add_option("--seed", rm_seed, "seed; level n uses substream (seed, n) [integer]")->capture_default_str();
    rm->add_option("--out", rm_out, "JSON path; stdout when omitted [file]");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (app.got_subcommand(sample)) {
            const GrainModel model = resolve_model(sample_m);
            require_positive(sample_g.l, "--l");
            require_positive(sample_g.k, "--k");
            const Box window = make_box(sample_g.l, sample_g.k);
            Configuration config;
            if (sample_g.trunc_radius > 0.0) {
                config = sample_truncated_process(window, model.u, model.law, model.kind, sample_g.trunc_radius,
                                                  sample_seed)
                             .first;
            } else {
                if (sample_g.trunc_radius < 0.0) throw DomainError("--trunc-radius must be >= 0");
                require_exact_sampling(model);
                config = sample_hitting_process(window, model.u, model.law, model.kind, sample_seed);
            }
            emit(sample_out, serialize(config), out);
        } else if (app.got_subcommand(render)) {
            Configuration config;
            if (!render_config.empty()) {
                config = parse_configuration(read_file(render_config));
            } else {
                const GrainModel model = resolve_model(render_m);
                require_positive(render_g.l, "--l");
                require_positive(render_g.k, "--k");
                require_exact_sampling(model);
                config = sample_hitting_process(make_box(render_g.l, render_g.k), model.u, model.law, model.kind,
                                                render_seed);
            }
            emit(render_out, render_svg(config), out);
        } else if (app.got_subcommand(est)) {
            const EventKind event = event_from_string(est_g.event);
            const EventParams params = make_params(est_g, resolve_model(est_m));
            validate_event_params(event, params);
            const EstimateResult r = estimate(event, params, est_n, est_seed, est_level, threads);
            emit(est_out, wants_json(est_format, est_out) ? to_json(r).dump(2) + "\n" : csv_header() + "\n" + csv_row(r) + "\n",
                 out);
        } else if (app.got_subcommand(sc)) {
            const EventKind event = event_from_string(scan_g.event);
            ModelFlags m = scan_m;
            m.u = 0.0;
            EventParams base = make_params(scan_g, resolve_model(m));
            if (base.trunc_radius < 0.0) throw DomainError("--trunc-radius must be >= 0");
            if (scan_n < 1) throw DomainError("--n must be >= 1, got " + std::to_string(scan_n));
            const auto rows = scan(event, base, {scan_alpha, scan_u, scan_l, scan_k}, scan_n, scan_seed, scan_level, threads);
            std::string csv = csv_header() + ",error\n";
            for (const auto& row : rows) csv += csv_row(row.result) + "," + csv_quote(row.error) + "\n";
            emit(scan_out, csv, out);
        } else if (app.got_subcommand(lln)) {
            const GrainModel model = resolve_model(lln_m);
            const auto rows = lln_counts(lln_eps, model, lln_list, lln_reps, lln_seed, threads);
            std::string csv = "n,mean,variance\n";
            for (const auto& r : rows)
                csv += format_double(r.n) + "," + format_double(r.mean) + "," + format_double(r.variance) + "\n";
            emit(lln_out, csv, out);
        } else if (app.got_subcommand(corr)) {
            const EventKind ea = event_from_string(corr_g.event);
            const EventKind eb = event_from_string(corr_event_b.empty() ? corr_g.event : corr_event_b);
            const EventParams pa = make_params(corr_g, resolve_model(corr_m));
            EventParams pb = pa;
            pb.w = {corr_wx2, corr_wy2};
            validate_event_params(ea, pa);
            validate_event_params(eb, pb);
            const CovarianceResult c = covariance(ea, pa, eb, pb, corr_n, corr_seed, corr_level, threads);
            json j = {{"event_a", to_string(ea)},
                      {"event_b", to_string(eb)},
                      {"wa", {pa.w.x, pa.w.y}},
                      {"wb", {pb.w.x, pb.w.y}},
                      {"n", c.n},
                      {"seed", corr_seed},
                      {"level", corr_level},
                      {"mean_a", c.mean_a},
                      {"mean_b", c.mean_b},
                      {"cov", c.cov},
                      {"ci_lo", c.ci_lo},
                      {"ci_hi", c.ci_hi}};
            emit(corr_out, j.dump(2) + "\n", out);
        } else if (app.got_subcommand(rec)) {
            emit(rec_out, render_recursion(rec_c7, rec_alpha, rec_u, rec_kmax), out);
        } else if (app.got_subcommand(fr)) {
            if (fr_n < 1) throw DomainError("--n must be >= 1, got " + std::to_string(fr_n));
            std::vector<std::uint8_t> crossed(static_cast<std::size_t>(fr_n), 0);
            parallel_for(fr_n, threads, [&](std::int64_t r) {
                Rng rng = make_stream(fr_seed, {static_cast<std::uint64_t>(r)});
                crossed[static_cast<std::size_t>(r)] = fractal_percolation(fr_p, fr_N, fr_depth, rng).crossing;
            });
            const auto successes = std::count(crossed.begin(), crossed.end(), std::uint8_t{1});
            const auto [lo, hi] = wilson_ci(successes, fr_n);
            json j = {{"p", fr_p},
                      {"N", fr_N},
                      {"depth", fr_depth},
                      {"n", fr_n},
                      {"seed", fr_seed},
                      {"crossings", successes},
                      {"phat", static_cast<double>(successes) / static_cast<double>(fr_n)},
                      {"ci_lo", lo},
                      {"ci_hi", hi}};
            emit(fr_out, j.dump(2) + "\n", out);
        } else if (app.got_subcommand(rm)) {
            const GrainModel model = resolve_model(rm_m);
            const RemovalResult r = removal_process(rm_l, model.u, model.law, rm_seed, model.kind);
            emit(rm_out, to_json(r).dump(2) + "\n", out);
        }
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitModel;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}

}  // namespace ellperc::cli
