#include "ellperc/axis_law.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "ellperc/errors.hpp"
#include "ellperc/quadrature.hpp"

namespace ellperc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Integral of r^(p-1) over [lo, hi).
double power_integral(double lo, double hi, double p) {
    if (hi <= lo) return 0.0;
    if (std::isinf(hi)) return p < 0.0 ? -std::pow(lo, p) / p : kInf;
    const double span = std::log(hi / lo);
    if (std::abs(p) < 1e-14) return span;
    return std::pow(lo, p) * std::expm1(p * span) / p;
}

double normalizer(const PowerSegment& s) { return power_integral(s.lo, s.hi, -s.beta); }

// Mass of segment s on [a, b).
double segment_mass(const PowerSegment& s, double a, double b) {
    const double x0 = std::max(a, s.lo), x1 = std::min(b, s.hi);
    if (x1 <= x0) return 0.0;
    if (x0 == s.lo && x1 == s.hi) return s.weight;
    return s.weight * power_integral(x0, x1, -s.beta) / normalizer(s);
}

// Point of segment s above which a fraction v of its mass lies.
double segment_quantile(const PowerSegment& s, double v) {
    v = std::clamp(v, 0.0, 1.0);
    const double p = -s.beta;
    double r = 0.0;
    if (std::isinf(s.hi)) {
        r = s.lo * std::pow(v, 1.0 / p);
    } else if (std::abs(p) < 1e-14) {
        r = s.hi * std::pow(s.lo / s.hi, v);
    } else {
        r = std::pow(v * std::pow(s.lo, p) + (1.0 - v) * std::pow(s.hi, p), 1.0 / p);
    }
    return std::clamp(r, s.lo, s.hi);
}

std::string format_number(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

double parse_number(std::string_view text, const std::string& spec) {
    double value = 0.0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size())
        throw DomainError("law spec '" + spec + "': cannot parse number '" + std::string(text) + "'");
    return value;
}

}  // namespace

AxisLaw AxisLaw::from_parts(std::vector<PowerSegment> segments, std::vector<Atom> atoms) {
    double total = 0.0;
    for (const auto& s : segments) total += s.weight;
    for (const auto& a : atoms) total += a.weight;
    if (!(total > 0.0) || !std::isfinite(total)) throw DomainError("axis law: conditioning on a null or infinite mass");
    std::erase_if(segments, [](const PowerSegment& s) { return !(s.weight > 0.0); });
    std::erase_if(atoms, [](const Atom& a) { return !(a.weight > 0.0); });
    for (auto& s : segments) s.weight /= total;
    for (auto& a : atoms) a.weight /= total;
    std::sort(segments.begin(), segments.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
    std::sort(atoms.begin(), atoms.end(), [](const auto& x, const auto& y) { return x.r < y.r; });
    AxisLaw law;
    law.kind_ = Kind::derived;
    law.segments_ = std::move(segments);
    law.atoms_ = std::move(atoms);
    return law;
}

AxisLaw AxisLaw::pareto(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw DomainError("pareto law: alpha must be > 0, got alpha=" + format_number(alpha));
    AxisLaw law;
    law.kind_ = Kind::pareto;
    law.parameter_ = alpha;
    law.segments_ = {PowerSegment{1.0, kInf, alpha, 1.0}};
    return law;
}

AxisLaw AxisLaw::point_mass(double r) {
    if (!(r >= 1.0) || !std::isfinite(r))
        throw DomainError("point-mass law: r must be >= 1, got r=" + format_number(r));
    AxisLaw law;
    law.kind_ = Kind::point_mass;
    law.parameter_ = r;
    law.atoms_ = {Atom{r, 1.0}};
    return law;
}

AxisLaw AxisLaw::piecewise(std::vector<LawPiece> pieces) {
    if (pieces.empty()) throw DomainError("piecewise law: needs at least one piece");
    if (pieces.front().threshold != 1.0) throw DomainError("piecewise law: first threshold must be 1");
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (!(pieces[i].alpha > 0.0) || !std::isfinite(pieces[i].alpha))
            throw DomainError("piecewise law: every alpha must be > 0");
        if (!std::isfinite(pieces[i].threshold) || (i > 0 && !(pieces[i].threshold > pieces[i - 1].threshold)))
            throw DomainError("piecewise law: thresholds must be finite and strictly increasing");
    }
    AxisLaw law;
    law.kind_ = Kind::piecewise;
    law.pieces_ = pieces;
    double s = 1.0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const double lo = pieces[i].threshold;
        if (i + 1 < pieces.size()) {
            const double hi = pieces[i + 1].threshold;
            const double s_next = s * std::pow(hi / lo, -pieces[i].alpha);
            law.segments_.push_back({lo, hi, pieces[i].alpha, s - s_next});
            s = s_next;
        } else {
            law.segments_.push_back({lo, kInf, pieces[i].alpha, s});
        }
    }
    return law;
}

double AxisLaw::tail_exponent() const {
    if (segments_.empty()) return kInf;
    const auto& last = segments_.back();
    if (!std::isinf(last.hi)) return kInf;
    for (const auto& a : atoms_)
        if (a.r > last.lo) return kInf;
    return last.beta;
}

double AxisLaw::survival(double r) const {
    double s = 0.0;
    for (const auto& seg : segments_) {
        if (r >= seg.hi) continue;
        if (r <= seg.lo)
            s += seg.weight;
        else
            s += seg.weight * power_integral(r, seg.hi, -seg.beta) / normalizer(seg);
    }
    for (const auto& a : atoms_)
        if (a.r >= r) s += a.weight;
    return std::min(s, 1.0);
}

double AxisLaw::inverse_survival(double u) const {
    if (!(u > 0.0) || u > 1.0) throw DomainError("inverse survival: u must lie in (0, 1]");
    // Walk the components from the top of the support downwards.
    std::size_t si = segments_.size(), ai = atoms_.size();
    double acc = 0.0;
    double lowest = kInf;
    while (si > 0 || ai > 0) {
        const bool take_segment = si > 0 && (ai == 0 || segments_[si - 1].lo >= atoms_[ai - 1].r);
        if (take_segment) {
            const auto& seg = segments_[--si];
            lowest = std::min(lowest, seg.lo);
            if (u <= acc + seg.weight) return segment_quantile(seg, (u - acc) / seg.weight);
            acc += seg.weight;
        } else {
            const auto& atom = atoms_[--ai];
            lowest = std::min(lowest, atom.r);
            if (u <= acc + atom.weight) return atom.r;
            acc += atom.weight;
        }
    }
    return lowest;
}

double AxisLaw::mass(double lo, double hi) const {
    double m = 0.0;
    for (const auto& seg : segments_) m += segment_mass(seg, lo, hi);
    for (const auto& a : atoms_)
        if (a.r >= lo && a.r < hi) m += a.weight;
    return m;
}

AxisLaw AxisLaw::restricted(double lo, double hi) const {
    if (!(hi > lo)) throw DomainError("axis law restriction: need lo < hi");
    std::vector<PowerSegment> segs;
    for (const auto& seg : segments_) {
        const double x0 = std::max(lo, seg.lo), x1 = std::min(hi, seg.hi);
        if (x1 <= x0) continue;
        segs.push_back({x0, x1, seg.beta, segment_mass(seg, x0, x1)});
    }
    std::vector<Atom> atoms;
    for (const auto& a : atoms_)
        if (a.r >= lo && a.r < hi) atoms.push_back(a);
    double total = 0.0;
    for (const auto& s : segs) total += s.weight;
    for (const auto& a : atoms) total += a.weight;
    if (!(total > 0.0))
        throw DomainError("axis law restriction: the range [" + format_number(lo) + ", " + format_number(hi) +
                          ") has probability 0");
    if (segs.size() == segments_.size() && atoms.size() == atoms_.size() && segs == segments_) return *this;
    return from_parts(std::move(segs), std::move(atoms));
}

AxisLaw AxisLaw::size_biased(double m) const {
    std::vector<PowerSegment> segs;
    for (const auto& seg : segments_) {
        const double w = seg.weight * power_integral(seg.lo, seg.hi, m - seg.beta) / normalizer(seg);
        if (!std::isfinite(w)) throw DomainError("size-biasing: E[R^" + format_number(m) + "] is infinite");
        segs.push_back({seg.lo, seg.hi, seg.beta - m, w});
    }
    std::vector<Atom> atoms;
    for (const auto& a : atoms_) atoms.push_back({a.r, a.weight * std::pow(a.r, m)});
    return from_parts(std::move(segs), std::move(atoms));
}

double AxisLaw::moment(double m) const {
    double total = 0.0;
    for (const auto& seg : segments_) total += seg.weight * power_integral(seg.lo, seg.hi, m - seg.beta) / normalizer(seg);
    for (const auto& a : atoms_) total += a.weight * std::pow(a.r, m);
    return total;
}

double AxisLaw::expectation(const std::function<double(double)>& f) const {
    double total = 0.0;
    for (const auto& seg : segments_) {
        const double scale = seg.weight / normalizer(seg);
        auto integrand = [&](double x) {
            const double dens = scale * std::exp(-seg.beta * x);
            if (dens == 0.0) return 0.0;
            return f(std::exp(x)) * dens;
        };
        total += integrate(integrand, std::log(seg.lo), std::isinf(seg.hi) ? kInf : std::log(seg.hi),
                           kQuadratureRelTol, 1e-300);
    }
    for (const auto& a : atoms_) total += a.weight * f(a.r);
    return total;
}

std::string AxisLaw::spec() const {
    switch (kind_) {
        case Kind::pareto: return "pareto:" + format_number(parameter_);
        case Kind::point_mass: return "pointmass:" + format_number(parameter_);
        case Kind::piecewise: {
            std::string out = "piecewise:";
            for (std::size_t i = 0; i < pieces_.size(); ++i) {
                if (i) out += ',';
                out += format_number(pieces_[i].threshold) + ':' + format_number(pieces_[i].alpha);
            }
            return out;
        }
        case Kind::derived: break;
    }
    throw DomainError("axis law: derived laws have no spec string");
}

AxisLaw AxisLaw::parse(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw DomainError("law spec '" + spec + "': expected pareto:<alpha>, pointmass:<r> or piecewise:<t>:<alpha>,...");
    const std::string head = spec.substr(0, colon);
    const std::string_view body = std::string_view(spec).substr(colon + 1);
    if (head == "pareto") return pareto(parse_number(body, spec));
    if (head == "pointmass") return point_mass(parse_number(body, spec));
    if (head == "piecewise") {
        std::vector<LawPiece> pieces;
        std::size_t start = 0;
        while (start <= body.size()) {
            const auto comma = body.find(',', start);
            const auto item = body.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
            const auto sep = item.find(':');
            if (sep == std::string_view::npos)
                throw DomainError("law spec '" + spec + "': piecewise items are <threshold>:<alpha>");
            pieces.push_back({parse_number(item.substr(0, sep), spec), parse_number(item.substr(sep + 1), spec)});
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        return piecewise(std::move(pieces));
    }
    throw DomainError("law spec '" + spec + "': unknown law '" + head + "'");
}

}  // namespace ellperc
