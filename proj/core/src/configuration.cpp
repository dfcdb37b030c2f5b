#include "ellperc/configuration.hpp"

#include "ellperc/errors.hpp"

namespace ellperc {

using nlohmann::json;

std::string_view to_string(TruncationMode mode) {
    switch (mode) {
        case TruncationMode::exact: return "exact";
        case TruncationMode::truncated: return "truncated";
        case TruncationMode::center_region: return "center_region";
    }
    return "exact";
}

TruncationMode truncation_mode_from_string(std::string_view name) {
    if (name == "exact") return TruncationMode::exact;
    if (name == "truncated") return TruncationMode::truncated;
    if (name == "center_region") return TruncationMode::center_region;
    throw DomainError("truncation mode must be exact, truncated or center_region, got '" + std::string(name) + "'");
}

Configuration make_scene(Box window, std::vector<Grain> grains, GrainKind kind) {
    Configuration c;
    c.window = window;
    c.grain_kind = kind;
    c.grains = std::move(grains);
    return c;
}

json law_to_json(const AxisLaw& law) {
    switch (law.kind()) {
        case AxisLaw::Kind::pareto: return {{"kind", "pareto"}, {"alpha", law.parameter()}};
        case AxisLaw::Kind::point_mass: return {{"kind", "pointmass"}, {"r", law.parameter()}};
        case AxisLaw::Kind::piecewise: {
            json pieces = json::array();
            for (const auto& p : law.pieces()) pieces.push_back(json::array({p.threshold, p.alpha}));
            return {{"kind", "piecewise"}, {"pieces", pieces}};
        }
        case AxisLaw::Kind::derived: break;
    }
    throw DomainError("only pareto, pointmass and piecewise laws can be serialized");
}

AxisLaw law_from_json(const json& j) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "pareto") return AxisLaw::pareto(j.at("alpha").get<double>());
    if (kind == "pointmass") return AxisLaw::point_mass(j.at("r").get<double>());
    if (kind == "piecewise") {
        std::vector<LawPiece> pieces;
        for (const auto& p : j.at("pieces")) pieces.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        return AxisLaw::piecewise(std::move(pieces));
    }
    throw DomainError("law kind must be pareto, pointmass or piecewise, got '" + kind + "'");
}

json to_json(const Configuration& c) {
    json grains = json::array();
    for (const auto& g : c.grains) grains.push_back({{"x", g.center.x}, {"y", g.center.y}, {"R", g.R}, {"V", g.V}});
    return {
        {"window", {{"l", c.window.l}, {"k", c.window.k}, {"cx", c.window.center.x}, {"cy", c.window.center.y}}},
        {"u", c.u},
        {"law", law_to_json(c.law)},
        {"grain_kind", std::string(to_string(c.grain_kind))},
        {"truncation",
         {{"mode", std::string(to_string(c.truncation.mode))},
          {"radius", c.truncation.radius},
          {"error_bound", c.truncation.error_bound}}},
        {"seed", c.seed},
        {"grains", grains},
    };
}

Configuration configuration_from_json(const json& j) {
    try {
        Configuration c;
        const auto& w = j.at("window");
        c.window = make_box(w.at("l").get<double>(), w.at("k").get<double>(),
                            {w.value("cx", 0.0), w.value("cy", 0.0)});
        c.u = j.at("u").get<double>();
        if (!(c.u >= 0.0)) throw DomainError("configuration: u must be >= 0");
        c.law = law_from_json(j.at("law"));
        c.grain_kind = grain_kind_from_string(j.value("grain_kind", std::string("ellipse")));
        if (j.contains("truncation")) {
            const auto& t = j.at("truncation");
            c.truncation.mode = truncation_mode_from_string(t.at("mode").get<std::string>());
            c.truncation.radius = t.value("radius", 0.0);
            c.truncation.error_bound = t.value("error_bound", 0.0);
        }
        c.seed = j.value("seed", std::uint64_t{0});
        for (const auto& g : j.at("grains")) {
            const Point center{g.at("x").get<double>(), g.at("y").get<double>()};
            const double R = g.at("R").get<double>();
            c.grains.push_back(c.grain_kind == GrainKind::disk ? make_disk(center, R)
                                                               : make_ellipse(center, R, g.value("V", 0.0)));
        }
        return c;
    } catch (const json::exception& e) {
        throw DomainError(std::string("configuration JSON: ") + e.what());
    }
}

std::string serialize(const Configuration& config) { return to_json(config).dump(2) + "\n"; }

Configuration parse_configuration(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw DomainError(std::string("configuration JSON: ") + e.what());
    }
    return configuration_from_json(j);
}

}  // namespace ellperc
