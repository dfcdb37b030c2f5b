#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "ellperc/axis_law.hpp"
#include "ellperc/geometry.hpp"

namespace ellperc {

/// exact: every grain hitting the window is present.
/// truncated: grains centred within `radius` of the window centre and hitting
///   the window; `error_bound` caps the probability that an omitted grain
///   would have hit it.
/// center_region: every grain centred in a stated region (for events that
///   only look at such grains), recorded as `radius` around the window centre
///   or as the window itself when radius is 0.
enum class TruncationMode { exact, truncated, center_region };

std::string_view to_string(TruncationMode mode);
TruncationMode truncation_mode_from_string(std::string_view name);

struct Truncation {
    TruncationMode mode = TruncationMode::exact;
    double radius = 0.0;
    double error_bound = 0.0;

    friend bool operator==(const Truncation&, const Truncation&) = default;
};

/// A finite realization of the model together with everything needed to
/// reproduce it.
struct Configuration {
    Box window;
    double u = 0.0;
    AxisLaw law = AxisLaw::pareto(2.0);
    GrainKind grain_kind = GrainKind::ellipse;
    Truncation truncation;
    std::uint64_t seed = 0;
    std::vector<Grain> grains;

    friend bool operator==(const Configuration&, const Configuration&) = default;
};

/// Configuration with no grains, for hand-built scenes.
Configuration make_scene(Box window, std::vector<Grain> grains, GrainKind kind = GrainKind::ellipse);

nlohmann::json law_to_json(const AxisLaw& law);
AxisLaw law_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Configuration& config);
/// Throws DomainError on a malformed document.
Configuration configuration_from_json(const nlohmann::json& j);

std::string serialize(const Configuration& config);
Configuration parse_configuration(std::string_view text);

}  // namespace ellperc
