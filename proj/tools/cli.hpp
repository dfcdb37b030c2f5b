#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "ellperc/configuration.hpp"

namespace ellperc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitModel = 3;

/// Parses argv (argv[0] is the program name), runs one subcommand and writes
/// its artifacts. Diagnostics go to err, help and stdout tables to out.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// SVG 1.1 document: the window rectangle, then one <ellipse> per grain in
/// sampling order, in a y-up coordinate frame.
std::string render_svg(const Configuration& config);

/// Writes to a sibling temporary file and renames it over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace ellperc::cli
