#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "esd/qstate.hpp"

namespace esd {

/// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

/// {"matrix": [[[re, im] x4] x4]}, row-major.
nlohmann::json state_to_json(const DensityMatrix& rho);
/// Throws BadStateFile on schema errors, validation errors as themselves.
DensityMatrix state_from_json(const nlohmann::json& j);
DensityMatrix read_state_file(const std::filesystem::path& path);

/// A path ending in .json (or naming an existing file) is read as a state
/// file, anything else is looked up as a preset.
DensityMatrix resolve_state(std::string_view source);

}  // namespace esd
