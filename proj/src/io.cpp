#include "esd/io.hpp"

#include <array>
#include <charconv>
#include <fstream>

#include "esd/errors.hpp"

namespace esd {

std::string format_double(double x) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), ptr);
}

nlohmann::json state_to_json(const DensityMatrix& rho) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < 4; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < 4; ++c) row.push_back({rho(r, c).real(), rho(r, c).imag()});
    rows.push_back(row);
  }
  return {{"matrix", rows}};
}

DensityMatrix state_from_json(const nlohmann::json& j) {
  auto bad = [](const std::string& why) { return Error(ErrorCode::BadStateFile, why); };
  if (!j.is_object() || !j.contains("matrix")) throw bad("expected an object with key \"matrix\"");
  const auto& rows = j.at("matrix");
  if (!rows.is_array() || rows.size() != 4) throw bad("\"matrix\" must hold 4 rows");
  Matrix4 m;
  for (std::size_t r = 0; r < 4; ++r) {
    const auto& row = rows[r];
    if (!row.is_array() || row.size() != 4) throw bad("row " + std::to_string(r) + " must hold 4 entries");
    for (std::size_t c = 0; c < 4; ++c) {
      const auto& z = row[c];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
        throw bad("entry (" + std::to_string(r) + "," + std::to_string(c) + ") must be a [re, im] pair");
      m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
    }
  }
  return validate(m);
}

DensityMatrix read_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadStateFile, "cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadStateFile, path.string() + ": " + e.what());
  }
  return state_from_json(j);
}

DensityMatrix resolve_state(std::string_view source) {
  const std::filesystem::path path{std::string(source)};
  std::error_code ec;
  if (path.extension() == ".json" || std::filesystem::is_regular_file(path, ec)) return read_state_file(path);
  return preset(source);
}

}  // namespace esd
