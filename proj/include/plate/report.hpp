#pragma once

// Serialization of results: versioned JSON, the sweep CSV, a log-log SVG plot,
// and atomic file output.

#include "plate/ball.hpp"
#include "plate/profile.hpp"
#include "plate/quant.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace plate {

inline constexpr char const *kSchema = "plate-tone/1";

nlohmann::json report_json(SpectralParams const &p);
nlohmann::json report_json(LemmaCheck const &c);
nlohmann::json report_json(BoundReport const &r);
nlohmann::json report_json(SharpnessReport const &r);

// Top-level document: {"schema": "plate-tone/1", "command": ..., "result": ...}.
nlohmann::json document(std::string const &command, nlohmann::json result);

// Columns: eps,area_gap,asymmetry,tone,tone_gap,tone_gap_over_eps2
std::string sharpness_csv(SharpnessReport const &r);

// tone_gap against eps on log axes, with the fitted slope line.
std::string sharpness_svg(SharpnessReport const &r);

// Writes to a temporary file in the same directory, then renames over `path`.
void write_file_atomic(std::string const &path, std::string const &content);

} // namespace plate
