#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "wpi/ends.hpp"
#include "wpi/profiles.hpp"
#include "wpi/warped.hpp"
#include "wpi/weights.hpp"

namespace wpi {

/// CSV with two numeric columns (t, value), optional header, strictly
/// increasing t. Errors carry 1-based line numbers.
ScalarProfile read_profile_csv(const std::string& path);

/// Writes columns of equal length under the given header names, "%.12g".
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

/// Minimal sparkline: a single polyline scaled into a fixed viewBox.
void write_svg_sparkline(const std::string& path, const std::vector<double>& xs,
                         const std::vector<double>& ys);

/// Scalar-function spec: {"builtin": name, ...params} or {"csv": path},
/// with an optional {"domain": {"t_lo", "t_hi", "lo_infinite", "hi_infinite"}}.
ScalarProfile profile_from_json(const nlohmann::json& spec, const std::string& context);

/// {"n", "domain": {"kind", "t_lo", "t_hi"}, "eta": fn-spec,
///  "fiber": {"C_N", "V_N", "K_bar"?, "ric_bar"?, "compact"?}}
WarpedModel model_from_json(const nlohmann::json& spec);

/// {"source": "hardy"|"cartan_hadamard"|"green_model"|"minimal"|"natural_warp"|"user", ...}
WeightProfile weight_from_json(const nlohmann::json& spec, const WarpedModel* model);

/// {"A": fn-spec, "r0", "label"?}
EndProfile end_from_json(const nlohmann::json& spec);

std::string format_double(double v);

}  // namespace wpi
