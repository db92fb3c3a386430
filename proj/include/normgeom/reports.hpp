#pragma once

#include "normgeom/isometry.hpp"
#include "normgeom/lemmas.hpp"
#include "normgeom/ortho.hpp"
#include "normgeom/vnj.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace normgeom {

/// %.17g: round-trips every finite double.
std::string format_double(double v);
std::string format_optional(const std::optional<double>& v);  // blank if empty

nlohmann::json to_json(const Vector& v);
nlohmann::json to_json(const Matrix& m);  // row-major: array of rows
nlohmann::json to_json(const VnjEstimate& e);
nlohmann::json to_json(const JamesEstimate& e);
nlohmann::json to_json(const OrthoResult& r);
nlohmann::json to_json(const BoundValues& b);
nlohmann::json to_json(const LinearMapReport& r);
nlohmann::json to_json(const BoundCheckReport& r);

enum class EpsilonSource { Analytic, Heuristic, Given };
std::string_view epsilon_source_name(EpsilonSource s);

inline constexpr std::string_view kVnjCsvHeader = "space_id,m_lower,epsilon,samples_used,refinement_steps";
inline constexpr std::string_view kBuildCsvHeader = "space_id,n,epsilon,distortion,kn_linear,bound_2d";
inline constexpr std::string_view kLemmaCsvHeader =
    "lemma_id,space_id,epsilon_used,epsilon_source,samples,violations,worst_margin";

std::string csv_row(std::string_view space_id, const VnjEstimate& e);
std::string csv_row(std::string_view space_id, const LinearMapReport& r);
std::string csv_row(std::string_view space_id, const BoundCheckReport& r, EpsilonSource source);

}  // namespace normgeom
