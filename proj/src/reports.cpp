#include "normgeom/reports.hpp"

#include <cmath>
#include <cstdio>

namespace normgeom {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_optional(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

namespace {

json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

json optional_number(const std::optional<double>& v) { return v ? number(*v) : json(nullptr); }

}  // namespace

json to_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(number(v[i]));
  return out;
}

json to_json(const Matrix& m) {
  json out = json::array();
  for (Index r = 0; r < m.rows(); ++r) out.push_back(to_json(Vector(m.row(r).transpose())));
  return out;
}

json to_json(const VnjEstimate& e) {
  json out = json::object();
  out["m_lower"] = number(e.m_lower);
  out["epsilon"] = number(e.epsilon);
  out["witness_a"] = to_json(e.witness_a);
  out["witness_b"] = to_json(e.witness_b);
  out["samples_used"] = e.samples_used;
  out["refinement_steps"] = e.refinement_steps;
  return out;
}

json to_json(const JamesEstimate& e) {
  json out = json::object();
  out["j_lower"] = number(e.j_lower);
  out["witness_x"] = to_json(e.witness_x);
  out["witness_y"] = to_json(e.witness_y);
  out["samples_used"] = e.samples_used;
  out["refinement_steps"] = e.refinement_steps;
  return out;
}

json to_json(const OrthoResult& r) {
  json out = json::object();
  out["y"] = to_json(r.y);
  out["residuals"] = to_json(r.residuals);
  out["residual_max"] = number(r.residual_max);
  out["starts_used"] = r.starts_used;
  return out;
}

json to_json(const BoundValues& b) {
  json out = json::object();
  out["n"] = b.n;
  out["epsilon"] = number(b.epsilon);
  out["beta_n"] = number(b.beta_n);
  out["kn_linear"] = number(b.kn_linear);
  out["linear_2d"] = number(b.linear_2d);
  out["bound_2d"] = optional_number(b.bound_2d);
  return out;
}

json to_json(const LinearMapReport& r) {
  json out = json::object();
  out["matrix"] = to_json(r.matrix);
  out["op_norm"] = number(r.op_norm);
  out["inv_op_norm"] = number(r.inv_op_norm);
  out["distortion"] = number(r.distortion);
  out["op_witness"] = to_json(r.op_witness);
  out["inv_witness"] = to_json(r.inv_witness);
  json deltas = json::array();
  for (double d : r.per_level_delta) deltas.push_back(number(d));
  out["per_level_delta"] = std::move(deltas);
  json ops = json::array(), invs = json::array();
  for (double v : r.level_op_norm) ops.push_back(number(v));
  for (double v : r.level_inv_op_norm) invs.push_back(number(v));
  out["level_op_norm"] = std::move(ops);
  out["level_inv_op_norm"] = std::move(invs);
  out["epsilon_used"] = optional_number(r.epsilon_used);
  out["bounds"] = r.bounds ? to_json(*r.bounds) : json(nullptr);
  out["search_failed"] = r.search_failed;
  return out;
}

json to_json(const BoundCheckReport& r) {
  json out = json::object();
  out["lemma_id"] = std::string(lemma_name(r.lemma));
  out["samples"] = r.samples;
  out["violations"] = r.violations;
  out["worst_margin"] = number(r.worst_margin);
  json w = json::array();
  for (double v : r.worst_witness) w.push_back(number(v));
  out["worst_witness"] = std::move(w);
  out["epsilon_used"] = number(r.epsilon_used);
  return out;
}

std::string_view epsilon_source_name(EpsilonSource s) {
  switch (s) {
    case EpsilonSource::Analytic:
      return "analytic";
    case EpsilonSource::Heuristic:
      return "heuristic";
    case EpsilonSource::Given:
      return "given";
  }
  return "given";
}

std::string csv_row(std::string_view space_id, const VnjEstimate& e) {
  return std::string(space_id) + "," + format_double(e.m_lower) + "," + format_double(e.epsilon) + "," +
         std::to_string(e.samples_used) + "," + std::to_string(e.refinement_steps);
}

std::string csv_row(std::string_view space_id, const LinearMapReport& r) {
  const std::string n = std::to_string(r.matrix.cols());
  const std::string eps = r.epsilon_used ? format_double(*r.epsilon_used) : std::string();
  const std::string kn = r.bounds ? format_double(r.bounds->kn_linear) : std::string();
  const std::string b2 = r.bounds ? format_optional(r.bounds->bound_2d) : std::string();
  return std::string(space_id) + "," + n + "," + eps + "," + format_double(r.distortion) + "," + kn + "," + b2;
}

std::string csv_row(std::string_view space_id, const BoundCheckReport& r, EpsilonSource source) {
  return std::string(lemma_name(r.lemma)) + "," + std::string(space_id) + "," + format_double(r.epsilon_used) + "," +
         std::string(epsilon_source_name(source)) + "," + std::to_string(r.samples) + "," +
         std::to_string(r.violations) + "," + format_double(r.worst_margin);
}

}  // namespace normgeom
