#include "normgeom/norm_json.hpp"

#include <cmath>
#include <set>
#include <string>

namespace normgeom {

using nlohmann::json;

namespace {

void reject_unknown(const json& doc, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : doc.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown field '" + key + "' in " + where);
  }
}

const json& require(const json& doc, const std::string& key, const std::string& where) {
  if (!doc.contains(key)) throw ConfigError("missing field '" + key + "' in " + where);
  return doc.at(key);
}

double parse_number(const json& v, const std::string& field) {
  if (!v.is_number()) throw ConfigError("field '" + field + "' must be a number");
  return v.get<double>();
}

double parse_p(const json& v) {
  if (v.is_string()) {
    if (v.get<std::string>() == "inf") return kInfinity;
    throw ConfigError("field 'p' must be a number or \"inf\"");
  }
  const double p = parse_number(v, "p");
  if (!(p >= 1.0)) throw ConfigError("field 'p' must be >= 1");
  return p;
}

json emit_p(double p) { return std::isinf(p) ? json("inf") : json(p); }

Vector parse_vector(const json& v, const std::string& field) {
  if (!v.is_array() || v.empty()) throw ConfigError("field '" + field + "' must be a non-empty array");
  Vector out(static_cast<Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Index>(i)] = parse_number(v[i], field);
  return out;
}

Matrix parse_rows(const json& v, const std::string& field) {
  if (!v.is_array() || v.empty()) throw ConfigError("field '" + field + "' must be a non-empty array of rows");
  const std::size_t cols = v[0].is_array() ? v[0].size() : 0;
  if (cols == 0) throw ConfigError("field '" + field + "' rows must be non-empty arrays");
  Matrix out(static_cast<Index>(v.size()), static_cast<Index>(cols));
  for (std::size_t r = 0; r < v.size(); ++r) {
    const Vector row = parse_vector(v[r], field);
    if (static_cast<std::size_t>(row.size()) != cols) throw ConfigError("field '" + field + "' has ragged rows");
    out.row(static_cast<Index>(r)) = row.transpose();
  }
  return out;
}

template <class F>
auto wrap_invalid(F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

NormSpec norm_spec_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("norm spec must be an object");
  const json& kind_node = require(doc, "kind", "norm spec");
  if (!kind_node.is_string()) throw ConfigError("field 'kind' must be a string");
  const std::string kind = kind_node.get<std::string>();

  if (kind == "pnorm") {
    reject_unknown(doc, {"kind", "p", "dim"}, "pnorm spec");
    const double p = parse_p(require(doc, "p", "pnorm spec"));
    return wrap_invalid([&] { return NormSpec::pnorm(p); });
  }
  if (kind == "weighted_pnorm") {
    reject_unknown(doc, {"kind", "p", "weights", "dim"}, "weighted_pnorm spec");
    const double p = parse_p(require(doc, "p", "weighted_pnorm spec"));
    Vector w = parse_vector(require(doc, "weights", "weighted_pnorm spec"), "weights");
    return wrap_invalid([&] { return NormSpec::weighted_pnorm(p, std::move(w)); });
  }
  if (kind == "polytope") {
    reject_unknown(doc, {"kind", "functionals", "dim"}, "polytope spec");
    Matrix f = parse_rows(require(doc, "functionals", "polytope spec"), "functionals");
    return wrap_invalid([&] { return NormSpec::polytope(std::move(f)); });
  }
  if (kind == "blend") {
    reject_unknown(doc, {"kind", "blend", "dim"}, "blend spec");
    const json& b = require(doc, "blend", "blend spec");
    if (!b.is_object()) throw ConfigError("field 'blend' must be an object");
    reject_unknown(b, {"left", "right", "t"}, "blend");
    NormSpec left = norm_spec_from_json(require(b, "left", "blend"));
    NormSpec right = norm_spec_from_json(require(b, "right", "blend"));
    const double t = parse_number(require(b, "t", "blend"), "t");
    return wrap_invalid([&] { return NormSpec::blend(std::move(left), std::move(right), t); });
  }
  throw ConfigError("unknown norm kind '" + kind + "'");
}

json norm_spec_to_json(const NormSpec& spec, Index dim) {
  json out = json::object();
  switch (spec.kind()) {
    case NormKind::PNorm:
      out["kind"] = "pnorm";
      out["p"] = emit_p(spec.p());
      break;
    case NormKind::WeightedPNorm: {
      out["kind"] = "weighted_pnorm";
      out["p"] = emit_p(spec.p());
      json w = json::array();
      for (Index i = 0; i < spec.weights().size(); ++i) w.push_back(spec.weights()[i]);
      out["weights"] = std::move(w);
      break;
    }
    case NormKind::PolytopeGauge: {
      out["kind"] = "polytope";
      json rows = json::array();
      const Matrix& f = spec.functionals();
      for (Index r = 0; r < f.rows(); ++r) {
        json row = json::array();
        for (Index c = 0; c < f.cols(); ++c) row.push_back(f(r, c));
        rows.push_back(std::move(row));
      }
      out["functionals"] = std::move(rows);
      break;
    }
    case NormKind::Blend:
      out["kind"] = "blend";
      out["blend"] = {{"left", norm_spec_to_json(spec.left(), dim)},
                      {"right", norm_spec_to_json(spec.right(), dim)},
                      {"t", spec.blend_t()}};
      break;
  }
  out["dim"] = dim;
  return out;
}

Space space_from_json(const json& doc) {
  NormSpec spec = norm_spec_from_json(doc);
  Index dim = 0;
  if (doc.contains("dim")) {
    const json& d = doc.at("dim");
    if (!d.is_number_integer() || d.get<long long>() < 1) throw ConfigError("field 'dim' must be a positive integer");
    dim = d.get<Index>();
  } else if (const auto implied = spec.implied_dim()) {
    dim = *implied;
  } else {
    throw ConfigError("missing field 'dim' in norm spec");
  }
  return wrap_invalid([&] { return Space(dim, std::move(spec)); });
}

json space_to_json(const Space& space) { return norm_spec_to_json(space.spec(), space.dim()); }

}  // namespace normgeom
