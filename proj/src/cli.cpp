#include "normgeom/cli.hpp"

#include "normgeom/isometry.hpp"
#include "normgeom/lemmas.hpp"
#include "normgeom/norm_json.hpp"
#include "normgeom/ortho.hpp"
#include "normgeom/parallel.hpp"
#include "normgeom/reports.hpp"
#include "normgeom/vnj.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <variant>

namespace normgeom::cli {

using nlohmann::json;

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { Json, Csv };

struct SweepConfig {
  std::string family;  // "pnorm" | "blend"
  std::vector<double> ps;
  std::vector<double> ts;
  double left_p = 2.0;
  double right_p = 4.0;
  std::vector<int> dims;
};

// Parsed config file plus command-line overrides.
struct RunConfig {
  std::optional<json> space;
  std::string space_id;
  std::optional<std::size_t> budget;
  std::optional<std::size_t> vnj_budget;
  std::optional<std::size_t> samples;
  std::optional<std::size_t> starts;
  std::optional<std::size_t> k;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::optional<unsigned> threads;
  std::vector<std::string> lemmas{"all"};
  std::variant<std::monostate, double, std::string> epsilon;
  std::optional<SweepConfig> sweep;
  std::string out_path;
  std::optional<Format> format;  // sweep defaults to csv, the rest to json
};

std::size_t positive_count(const json& v, const std::string& field) {
  if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError("field '" + field + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

double number_or_inf(const json& v, const std::string& field) {
  if (v.is_string() && v.get<std::string>() == "inf") return kInfinity;
  if (!v.is_number()) throw ConfigError("field '" + field + "' must contain numbers or \"inf\"");
  return v.get<double>();
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw ConfigError("unknown output format '" + s + "'");
}

SweepConfig parse_sweep(const json& doc) {
  if (!doc.is_object()) throw ConfigError("field 'sweep' must be an object");
  static const std::set<std::string> allowed{"family", "p", "t", "left_p", "right_p", "dims"};
  for (const auto& [key, value] : doc.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown field '" + key + "' in sweep");
  }
  SweepConfig s;
  if (!doc.contains("family") || !doc.at("family").is_string()) throw ConfigError("sweep needs a string 'family'");
  s.family = doc.at("family").get<std::string>();
  if (s.family != "pnorm" && s.family != "blend") throw ConfigError("unknown sweep family '" + s.family + "'");
  const auto list = [&](const char* field) {
    std::vector<double> out;
    if (!doc.contains(field)) return out;
    if (!doc.at(field).is_array()) throw ConfigError(std::string("sweep field '") + field + "' must be an array");
    for (const auto& v : doc.at(field)) out.push_back(number_or_inf(v, field));
    return out;
  };
  s.ps = list("p");
  s.ts = list("t");
  for (double p : s.ps) {
    if (!(p >= 1.0)) throw ConfigError("sweep p values must be >= 1");
  }
  for (double t : s.ts) {
    if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("sweep t values must lie in [0, 1]");
  }
  if (doc.contains("left_p")) s.left_p = number_or_inf(doc.at("left_p"), "left_p");
  if (doc.contains("right_p")) s.right_p = number_or_inf(doc.at("right_p"), "right_p");
  if (!(s.left_p >= 1.0) || !(s.right_p >= 1.0)) throw ConfigError("sweep left_p/right_p must be >= 1");
  if (doc.contains("dims")) {
    if (!doc.at("dims").is_array()) throw ConfigError("sweep field 'dims' must be an array");
    for (const auto& v : doc.at("dims")) {
      if (!v.is_number_integer() || v.get<int>() < 1) throw ConfigError("sweep dims must be positive integers");
      s.dims.push_back(v.get<int>());
    }
  }
  return s;
}

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> allowed{"space",   "space_id", "budget", "vnj_budget", "samples",
                                             "starts",  "k",        "seed",   "tol",        "threads",
                                             "lemmas",  "epsilon",  "sweep",  "output"};
  for (const auto& [key, value] : doc.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown field '" + key + "' in config");
  }
  RunConfig c;
  if (doc.contains("space")) c.space = doc.at("space");
  if (doc.contains("space_id")) {
    if (!doc.at("space_id").is_string()) throw ConfigError("field 'space_id' must be a string");
    c.space_id = doc.at("space_id").get<std::string>();
  }
  if (doc.contains("budget")) c.budget = positive_count(doc.at("budget"), "budget");
  if (doc.contains("vnj_budget")) c.vnj_budget = positive_count(doc.at("vnj_budget"), "vnj_budget");
  if (doc.contains("samples")) c.samples = positive_count(doc.at("samples"), "samples");
  if (doc.contains("starts")) c.starts = positive_count(doc.at("starts"), "starts");
  if (doc.contains("k")) c.k = positive_count(doc.at("k"), "k");
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_unsigned()) throw ConfigError("field 'seed' must be an unsigned integer");
    c.seed = doc.at("seed").get<std::uint64_t>();
  }
  if (doc.contains("tol")) {
    if (!doc.at("tol").is_number() || !(doc.at("tol").get<double>() > 0.0)) throw ConfigError("field 'tol' must be a positive number");
    c.tol = doc.at("tol").get<double>();
  }
  if (doc.contains("threads")) c.threads = static_cast<unsigned>(positive_count(doc.at("threads"), "threads"));
  if (doc.contains("lemmas")) {
    const json& l = doc.at("lemmas");
    c.lemmas.clear();
    if (l.is_string()) {
      c.lemmas.push_back(l.get<std::string>());
    } else if (l.is_array()) {
      for (const auto& v : l) {
        if (!v.is_string()) throw ConfigError("field 'lemmas' must contain strings");
        c.lemmas.push_back(v.get<std::string>());
      }
    } else {
      throw ConfigError("field 'lemmas' must be \"all\" or an array of names");
    }
  }
  if (doc.contains("epsilon")) {
    const json& e = doc.at("epsilon");
    if (e.is_number()) {
      if (!(e.get<double>() >= 0.0)) throw ConfigError("field 'epsilon' must be >= 0");
      c.epsilon = e.get<double>();
    } else if (e.is_string() && (e.get<std::string>() == "analytic" || e.get<std::string>() == "heuristic")) {
      c.epsilon = e.get<std::string>();
    } else {
      throw ConfigError("field 'epsilon' must be a number, \"analytic\" or \"heuristic\"");
    }
  }
  if (doc.contains("sweep")) c.sweep = parse_sweep(doc.at("sweep"));
  if (doc.contains("output")) {
    const json& o = doc.at("output");
    if (!o.is_object()) throw ConfigError("field 'output' must be an object");
    for (const auto& [key, value] : o.items()) {
      if (key != "path" && key != "format") throw ConfigError("unknown field '" + key + "' in output");
    }
    if (o.contains("path")) {
      if (!o.at("path").is_string()) throw ConfigError("field 'output.path' must be a string");
      c.out_path = o.at("path").get<std::string>();
    }
    if (o.contains("format")) {
      if (!o.at("format").is_string()) throw ConfigError("field 'output.format' must be a string");
      c.format = parse_format(o.at("format").get<std::string>());
    }
  }
  return c;
}

json read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
}

Space require_space(const RunConfig& c) {
  if (!c.space) throw ConfigError("missing field 'space' in config");
  return space_from_json(*c.space);
}

std::string space_id_for(const RunConfig& c, const Space& space) {
  if (!c.space_id.empty()) return c.space_id;
  return space.spec().label() + "_n" + std::to_string(space.dim());
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open output file '" + c.out_path + "'");
  file << text;
  if (!file.flush()) throw IoError("failed writing output file '" + c.out_path + "'");
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

// ----------------------------------------------------------------------------

int cmd_vnj(const RunConfig& c, std::ostream& out) {
  const Space space = require_space(c);
  const std::string id = space_id_for(c, space);
  const std::size_t budget = c.budget.value_or(10'000);
  const VnjEstimate e = estimate_vnj(space, budget, c.seed);

  if (c.format.value_or(Format::Json) == Format::Csv) {
    emit(c, std::string(kVnjCsvHeader) + "\n" + csv_row(id, e) + "\n", out);
    return kOk;
  }
  json doc = json::object();
  doc["space_id"] = id;
  doc["space"] = space_to_json(space);
  doc["vnj"] = to_json(e);
  doc["james"] = to_json(estimate_james(space, budget, c.seed));
  if (space.spec().is_pure_pnorm() && space.dim() >= 2) {
    doc["clarkson"] = clarkson_vnj(space.spec().p());
  } else {
    doc["clarkson"] = nullptr;
  }
  emit(c, dump(doc), out);
  return kOk;
}

BuildOptions build_options(const RunConfig& c) {
  BuildOptions o;
  o.tol = c.tol.value_or(1e-8);
  o.seed = c.seed;
  o.budget = c.budget.value_or(100'000);
  o.ortho_starts = c.starts.value_or(20);
  o.allow_search_failure = true;
  return o;
}

LinearMapReport build_with_bounds(const Space& space, const RunConfig& c) {
  LinearMapReport r = build_isometry_nd(space, build_options(c));
  const VnjEstimate e = estimate_vnj(space, c.vnj_budget.value_or(10'000), c.seed);
  r.epsilon_used = e.epsilon;
  if (space.dim() >= 2) r.bounds = kn_bound(static_cast<int>(space.dim()), e.epsilon);
  return r;
}

int cmd_build(const RunConfig& c, std::ostream& out) {
  const Space space = require_space(c);
  const std::string id = space_id_for(c, space);
  const LinearMapReport r = build_with_bounds(space, c);

  if (c.format.value_or(Format::Json) == Format::Csv) {
    emit(c, std::string(kBuildCsvHeader) + "\n" + csv_row(id, r) + "\n", out);
  } else {
    json doc = json::object();
    doc["space_id"] = id;
    doc["space"] = space_to_json(space);
    doc["report"] = to_json(r);
    emit(c, dump(doc), out);
  }
  return r.search_failed ? kSearchFailure : kOk;
}

std::vector<LemmaId> selected_lemmas(const RunConfig& c, Index dim) {
  std::vector<LemmaId> ids;
  for (const auto& name : c.lemmas) {
    if (name == "all") {
      for (LemmaId id : all_lemmas()) {
        if (id == LemmaId::InductRatio && dim < 2) continue;
        ids.push_back(id);
      }
      continue;
    }
    const auto id = lemma_from_name(name);
    if (!id) throw ConfigError("unknown lemma '" + name + "'");
    if (*id == LemmaId::InductRatio && dim < 2) throw ConfigError("lemma 'induct_ratio' needs dimension >= 2");
    ids.push_back(*id);
  }
  return ids;
}

std::pair<double, EpsilonSource> resolve_epsilon(const RunConfig& c, const Space& space) {
  if (const double* given = std::get_if<double>(&c.epsilon)) return {*given, EpsilonSource::Given};
  const std::string* mode = std::get_if<std::string>(&c.epsilon);
  const bool analytic_available = space.dim() == 1 || space.spec().is_pure_pnorm();
  if (mode && *mode == "analytic" && !analytic_available) {
    throw ConfigError("no analytic epsilon for this norm; use \"heuristic\" or a number");
  }
  if (analytic_available && !(mode && *mode == "heuristic")) {
    // every one-dimensional norm is a multiple of |x|
    const double eps = space.dim() == 1 ? 0.0 : clarkson_vnj(space.spec().p()) - 1.0;
    return {eps, EpsilonSource::Analytic};
  }
  const VnjEstimate e = estimate_vnj(space, c.vnj_budget.value_or(100'000), c.seed);
  return {e.epsilon * 1.05, EpsilonSource::Heuristic};
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  const Space space = require_space(c);
  const std::string id = space_id_for(c, space);
  const std::vector<LemmaId> ids = selected_lemmas(c, space.dim());
  const auto [epsilon, source] = resolve_epsilon(c, space);
  const std::size_t samples = c.samples.value_or(10'000);

  std::vector<BoundCheckReport> reports;
  for (LemmaId lemma : ids) {
    if (lemma == LemmaId::LinearCombo && c.k) {
      reports.push_back(check_linear_combo(space, epsilon, *c.k, samples, c.seed));
    } else {
      reports.push_back(run_lemma(lemma, space, epsilon, samples, c.seed));
    }
  }

  bool clean = true;
  for (const auto& r : reports) clean = clean && r.violations == 0;

  if (c.format.value_or(Format::Json) == Format::Csv) {
    std::string text = std::string(kLemmaCsvHeader) + "\n";
    for (const auto& r : reports) text += csv_row(id, r, source) + "\n";
    emit(c, text, out);
  } else {
    json doc = json::object();
    doc["space_id"] = id;
    doc["space"] = space_to_json(space);
    doc["epsilon_used"] = epsilon;
    doc["epsilon_source"] = std::string(epsilon_source_name(source));
    json list = json::array();
    for (const auto& r : reports) list.push_back(to_json(r));
    doc["reports"] = std::move(list);
    doc["passed"] = clean;
    emit(c, dump(doc), out);
  }
  return clean ? kOk : kViolations;
}

constexpr std::string_view kSweepHeader =
    "space_id,n,epsilon,clarkson,distortion,identity_distortion,kn_linear,bound_2d,proposition_bound";

int cmd_sweep(const RunConfig& c, std::ostream& out) {
  if (!c.sweep) throw ConfigError("missing field 'sweep' in config");
  const SweepConfig& s = *c.sweep;

  struct Member {
    NormSpec spec;
    std::optional<double> p;  // set for the pnorm family
  };
  std::vector<Member> members;
  if (s.family == "pnorm") {
    for (double p : s.ps) members.push_back({NormSpec::pnorm(p), p});
  } else {
    for (double t : s.ts) {
      members.push_back({NormSpec::blend(NormSpec::pnorm(s.left_p), NormSpec::pnorm(s.right_p), t), std::nullopt});
    }
  }

  std::string csv = std::string(kSweepHeader) + "\n";
  json rows = json::array();
  bool failed = false;
  for (const Member& m : members) {
    for (int n : s.dims) {
      const Space space(n, m.spec);
      const std::string id = m.spec.label() + "_n" + std::to_string(n);
      const LinearMapReport r = build_with_bounds(space, c);
      failed = failed || r.search_failed;
      const double identity =
          distortion_estimate(space, Matrix::Identity(n, n), c.budget.value_or(100'000), c.seed).distortion;

      std::optional<double> clarkson, prop;
      if (m.p && n >= 2) {
        clarkson = clarkson_vnj(*m.p);
        prop = proposition_bound(*m.p, n);
      }
      std::optional<double> kn, b2;
      if (r.bounds) {
        kn = r.bounds->kn_linear;
        b2 = r.bounds->bound_2d;
      }
      csv += id + "," + std::to_string(n) + "," + format_double(*r.epsilon_used) + "," + format_optional(clarkson) +
             "," + format_double(r.distortion) + "," + format_double(identity) + "," + format_optional(kn) + "," +
             format_optional(b2) + "," + format_optional(prop) + "\n";

      json row = json::object();
      row["space_id"] = id;
      row["n"] = n;
      row["epsilon"] = *r.epsilon_used;
      row["clarkson"] = clarkson ? json(*clarkson) : json(nullptr);
      row["distortion"] = r.distortion;
      row["identity_distortion"] = identity;
      row["kn_linear"] = kn ? json(*kn) : json(nullptr);
      row["bound_2d"] = b2 ? json(*b2) : json(nullptr);
      row["proposition_bound"] = prop ? json(*prop) : json(nullptr);
      rows.push_back(std::move(row));
    }
  }
  emit(c, c.format.value_or(Format::Csv) == Format::Csv ? csv : dump(json{{"rows", rows}}), out);
  return failed ? kSearchFailure : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geometry of finite-dimensional normed spaces: parallelogram-law defects, near-isometries to "
               "Euclidean space, and randomized inequality checks."};
  app.require_subcommand(1);

  struct Flags {
    std::string config, out, format;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> budget, samples;
    std::optional<double> tol;
    std::optional<unsigned> threads;
  } flags;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config, "JSON run config")->required();
    sub->add_option("--out", flags.out, "output path (default: stdout)");
    sub->add_option("--format", flags.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", flags.seed, "RNG seed");
    sub->add_option("--budget", flags.budget, "sampling budget");
    sub->add_option("--samples", flags.samples, "samples per lemma check");
    sub->add_option("--tol", flags.tol, "orthogonal-search residual tolerance");
    sub->add_option("--threads", flags.threads, "worker thread cap");
  };
  CLI::App* vnj = app.add_subcommand("vnj", "estimate the von Neumann-Jordan and James constants");
  CLI::App* build = app.add_subcommand("build", "construct a near-isometry onto Euclidean space");
  CLI::App* verify = app.add_subcommand("verify", "check the parallelogram-defect inequalities by sampling");
  CLI::App* sweep = app.add_subcommand("sweep", "defect vs distortion over a family of spaces");
  for (CLI::App* sub : {vnj, build, verify, sweep}) add_common(sub);

  std::vector<const char*> argv;
  argv.push_back("normgeom");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    RunConfig config = parse_config(read_config_file(flags.config));
    if (!flags.out.empty()) config.out_path = flags.out;
    if (!flags.format.empty()) config.format = parse_format(flags.format);
    if (flags.seed) config.seed = *flags.seed;
    if (flags.budget) config.budget = *flags.budget;
    if (flags.samples) config.samples = *flags.samples;
    if (flags.tol) {
      if (!(*flags.tol > 0.0)) throw ConfigError("--tol must be positive");
      config.tol = *flags.tol;
    }
    if (flags.threads) config.threads = *flags.threads;
    if (config.threads) set_max_threads(*config.threads);

    if (vnj->parsed()) return cmd_vnj(config, out);
    if (build->parsed()) return cmd_build(config, out);
    if (verify->parsed()) return cmd_verify(config, out);
    return cmd_sweep(config, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kIoError;
  } catch (const SearchFailure& e) {
    err << "search failure: " << e.what() << "\n";
    return kSearchFailure;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  }
}

}  // namespace normgeom::cli
