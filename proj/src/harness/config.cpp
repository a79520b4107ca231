#include "exactpen/harness.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace exactpen::harness {

namespace {

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError(path + ": " + message);
}

std::optional<double> to_double(const std::string& text) {
  double v = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last || first == last) return std::nullopt;
  return v;
}

/// Map node with a closed set of allowed keys.
class Section {
 public:
  Section(const YAML::Node& node, std::string path, std::set<std::string> allowed)
      : node_(node), path_(std::move(path)) {
    if (!node_.IsMap()) fail(path_.empty() ? "config" : path_, "expected a mapping");
    for (const auto& kv : node_) {
      const std::string key = kv.first.as<std::string>();
      if (!allowed.count(key)) fail(join(path_, key), "unknown key");
    }
  }

  bool has(const std::string& key) const { return static_cast<bool>(node_[key]); }

  YAML::Node raw(const std::string& key) const { return node_[key]; }

  std::string where(const std::string& key) const { return join(path_, key); }

  std::optional<double> number(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    const YAML::Node n = node_[key];
    if (!n.IsScalar()) fail(where(key), "expected a number");
    const auto v = to_double(n.Scalar());
    if (!v) fail(where(key), "expected a number, got '" + n.Scalar() + "'");
    return v;
  }

  double number(const std::string& key, double fallback) const {
    return number(key).value_or(fallback);
  }

  std::optional<double> positive(const std::string& key) const {
    const auto v = number(key);
    if (v && !(*v > 0)) fail(where(key), "must be positive");
    return v;
  }

  std::optional<long> integer(const std::string& key) const {
    const auto v = number(key);
    if (!v) return std::nullopt;
    if (*v != std::floor(*v) || std::abs(*v) > 9e15) fail(where(key), "expected an integer");
    return static_cast<long>(*v);
  }

  std::optional<std::string> text(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    const YAML::Node n = node_[key];
    if (!n.IsScalar()) fail(where(key), "expected a string");
    return n.Scalar();
  }

  std::optional<bool> boolean(const std::string& key) const {
    const auto t = text(key);
    if (!t) return std::nullopt;
    if (*t == "true") return true;
    if (*t == "false") return false;
    fail(where(key), "expected true or false, got '" + *t + "'");
  }

 private:
  YAML::Node node_;
  std::string path_;
};

ProblemSpec parse_problem(const YAML::Node& node, const std::string& path) {
  if (!node || !node.IsMap()) fail(path, "expected a mapping with a name");
  ProblemSpec spec;
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    const YAML::Node value = kv.second;
    if (key == "name") {
      if (!value.IsScalar()) fail(join(path, key), "expected a string");
      spec.name = value.Scalar();
      continue;
    }
    if (value.IsSequence()) {
      std::vector<double> items;
      for (std::size_t i = 0; i < value.size(); ++i) {
        const auto v = value[i].IsScalar() ? to_double(value[i].Scalar()) : std::nullopt;
        if (!v) fail(join(path, key) + "[" + std::to_string(i) + "]", "expected a number");
        items.push_back(*v);
      }
      spec.params[key] = items;
    } else if (value.IsScalar()) {
      const auto v = value.Tag() == "!" ? std::nullopt : to_double(value.Scalar());
      if (v) {
        spec.params[key] = *v;
      } else {
        spec.params[key] = value.Scalar();
      }
    } else {
      fail(join(path, key), "expected a scalar or a list of numbers");
    }
  }
  if (spec.name.empty()) fail(join(path, "name"), "missing problem name");
  return spec;
}

const std::set<std::string> solver_names = {"sps", "eppd", "epapd", "smp", "doubling"};

SolverSpec parse_solver(const YAML::Node& node, const std::string& path) {
  Section s(node, path,
            {"name", "label", "iterations", "schedule", "eta", "distance_bound", "tau", "gamma",
             "gamma_x", "gamma_y", "gamma_z", "enforce_lambda_threshold", "divergence_floor",
             "divergence_radius_factor", "record_trace", "seed", "doubling"});
  SolverSpec spec;
  spec.name = s.text("name").value_or("sps");
  if (!solver_names.count(spec.name)) {
    fail(s.where("name"), "expected sps, eppd, epapd, smp or doubling, got '" + spec.name + "'");
  }
  spec.label = s.text("label").value_or("");
  SolverParams& p = spec.params;
  if (auto t = s.integer("iterations")) {
    if (*t < 1) fail(s.where("iterations"), "must be >= 1");
    p.iterations = *t;
  }
  if (auto t = s.text("schedule")) {
    try {
      p.sps_schedule = sps_schedule_from_string(*t);
    } catch (const ConfigError&) {
      fail(s.where("schedule"), "expected auto, convex or strongly_convex, got '" + *t + "'");
    }
  }
  p.eta = s.positive("eta");
  p.distance_bound = s.positive("distance_bound");
  p.tau = s.positive("tau");
  p.gamma = s.positive("gamma");
  p.gamma_x = s.positive("gamma_x");
  p.gamma_y = s.positive("gamma_y");
  p.gamma_z = s.positive("gamma_z");
  p.enforce_lambda_threshold = s.boolean("enforce_lambda_threshold").value_or(true);
  p.divergence_floor = s.number("divergence_floor");
  if (auto f = s.positive("divergence_radius_factor")) p.divergence_radius_factor = *f;
  p.record_trace = s.boolean("record_trace").value_or(true);
  if (auto seed = s.integer("seed")) {
    if (*seed < 0) fail(s.where("seed"), "must be nonnegative");
    p.seed = static_cast<std::uint64_t>(*seed);
  }
  if (s.has("doubling")) {
    if (spec.name != "doubling") fail(s.where("doubling"), "only valid with name: doubling");
    Section d(s.raw("doubling"), s.where("doubling"),
              {"base", "lambda0", "epsilon", "max_rounds", "max_round_budget"});
    DoublingSpec ds;
    ds.base = d.text("base").value_or(ds.base);
    try {
      base_solver_from_string(ds.base);
    } catch (const ConfigError&) {
      fail(d.where("base"), "expected sps, eppd, epapd or smp, got '" + ds.base + "'");
    }
    ds.lambda0 = d.positive("lambda0").value_or(ds.lambda0);
    ds.epsilon = d.positive("epsilon").value_or(ds.epsilon);
    if (auto r = d.integer("max_rounds")) {
      if (*r < 0) fail(d.where("max_rounds"), "must be nonnegative");
      ds.max_rounds = static_cast<int>(*r);
    }
    if (auto b = d.integer("max_round_budget")) {
      if (*b < 1) fail(d.where("max_round_budget"), "must be >= 1");
      ds.max_round_budget = *b;
    }
    spec.doubling = ds;
  } else if (spec.name == "doubling") {
    spec.doubling = DoublingSpec{};
  }
  return spec;
}

OutputSpec parse_output(const YAML::Node& node, const std::string& path) {
  Section s(node, path, {"directory", "trace", "summary"});
  OutputSpec out;
  out.directory = s.text("directory").value_or(out.directory);
  out.trace = s.text("trace").value_or(out.trace);
  out.summary = s.text("summary").value_or(out.summary);
  return out;
}

ReferenceMethod parse_method(const Section& s, const std::string& key) {
  const std::string tag = s.text(key).value_or("sps");
  if (tag == "sps") return ReferenceMethod::Sps;
  if (tag == "eppd") return ReferenceMethod::Eppd;
  fail(s.where(key), "expected sps or eppd, got '" + tag + "'");
}

ReportSpec parse_report(const YAML::Node& node, const std::string& path) {
  Section s(node, path, {"epsilon", "reference_budget", "reference_method"});
  ReportSpec out;
  out.epsilon = s.positive("epsilon").value_or(out.epsilon);
  if (auto b = s.integer("reference_budget")) {
    if (*b != 0 && *b < 100000) fail(s.where("reference_budget"), "must be 0 or >= 100000");
    out.reference_budget = *b;
  }
  out.reference_method = parse_method(s, "reference_method");
  return out;
}

YAML::Node load_text(const std::string& text) {
  try {
    YAML::Node root = YAML::Load(text);
    if (!root || root.IsNull()) throw ConfigError("config: empty document");
    return root;
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config: malformed YAML: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit_number(YAML::Emitter& e, const std::string& key, double value) {
  e << YAML::Key << key << YAML::Value << format_number(value);
}

void emit_problem(YAML::Emitter& e, const ProblemSpec& p) {
  e << YAML::BeginMap;
  e << YAML::Key << "name" << YAML::Value << YAML::DoubleQuoted << p.name;
  for (const auto& [key, value] : p.params) {
    e << YAML::Key << key << YAML::Value;
    if (const auto* d = std::get_if<double>(&value)) {
      e << format_number(*d);
    } else if (const auto* t = std::get_if<std::string>(&value)) {
      e << YAML::DoubleQuoted << *t;
    } else {
      e << YAML::Flow << YAML::BeginSeq;
      for (double v : std::get<std::vector<double>>(value)) e << format_number(v);
      e << YAML::EndSeq;
    }
  }
  e << YAML::EndMap;
}

void emit_optional(YAML::Emitter& e, const std::string& key, const std::optional<double>& v) {
  if (v) emit_number(e, key, *v);
}

void emit_solver(YAML::Emitter& e, const SolverSpec& s) {
  const SolverParams& p = s.params;
  e << YAML::BeginMap;
  e << YAML::Key << "name" << YAML::Value << s.name;
  if (!s.label.empty()) e << YAML::Key << "label" << YAML::Value << YAML::DoubleQuoted << s.label;
  e << YAML::Key << "iterations" << YAML::Value << p.iterations;
  e << YAML::Key << "schedule" << YAML::Value << to_string(p.sps_schedule);
  emit_optional(e, "eta", p.eta);
  emit_optional(e, "distance_bound", p.distance_bound);
  emit_optional(e, "tau", p.tau);
  emit_optional(e, "gamma", p.gamma);
  emit_optional(e, "gamma_x", p.gamma_x);
  emit_optional(e, "gamma_y", p.gamma_y);
  emit_optional(e, "gamma_z", p.gamma_z);
  e << YAML::Key << "enforce_lambda_threshold" << YAML::Value
    << (p.enforce_lambda_threshold ? "true" : "false");
  emit_optional(e, "divergence_floor", p.divergence_floor);
  emit_number(e, "divergence_radius_factor", p.divergence_radius_factor);
  e << YAML::Key << "record_trace" << YAML::Value << (p.record_trace ? "true" : "false");
  e << YAML::Key << "seed" << YAML::Value << p.seed;
  if (s.doubling) {
    const DoublingSpec& d = *s.doubling;
    e << YAML::Key << "doubling" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "base" << YAML::Value << d.base;
    emit_number(e, "lambda0", d.lambda0);
    emit_number(e, "epsilon", d.epsilon);
    e << YAML::Key << "max_rounds" << YAML::Value << d.max_rounds;
    if (d.max_round_budget) {
      e << YAML::Key << "max_round_budget" << YAML::Value << *d.max_round_budget;
    }
    e << YAML::EndMap;
  }
  e << YAML::EndMap;
}

void emit_report(YAML::Emitter& e, const ReportSpec& r) {
  e << YAML::BeginMap;
  emit_number(e, "epsilon", r.epsilon);
  e << YAML::Key << "reference_budget" << YAML::Value << r.reference_budget;
  e << YAML::Key << "reference_method" << YAML::Value << to_string(r.reference_method);
  e << YAML::EndMap;
}

}  // namespace

std::string SolverSpec::display_name() const {
  if (!label.empty()) return label;
  if (name == "sps" && params.sps_schedule != SpsSchedule::Auto) {
    return "sps_" + to_string(params.sps_schedule);
  }
  if (name == "doubling" && doubling) return "doubling_" + doubling->base;
  return name;
}

std::string format_number(double value) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

RunConfig parse_run_config(const std::string& yaml_text) {
  const YAML::Node root = load_text(yaml_text);
  Section top(root, "", {"problem", "solver", "output", "report"});
  if (!top.has("problem")) fail("problem", "missing section");
  RunConfig cfg;
  cfg.problem = parse_problem(root["problem"], "problem");
  if (top.has("solver")) cfg.solver = parse_solver(root["solver"], "solver");
  if (top.has("output")) cfg.output = parse_output(root["output"], "output");
  if (top.has("report")) cfg.report = parse_report(root["report"], "report");
  return cfg;
}

RunConfig load_run_config(const std::string& path) { return parse_run_config(read_file(path)); }

std::string serialize(const RunConfig& config) {
  YAML::Emitter e;
  e << YAML::BeginMap;
  e << YAML::Key << "problem" << YAML::Value;
  emit_problem(e, config.problem);
  e << YAML::Key << "solver" << YAML::Value;
  emit_solver(e, config.solver);
  e << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "directory" << YAML::Value << YAML::DoubleQuoted << config.output.directory;
  e << YAML::Key << "trace" << YAML::Value << YAML::DoubleQuoted << config.output.trace;
  e << YAML::Key << "summary" << YAML::Value << YAML::DoubleQuoted << config.output.summary;
  e << YAML::EndMap;
  e << YAML::Key << "report" << YAML::Value;
  emit_report(e, config.report);
  e << YAML::EndMap;
  return std::string(e.c_str()) + "\n";
}

BenchConfig parse_bench_config(const std::string& yaml_text) {
  const YAML::Node root = load_text(yaml_text);
  Section top(root, "", {"bench"});
  if (!top.has("bench")) fail("bench", "missing section");
  const YAML::Node node = root["bench"];
  Section s(node, "bench",
            {"problems", "solvers", "iterations", "directory", "workers", "report"});
  BenchConfig cfg;
  auto sequence = [&](const std::string& key) {
    const YAML::Node n = node[key];
    if (n && !n.IsSequence() && !n.IsNull()) fail(s.where(key), "expected a list");
    return n;
  };
  if (const YAML::Node n = sequence("problems"); n && n.IsSequence()) {
    for (std::size_t i = 0; i < n.size(); ++i) {
      cfg.problems.push_back(parse_problem(n[i], "bench.problems[" + std::to_string(i) + "]"));
    }
  }
  if (const YAML::Node n = sequence("solvers"); n && n.IsSequence()) {
    for (std::size_t i = 0; i < n.size(); ++i) {
      cfg.solvers.push_back(parse_solver(n[i], "bench.solvers[" + std::to_string(i) + "]"));
    }
  }
  if (const YAML::Node n = sequence("iterations"); n && n.IsSequence()) {
    for (std::size_t i = 0; i < n.size(); ++i) {
      const std::string where = "bench.iterations[" + std::to_string(i) + "]";
      const auto v = n[i].IsScalar() ? to_double(n[i].Scalar()) : std::nullopt;
      if (!v || *v < 1 || *v != std::floor(*v)) fail(where, "expected an integer >= 1");
      cfg.iterations.push_back(static_cast<long>(*v));
    }
  }
  cfg.directory = s.text("directory").value_or(cfg.directory);
  if (auto w = s.integer("workers")) {
    if (*w < 1) fail(s.where("workers"), "must be >= 1");
    cfg.workers = static_cast<int>(*w);
  }
  if (s.has("report")) cfg.report = parse_report(node["report"], "bench.report");
  return cfg;
}

BenchConfig load_bench_config(const std::string& path) {
  return parse_bench_config(read_file(path));
}

std::string serialize(const BenchConfig& config) {
  YAML::Emitter e;
  e << YAML::BeginMap << YAML::Key << "bench" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "problems" << YAML::Value << YAML::BeginSeq;
  for (const auto& p : config.problems) emit_problem(e, p);
  e << YAML::EndSeq;
  e << YAML::Key << "solvers" << YAML::Value << YAML::BeginSeq;
  for (const auto& s : config.solvers) emit_solver(e, s);
  e << YAML::EndSeq;
  e << YAML::Key << "iterations" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (long t : config.iterations) e << t;
  e << YAML::EndSeq;
  e << YAML::Key << "directory" << YAML::Value << YAML::DoubleQuoted << config.directory;
  e << YAML::Key << "workers" << YAML::Value << config.workers;
  e << YAML::Key << "report" << YAML::Value;
  emit_report(e, config.report);
  e << YAML::EndMap << YAML::EndMap;
  return std::string(e.c_str()) + "\n";
}

}  // namespace exactpen::harness
