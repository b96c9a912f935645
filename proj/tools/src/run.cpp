#include "run.hpp"

#include <algorithm>
#include <sstream>

#include "fflab/anfun.hpp"
#include "fflab/error.hpp"
#include "fflab/fekete.hpp"
#include "fflab/orthopoly.hpp"
#include "fflab/report.hpp"

namespace fflab::cli {
namespace {

using nlohmann::json;

constexpr int kMaxDegree = 40;

const std::pair<const char*, Task> kTasks[] = {
    {"nodes", Task::nodes},         {"fekete", Task::fekete},
    {"fejer", Task::fejer},         {"anfun", Task::anfun},
    {"normality", Task::normality}, {"equivalence", Task::equivalence},
    {"lemma7", Task::lemma7},       {"lemma8", Task::lemma8},
    {"converge", Task::converge},
};

const char* task_name(Task t) {
  for (const auto& [name, task] : kTasks) {
    if (task == t) return name;
  }
  return "nodes";
}

std::vector<double> number_array(const json& j, const char* key) {
  if (!j.is_array()) throw InvalidArgument(std::string(key) + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw InvalidArgument(std::string(key) + ": entries must be numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

int degree_value(const json& v, const char* key) {
  if (!v.is_number_integer()) throw InvalidArgument(std::string(key) + ": expected an integer");
  const int n = v.get<int>();
  if (n < 1 || n > kMaxDegree) {
    throw InvalidArgument(std::string(key) + ": " + std::to_string(n) + " outside [1, " +
                          std::to_string(kMaxDegree) + "]");
  }
  return n;
}

double number(const json& j, const char* key) {
  if (!j.at(key).is_number()) throw InvalidArgument(std::string(key) + ": expected a number");
  return j.at(key).get<double>();
}

int single_n(const RunConfig& c) {
  if (c.n_list.size() != 1) throw InvalidArgument("n: this task needs a single degree \"n\"");
  return c.n_list.front();
}

int top_n(const RunConfig& c) {
  if (c.n_list.empty()) throw InvalidArgument("n: missing (give \"n\" or \"n_list\")");
  return *std::max_element(c.n_list.begin(), c.n_list.end());
}

Weight build_weight(const WeightSpec& spec) {
  Weight w = make_weight(spec);
  return spec.tilde.enabled ? make_tilde(w, spec.tilde.d) : w;
}

LogSampler parse_function(const json& f, const Weight& w, double d) {
  if (f.is_string()) {
    const auto name = f.get<std::string>();
    if (name == "inverse_quadratic") return sampler_inverse_quadratic();
    if (name == "sine_root_weight") return sampler_sine_root_weight(w);
    if (name == "reciprocal_tilde") return sampler_reciprocal(make_tilde(w, d));
    throw InvalidArgument("function: unknown function '" + name + "'");
  }
  if (f.is_object() && f.contains("polynomial")) {
    return sampler_polynomial(number_array(f.at("polynomial"), "function.polynomial"));
  }
  throw InvalidArgument("function: expected a name or {\"polynomial\": [...]}");
}

// key,value rows for reports without a dedicated CSV layout.
std::string flat_csv(const std::string& kind, const json& j) {
  std::ostringstream o;
  o << csv_schema_line(kind) << "key,value\n";
  for (const auto& [key, value] : j.items()) {
    if (value.is_number_float()) {
      o << key << ',' << format_double(value.get<double>()) << '\n';
    } else if (value.is_primitive()) {
      o << key << ',' << value.dump() << '\n';
    }
  }
  return o.str();
}

struct Report {
  json body;
  std::string csv;
};

Report execute(const RunConfig& c) {
  const Weight base = build_weight(c.weight);
  const double L = c.L.value_or(1.5);

  switch (c.task) {
    case Task::nodes: {
      const auto t = recurrence_table(base, top_n(c));
      const auto z = zeros(t, single_n(c));
      json j = to_json(t);
      j["nodes"] = z.nodes;
      return {j, to_csv(z)};
    }

    case Task::fekete: {
      const int n = single_n(c);
      Weight w = base;
      if (c.induced) w = wn_weight(base, recurrence_table(base, n), n);
      if (c.starts > 1) {
        const auto u = uniqueness_probe(w, n, c.starts, c.seed);
        const json j = to_json(u);
        return {j, flat_csv("uniqueness", j)};
      }
      const auto r = solve_fekete(w, n);
      return {to_json(r), to_csv(r)};
    }

    case Task::fejer: {
      NodeSet nodes;
      Weight w = base;
      if (c.nodes) {
        nodes = NodeSet::from_user(*c.nodes, base.id());
        validate_nodes(nodes, base);
      }
      if (!c.nodes || c.induced) {
        const int n = c.nodes ? static_cast<int>(c.nodes->size()) : single_n(c);
        const auto t = recurrence_table(base, n);
        if (!c.nodes) nodes = zeros(t, n);
        if (c.induced) w = wn_weight(base, t, n);
      }
      const auto r = fejer_constants(nodes, w);
      return {to_json(r), to_csv(r)};
    }

    case Task::anfun: {
      if (c.x_list.empty()) throw InvalidArgument("x: anfun needs \"x\" or \"x_list\"");
      const auto t = recurrence_table(base, top_n(c));
      std::vector<AnProbe> probes;
      for (int n : c.n_list) {
        for (double x : c.x_list) {
          if (!base.contains(x)) {
            throw InvalidArgument("x: " + format_double(x) + " lies outside the domain");
          }
          probes.push_back(an_over_rho(base, t, n, x));
          try {
            probes.push_back(an_closed_form(base, t, n, x));
          } catch (const Unsupported&) {
          }
        }
      }
      json arr = json::array();
      for (const auto& p : probes) arr.push_back(to_json(p));
      return {json{{"weight", base.id()}, {"probes", arr}}, to_csv(probes)};
    }

    case Task::normality: {
      NodeSet nodes;
      Weight w = base;
      const int n = c.nodes ? static_cast<int>(c.nodes->size()) : single_n(c);
      if (c.nodes) nodes = NodeSet::from_user(*c.nodes, base.id());
      if (!c.nodes || c.induced) {
        const auto t = recurrence_table(base, n);
        if (!c.nodes) nodes = zeros(t, n);
        if (c.induced) w = wn_weight(base, t, n);
      }
      const auto norm = normality_check(nodes, w, L, c.grid);
      const auto stab = stability_check(nodes, w, c.trials, c.grid, c.seed, L);
      json j{{"weight", w.id()},
             {"nodes", nodes.nodes},
             {"normality", to_json(norm)},
             {"stability", to_json(stab)}};
      json flat = to_json(norm);
      const json stab_json = to_json(stab);
      for (const auto& [k, v] : stab_json.items()) flat["stability_" + k] = v;
      return {j, flat_csv("normality", flat)};
    }

    case Task::equivalence: {
      EquivalenceOptions opts;
      opts.L = L;
      opts.trials = c.trials;
      opts.seed = c.seed;
      opts.grid = c.grid;
      const auto v = equivalence_suite(base, single_n(c), opts);
      return {to_json(v), to_csv(v)};
    }

    case Task::lemma7: {
      const auto t = recurrence_table(base, top_n(c) + 1);
      const auto band = lemma7_band(base, t, c.n_list, c.L);
      return {to_json(band), to_csv(band)};
    }

    case Task::lemma8: {
      const auto curve = operator_norm_curve(base, c.d, c.n_list, c.grid, L);
      return {to_json(curve), to_csv(curve)};
    }

    case Task::converge: {
      const auto f = parse_function(c.function, base, c.d);
      const auto curve = convergence_experiment(base, c.d, f, c.n_list, c.grid, L);
      return {to_json(curve), to_csv(curve)};
    }
  }
  throw InvalidArgument("task: unhandled task");
}

void write_error(std::ostream& out, const char* kind, const std::string& message, int code) {
  const json j{{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}};
  out << j.dump(2) << '\n';
}

}  // namespace

Task parse_task(const std::string& name) {
  for (const auto& [key, task] : kTasks) {
    if (name == key) return task;
  }
  throw InvalidArgument("task: unknown task '" + name + "'");
}

Format parse_format(const std::string& name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  throw InvalidArgument("format: expected csv or json, got '" + name + "'");
}

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw InvalidArgument("config: expected a JSON object");
  RunConfig c;
  if (j.contains("task")) {
    if (!j.at("task").is_string()) throw InvalidArgument("task: expected a string");
    c.task = parse_task(j.at("task").get<std::string>());
  }
  if (!j.contains("weight")) throw InvalidArgument("weight: missing");
  c.weight = weight_spec_from_json(j.at("weight"));

  if (j.contains("n")) c.n_list = {degree_value(j.at("n"), "n")};
  if (j.contains("n_list")) {
    if (!j.at("n_list").is_array()) throw InvalidArgument("n_list: expected an array");
    c.n_list.clear();
    for (const auto& v : j.at("n_list")) c.n_list.push_back(degree_value(v, "n_list"));
  }
  if (j.contains("nodes")) c.nodes = number_array(j.at("nodes"), "nodes");
  if (j.contains("x")) c.x_list = {number(j, "x")};
  if (j.contains("x_list")) c.x_list = number_array(j.at("x_list"), "x_list");
  if (j.contains("L")) c.L = number(j, "L");
  if (j.contains("d")) c.d = number(j, "d");
  if (j.contains("induced")) {
    if (!j.at("induced").is_boolean()) throw InvalidArgument("induced: expected a bool");
    c.induced = j.at("induced").get<bool>();
  }
  if (j.contains("trials")) c.trials = static_cast<int>(number(j, "trials"));
  if (j.contains("starts")) c.starts = static_cast<int>(number(j, "starts"));
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw InvalidArgument("seed: expected a non-negative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("function")) c.function = j.at("function");
  if (j.contains("format")) {
    if (!j.at("format").is_string()) throw InvalidArgument("format: expected a string");
    c.format = parse_format(j.at("format").get<std::string>());
  }
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    if (!g.is_object()) throw InvalidArgument("grid: expected an object");
    if (g.contains("radius")) c.grid.radius = number(g, "radius");
    if (g.contains("count")) c.grid.count = static_cast<int>(number(g, "count"));
    if (g.contains("tail")) c.grid.tail = static_cast<int>(number(g, "tail"));
    if (g.contains("near_node")) c.grid.near_node = static_cast<int>(number(g, "near_node"));
  }
  if (c.trials < 1) throw InvalidArgument("trials: must be >= 1");
  if (c.starts < 1) throw InvalidArgument("starts: must be >= 1");
  return c;
}

int run(const RunConfig& config, std::ostream& out) {
  Report report;
  try {
    report = execute(config);
  } catch (const InvalidArgument& e) {
    write_error(out, e.kind(), e.what(), kConfigError);
    return kConfigError;
  } catch (const Unsupported& e) {
    write_error(out, e.kind(), e.what(), kConfigError);
    return kConfigError;
  } catch (const Error& e) {
    write_error(out, e.kind(), e.what(), kNumericalError);
    return kNumericalError;
  }
  if (config.format == Format::csv) {
    out << report.csv;
  } else {
    json j{{"task", task_name(config.task)}, {"weight", to_json(config.weight)},
           {"seed", config.seed}, {"result", report.body}};
    out << j.dump(2) << '\n';
  }
  return kOk;
}

int run_text(const std::string& text, std::optional<std::string> task,
             std::optional<std::string> format, std::optional<std::uint64_t> seed,
             std::ostream& out) {
  RunConfig config;
  try {
    const json j = json::parse(text);
    if (!task && !(j.is_object() && j.contains("task"))) {
      throw InvalidArgument("task: missing (give it on the command line or in the config)");
    }
    if (task && j.is_object() && j.contains("task") && j.at("task") != *task) {
      throw InvalidArgument("task: command line says '" + *task + "' but the config says " +
                            j.at("task").dump());
    }
    config = parse_config(j);
    if (task) config.task = parse_task(*task);
    if (format) config.format = parse_format(*format);
    if (seed) config.seed = *seed;
    if (config.n_list.empty() && !config.nodes) {
      throw InvalidArgument("n: missing (give \"n\" or \"n_list\")");
    }
  } catch (const json::exception& e) {
    write_error(out, "invalid_argument", std::string("config: ") + e.what(), kConfigError);
    return kConfigError;
  } catch (const Error& e) {
    write_error(out, e.kind(), e.what(), kConfigError);
    return kConfigError;
  }
  return run(config, out);
}

}  // namespace fflab::cli
