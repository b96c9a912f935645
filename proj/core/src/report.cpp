#include "fflab/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "fflab/error.hpp"

namespace fflab {
namespace {

using nlohmann::json;

double number_field(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) {
    throw InvalidArgument(std::string("weight.") + key + ": expected a number");
  }
  return j.at(key).get<double>();
}

json flag_json(const Flag& f) {
  json j{{"value", f.value}, {"residual", f.residual}};
  if (!f.note.empty()) j["note"] = f.note;
  return j;
}

const std::pair<const char*, Flag EquivalenceVerdict::*> kFlags[] = {
    {"A", &EquivalenceVerdict::A},
    {"B", &EquivalenceVerdict::B},
    {"D", &EquivalenceVerdict::D},
    {"E", &EquivalenceVerdict::E},
    {"A'", &EquivalenceVerdict::A_prime},
    {"B'", &EquivalenceVerdict::B_prime},
    {"C", &EquivalenceVerdict::C},
    {"D'", &EquivalenceVerdict::D_prime},
    {"E'", &EquivalenceVerdict::E_prime},
};

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_schema_line(const std::string& kind) {
  return "# schema: fflab." + kind + ".v1\n";
}

WeightSpec weight_spec_from_json(const json& j) {
  if (!j.is_object()) throw InvalidArgument("weight: expected an object");
  if (!j.contains("family") || !j.at("family").is_string()) {
    throw InvalidArgument("weight.family: missing or not a string");
  }
  const auto family = j.at("family").get<std::string>();
  WeightSpec s;
  if (family == "hermite") {
    s = WeightSpec::hermite();
  } else if (family == "laguerre") {
    s = WeightSpec::laguerre(number_field(j, "alpha", 0.0));
  } else if (family == "jacobi") {
    s = WeightSpec::jacobi(number_field(j, "alpha", 0.0), number_field(j, "beta", 0.0));
  } else if (family == "freud") {
    if (!j.contains("m") || !j.at("m").is_number_integer()) {
      throw InvalidArgument("weight.m: freud needs an integer exponent m");
    }
    s = WeightSpec::freud(j.at("m").get<int>());
  } else if (family == "even-poly") {
    if (!j.contains("d_coeffs") || !j.at("d_coeffs").is_array()) {
      throw InvalidArgument("weight.d_coeffs: even-poly needs an array of coefficients");
    }
    std::vector<double> d;
    for (const auto& v : j.at("d_coeffs")) {
      if (!v.is_number()) throw InvalidArgument("weight.d_coeffs: entries must be numbers");
      d.push_back(v.get<double>());
    }
    s = WeightSpec::even_poly(std::move(d));
  } else {
    throw InvalidArgument("weight.family: unknown family '" + family + "'");
  }
  if (j.contains("tilde")) {
    const auto& t = j.at("tilde");
    if (!t.is_object()) throw InvalidArgument("weight.tilde: expected an object");
    if (t.contains("enabled")) {
      if (!t.at("enabled").is_boolean()) throw InvalidArgument("weight.tilde.enabled: expected a bool");
      s.tilde.enabled = t.at("enabled").get<bool>();
    }
    if (t.contains("d")) {
      if (!t.at("d").is_number()) throw InvalidArgument("weight.tilde.d: expected a number");
      s.tilde.d = t.at("d").get<double>();
    }
  }
  return s;
}

json to_json(const WeightSpec& s) {
  json j{{"family", family_name(s.family)}};
  switch (s.family) {
    case Family::laguerre: j["alpha"] = s.alpha; break;
    case Family::jacobi: j["alpha"] = s.alpha; j["beta"] = s.beta; break;
    case Family::freud: j["m"] = s.m; break;
    case Family::even_poly: j["d_coeffs"] = s.d_coeffs; break;
    default: break;
  }
  j["tilde"] = {{"enabled", s.tilde.enabled}, {"d", s.tilde.d}};
  return j;
}

json to_json(const RecurrenceTable& t) {
  return {{"weight", t.weight_id},
          {"n_max", t.n_max},
          {"alpha", t.alpha},
          {"beta", std::vector<double>(t.beta.begin() + 1, t.beta.end())},
          {"m0", t.m0}};
}

json to_json(const NodeSet& nodes) {
  return {{"weight", nodes.weight_id},
          {"provenance", provenance_name(nodes.provenance)},
          {"nodes", nodes.nodes}};
}

json to_json(const FejerReport& r) {
  return {{"nodes", r.nodes.nodes},
          {"C", r.c},
          {"max_abs_C", r.max_abs_c},
          {"neg_def", r.hessian_negative_definite},
          {"iterations", r.iterations}};
}

json to_json(const UniquenessReport& r) {
  json sols = json::array();
  for (const auto& s : r.solutions) sols.push_back(to_json(s));
  return {{"n", r.n},
          {"starts", r.starts},
          {"max_distance", r.max_distance},
          {"all_neg_def", r.all_negative_definite},
          {"solutions", sols}};
}

json to_json(const AnProbe& p) {
  return {{"n", p.n},
          {"x", p.x},
          {"value", p.value},
          {"method", p.method == AnMethod::quadrature ? "quadrature" : "closed_form"}};
}

json to_json(const Lemma7Band& b) {
  auto bounds = [](const RatioBounds& r) {
    return json{{"min", r.min}, {"max", r.max}, {"spread", r.spread()}};
  };
  json per_n = json::array();
  for (int n : b.n_list) {
    per_n.push_back({{"n", n},
                     {"inner", bounds(b.inner_by_n.at(n))},
                     {"outer", bounds(b.outer_by_n.at(n))}});
  }
  json j{{"n_list", b.n_list}, {"L", b.L},          {"L0", b.L0},
         {"inner", bounds(b.inner)}, {"outer", bounds(b.outer)}, {"per_n", per_n}};
  j["closed_form_gap"] = b.closed_form_gap ? json(*b.closed_form_gap) : json(nullptr);
  return j;
}

json to_json(const NormalityReport& r) {
  return {{"n", r.n},
          {"L", r.L},
          {"a_n", r.a_n ? json(*r.a_n) : json(nullptr)},
          {"node_bound", r.node_bound},
          {"kernel_sup", r.kernel_sup},
          {"sup_at", r.sup_at},
          {"max_abs_C", r.max_abs_c},
          {"pass", r.pass}};
}

json to_json(const StabilityReport& r) {
  return {{"trials", r.trials},
          {"stable", r.stable},
          {"min_output", r.min_output},
          {"max_ratio", r.max_ratio},
          {"degree_sum", r.degree_sum},
          {"economical_bound", r.economical_bound},
          {"most_economical", r.most_economical}};
}

json to_json(const EquivalenceVerdict& v) {
  json flags = json::object();
  for (const auto& [name, member] : kFlags) flags[name] = flag_json(v.*member);
  return {{"weight", v.weight_id},
          {"n", v.n},
          {"nodes", v.nodes.nodes},
          {"flags", flags},
          {"hypothesis", v.hypothesis},
          {"primed_all", v.primed_all()}};
}

json to_json(const ErrorCurve& c) {
  json rows = json::array();
  for (std::size_t i = 0; i < c.n_list.size(); ++i) {
    rows.push_back({{"n", c.n_list[i]},
                    {"sup_error", std::isfinite(c.sup_error[i]) ? json(c.sup_error[i]) : json(nullptr)},
                    {"kernel_sup", c.kernel_sup[i]}});
  }
  return {{"weight", c.weight_id}, {"d", c.d}, {"curve", rows}};
}

std::string to_csv(const NodeSet& nodes) {
  std::ostringstream o;
  o << csv_schema_line("nodes") << "k,x\n";
  for (std::size_t k = 0; k < nodes.nodes.size(); ++k) {
    o << k + 1 << ',' << format_double(nodes.nodes[k]) << '\n';
  }
  return o.str();
}

std::string to_csv(const FejerReport& r) {
  std::ostringstream o;
  o << csv_schema_line("fejer") << "k,x,C\n";
  for (std::size_t k = 0; k < r.c.size(); ++k) {
    o << k + 1 << ',' << format_double(r.nodes.nodes[k]) << ',' << format_double(r.c[k]) << '\n';
  }
  return o.str();
}

std::string to_csv(const std::vector<AnProbe>& probes) {
  std::ostringstream o;
  o << csv_schema_line("anfun") << "n,x,value,method\n";
  for (const auto& p : probes) {
    o << p.n << ',' << format_double(p.x) << ',' << format_double(p.value) << ','
      << (p.method == AnMethod::quadrature ? "quadrature" : "closed_form") << '\n';
  }
  return o.str();
}

std::string to_csv(const Lemma7Band& b) {
  std::ostringstream o;
  o << csv_schema_line("lemma7") << "n,regime,x,ratio\n";
  for (const auto& s : b.samples) {
    o << s.n << ',' << (s.inner ? "inner" : "outer") << ',' << format_double(s.x) << ','
      << format_double(s.ratio) << '\n';
  }
  return o.str();
}

std::string to_csv(const std::vector<OperatorSample>& sweep) {
  std::ostringstream o;
  o << csv_schema_line("sweep") << "x,operator,value\n";
  for (const auto& s : sweep) {
    o << format_double(s.x) << ',' << operator_name(s.op) << ',' << format_double(s.value) << '\n';
  }
  return o.str();
}

std::string to_csv(const EquivalenceVerdict& v) {
  std::ostringstream o;
  o << csv_schema_line("equivalence") << "property,value,residual\n";
  for (const auto& [name, member] : kFlags) {
    const Flag& f = v.*member;
    o << name << ',' << (f.value ? "true" : "false") << ',' << format_double(f.residual) << '\n';
  }
  o << "hypothesis," << (v.hypothesis ? "true" : "false") << ",nan\n";
  return o.str();
}

std::string to_csv(const ErrorCurve& c) {
  std::ostringstream o;
  o << csv_schema_line("error_curve") << "n,sup_error,kernel_sup\n";
  for (std::size_t i = 0; i < c.n_list.size(); ++i) {
    o << c.n_list[i] << ',' << format_double(c.sup_error[i]) << ','
      << format_double(c.kernel_sup[i]) << '\n';
  }
  return o.str();
}

}  // namespace fflab
