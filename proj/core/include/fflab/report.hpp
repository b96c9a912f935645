#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "fflab/analysis.hpp"
#include "fflab/anfun.hpp"
#include "fflab/fekete.hpp"
#include "fflab/interp.hpp"
#include "fflab/orthopoly.hpp"
#include "fflab/weights.hpp"

namespace fflab {

/// Shortest text that round-trips a double (17 significant digits); "nan",
/// "inf" and "-inf" for non-finite values.
std::string format_double(double v);

/// First line of every CSV report.
std::string csv_schema_line(const std::string& kind);

/// Parses {"family": ..., "alpha", "beta", "m", "d_coeffs", "tilde": {...}}.
/// Throws InvalidArgument naming the offending field.
WeightSpec weight_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const WeightSpec& spec);

nlohmann::json to_json(const RecurrenceTable& t);
nlohmann::json to_json(const NodeSet& nodes);
nlohmann::json to_json(const FejerReport& r);
nlohmann::json to_json(const UniquenessReport& r);
nlohmann::json to_json(const AnProbe& p);
nlohmann::json to_json(const Lemma7Band& b);
nlohmann::json to_json(const NormalityReport& r);
nlohmann::json to_json(const StabilityReport& r);
nlohmann::json to_json(const EquivalenceVerdict& v);
nlohmann::json to_json(const ErrorCurve& c);

std::string to_csv(const NodeSet& nodes);
std::string to_csv(const FejerReport& r);
std::string to_csv(const std::vector<AnProbe>& probes);
std::string to_csv(const Lemma7Band& b);              // n, regime, x, ratio
std::string to_csv(const std::vector<OperatorSample>& sweep);  // x, operator, value
std::string to_csv(const EquivalenceVerdict& v);
std::string to_csv(const ErrorCurve& c);              // n, sup_error, kernel_sup

}  // namespace fflab
