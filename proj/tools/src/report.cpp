#include "ncmult_tools/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace ncmult::tools {

std::string report_schema_version() { return kSchemaVersion; }

namespace {

std::string format_double(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

void write(std::ostringstream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << inner << Json(it.key()).dump() << ": ";
        write(os, it.value(), indent + 1);
      }
      os << "\n" << pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << ",\n";
        first = false;
        os << inner;
        write(os, v, indent + 1);
      }
      os << "\n" << pad << "]";
      return;
    }
    case Json::value_t::number_float: os << format_double(j.get<double>()); return;
    default: os << j.dump(); return;
  }
}

Json number(double v) { return Json(v); }

}  // namespace

std::string dump_json(const Json& j) {
  std::ostringstream os;
  write(os, j, 0);
  os << "\n";
  return os.str();
}

Json to_json(const AuditReport& r) {
  Json j;
  j["condition"] = r.condition;
  j["family"] = r.family;
  j["domain"] = r.domain;
  Json params = Json::object();
  for (const auto& [k, v] : r.parameters) params[k] = number(v);
  j["parameters"] = params;
  j["best_constant"] = number(r.best_constant);
  if (r.witness) {
    j["witness"] = {{"index", number(r.witness->index)}, {"point", r.witness->point}, {"label", r.witness->label}};
  } else {
    j["witness"] = nullptr;
  }
  j["requested_bound"] = r.requested_bound ? Json(number(*r.requested_bound)) : Json(nullptr);
  j["pass"] = r.pass;
  j["derivative_source"] = r.derivative_source;
  j["refinement_delta"] = r.refinement_delta ? Json(number(*r.refinement_delta)) : Json(nullptr);
  j["assumed_gamma"] = r.assumed_gamma ? Json(number(*r.assumed_gamma)) : Json(nullptr);
  Json extras = Json::object();
  for (const auto& [k, v] : r.extras) extras[k] = number(v);
  j["extras"] = extras;
  j["notes"] = r.notes;
  return j;
}

Json to_json(const Rational& q) { return {{"exact", q.to_string()}, {"value", number(q.to_double())}}; }

Json to_json(const Subsequence& s) {
  Json j;
  j["s"] = s.s;
  j["rule"] = to_string(s.rule);
  j["window"] = s.window;
  j["horizon"] = s.horizon;
  j["partial"] = s.partial;
  j["stop_reason"] = s.stop_reason;
  return j;
}

Json to_json(const MaximalExperiment& e) {
  Json j;
  j["n"] = e.n;
  j["d"] = e.d;
  j["p"] = number(e.p);
  j["trials"] = e.trials;
  j["seed"] = e.seed;
  j["max_ratio"] = number(e.max_ratio);
  j["mean_ratio"] = number(e.mean_ratio);
  j["min_ratio"] = number(e.min_ratio);
  return j;
}

Json to_json(const SequenceNormReport& r) {
  return {{"p", number(r.p)},
          {"column", number(r.column)},
          {"row", number(r.row)},
          {"value", number(r.value)},
          {"splitting", r.splitting}};
}

Json to_json(const SymbolEstimate& e) {
  return {{"value", number(e.value)},
          {"stderr", number(e.stderr_)},
          {"method", e.method},
          {"seed", e.seed},
          {"samples", e.samples}};
}

Json to_json(const SweepTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"family", r.family},
                    {"q", r.q},
                    {"d", r.d},
                    {"bound", r.bound},
                    {"order", r.order},
                    {"constant", number(r.constant)},
                    {"stderr", number(r.stderr_)},
                    {"samples", r.samples},
                    {"seed", r.seed}});
  Json ratios = Json::array();
  for (const auto& r : t.ratios)
    ratios.push_back({{"bound", r.bound},
                      {"order", r.order},
                      {"max", number(r.max)},
                      {"min", number(r.min)},
                      {"ratio", number(r.ratio)}});
  return {{"rows", rows},
          {"ratios", ratios},
          {"chain_rule_worst", number(t.chain_rule_worst)},
          {"chain_rule_ok", t.chain_rule_ok}};
}

Json to_json(const FusionChainReport& r, const FusionRing& ring, bool include_rows) {
  Json j;
  j["all_hold"] = r.all_hold;
  j["trivial_is_one"] = r.trivial_is_one;
  j["checked"] = r.rows.size();
  j["skipped_unresolvable"] = r.skipped_unresolvable;
  if (include_rows) {
    Json rows = Json::array();
    for (const auto& row : r.rows)
      rows.push_back({{"n", row.n},
                      {"pi", ring.name(row.pi)},
                      {"phi", row.phi.to_string()},
                      {"folner_ratio", row.ratio.to_string()},
                      {"holds", row.holds}});
    j["rows"] = rows;
  }
  return j;
}

Json make_report(const std::string& subcommand, const Json& config, const Json& domains, const Json& results,
                 bool pass, std::optional<double> wall_time) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["tool_version"] = kToolVersion;
  j["subcommand"] = subcommand;
  j["config"] = config;
  j["wall_time_seconds"] = wall_time ? Json(*wall_time) : Json(nullptr);
  j["domains"] = domains;
  j["results"] = results;
  j["pass"] = pass;
  return j;
}

}  // namespace ncmult::tools
