#include "kirchhoff/serialize.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace kirchhoff {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific, 16);
  return std::string(buf, res.ptr);
}

std::string CsvTable::str(std::string_view kind, const Meta& meta) const {
  std::ostringstream os;
  os << "# kind: " << kind << '\n';
  os << "# schema_version: " << kSchemaVersion << '\n';
  for (const auto& [k, v] : meta) os << "# " << k << ": " << v << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
  return os.str();
}

Meta model_meta(const ModelParams& m) {
  return {{"a", format_number(m.a)}, {"b", format_number(m.b)}, {"N", std::to_string(m.N)}, {"p", format_number(m.p)}};
}

Meta problem_meta(const ProblemParams& p) {
  Meta meta = model_meta(p.model());
  meta.emplace_back("c", format_number(p.c));
  return meta;
}

Json to_json(const ModelParams& m) { return Json{{"a", m.a}, {"b", m.b}, {"N", m.N}, {"p", m.p}}; }

Json to_json(const ProblemParams& p) { return Json{{"a", p.a}, {"b", p.b}, {"c", p.c}, {"N", p.N}, {"p", p.p}}; }

Json envelope(std::string_view kind) { return Json{{"schema_version", kSchemaVersion}, {"kind", std::string(kind)}}; }

std::string table_csv(const BifurcationTable& t) {
  CsvTable csv{{"c", "branch", "Dsq", "lambda", "energy"}, {}};
  for (const auto& r : t.rows)
    csv.add({format_number(r.c), std::string(to_string(r.branch)), format_number(r.Dsq), format_number(r.lambda),
             format_number(r.energy)});
  Meta meta = model_meta(t.model);
  meta.emplace_back("c_points", std::to_string(t.cGrid.size()));
  return csv.str("bifurcation_table", meta);
}

Json table_json(const BifurcationTable& t) {
  Json j = envelope("bifurcation_table");
  j["model"] = to_json(t.model);
  j["c_grid"] = t.cGrid;
  Json rows = Json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"c", r.c}, {"branch", to_string(r.branch)}, {"Dsq", r.Dsq}, {"lambda", r.lambda}, {"energy", r.energy}});
  j["rows"] = std::move(rows);
  return j;
}

std::string field_csv(const RadialField& f, std::string_view kind, const Meta& meta) {
  CsvTable csv{{"r", "u"}, {}};
  for (Eigen::Index i = 0; i < f.size(); ++i) csv.add({format_number(f.nodes[i]), format_number(f.values[i])});
  Meta m = meta;
  m.emplace_back("dimension", std::to_string(f.dim));
  m.emplace_back("rMax", format_number(f.radius()));
  m.emplace_back("intervals", std::to_string(f.size() - 1));
  return csv.str(kind, m);
}

std::string flow_trace_csv(const FlowResult& r, const Meta& meta) {
  CsvTable csv{{"step", "energy", "gradientNorm", "multiplierEstimate"}, {}};
  for (const auto& row : r.trace)
    csv.add({std::to_string(row.step), format_number(row.energy), format_number(row.gradientNorm), format_number(row.multiplier)});
  return csv.str("flow_trace", meta);
}

Json to_json(const LimitBranch& b) {
  return Json{{"branch", to_string(b.branch)}, {"Dsq", b.Dsq}, {"lambda", b.lambda}, {"energy", b.energy}};
}

Json to_json(const FoldPoint& f) {
  return Json{{"cFold", f.cFold},
              {"UpsilonDsq", f.UpsilonDsq},
              {"LambdaMult", f.LambdaMult},
              {"closedFormC1", f.closedFormC1},
              {"relativeGap", f.relativeGap},
              {"slopeAtUpsilon", f.slopeAtUpsilon},
              {"probeC", f.probeC},
              {"upperOffset", f.upperOffset},
              {"lowerOffset", f.lowerOffset},
              {"upperLambdaOffset", f.upperLambdaOffset},
              {"lowerLambdaOffset", f.lowerLambdaOffset}};
}

Json to_json(const EnergyRatioReport& r) {
  return Json{{"alpha", r.alpha}, {"beta", r.beta}, {"mAlpha", r.mAlpha}, {"mBeta", r.mBeta}, {"ratio", r.ratio},
              {"q", r.q},         {"bound", r.bound}, {"slack", r.slack}, {"holds", r.holds}};
}

Json to_json(const BLimitReport& r) {
  Json j;
  j["params"] = to_json(r.params);
  j["closedForm"] = {{"Dsq", r.closedForm.Dsq}, {"lambda", r.closedForm.lambda}, {"energy", r.closedForm.energy}};
  j["atZero"] = to_json(r.atZero);
  j["zeroRowError"] = r.zeroRowError;
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"b", row.b}, {"Dsq", row.Dsq}, {"lambda", row.lambda}, {"energy", row.energy},
                    {"DsqError", row.DsqError}, {"lambdaError", row.lambdaError}});
  j["rows"] = std::move(rows);
  j["monotone"] = r.monotone;
  return j;
}

Json to_json(const HypothesisReport& r) {
  Json j;
  j["hypothesis"] = to_string(r.hypothesis);
  j["satisfied"] = r.satisfied;
  Json margins = Json::object();
  for (const auto& m : r.margins) margins[m.name] = {{"value", m.value}, {"strict", m.strict}, {"holds", m.holds()}};
  j["margins"] = std::move(margins);
  Json q = Json::object();
  for (const auto& [k, v] : r.quantities) q[k] = v;
  j["quantities"] = std::move(q);
  j["notes"] = r.notes;
  j["firstViolationRadius"] = r.firstViolationRadius ? Json(*r.firstViolationRadius) : Json(nullptr);
  return j;
}

Json to_json(const DilationBound& b, bool withPath) {
  Json j{{"maxValue", b.maxValue},
         {"argmaxH", b.argmaxH},
         {"argmaxShift", b.argmaxShift},
         {"m_c", b.mc},
         {"supV", b.supV},
         {"supBound", {{"applicable", b.supApplicable}, {"bound", b.supBound}, {"slack", b.supSlack}}},
         {"sobolevBound",
          {{"applicable", b.sobolevApplicable}, {"nuBar", b.nuBar}, {"nu", b.nu}, {"bound", b.sobolevBound}, {"slack", b.sobolevSlack}}}};
  if (withPath) {
    Json path = Json::array();
    for (const auto& [h, v] : b.path) path.push_back({h, v});
    j["path"] = std::move(path);
  }
  return j;
}

Json to_json(const FlowState& s) {
  return Json{{"mass", s.mass},
              {"energy", s.energy},
              {"multiplierEstimate", s.multiplierEstimate},
              {"gradientNormOnSphere", s.gradientNormOnSphere},
              {"step", s.step}};
}

namespace {

Json checks_json(const std::vector<Check>& checks) {
  Json j = Json::array();
  for (const auto& c : checks) j.push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"passed", c.passed}});
  return j;
}

}  // namespace

Json to_json(const VerifyReport& r) {
  Json j;
  j["params"] = to_json(r.params);
  j["regime"] = to_string(r.regime);
  j["cStar"] = r.cStar;
  j["profileChecks"] = checks_json(r.profileChecks);
  Json branches = Json::array();
  for (const auto& b : r.branches) {
    Json bj = to_json(b.branch);
    bj["checks"] = checks_json(b.checks);
    bj["pdeTooCoarse"] = b.pdeTooCoarse;
    branches.push_back(std::move(bj));
  }
  j["branches"] = std::move(branches);
  j["passed"] = r.passed;
  return j;
}

}  // namespace kirchhoff
