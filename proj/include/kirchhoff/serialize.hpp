#pragma once

#include "kirchhoff/bounds.hpp"
#include "kirchhoff/gn_profile.hpp"
#include "kirchhoff/gradient_flow.hpp"
#include "kirchhoff/hypotheses.hpp"
#include "kirchhoff/limit_solver.hpp"
#include "kirchhoff/verify.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kirchhoff {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;
using Meta = std::vector<std::pair<std::string, std::string>>;

/// Scientific notation with 17 significant digits, independent of the locale.
/// Non-finite values print as inf, -inf, nan.
std::string format_number(double x);

/// Comment-prefixed CSV: "# kind", "# schema_version", then the metadata,
/// then the column header and rows.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
  std::string str(std::string_view kind, const Meta& meta) const;
};

Meta model_meta(const ModelParams& m);
Meta problem_meta(const ProblemParams& p);
Json to_json(const ModelParams& m);
Json to_json(const ProblemParams& p);

std::string table_csv(const BifurcationTable& t);
Json table_json(const BifurcationTable& t);

/// Columns r, u.
std::string field_csv(const RadialField& f, std::string_view kind, const Meta& meta);

/// Columns step, energy, gradientNorm, multiplierEstimate.
std::string flow_trace_csv(const FlowResult& r, const Meta& meta);

Json to_json(const LimitBranch& b);
Json to_json(const FoldPoint& f);
Json to_json(const EnergyRatioReport& r);
Json to_json(const BLimitReport& r);
Json to_json(const HypothesisReport& r);
Json to_json(const DilationBound& b, bool withPath = false);
Json to_json(const FlowState& s);
Json to_json(const VerifyReport& r);

/// Payload with schema_version and kind first.
Json envelope(std::string_view kind);

}  // namespace kirchhoff
