#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "thornlab/base.hpp"
#include "thornlab/exact.hpp"
#include "thornlab/formulas.hpp"
#include "thornlab/thorn.hpp"

namespace thornlab {

// Invalid audit grid configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BaseConfig {
  BaseFamily family = BaseFamily::Path;
  // path/cycle/complete/star: n range; complete_bipartite: r and s ranges;
  // random: count plus n range; file: path.
  int n_lo = 0, n_hi = 0;
  int r_lo = 0, r_hi = 0;
  int s_lo = 0, s_hi = 0;
  int count = 0;
  std::string path;
};

struct TMode {
  enum class Kind { Uniform, Explicit, Random };
  Kind kind = Kind::Uniform;
  std::vector<int> values;                 // uniform
  std::vector<std::vector<int>> vectors;   // explicit; applied where lengths match
  int count = 0;                           // random
  int max = 0;                             // random
};

// Parameter grid: every (base, type, r, s, t-vector) combination is one
// construction point; each cataloged formula of that thorn type yields one
// record per point. Random pieces are derived from the seed, so a config
// fully determines its report.
struct GridConfig {
  std::vector<BaseConfig> bases;
  std::vector<ThornType> types;
  int r_lo = 1, r_hi = 6;   // clamped up to each type's minimum
  int s_lo = 1, s_hi = 4;
  std::vector<TMode> t_modes;
  std::vector<std::string> formulas;  // registry ids; empty = all
  bool require_connected = true;
  std::uint64_t seed = 42;

  static GridConfig default_grid();
  static GridConfig from_json(const std::string& text);  // throws ConfigError
  std::string to_json() const;                           // canonical echo
};

void validate(const GridConfig& config);  // throws ConfigError

enum class AuditStatus { Match, Mismatch, Inapplicable };

std::string_view to_string(AuditStatus status);
std::optional<AuditStatus> audit_status_from_string(std::string_view name);

struct AuditPoint {
  std::string base;  // canonical descriptor, e.g. "cycle:3"
  BaseFamily family = BaseFamily::Path;
  long long base_key0 = 0;
  long long base_key1 = 0;
  int n = 0;  // base order
  int r = 0;
  int s = 0;
  std::vector<int> thorns;
};

// One (formula, point) comparison. MATCH iff delta == 0; INAPPLICABLE records
// carry no values. The oracle side is always hm(build(base, spec)) computed
// from the constructed edge set and never consults the formula registry.
struct AuditRecord {
  const FormulaMeta* meta = nullptr;
  AuditPoint point;
  std::optional<Int> closed;
  std::optional<Int> oracle;
  std::optional<Int> delta;
  AuditStatus status = AuditStatus::Inapplicable;
};

struct Counterexample {
  AuditPoint point;
  Int closed;
  Int oracle;
  Int delta;
};

struct FormulaSummary {
  const FormulaMeta* meta = nullptr;
  long long tested = 0;  // applicable records
  long long matched = 0;
  long long mismatched = 0;
  long long inapplicable = 0;
  std::optional<Counterexample> first_counterexample;  // first in canonical order
};

struct AuditReport {
  std::string version;
  std::string registry;
  GridConfig config;
  std::vector<AuditRecord> records;   // canonical order
  std::vector<FormulaSummary> summary;
  bool has_mismatch() const;
};

// Expand the configured base families into concrete graphs, in configuration
// order with duplicates dropped. Throws ConfigError on unreadable files or,
// when require_connected is set, on a disconnected base.
std::vector<BaseInstance> materialize_bases(const GridConfig& config);

// The deduplicated thorn vectors the grid applies to one base.
std::vector<std::vector<int>> thorn_vectors(const GridConfig& config,
                                            const BaseInstance& base);

// Single comparison, both sides computed from scratch. status Inapplicable
// when the formula's stated domain excludes the point.
AuditRecord compare(const FormulaMeta& meta, const BaseInstance& base, const ThornSpec& spec);
AuditRecord compare(std::string_view formula_id, const BaseInstance& base,
                    const ThornSpec& spec);

// Full grid sweep. workers <= 0 selects the hardware concurrency; the
// THORNLAB_WORKERS environment variable caps the effective count. Reports are
// byte-identical regardless of the worker count.
AuditReport run(const GridConfig& config, int workers = 0);

std::optional<Counterexample> first_counterexample(std::string_view formula_id,
                                                   const GridConfig& config);

enum class ReportFormat { Json, Csv, Markdown };

std::optional<ReportFormat> report_format_from_string(std::string_view name);

std::string render(const AuditReport& report, ReportFormat format);

// Inverse of render(report, Json); render(parse_report_json(text), Json)
// reproduces text byte for byte.
AuditReport parse_report_json(const std::string& text);

}  // namespace thornlab
