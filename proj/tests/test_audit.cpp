#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "test_util.hpp"
#include "thornlab/audit.hpp"
#include "thornlab/indices.hpp"

using namespace thornlab;

namespace {

GridConfig t2_config() {
  GridConfig cfg = GridConfig::default_grid();
  cfg.bases = {{BaseFamily::Cycle, 3, 6, 0, 0, 0, 0, 0, {}}};
  cfg.types = {ThornType::II};
  cfg.r_lo = 3;
  cfg.r_hi = 5;
  TMode uniform;
  uniform.kind = TMode::Kind::Uniform;
  uniform.values = {0, 1, 2};
  cfg.t_modes = {uniform};
  cfg.formulas = {"T2"};
  return cfg;
}

GridConfig small_mixed_config() {
  GridConfig cfg = GridConfig::default_grid();
  cfg.bases = {{BaseFamily::Path, 3, 4, 0, 0, 0, 0, 0, {}},
               {BaseFamily::Cycle, 3, 4, 0, 0, 0, 0, 0, {}},
               {BaseFamily::CompleteBipartite, 0, 0, 1, 2, 1, 2, 0, {}},
               {BaseFamily::Random, 4, 6, 0, 0, 0, 0, 3, {}}};
  cfg.r_hi = 4;
  cfg.s_hi = 2;
  TMode uniform;
  uniform.kind = TMode::Kind::Uniform;
  uniform.values = {0, 1, 2};
  TMode random_vectors;
  random_vectors.kind = TMode::Kind::Random;
  random_vectors.count = 2;
  random_vectors.max = 2;
  cfg.t_modes = {uniform, random_vectors};
  return cfg;
}

BaseInstance cycle3() { return make_base("cycle:3"); }

}  // namespace

TEST_CASE("compare spot records") {
  BaseInstance base = cycle3();
  ThornSpec match_spec = ThornSpec::uniform(ThornType::I, 3, 1, 3);
  AuditRecord rec = compare("T1", base, match_spec);
  CHECK(rec.status == AuditStatus::Match);
  CHECK(*rec.closed == 210);
  CHECK(*rec.oracle == 210);
  CHECK(*rec.delta == 0);

  ThornSpec pendant_spec = ThornSpec::uniform(ThornType::I, 3, 1, 2);
  rec = compare("T1", base, pendant_spec);
  CHECK(rec.status == AuditStatus::Mismatch);
  CHECK(*rec.closed == 162);
  CHECK(*rec.oracle == 156);
  CHECK(*rec.delta == 6);

  rec = compare("C1", base, match_spec);
  CHECK(rec.status == AuditStatus::Mismatch);
  CHECK(*rec.closed == 234);
  CHECK(*rec.oracle == 210);
  CHECK(*rec.delta == 24);

  ThornSpec mixed{ThornType::I, 3, 0, {1, 2, 0}};
  rec = compare("C1", base, mixed);
  CHECK(rec.status == AuditStatus::Inapplicable);
  CHECK_FALSE(rec.closed.has_value());
  CHECK_FALSE(rec.oracle.has_value());
  CHECK_FALSE(rec.delta.has_value());

  CHECK_THROWS_AS(compare("nope", base, match_spec), std::invalid_argument);
  CHECK_THROWS_AS(compare("T2", base, match_spec), std::invalid_argument);  // type I spec
}

TEST_CASE("T2 sweep matches everywhere") {
  AuditReport report = run(t2_config());
  CHECK(report.summary.size() == 1);
  const FormulaSummary& s = report.summary.front();
  CHECK(s.meta->id == std::string("T2"));
  CHECK(s.tested == 4 * 3 * 3);  // bases x r values x t values
  CHECK(s.mismatched == 0);
  CHECK(s.matched == s.tested);
  CHECK_FALSE(s.first_counterexample.has_value());
  CHECK_FALSE(report.has_mismatch());
}

TEST_CASE("empty grid yields an empty report") {
  GridConfig cfg = t2_config();
  cfg.bases.clear();
  AuditReport report = run(cfg);
  CHECK(report.records.empty());
  CHECK_FALSE(report.has_mismatch());
  std::string text = render(report, ReportFormat::Json);
  AuditReport back = parse_report_json(text);
  CHECK(render(back, ReportFormat::Json) == text);
}

TEST_CASE("determinism across runs and worker counts") {
  GridConfig cfg = small_mixed_config();
  std::string one = render(run(cfg, 1), ReportFormat::Json);
  std::string again = render(run(cfg, 1), ReportFormat::Json);
  std::string four = render(run(cfg, 4), ReportFormat::Json);
  CHECK(one == again);
  CHECK(one == four);
}

TEST_CASE("records are canonically ordered and complete") {
  GridConfig cfg = small_mixed_config();
  AuditReport report = run(cfg);
  CHECK(!report.records.empty());
  // Formula-major order, ties broken by base family, keys, then point.
  for (std::size_t i = 1; i < report.records.size(); ++i) {
    const AuditRecord& a = report.records[i - 1];
    const AuditRecord& b = report.records[i];
    CHECK(a.meta->fid <= b.meta->fid);
  }
  // Inapplicable points are recorded, not skipped: E2a pairs with every
  // type II point, including cycle and bipartite bases.
  long long e2a_inapplicable = 0;
  for (const AuditRecord& rec : report.records)
    if (rec.meta->fid == FormulaId::E2a && rec.status == AuditStatus::Inapplicable)
      ++e2a_inapplicable;
  CHECK(e2a_inapplicable > 0);
  // Every t = 0 record of a theorem entry matches HM of its base, so no
  // theorem mismatch record can carry t = 0... except T5, whose statement
  // keeps t-free terms.
  for (const AuditRecord& rec : report.records) {
    bool zero = std::all_of(rec.point.thorns.begin(), rec.point.thorns.end(),
                            [](int t) { return t == 0; });
    if (!zero || rec.status != AuditStatus::Mismatch) continue;
    bool t_free_terms = rec.meta->fid == FormulaId::T5 || rec.meta->fid == FormulaId::C5 ||
                        rec.meta->fid == FormulaId::E5a || rec.meta->fid == FormulaId::E5b;
    CHECK(t_free_terms);
  }
}

TEST_CASE("counterexamples re-evaluate to their recorded values") {
  GridConfig cfg = small_mixed_config();
  AuditReport report = run(cfg);
  auto bases = materialize_bases(cfg);
  int verified = 0;
  for (const FormulaSummary& s : report.summary) {
    if (!s.first_counterexample) continue;
    const Counterexample& ce = *s.first_counterexample;
    auto it = std::find_if(bases.begin(), bases.end(),
                           [&](const BaseInstance& b) { return b.desc == ce.point.base; });
    REQUIRE(it != bases.end());
    ThornSpec spec{s.meta->type, ce.point.r, ce.point.s, ce.point.thorns};
    AuditRecord rec = compare(*s.meta, *it, spec);
    CHECK(rec.status == AuditStatus::Mismatch);
    CHECK(*rec.closed == ce.closed);
    CHECK(*rec.oracle == ce.oracle);
    CHECK(*rec.delta == ce.delta);
    ++verified;
  }
  CHECK(verified > 0);
}

TEST_CASE("first_counterexample") {
  GridConfig cfg = small_mixed_config();
  auto ce = first_counterexample("C1", cfg);
  REQUIRE(ce.has_value());
  CHECK(ce->delta != 0);
  CHECK(ce->closed - ce->oracle == ce->delta);

  CHECK_FALSE(first_counterexample("T2", t2_config()).has_value());
  CHECK_THROWS_AS(first_counterexample("nope", cfg), std::invalid_argument);
}

TEST_CASE("config json round trip") {
  GridConfig cfg = GridConfig::default_grid();
  std::string text = cfg.to_json();
  GridConfig back = GridConfig::from_json(text);
  CHECK(back.to_json() == text);

  GridConfig parsed = GridConfig::from_json(R"({
    "bases": [
      {"family": "cycle", "n_range": [3, 6]},
      {"family": "complete_bipartite", "r_range": [1, 2], "s_range": [1, 3]}
    ],
    "types": ["II", "IV"],
    "r_range": [1, 5],
    "s_range": [1, 3],
    "t_modes": [
      {"mode": "uniform", "values": [0, 2]},
      {"mode": "explicit", "vectors": [[1, 0, 2]]},
      {"mode": "random", "count": 2, "max": 3}
    ],
    "formulas": ["T2", "T4"],
    "require_connected": true,
    "seed": 7
  })");
  CHECK(parsed.bases.size() == 2);
  CHECK(parsed.types == std::vector<ThornType>{ThornType::II, ThornType::IV});
  CHECK(parsed.seed == 7);
  CHECK(GridConfig::from_json(parsed.to_json()).to_json() == parsed.to_json());
}

TEST_CASE("config validation errors") {
  CHECK_THROWS_AS(GridConfig::from_json("{"), ConfigError);
  CHECK_THROWS_AS(GridConfig::from_json(R"({"zzz": 1})"), ConfigError);
  CHECK_THROWS_AS(GridConfig::from_json(R"({"types": ["VIII"]})"), ConfigError);
  CHECK_THROWS_AS(GridConfig::from_json(R"({"formulas": ["T9"]})"), ConfigError);
  CHECK_THROWS_AS(GridConfig::from_json(R"({"r_range": [5, 2]})"), ConfigError);
  CHECK_THROWS_AS(GridConfig::from_json(R"({"bases": [{"family": "cycle", "n_range": [2, 5]}]})"),
                  ConfigError);
  CHECK_THROWS_AS(
      GridConfig::from_json(R"({"t_modes": [{"mode": "uniform", "values": [-1]}]})"),
      ConfigError);
  CHECK_THROWS_AS(GridConfig::from_json(R"({"types": ["II"], "r_range": [1, 2]})"),
                  ConfigError);  // no valid r for type II
  // Integers may arrive as decimal strings (the canonical echo form).
  GridConfig cfg = GridConfig::from_json(R"({"seed": "123", "r_range": ["1", "6"]})");
  CHECK(cfg.seed == 123);
}

TEST_CASE("report json round trip") {
  GridConfig cfg = small_mixed_config();
  AuditReport report = run(cfg);
  std::string text = render(report, ReportFormat::Json);
  AuditReport back = parse_report_json(text);
  CHECK(render(back, ReportFormat::Json) == text);
  CHECK(back.records.size() == report.records.size());
  CHECK(back.has_mismatch() == report.has_mismatch());
}

TEST_CASE("csv and markdown rendering") {
  GridConfig cfg = t2_config();
  AuditReport report = run(cfg);
  std::string csv = render(report, ReportFormat::Csv);
  std::size_t rows = std::count(csv.begin(), csv.end(), '\n');
  CHECK(rows == report.records.size() + 1);
  CHECK(csv.rfind("formula,base,n,r,s,t,closed,oracle,delta,status\n", 0) == 0);

  std::string md = render(report, ReportFormat::Markdown);
  CHECK(md.find("| T2 |") != std::string::npos);
  CHECK(md.find("(none)") != std::string::npos);

  CHECK(report_format_from_string("json").has_value());
  CHECK_FALSE(report_format_from_string("xml").has_value());
}

TEST_CASE("thorn vectors honor modes and deduplicate") {
  GridConfig cfg = GridConfig::default_grid();
  TMode uniform;
  uniform.kind = TMode::Kind::Uniform;
  uniform.values = {0, 1, 0};  // duplicate value
  TMode explicit_mode;
  explicit_mode.kind = TMode::Kind::Explicit;
  explicit_mode.vectors = {{1, 1, 1}, {0, 2}};  // second one has the wrong length
  TMode random_mode;
  random_mode.kind = TMode::Kind::Random;
  random_mode.count = 3;
  random_mode.max = 2;
  cfg.t_modes = {uniform, explicit_mode, random_mode};
  BaseInstance base = cycle3();
  auto vecs = thorn_vectors(cfg, base);
  for (const auto& v : vecs) CHECK(v.size() == 3);
  std::set<std::vector<int>> unique(vecs.begin(), vecs.end());
  CHECK(unique.size() == vecs.size());
  CHECK(std::count(vecs.begin(), vecs.end(), std::vector<int>{0, 0, 0}) == 1);
  CHECK(std::count(vecs.begin(), vecs.end(), std::vector<int>{1, 1, 1}) == 1);
  // Deterministic for a fixed seed.
  CHECK(thorn_vectors(cfg, base) == vecs);
}

TEST_CASE("materialized bases are deterministic and connected") {
  GridConfig cfg = GridConfig::default_grid();
  auto bases = materialize_bases(cfg);
  CHECK(bases.size() == 6 + 6 + 4 + 16 + 20);
  for (const BaseInstance& b : bases) CHECK(b.graph.connected());
  auto again = materialize_bases(cfg);
  REQUIRE(again.size() == bases.size());
  for (std::size_t i = 0; i < bases.size(); ++i) {
    CHECK(bases[i].desc == again[i].desc);
    CHECK(bases[i].graph == again[i].graph);
  }
}

TEST_CASE("file bases and the connectivity requirement") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "thornlab_test_audit";
  fs::create_directories(dir);
  fs::path disconnected = dir / "disconnected.el";
  {
    std::ofstream out(disconnected);
    out << "0 1\n2 3\n";
  }
  GridConfig cfg = t2_config();
  cfg.bases = {{BaseFamily::File, 0, 0, 0, 0, 0, 0, 0, disconnected.string()}};
  CHECK_THROWS_AS(materialize_bases(cfg), ConfigError);
  cfg.require_connected = false;
  auto bases = materialize_bases(cfg);
  REQUIRE(bases.size() == 1);
  CHECK(bases[0].graph.order() == 4);

  cfg.bases = {{BaseFamily::File, 0, 0, 0, 0, 0, 0, 0, (dir / "missing.el").string()}};
  CHECK_THROWS_AS(materialize_bases(cfg), ConfigError);
  fs::remove_all(dir);
}
