// Acceptance suite: one test case and one printed PASS/FAIL line per
// criterion. Criteria 4-9 exercise the full default grid.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>

#include "test_util.hpp"
#include "thornlab/audit.hpp"
#include "thornlab/formulas.hpp"
#include "thornlab/indices.hpp"
#include "thornlab/thorn.hpp"

using namespace thornlab;

namespace {

struct Criterion {
  bool ok = true;
  std::string detail;
  void expect(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      if (detail.empty()) detail = what;
    }
  }
};

void report(int number, const char* title, const Criterion& c) {
  std::printf("criterion %d (%s): %s%s%s\n", number, title, c.ok ? "PASS" : "FAIL",
              c.detail.empty() ? "" : " - ", c.detail.c_str());
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Shared full-grid artifacts, computed once.
struct GridRun {
  GridConfig config = GridConfig::default_grid();
  AuditReport single;      // one worker
  std::string single_json;
  AuditReport multi;       // several workers
  std::string multi_json;
  double single_seconds = 0.0;
};

const GridRun& grid_run() {
  static GridRun run_once = [] {
    GridRun g;
    auto start = std::chrono::steady_clock::now();
    g.single = run(g.config, 1);
    g.single_seconds = seconds_since(start);
    g.single_json = render(g.single, ReportFormat::Json);
    g.multi = run(g.config, 4);
    g.multi_json = render(g.multi, ReportFormat::Json);
    return g;
  }();
  return run_once;
}

const FormulaSummary* summary_for(const AuditReport& report, std::string_view id) {
  for (const FormulaSummary& s : report.summary)
    if (id == s.meta->id) return &s;
  return nullptr;
}

const AuditRecord* find_record(const AuditReport& report, std::string_view formula,
                               std::string_view base, int r, int s,
                               const std::vector<int>& thorns) {
  for (const AuditRecord& rec : report.records)
    if (formula == rec.meta->id && rec.point.base == base && rec.point.r == r &&
        rec.point.s == s && rec.point.thorns == thorns)
      return &rec;
  return nullptr;
}

long long copy_vertices(ThornType type, long long r, long long s) {
  switch (type) {
    case ThornType::I:
    case ThornType::II:
    case ThornType::III: return r - 1;
    case ThornType::IV: return r + s - 1;
    case ThornType::V:
    case ThornType::VI: return r;
    case ThornType::VII: return r + s;
  }
  return 0;
}

long long copy_edges(ThornType type, long long r, long long s) {
  switch (type) {
    case ThornType::I: return r - 1;
    case ThornType::II: return r;
    case ThornType::III: return r * (r - 1) / 2;
    case ThornType::IV: return r * s;
    case ThornType::V: return r + 1;
    case ThornType::VI: return r * (r - 1) / 2 + 1;
    case ThornType::VII: return r * s + 1;
  }
  return 0;
}

long long degree_shift(ThornType type, long long r, long long s) {
  switch (type) {
    case ThornType::I: return 1;
    case ThornType::II: return 2;
    case ThornType::III: return r - 1;
    case ThornType::IV: return s;
    case ThornType::V:
    case ThornType::VI:
    case ThornType::VII: return 1;
  }
  return 0;
}

template <typename Fn>
void for_each_grid_point(const GridConfig& cfg, const std::vector<BaseInstance>& bases,
                         Fn&& fn) {
  for (const BaseInstance& base : bases) {
    auto tvecs = thorn_vectors(cfg, base);
    for (ThornType type : cfg.types) {
      int lo = std::max(cfg.r_lo, min_r(type));
      for (int r = lo; r <= cfg.r_hi; ++r) {
        if (uses_s(type)) {
          for (int s = cfg.s_lo; s <= cfg.s_hi; ++s)
            for (const auto& tv : tvecs) fn(base, ThornSpec{type, r, s, tv});
        } else {
          for (const auto& tv : tvecs) fn(base, ThornSpec{type, r, 0, tv});
        }
      }
    }
  }
}

}  // namespace

TEST_CASE("criterion 1: closed-form index families") {
  Criterion c;
  auto start = std::chrono::steady_clock::now();
  for (int n = 3; n <= 50; ++n) {
    c.expect(hm(make_path(n)) == 16 * n - 30, "hm(P_" + std::to_string(n) + ") != 16n-30");
    c.expect(hm(make_cycle(n)) == 16 * n, "hm(C_" + std::to_string(n) + ") != 16n");
  }
  double elapsed = seconds_since(start);
  c.expect(elapsed < 1.0, "took " + std::to_string(elapsed) + "s, budget 1s");
  report(1, "hm(P_n) = 16n-30 and hm(C_n) = 16n for n in 3..50", c);
  CHECK(c.ok);
}

TEST_CASE("criterion 2: index identities on 500 random graphs") {
  Criterion c;
  std::mt19937_64 rng(500123);
  for (int trial = 0; trial < 500; ++trial) {
    Graph g = testutil::random_graph(rng, 12);
    Int m = static_cast<long long>(g.size());
    c.expect(hm(g) == em1(g) + 4 * m1(g) - 4 * m, "HM != EM1 + 4*M1 - 4m");
    c.expect(hm(g) == f_index(g) + 2 * m2(g), "HM != F + 2*M2");
  }
  report(2, "HM = EM1 + 4*M1 - 4m and HM = F + 2*M2 on 500 seeded graphs", c);
  CHECK(c.ok);
}

TEST_CASE("criterion 3: theorem spot checks") {
  Criterion c;
  Graph c3 = make_cycle(3);
  std::vector<int> ones{1, 1, 1};

  Int t1 = eval_theorem(FormulaId::T1, c3, ones, 3, 0);
  Int oracle1 = hm(build_type1(c3, ThornSpec{ThornType::I, 3, 0, ones}).graph);
  c.expect(t1 == 210, "T1 value " + to_decimal(t1) + " != 210");
  c.expect(oracle1 == 210, "type I oracle " + to_decimal(oracle1) + " != 210");

  Int t2 = eval_theorem(FormulaId::T2, c3, ones, 3, 0);
  Int c2 = eval_corollary(FormulaId::C2, 3, 3, hm(c3), m1(c3), 1, 3, 0);
  Int oracle2 = hm(build_type2(c3, ThornSpec{ThornType::II, 3, 0, ones}).graph);
  c.expect(t2 == 456, "T2 value " + to_decimal(t2) + " != 456");
  c.expect(c2 == 456, "C2 value " + to_decimal(c2) + " != 456");
  c.expect(oracle2 == 456, "type II oracle " + to_decimal(oracle2) + " != 456");

  report(3, "T1(C_3,t=1,r=3) = 210 and T2 = C2 = 456, both equal to the oracle", c);
  CHECK(c.ok);
}

TEST_CASE("criterion 4: construction postconditions over the default grid") {
  Criterion c;
  auto start = std::chrono::steady_clock::now();
  GridConfig cfg = GridConfig::default_grid();
  auto bases = materialize_bases(cfg);
  long long points = 0;
  for_each_grid_point(cfg, bases, [&](const BaseInstance& base, const ThornSpec& spec) {
    ++points;
    DecoratedGraph built = build(base.graph, spec);
    long long total_t = 0;
    for (int t : spec.thorns) total_t += t;
    long long want_n =
        base.graph.order() + total_t * copy_vertices(spec.type, spec.r, spec.s);
    long long want_m =
        static_cast<long long>(base.graph.size()) + total_t * copy_edges(spec.type, spec.r, spec.s);
    c.expect(built.graph.order() == want_n, "vertex count mismatch at " + base.desc);
    c.expect(static_cast<long long>(built.graph.size()) == want_m,
             "edge count mismatch at " + base.desc);
    long long shift = degree_shift(spec.type, spec.r, spec.s);
    for (std::uint32_t v = 0; v < base.graph.order(); ++v)
      c.expect(built.graph.degrees()[v] ==
                   base.graph.degrees()[v] + shift * spec.thorns[v],
               "degree shift mismatch at " + base.desc);
  });
  double elapsed = seconds_since(start);
  c.expect(points > 10000, "grid unexpectedly small");
  c.expect(elapsed < 30.0, "took " + std::to_string(elapsed) + "s, budget 30s");
  report(4, "n', m', degree shifts exact on all grid points", c);
  CHECK(c.ok);
}

TEST_CASE("criterion 5: t = 0 degeneracy over the default grid") {
  Criterion c;
  GridConfig cfg = GridConfig::default_grid();
  auto bases = materialize_bases(cfg);
  for (const BaseInstance& base : bases) {
    Int base_hm = hm(base.graph);
    std::vector<int> zero(base.graph.order(), 0);
    for (ThornType type : cfg.types) {
      int lo = std::max(cfg.r_lo, min_r(type));
      for (int r = lo; r <= cfg.r_hi; ++r) {
        if (uses_s(type)) {
          for (int s = cfg.s_lo; s <= cfg.s_hi; ++s) {
            ThornSpec spec{type, r, s, zero};
            c.expect(hm(build(base.graph, spec).graph) == base_hm,
                     "t=0 changed hm at " + base.desc);
          }
        } else {
          ThornSpec spec{type, r, 0, zero};
          c.expect(hm(build(base.graph, spec).graph) == base_hm,
                   "t=0 changed hm at " + base.desc);
        }
      }
    }
  }
  report(5, "hm(build(G, t=0)) = hm(G) for every type and base", c);
  CHECK(c.ok);
}

TEST_CASE("criterion 6: cross-type coincidences") {
  Criterion c;
  GridConfig cfg = GridConfig::default_grid();
  auto bases = materialize_bases(cfg);
  for (const BaseInstance& base : bases) {
    for (const auto& tv : thorn_vectors(cfg, base)) {
      Int a = hm(build(base.graph, ThornSpec{ThornType::II, 3, 0, tv}).graph);
      Int b = hm(build(base.graph, ThornSpec{ThornType::III, 3, 0, tv}).graph);
      c.expect(a == b, "type II r=3 vs type III r=3 differ at " + base.desc);
      Int d = hm(build(base.graph, ThornSpec{ThornType::V, 3, 0, tv}).graph);
      Int e = hm(build(base.graph, ThornSpec{ThornType::VI, 3, 0, tv}).graph);
      c.expect(d == e, "type V r=3 vs type VI r=3 differ at " + base.desc);
      Int f = hm(build(base.graph, ThornSpec{ThornType::VI, 2, 0, tv}).graph);
      Int g = hm(build(base.graph, ThornSpec{ThornType::VII, 1, 1, tv}).graph);
      c.expect(f == g, "type VI r=2 vs type VII r=s=1 differ at " + base.desc);
    }
  }
  report(6, "II=III at r=3, V=VI at r=3, VI(r=2)=VII(r=s=1) on all bases and t", c);
  CHECK(c.ok);
}

TEST_CASE("criterion 7: full default-grid audit") {
  Criterion c;
  const GridRun& g = grid_run();

  c.expect(g.single_json == g.multi_json, "reports differ between 1 and 4 workers");
  c.expect(!g.single.records.empty(), "no records produced");

  // Every formula is classified: tested with zero mismatches, or tested with
  // a concrete first counterexample.
  for (const FormulaSummary& s : g.single.summary) {
    c.expect(s.tested > 0, std::string(s.meta->id) + " has no applicable points");
    c.expect((s.mismatched > 0) == s.first_counterexample.has_value(),
             std::string(s.meta->id) + " classification is inconsistent");
    c.expect(s.tested == s.matched + s.mismatched,
             std::string(s.meta->id) + " counts do not add up");
  }

  const FormulaSummary* t2 = summary_for(g.single, "T2");
  c.expect(t2 && t2->tested > 0 && t2->mismatched == 0, "T2 is not all-MATCH");

  const AuditRecord* t1 = find_record(g.single, "T1", "cycle:3", 2, 0, {1, 1, 1});
  c.expect(t1 != nullptr, "T1 record at (cycle:3, r=2, t=1) missing");
  if (t1) {
    c.expect(t1->status == AuditStatus::Mismatch, "T1 at r=2 not a MISMATCH");
    c.expect(t1->delta && *t1->delta == 6,
             "T1 delta is " + (t1->delta ? to_decimal(*t1->delta) : "none") + ", want 6");
    c.expect(t1->closed && *t1->closed == 162 && t1->oracle && *t1->oracle == 156,
             "T1 values differ from 162/156");
  }

  const AuditRecord* c1 = find_record(g.single, "C1", "cycle:3", 3, 0, {1, 1, 1});
  c.expect(c1 != nullptr, "C1 record at (cycle:3, r=3, t=1) missing");
  if (c1) {
    c.expect(c1->status == AuditStatus::Mismatch, "C1 at r=3 not a MISMATCH");
    c.expect(c1->delta && *c1->delta == 24,
             "C1 delta is " + (c1->delta ? to_decimal(*c1->delta) : "none") + ", want 24");
  }

  // Reported counterexamples re-evaluate to their recorded values.
  auto bases = materialize_bases(g.config);
  for (const FormulaSummary& s : g.single.summary) {
    if (!s.first_counterexample) continue;
    const Counterexample& ce = *s.first_counterexample;
    auto it = std::find_if(bases.begin(), bases.end(),
                           [&](const BaseInstance& b) { return b.desc == ce.point.base; });
    c.expect(it != bases.end(), "counterexample base not in grid: " + ce.point.base);
    if (it == bases.end()) continue;
    AuditRecord rec =
        compare(*s.meta, *it, ThornSpec{s.meta->type, ce.point.r, ce.point.s, ce.point.thorns});
    c.expect(rec.status == AuditStatus::Mismatch &&
                 rec.closed && *rec.closed == ce.closed && rec.oracle &&
                 *rec.oracle == ce.oracle && rec.delta && *rec.delta == ce.delta,
             std::string(s.meta->id) + " counterexample does not re-evaluate");
  }

  report(7, "audit deterministic, classified, counterexamples reproducible", c);
  CHECK(c.ok);
}

TEST_CASE("criterion 8: every cataloged formula is fully checked at desk scale") {
  Criterion c;
  const GridRun& g = grid_run();
  c.expect(g.single.summary.size() == list_formulas().size(),
           "summary does not cover the whole registry");
  for (const FormulaSummary& s : g.single.summary)
    c.expect(s.tested > 0, std::string(s.meta->id) + " untested in the default grid");
  report(8, "default grid exercises all 32 registry entries", c);
  CHECK(c.ok);
}

TEST_CASE("criterion 9: single-worker runtime") {
  Criterion c;
  const GridRun& g = grid_run();
  c.expect(g.single_seconds < 60.0,
           "single-worker audit took " + std::to_string(g.single_seconds) + "s, budget 60s");
  report(9, "default grid single-worker audit under 60s", c);
  std::printf("  (measured %.2fs for %zu records)\n", g.single_seconds,
              g.single.records.size());
  CHECK(c.ok);
}
