#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "thornlab/base.hpp"
#include "thornlab/exact.hpp"
#include "thornlab/graph.hpp"
#include "thornlab/thorn.hpp"

namespace thornlab {

// The shared accumulators every cataloged closed form is built from: base
// graph invariants plus the eight vertex/edge sums over the attachment
// counts t_i.
struct SumBundle {
  long long n = 0;  // base order
  long long m = 0;  // base size
  Int hm;           // HM(G)
  Int m1;           // M1(G)
  Int et;           // sum over edges of (d_i + d_j)(t_i + t_j)
  Int et2;          // sum over edges of (t_i + t_j)^2
  Int td2;          // sum over vertices of t_i * d_i^2
  Int t2d;          // sum over vertices of t_i^2 * d_i
  Int td;           // sum over vertices of t_i * d_i
  Int t;            // sum of t_i
  Int t2;           // sum of t_i^2
  Int t3;           // sum of t_i^3
};

SumBundle sum_bundle(const Graph& g, std::span<const int> thorns);

// Stable identifiers for every cataloged closed form. Declaration order is
// the canonical registry (and report) order.
enum class FormulaId {
  T1, T2, T3, T3_proof, T4, T5, T6, T7,
  C1, C2, C3, C4, C4R, C5, C6, C7,
  E1a, E1b, E2a, E2b, E3a, E3b, E4a_rs, E4b_rs,
  E5a, E5b, E6a, E6b, E7a, E7a_rst, E7b, E7b_rst,
};

// Theorem entries take per-vertex t vectors; corollaries require uniform t;
// examples additionally fix the base family (path or cycle) and substitute
// m = n-1 or m = n. Variant marks an alternate transcription of a theorem
// kept alongside the primary entry for comparison.
enum class FormulaKind { Theorem, Corollary, Example, Variant };

struct FormulaMeta {
  FormulaId fid;
  const char* id;
  FormulaKind kind;
  ThornType type;
  bool uniform_only;      // requires t_i = t for all i
  bool family_bound;      // requires the base family below
  BaseFamily family;      // Path or Cycle when family_bound
  bool needs_r_eq_s;
  bool needs_t_eq_r;      // the r = s = t sub-cases
  int min_r;
  int min_s;              // 0 for types without an s parameter
  const char* expression; // the evaluated right-hand side, as cataloged
};

std::span<const FormulaMeta> list_formulas();
const FormulaMeta* find_formula(std::string_view id);
const FormulaMeta& formula_meta(FormulaId fid);

// FNV-1a hash of the registry (ids and expressions); embedded in reports and
// --version output so results are traceable to an exact catalog.
std::string registry_hash();

// True iff the formula's stated domain covers the point. The thorn vector
// must already satisfy the ThornSpec invariants for the base.
bool applicable(const FormulaMeta& meta, BaseFamily family, std::span<const int> thorns,
                int r, int s, std::string* why = nullptr);

Int eval_theorem(FormulaId fid, const SumBundle& bundle, int r, int s);
Int eval_theorem(FormulaId fid, const Graph& base, std::span<const int> thorns, int r, int s);
Int eval_corollary(FormulaId fid, long long n, long long m, const Int& hm_g,
                   const Int& m1_g, long long t, int r, int s);
Int eval_example(FormulaId fid, long long n, long long t, int r, int s);

// Dispatch on the entry kind; throws std::invalid_argument when the point is
// outside the formula's stated domain.
Int evaluate(const FormulaMeta& meta, const Graph& base, BaseFamily family,
             std::span<const int> thorns, int r, int s);

}  // namespace thornlab
