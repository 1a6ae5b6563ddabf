#include "thornlab/formulas.hpp"

#include <algorithm>
#include <stdexcept>

#include "thornlab/indices.hpp"

namespace thornlab {

SumBundle sum_bundle(const Graph& g, std::span<const int> thorns) {
  if (thorns.size() != g.order())
    throw std::invalid_argument("sum_bundle: thorn vector has length " +
                                std::to_string(thorns.size()) + ", base order is " +
                                std::to_string(g.order()));
  for (int t : thorns)
    if (t < 0) throw std::invalid_argument("sum_bundle: thorn counts must be non-negative");
  SumBundle b;
  b.n = g.order();
  b.m = static_cast<long long>(g.size());
  b.hm = hm(g);
  b.m1 = m1(g);
  const auto& deg = g.degrees();
  for (const Edge& e : g.edges()) {
    Int dsum = static_cast<long long>(deg[e.u]) + deg[e.v];
    Int tsum = static_cast<long long>(thorns[e.u]) + thorns[e.v];
    b.et += dsum * tsum;
    b.et2 += tsum * tsum;
  }
  for (std::uint32_t v = 0; v < g.order(); ++v) {
    Int d = static_cast<long long>(deg[v]);
    Int t = static_cast<long long>(thorns[v]);
    b.td2 += t * d * d;
    b.t2d += t * t * d;
    b.td += t * d;
    b.t += t;
    b.t2 += t * t;
    b.t3 += t * t * t;
  }
  return b;
}

namespace {

// Each expression string is the exact right-hand side the evaluator computes,
// in the SumBundle vocabulary for general entries and in (n, m, t, r, s) with
// HM(G), M1(G) for uniform and family-bound entries. Entries are never
// simplified or corrected; the audit exists to compare them against direct
// computation.
constexpr FormulaMeta kRegistry[] = {
    {FormulaId::T1, "T1", FormulaKind::Theorem, ThornType::I, false, false,
     BaseFamily::Path, false, false, 2, 0,
     "HM(G) + 2*S_et + S_et2 + (16r-35)*S_t + S_td2 + S_t3 + 4*S_t2 + 2*S_t2d + 4*S_td"},
    {FormulaId::T2, "T2", FormulaKind::Theorem, ThornType::II, false, false,
     BaseFamily::Path, false, false, 3, 0,
     "HM(G) + 4*S_et + 4*S_et2 + 2*S_td2 + 8*(S_t2d + S_td + S_t3 + 2*S_t2) + (16r-24)*S_t"},
    {FormulaId::T3, "T3", FormulaKind::Theorem, ThornType::III, false, false,
     BaseFamily::Path, false, false, 3, 0,
     "HM(G) + 2(r-1)*S_et + (r-1)^2*S_et2 + (r-1)*S_td2 + 2(r-1)^2*(S_t2d + S_td) + "
     "(r-1)^3*(S_t3 + 2*S_t2 + (2r-1)*S_t)"},
    {FormulaId::T3_proof, "T3_proof", FormulaKind::Variant, ThornType::III, false, false,
     BaseFamily::Path, false, false, 3, 0,
     "HM(G) + 2(r-1)*S_et + (r-1)^2*S_et2 + (r-1)*S_td2 + 2(r-1)^2*(S_t2d + S_td) + "
     "(r-1)^3*(S_t3 + 2*S_t2 + 2(r-1)*S_t)"},
    {FormulaId::T4, "T4", FormulaKind::Theorem, ThornType::IV, false, false,
     BaseFamily::Path, false, false, 1, 1,
     "HM(G) + 2s*S_et + s*(S_td + (r + s^2 + r^2 + 2rs)*S_t + s*S_t2)"},
    {FormulaId::T5, "T5", FormulaKind::Theorem, ThornType::V, false, false,
     BaseFamily::Path, false, false, 3, 0,
     "HM(G) + 2*S_et + S_et2 + M1(G) + 2*S_td + S_t2 + (16r-24)*S_t + 9n + 12m"},
    {FormulaId::T6, "T6", FormulaKind::Theorem, ThornType::VI, false, false,
     BaseFamily::Path, false, false, 1, 0,
     "HM(G) + 2*S_et + S_et2 + S_td + S_t2 + (2r^4 - 6r^3 - 10r^2 + 15r)*S_t"},
    {FormulaId::T7, "T7", FormulaKind::Theorem, ThornType::VII, false, false,
     BaseFamily::Path, false, false, 1, 1,
     "HM(G) + S_et + S_et2 + S_td2 + 2*S_t2d + S_t3 + 2(s+1)*S_td + 2*S_t2 + "
     "(s^2 + 3s + 2s(s+r)(s+r+1) + 1)*S_t"},

    {FormulaId::C1, "C1", FormulaKind::Corollary, ThornType::I, true, false,
     BaseFamily::Path, false, false, 2, 0,
     "HM(G) + 5t*M1(G) + 8mt^2 + nt^3 + 4nt^2 + 16mt + 16rnt - 35nt"},
    {FormulaId::C2, "C2", FormulaKind::Corollary, ThornType::II, true, false,
     BaseFamily::Path, false, false, 3, 0,
     "HM(G) + 10t*M1(G) + 32mt^2 + 16mt + 8nt^3 + 16nt^2 + (16r-24)nt"},
    {FormulaId::C3, "C3", FormulaKind::Corollary, ThornType::III, true, false,
     BaseFamily::Path, false, false, 3, 0,
     "HM(G) + 5t(r-1)*M1(G) + 4mt(t+1)(r-1)^2 + n(r-1)^3*(t^3 + 2t^2 + 2(r-1)t)"},
    {FormulaId::C4, "C4", FormulaKind::Corollary, ThornType::IV, true, false,
     BaseFamily::Path, false, false, 1, 1,
     "HM(G) + 4ts*M1(G) + 2mst + st(r + s^2 + r^2)n + s^2t^2n + 2rs^2tn"},
    {FormulaId::C4R, "C4R", FormulaKind::Corollary, ThornType::IV, true, false,
     BaseFamily::Path, true, false, 1, 1,
     "HM(G) + 4ts*M1(G) + 2mst + ns^2t + ns^2t^2 + 2tns^3"},
    {FormulaId::C5, "C5", FormulaKind::Corollary, ThornType::V, true, false,
     BaseFamily::Path, false, false, 3, 0,
     "HM(G) + (4t+1)*M1(G) + 4mt(t+1) + nt^2 + nt(16r-24) + 12m + 9n"},
    {FormulaId::C6, "C6", FormulaKind::Corollary, ThornType::VI, true, false,
     BaseFamily::Path, false, false, 1, 0,
     "HM(G) + 4t*M1(G) + 4mt^2 + 2mt + nt^2 + (2r^4 - 6r^3 - 10r^2 + 15r)nt"},
    {FormulaId::C7, "C7", FormulaKind::Corollary, ThornType::VII, true, false,
     BaseFamily::Path, false, false, 1, 1,
     "HM(G) + 3t*M1(G) + 8mt^2 + nt^3 + 4mt(s+1) + 2nt^2(s+1) + (s^2 + 3s + 1)nt + "
     "2s(s+r)(s+r+1)nt"},

    {FormulaId::E1a, "E1a", FormulaKind::Example, ThornType::I, true, true,
     BaseFamily::Path, false, false, 2, 0,
     "16n + (8m+4n)t^2 + 16t(m+rn) - 15nt - 30t - 30, m = n-1"},
    {FormulaId::E1b, "E1b", FormulaKind::Example, ThornType::I, true, true,
     BaseFamily::Cycle, false, false, 2, 0,
     "16n - 15nt + 8mt^2 + nt^3 + 4nt^2 + 16mt + 16rnt, m = n"},
    {FormulaId::E2a, "E2a", FormulaKind::Example, ThornType::II, true, true,
     BaseFamily::Path, false, false, 3, 0,
     "16n - 30 + 16nt - 60t + 32mt^2 + 16mt + 8nt^3 + 16nt^2 + 16rnt, m = n-1"},
    {FormulaId::E2b, "E2b", FormulaKind::Example, ThornType::II, true, true,
     BaseFamily::Cycle, false, false, 3, 0,
     "16n + 32mt^2 + 16mt + 8nt^3 + 16nt^2 + 16rnt + 16nt, m = n"},
    {FormulaId::E3a, "E3a", FormulaKind::Example, ThornType::III, true, true,
     BaseFamily::Path, false, false, 3, 0,
     "16n - 30 + 20nrt - 20nt - 30rt + 30t + 4mt(t+1)(r-1)^2 + "
     "n(r-1)^3*(t^3 + 2t^2 + 2rt - 2t), m = n-1"},
    {FormulaId::E3b, "E3b", FormulaKind::Example, ThornType::III, true, true,
     BaseFamily::Cycle, false, false, 3, 0,
     "16n + 20nrt - 20nt + 4mt(t+1)(r-1)^2 + n(r-1)^3*(t^3 + 2t^2 + 2(r-1)t), m = n"},
    {FormulaId::E4a_rs, "E4a_rs", FormulaKind::Example, ThornType::IV, true, true,
     BaseFamily::Path, true, false, 1, 1,
     "16n - 30 + 16nst - 24st + 2mst + ns^2t + ns^2t^2 + 2tns^3, m = n-1"},
    {FormulaId::E4b_rs, "E4b_rs", FormulaKind::Example, ThornType::IV, true, true,
     BaseFamily::Cycle, true, false, 1, 1,
     "16n + 16nst + 2mst + ns^2t + ns^2t^2 + 2tns^3, m = n"},
    {FormulaId::E5a, "E5a", FormulaKind::Example, ThornType::V, true, true,
     BaseFamily::Path, false, false, 3, 0,
     "38n - 8nt - 8t + 4mt^2 + 4mt + 16rnt + 12m + nt^2 - 32, m = n-1"},
    {FormulaId::E5b, "E5b", FormulaKind::Example, ThornType::V, true, true,
     BaseFamily::Cycle, false, false, 3, 0,
     "29n - 8nt + 4mt + 16rnt + 16m + nt^2, m = n"},
    {FormulaId::E6a, "E6a", FormulaKind::Example, ThornType::VI, true, true,
     BaseFamily::Path, false, false, 1, 0,
     "16n - 30 + 16nt - 8t + 4mt^2 + 2mt + nt^2 + (2r^4 - 6r^3 - 10r^2 + 15r)nt, m = n-1"},
    {FormulaId::E6b, "E6b", FormulaKind::Example, ThornType::VI, true, true,
     BaseFamily::Cycle, false, false, 1, 0,
     "16n + 16nt + 4mt^2 + 2mt + nt^2 + (2r^4 - 6r^3 - 10r^2 + 15r)nt, m = n"},
    {FormulaId::E7a, "E7a", FormulaKind::Example, ThornType::VII, true, true,
     BaseFamily::Path, true, false, 1, 1,
     "16n - 30 + 13nt - 6t + 8mt^2 + nt^3 + 4mts + 4mt + 2nst^2 + 2nt^2 + 9nts^2 + 7nst, "
     "m = n-1"},
    {FormulaId::E7a_rst, "E7a_rst", FormulaKind::Example, ThornType::VII, true, true,
     BaseFamily::Path, true, true, 1, 1,
     "16n - 30 + 31nr + 12nr^3 + 12mr^2 + 9nr^2 + 4mr - 6r, m = n-1"},
    {FormulaId::E7b, "E7b", FormulaKind::Example, ThornType::VII, true, true,
     BaseFamily::Cycle, true, false, 1, 1,
     "16n + 13nt + 8mt^2 + 4mt + 4mts + 9ns^2t + 2nst^2 + 2nt^2 + 7snt + nt^3, m = n"},
    {FormulaId::E7b_rst, "E7b_rst", FormulaKind::Example, ThornType::VII, true, true,
     BaseFamily::Cycle, true, true, 1, 1,
     "16n + 13nr + 12mr^2 + 4mr + 12nr^3 + 9nr^2, m = n"},
};

constexpr std::size_t kRegistrySize = std::size(kRegistry);

bool uniform(std::span<const int> thorns) {
  return std::all_of(thorns.begin(), thorns.end(),
                     [&](int t) { return t == thorns.front(); });
}

std::uint64_t fnv1a(std::uint64_t h, std::string_view text) {
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

std::span<const FormulaMeta> list_formulas() { return {kRegistry, kRegistrySize}; }

const FormulaMeta* find_formula(std::string_view id) {
  for (const FormulaMeta& meta : kRegistry)
    if (id == meta.id) return &meta;
  return nullptr;
}

const FormulaMeta& formula_meta(FormulaId fid) {
  const FormulaMeta& meta = kRegistry[static_cast<std::size_t>(fid)];
  return meta;
}

std::string registry_hash() {
  std::uint64_t h = 14695981039346656037ull;
  for (const FormulaMeta& meta : kRegistry) {
    h = fnv1a(h, meta.id);
    h = fnv1a(h, "=");
    h = fnv1a(h, meta.expression);
    h = fnv1a(h, ";");
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xF];
    h >>= 4;
  }
  return out;
}

bool applicable(const FormulaMeta& meta, BaseFamily family, std::span<const int> thorns,
                int r, int s, std::string* why) {
  auto fail = [&](const std::string& reason) {
    if (why) *why = reason;
    return false;
  };
  if (r < meta.min_r)
    return fail("requires r >= " + std::to_string(meta.min_r));
  if (uses_s(meta.type)) {
    if (s < meta.min_s) return fail("requires s >= " + std::to_string(meta.min_s));
  } else if (s != 0) {
    return fail("thorn type " + std::string(to_string(meta.type)) + " takes no s parameter");
  }
  if (meta.needs_r_eq_s && r != s) return fail("stated only for r = s");
  if (meta.uniform_only && (thorns.empty() || !uniform(thorns)))
    return fail("stated only for uniform thorn counts t_i = t");
  if (meta.needs_t_eq_r && (thorns.empty() || thorns.front() != r))
    return fail("stated only for t = r = s");
  if (meta.family_bound) {
    if (family != meta.family)
      return fail("stated only for " + std::string(to_string(meta.family)) + " bases");
    if (thorns.size() < 3) return fail("requires base order n >= 3");
  }
  return true;
}

Int eval_theorem(FormulaId fid, const SumBundle& b, int r, int s) {
  Int R = static_cast<long long>(r);
  Int S = static_cast<long long>(s);
  switch (fid) {
    case FormulaId::T1:
      return b.hm + 2 * b.et + b.et2 + (16 * R - 35) * b.t + b.td2 + b.t3 + 4 * b.t2 +
             2 * b.t2d + 4 * b.td;
    case FormulaId::T2:
      return b.hm + 4 * b.et + 4 * b.et2 + 2 * b.td2 +
             8 * (b.t2d + b.td + b.t3 + 2 * b.t2) + (16 * R - 24) * b.t;
    case FormulaId::T3: {
      Int q = R - 1;
      return b.hm + 2 * q * b.et + q * q * b.et2 + q * b.td2 + 2 * q * q * (b.t2d + b.td) +
             q * q * q * (b.t3 + 2 * b.t2 + (2 * R - 1) * b.t);
    }
    case FormulaId::T3_proof: {
      Int q = R - 1;
      return b.hm + 2 * q * b.et + q * q * b.et2 + q * b.td2 + 2 * q * q * (b.t2d + b.td) +
             q * q * q * (b.t3 + 2 * b.t2 + 2 * q * b.t);
    }
    case FormulaId::T4:
      return b.hm + 2 * S * b.et +
             S * (b.td + (R + S * S + R * R + 2 * R * S) * b.t + S * b.t2);
    case FormulaId::T5:
      return b.hm + 2 * b.et + b.et2 + b.m1 + 2 * b.td + b.t2 + (16 * R - 24) * b.t +
             9 * Int(b.n) + 12 * Int(b.m);
    case FormulaId::T6:
      return b.hm + 2 * b.et + b.et2 + b.td + b.t2 +
             (2 * R * R * R * R - 6 * R * R * R - 10 * R * R + 15 * R) * b.t;
    case FormulaId::T7:
      return b.hm + b.et + b.et2 + b.td2 + 2 * b.t2d + b.t3 + 2 * (S + 1) * b.td +
             2 * b.t2 + (S * S + 3 * S + 2 * S * (S + R) * (S + R + 1) + 1) * b.t;
    default:
      throw std::invalid_argument("eval_theorem: not a theorem entry");
  }
}

Int eval_theorem(FormulaId fid, const Graph& base, std::span<const int> thorns, int r, int s) {
  return eval_theorem(fid, sum_bundle(base, thorns), r, s);
}

Int eval_corollary(FormulaId fid, long long n, long long m, const Int& hm_g,
                   const Int& m1_g, long long t, int r, int s) {
  Int N = n, M = m, T = t;
  Int R = static_cast<long long>(r);
  Int S = static_cast<long long>(s);
  switch (fid) {
    case FormulaId::C1:
      return hm_g + 5 * T * m1_g + 8 * M * T * T + N * T * T * T + 4 * N * T * T +
             16 * M * T + 16 * R * N * T - 35 * N * T;
    case FormulaId::C2:
      return hm_g + 10 * T * m1_g + 32 * M * T * T + 16 * M * T + 8 * N * T * T * T +
             16 * N * T * T + (16 * R - 24) * N * T;
    case FormulaId::C3: {
      Int q = R - 1;
      return hm_g + 5 * T * q * m1_g + 4 * M * T * (T + 1) * q * q +
             N * q * q * q * (T * T * T + 2 * T * T + 2 * q * T);
    }
    case FormulaId::C4:
      return hm_g + 4 * T * S * m1_g + 2 * M * S * T + S * T * (R + S * S + R * R) * N +
             S * S * T * T * N + 2 * R * S * S * T * N;
    case FormulaId::C4R:
      return hm_g + 4 * T * S * m1_g + 2 * M * S * T + N * S * S * T + N * S * S * T * T +
             2 * T * N * S * S * S;
    case FormulaId::C5:
      return hm_g + (4 * T + 1) * m1_g + 4 * M * T * (T + 1) + N * T * T +
             N * T * (16 * R - 24) + 12 * M + 9 * N;
    case FormulaId::C6:
      return hm_g + 4 * T * m1_g + 4 * M * T * T + 2 * M * T + N * T * T +
             (2 * R * R * R * R - 6 * R * R * R - 10 * R * R + 15 * R) * N * T;
    case FormulaId::C7:
      return hm_g + 3 * T * m1_g + 8 * M * T * T + N * T * T * T + 4 * M * T * (S + 1) +
             2 * N * T * T * (S + 1) + (S * S + 3 * S + 1) * N * T +
             2 * S * (S + R) * (S + R + 1) * N * T;
    default:
      throw std::invalid_argument("eval_corollary: not a corollary entry");
  }
}

Int eval_example(FormulaId fid, long long n, long long t, int r, int s) {
  const FormulaMeta& meta = formula_meta(fid);
  if (meta.kind != FormulaKind::Example)
    throw std::invalid_argument("eval_example: not an example entry");
  Int N = n, T = t;
  Int R = static_cast<long long>(r);
  Int S = static_cast<long long>(s);
  // The printed expressions keep the symbol m; the fixed base family pins it.
  Int M = (meta.family == BaseFamily::Path) ? Int(n - 1) : Int(n);
  switch (fid) {
    case FormulaId::E1a:
      return 16 * N + (8 * M + 4 * N) * T * T + 16 * T * (M + R * N) - 15 * N * T -
             30 * T - 30;
    case FormulaId::E1b:
      return 16 * N - 15 * N * T + 8 * M * T * T + N * T * T * T + 4 * N * T * T +
             16 * M * T + 16 * R * N * T;
    case FormulaId::E2a:
      return 16 * N - 30 + 16 * N * T - 60 * T + 32 * M * T * T + 16 * M * T +
             8 * N * T * T * T + 16 * N * T * T + 16 * R * N * T;
    case FormulaId::E2b:
      return 16 * N + 32 * M * T * T + 16 * M * T + 8 * N * T * T * T + 16 * N * T * T +
             16 * R * N * T + 16 * N * T;
    case FormulaId::E3a: {
      Int q = R - 1;
      return 16 * N - 30 + 20 * N * R * T - 20 * N * T - 30 * R * T + 30 * T +
             4 * M * T * (T + 1) * q * q +
             N * q * q * q * (T * T * T + 2 * T * T + 2 * R * T - 2 * T);
    }
    case FormulaId::E3b: {
      Int q = R - 1;
      return 16 * N + 20 * N * R * T - 20 * N * T + 4 * M * T * (T + 1) * q * q +
             N * q * q * q * (T * T * T + 2 * T * T + 2 * q * T);
    }
    case FormulaId::E4a_rs:
      return 16 * N - 30 + 16 * N * S * T - 24 * S * T + 2 * M * S * T + N * S * S * T +
             N * S * S * T * T + 2 * T * N * S * S * S;
    case FormulaId::E4b_rs:
      return 16 * N + 16 * N * S * T + 2 * M * S * T + N * S * S * T + N * S * S * T * T +
             2 * T * N * S * S * S;
    case FormulaId::E5a:
      return 38 * N - 8 * N * T - 8 * T + 4 * M * T * T + 4 * M * T + 16 * R * N * T +
             12 * M + N * T * T - 32;
    case FormulaId::E5b:
      return 29 * N - 8 * N * T + 4 * M * T + 16 * R * N * T + 16 * M + N * T * T;
    case FormulaId::E6a:
      return 16 * N - 30 + 16 * N * T - 8 * T + 4 * M * T * T + 2 * M * T + N * T * T +
             (2 * R * R * R * R - 6 * R * R * R - 10 * R * R + 15 * R) * N * T;
    case FormulaId::E6b:
      return 16 * N + 16 * N * T + 4 * M * T * T + 2 * M * T + N * T * T +
             (2 * R * R * R * R - 6 * R * R * R - 10 * R * R + 15 * R) * N * T;
    case FormulaId::E7a:
      return 16 * N - 30 + 13 * N * T - 6 * T + 8 * M * T * T + N * T * T * T +
             4 * M * T * S + 4 * M * T + 2 * N * S * T * T + 2 * N * T * T +
             9 * N * T * S * S + 7 * N * S * T;
    case FormulaId::E7a_rst:
      return 16 * N - 30 + 31 * N * R + 12 * N * R * R * R + 12 * M * R * R +
             9 * N * R * R + 4 * M * R - 6 * R;
    case FormulaId::E7b:
      return 16 * N + 13 * N * T + 8 * M * T * T + 4 * M * T + 4 * M * T * S +
             9 * N * S * S * T + 2 * N * S * T * T + 2 * N * T * T + 7 * S * N * T +
             N * T * T * T;
    case FormulaId::E7b_rst:
      return 16 * N + 13 * N * R + 12 * M * R * R + 4 * M * R + 12 * N * R * R * R +
             9 * N * R * R;
    default:
      throw std::invalid_argument("eval_example: not an example entry");
  }
}

Int evaluate(const FormulaMeta& meta, const Graph& base, BaseFamily family,
             std::span<const int> thorns, int r, int s) {
  std::string why;
  if (!applicable(meta, family, thorns, r, s, &why))
    throw std::invalid_argument("formula " + std::string(meta.id) + " not applicable: " + why);
  switch (meta.kind) {
    case FormulaKind::Theorem:
    case FormulaKind::Variant:
      return eval_theorem(meta.fid, base, thorns, r, s);
    case FormulaKind::Corollary:
      return eval_corollary(meta.fid, base.order(), static_cast<long long>(base.size()),
                            hm(base), m1(base), thorns.front(), r, s);
    case FormulaKind::Example:
      return eval_example(meta.fid, base.order(), thorns.front(), r, s);
  }
  throw std::invalid_argument("evaluate: unknown formula kind");
}

}  // namespace thornlab
