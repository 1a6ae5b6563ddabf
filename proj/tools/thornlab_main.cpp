// thornlab CLI: construct thorn graphs, compute degree-based indices,
// evaluate cataloged closed forms, and audit them against direct computation.
//
// Exit codes: 0 success (audit: no mismatches), 1 audit found mismatches,
// 2 usage or input error.

#include <charconv>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "thornlab/audit.hpp"
#include "thornlab/base.hpp"
#include "thornlab/formulas.hpp"
#include "thornlab/indices.hpp"
#include "thornlab/thorn.hpp"
#include "thornlab/version.hpp"

namespace {

using namespace thornlab;

std::string read_file(const std::string& path) {
  std::ifstream in{path, std::ios::binary};
  if (!in) throw ParseError("cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out{path, std::ios::binary};
  if (!out) throw ParseError("cannot write file '" + path + "'");
  out << text;
}

long long parse_ll(std::string_view tok, const std::string& what) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw std::invalid_argument(what + ": malformed integer '" + std::string(tok) + "'");
  return value;
}

// Thorn count mini-language: uniform:<k>, random:<max>:<seed>, or an explicit
// comma-separated vector of length n.
std::vector<int> parse_thorn_counts(const std::string& spec, std::uint32_t n) {
  if (spec.rfind("uniform:", 0) == 0) {
    long long t = parse_ll(std::string_view(spec).substr(8), "--t uniform");
    if (t < 0) throw std::invalid_argument("--t uniform: count must be non-negative");
    return std::vector<int>(n, static_cast<int>(t));
  }
  if (spec.rfind("random:", 0) == 0) {
    std::string_view rest = std::string_view(spec).substr(7);
    std::size_t colon = rest.find(':');
    if (colon == std::string_view::npos)
      throw std::invalid_argument("--t random: expected random:<max>:<seed>");
    long long max = parse_ll(rest.substr(0, colon), "--t random max");
    long long seed = parse_ll(rest.substr(colon + 1), "--t random seed");
    if (max < 0 || seed < 0)
      throw std::invalid_argument("--t random: max and seed must be non-negative");
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
    std::vector<int> out(n);
    std::uint64_t k = static_cast<std::uint64_t>(max) + 1;
    std::uint64_t limit = ~0ull - (~0ull % k);
    for (std::uint32_t i = 0; i < n; ++i) {
      std::uint64_t x = rng();
      while (x >= limit) x = rng();
      out[i] = static_cast<int>(x % k);
    }
    return out;
  }
  std::vector<int> out;
  std::string_view rest = spec;
  while (true) {
    std::size_t comma = rest.find(',');
    long long t = parse_ll(rest.substr(0, comma), "--t vector entry");
    if (t < 0) throw std::invalid_argument("--t vector entries must be non-negative");
    out.push_back(static_cast<int>(t));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (out.size() != n)
    throw std::invalid_argument("--t vector has " + std::to_string(out.size()) +
                                " entries, base has " + std::to_string(n) + " vertices");
  return out;
}

std::vector<std::string> split_csl(const std::string& text) {
  std::vector<std::string> out;
  std::string_view rest = text;
  while (true) {
    std::size_t comma = rest.find(',');
    std::string_view tok = rest.substr(0, comma);
    if (!tok.empty()) out.emplace_back(tok);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"exact hyper Zagreb index toolkit for generalized thorn graphs"};
  app.set_version_flag("--version", std::string("thornlab ") + kVersion +
                                        " (formula registry " + registry_hash() + ")");
  app.require_subcommand(1);

  // construct
  std::string c_base, c_type, c_t, c_format = "edgelist", c_output;
  int c_r = 0, c_s = 0;
  auto* construct = app.add_subcommand("construct", "build a thorn graph and print it");
  construct->add_option("--base", c_base, "base graph (path:n, cycle:n, complete:n, bipartite:r:s, star:n, file:<path>)")->required();
  construct->add_option("--type", c_type, "thorn type I..VII")->required();
  construct->add_option("--r", c_r, "gadget order parameter")->required();
  auto* c_s_opt = construct->add_option("--s", c_s, "bipartite co-side size (types IV, VII)");
  construct->add_option("--t", c_t, "thorn counts: uniform:<k>, random:<max>:<seed>, or v0,v1,...")->required();
  construct->add_option("--format", c_format, "edgelist or dot")->check(CLI::IsMember({"edgelist", "dot"}));
  construct->add_option("--output", c_output, "output path (default stdout)");

  // index
  std::string i_file, i_kind;
  bool i_human = false;
  auto* index = app.add_subcommand("index", "compute a degree-based index of a graph file");
  index->add_option("file", i_file, "edge-list file")->required();
  index->add_option("--index", i_kind, "m1, m2, hm, f, em1, or em2")->required();
  index->add_flag("--human", i_human, "labelled output");

  // formula
  std::string f_id, f_base, f_t;
  int f_r = 0, f_s = 0;
  bool f_oracle = false, f_human = false, f_list = false;
  auto* formula = app.add_subcommand("formula", "evaluate a cataloged closed form");
  formula->add_option("--id", f_id, "formula id (see --list)");
  formula->add_flag("--list", f_list, "list the formula registry");
  formula->add_option("--base", f_base, "base graph spec");
  formula->add_option("--t", f_t, "thorn counts");
  formula->add_option("--r", f_r, "gadget order parameter");
  formula->add_option("--s", f_s, "bipartite co-side size");
  formula->add_flag("--with-oracle", f_oracle, "also print the directly computed value and delta");
  formula->add_flag("--human", f_human, "labelled output");

  // audit
  std::string a_config, a_report, a_format = "json", a_formulas;
  int a_workers = 0;
  bool a_default = false;
  auto* audit = app.add_subcommand("audit", "sweep a parameter grid and compare formulas against direct computation");
  auto* opt_config = audit->add_option("--config", a_config, "grid config JSON file");
  auto* opt_default = audit->add_flag("--default-grid", a_default, "use the built-in desk-scale grid");
  opt_config->excludes(opt_default);
  audit->add_option("--report", a_report, "report output path (default stdout)");
  audit->add_option("--format", a_format, "json, csv, or markdown")->check(CLI::IsMember({"json", "csv", "markdown"}));
  audit->add_option("--formulas", a_formulas, "comma-separated formula id filter");
  audit->add_option("--workers", a_workers, "worker threads (default: hardware; capped by THORNLAB_WORKERS)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (construct->parsed()) {
    BaseInstance base = make_base(c_base);
    auto type = thorn_type_from_string(c_type);
    if (!type) throw std::invalid_argument("unknown thorn type '" + c_type + "'");
    if (c_s_opt->count() > 0 && !uses_s(*type))
      throw std::invalid_argument("thorn type " + c_type + " takes no --s");
    ThornSpec spec{*type, c_r, c_s, parse_thorn_counts(c_t, base.graph.order())};
    DecoratedGraph built = build(base.graph, spec);
    write_output(c_output, c_format == "dot" ? write_dot(built.graph)
                                             : write_edge_list(built.graph));
    return 0;
  }

  if (index->parsed()) {
    Graph g = read_edge_list(read_file(i_file));
    auto kind = index_kind_from_string(i_kind);
    if (!kind) throw std::invalid_argument("unknown index '" + i_kind + "'");
    Int value = compute(g, *kind);
    if (i_human)
      std::cout << to_string(*kind) << ": " << to_decimal(value) << "\n";
    else
      std::cout << to_decimal(value) << "\n";
    return 0;
  }

  if (formula->parsed()) {
    if (f_list) {
      for (const FormulaMeta& meta : list_formulas()) {
        if (f_human) {
          std::cout << meta.id << "  type " << to_string(meta.type)
                    << (meta.uniform_only ? "  uniform t" : "")
                    << (meta.family_bound
                            ? std::string("  ") + std::string(to_string(meta.family)) + " base"
                            : "")
                    << (meta.needs_r_eq_s ? "  r=s" : "")
                    << (meta.needs_t_eq_r ? "  t=r" : "") << "\n    " << meta.expression
                    << "\n";
        } else {
          std::cout << meta.id << "\n";
        }
      }
      return 0;
    }
    if (f_id.empty()) throw std::invalid_argument("formula: --id is required (or --list)");
    const FormulaMeta* meta = find_formula(f_id);
    if (!meta) throw std::invalid_argument("unknown formula id '" + f_id + "'");
    if (f_base.empty()) throw std::invalid_argument("formula: --base is required");
    if (f_t.empty()) throw std::invalid_argument("formula: --t is required");
    BaseInstance base = make_base(f_base);
    std::vector<int> thorns = parse_thorn_counts(f_t, base.graph.order());
    std::string why;
    if (!applicable(*meta, base.family, thorns, f_r, f_s, &why))
      throw std::invalid_argument("formula " + f_id + " not applicable: " + why);
    Int closed = evaluate(*meta, base.graph, base.family, thorns, f_r, f_s);
    if (f_human)
      std::cout << "closed: " << to_decimal(closed) << "\n";
    else
      std::cout << to_decimal(closed) << "\n";
    if (f_oracle) {
      ThornSpec spec{meta->type, f_r, f_s, thorns};
      Int oracle = hm(build(base.graph, spec).graph);
      Int delta = closed - oracle;
      if (f_human)
        std::cout << "oracle: " << to_decimal(oracle) << "\ndelta: " << to_decimal(delta)
                  << "\n";
      else
        std::cout << to_decimal(oracle) << "\n" << to_decimal(delta) << "\n";
    }
    return 0;
  }

  if (audit->parsed()) {
    if (!a_default && a_config.empty())
      throw std::invalid_argument("audit: pass --config <file> or --default-grid");
    GridConfig cfg = a_default ? GridConfig::default_grid()
                               : GridConfig::from_json(read_file(a_config));
    if (!a_formulas.empty()) {
      cfg.formulas = split_csl(a_formulas);
      validate(cfg);
    }
    AuditReport report = run(cfg, a_workers);
    auto format = report_format_from_string(a_format);
    write_output(a_report, render(report, *format));
    long long tested = 0, mismatched = 0;
    for (const FormulaSummary& s : report.summary) {
      tested += s.tested;
      mismatched += s.mismatched;
    }
    std::cerr << "audit: " << report.records.size() << " records, " << tested
              << " tested, " << mismatched << " mismatched across " << report.summary.size()
              << " formulas\n";
    return report.has_mismatch() ? 1 : 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const std::overflow_error& e) {
    std::cerr << "thornlab: arithmetic capacity exceeded: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "thornlab: " << e.what() << "\n";
    return 2;
  }
}
