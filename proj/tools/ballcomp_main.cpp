#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ballcomp/config_io.hpp"
#include "ballcomp/criteria.hpp"
#include "ballcomp/funcmodel.hpp"
#include "ballcomp/norms.hpp"
#include "ballcomp/verify.hpp"
#include "ballcomp/version.hpp"

namespace {

using namespace ballcomp;

std::vector<int> parse_ladder_arg(const std::string& arg) {
  std::vector<int> ladder;
  std::istringstream is(arg);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    std::size_t used = 0;
    int j = 0;
    try {
      j = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw ConfigError("--ladder: \"" + tok + "\" is not an integer");
    }
    if (used != tok.size())
      throw ConfigError("--ladder: \"" + tok + "\" is not an integer");
    ladder.push_back(j);
  }
  if (ladder.empty()) throw ConfigError("--ladder: empty list");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (ladder[i] < 0) throw ConfigError("--ladder: degrees must be nonnegative");
    if (i > 0 && ladder[i] <= ladder[i - 1])
      throw ConfigError("--ladder: degrees must be strictly increasing");
  }
  return ladder;
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

void write_criteria_csv(const std::string& path, const AnalysisReport& rep,
                        int dim, std::uint64_t seed, std::uint64_t hash) {
  std::ostringstream os;
  os << "j,b1";
  for (int v = 0; v < dim; ++v)
    os << ",b1_xi_" << v << "_re,b1_xi_" << v << "_im";
  os << ",b2,denom1,denom2\n";
  os << csv_comment(seed, hash) << "\n";
  for (std::size_t k = 0; k < rep.ladder.size(); ++k) {
    const RatioEstimate& e1 = rep.seq.b1_seq[k];
    const RatioEstimate& e2 = rep.seq.b2_seq[k];
    os << rep.ladder[k] << "," << format_g17(e1.value);
    for (int v = 0; v < dim; ++v) {
      const Complex x = e1.xi.dim() == dim ? e1.xi[v] : Complex{0.0, 0.0};
      os << "," << format_g17(x.real()) << "," << format_g17(x.imag());
    }
    os << "," << format_g17(e2.value) << "," << format_g17(e1.denominator)
       << "," << format_g17(e2.denominator) << "\n";
  }
  write_text_atomic(path, os.str());
}

void write_conditions_csv(const std::string& path, const AnalysisReport& rep,
                          int dim, std::uint64_t seed, std::uint64_t hash) {
  std::ostringstream os;
  os << "side,inf_margin,degenerate_fraction,vacuous";
  for (int v = 0; v < dim; ++v)
    os << ",argmin_" << v << "_re,argmin_" << v << "_im";
  os << "\n" << csv_comment(seed, hash) << "\n";
  const auto row = [&](const char* side, const ConditionReport& c) {
    os << side << "," << format_g17(c.inf_margin) << ","
       << format_g17(c.degenerate_fraction) << "," << (c.vacuous ? 1 : 0);
    for (int v = 0; v < dim; ++v) {
      const Complex x = c.argmin.dim() == dim ? c.argmin[v] : Complex{0.0, 0.0};
      os << "," << format_g17(x.real()) << "," << format_g17(x.imag());
    }
    os << "\n";
  };
  row("phi", rep.cond_phi);
  row("psi", rep.cond_psi);
  write_text_atomic(path, os.str());
}

void write_bracket_csv(const std::string& path, const AnalysisReport& rep,
                       std::uint64_t seed, std::uint64_t hash) {
  std::ostringstream os;
  os << "family,parameter,value\n" << csv_comment(seed, hash) << "\n";
  if (rep.bracket_available) {
    for (const ProbeValue& p : rep.bracket.probes)
      os << p.family << "," << format_g17(p.parameter) << ","
         << format_g17(p.value) << "\n";
    os << "lower," << rep.bracket.j_min << ","
       << format_g17(rep.bracket.lower) << "\n";
    os << "upper_proxy," << rep.bracket.j_min << ","
       << format_g17(rep.bracket.upper_proxy) << "\n";
  }
  write_text_atomic(path, os.str());
}

std::string verdict_line(const TailStats& tail) {
  if (tail.verdict == Verdict::CompactIndicated)
    return std::string("verdict: bounded + ") + verdict_label(tail.verdict);
  return std::string("verdict: ") + verdict_label(tail.verdict);
}

int run_analyze(const std::string& config_path, const std::string& out_dir,
                const std::string& ladder_arg, bool seed_given,
                std::uint64_t seed_override) {
  AnalyzeConfig cfg = load_analyze_config(config_path);
  if (seed_given) cfg.search.seed = seed_override;
  if (!ladder_arg.empty()) cfg.ladder = parse_ladder_arg(ladder_arg);
  require_consistent(cfg.symbols);
  validate_search_config(cfg.search, cfg.symbols.dim());

  const SelfMapReport sm_phi =
      validate_selfmap(cfg.symbols.phi, cfg.delta_margin, cfg.search.seed);
  if (!sm_phi.pass) {
    std::cerr << config_path << ":1: phi fails the self-map check (sup estimate "
              << format_g17(sm_phi.sup) << ", margin "
              << format_g17(cfg.delta_margin) << ")\n";
    return 2;
  }
  const SelfMapReport sm_psi =
      validate_selfmap(cfg.symbols.psi, cfg.delta_margin, cfg.search.seed);
  if (!sm_psi.pass) {
    std::cerr << config_path << ":1: psi fails the self-map check (sup estimate "
              << format_g17(sm_psi.sup) << ", margin "
              << format_g17(cfg.delta_margin) << ")\n";
    return 2;
  }

  const AnalysisReport rep =
      boundedness_report(cfg.symbols, cfg.params, cfg.search, cfg.ladder);

  std::filesystem::create_directories(out_dir);
  const int dim = cfg.symbols.dim();
  write_criteria_csv(join_path(out_dir, "criteria.csv"), rep, dim,
                     cfg.search.seed, cfg.config_hash);
  write_conditions_csv(join_path(out_dir, "conditions.csv"), rep, dim,
                       cfg.search.seed, cfg.config_hash);
  write_bracket_csv(join_path(out_dir, "bracket.csv"), rep, cfg.search.seed,
                    cfg.config_hash);

  std::ostringstream os;
  os << "ballcomp " << kVersion << "\n";
  os << "config: " << config_path << " (hash " << hash_hex(cfg.config_hash)
     << ")\n";
  os << "n = " << dim << ", alpha = " << format_g17(rep.params.alpha)
     << ", beta = " << format_g17(rep.params.beta) << "\n";
  os << "ladder:";
  for (int j : rep.ladder) os << " " << j;
  os << "\n";
  os << "self-map sup estimates: phi " << format_g17(sm_phi.sup) << ", psi "
     << format_g17(sm_psi.sup) << "\n";
  double sup_b1 = 0.0, sup_b2 = 0.0;
  for (const RatioEstimate& e : rep.seq.b1_seq)
    sup_b1 = std::max(sup_b1, e.value);
  for (const RatioEstimate& e : rep.seq.b2_seq)
    sup_b2 = std::max(sup_b2, e.value);
  os << "criteria sups: b1 " << format_g17(sup_b1) << ", b2 "
     << format_g17(sup_b2) << "\n";
  os << "conditions applicable: " << (rep.conditions_applicable ? "yes" : "no")
     << "\n";
  const auto cond_line = [&os](const char* side, const ConditionReport& crep) {
    os << "condition " << side << ": inf_margin "
       << format_g17(crep.inf_margin) << ", degenerate_fraction "
       << format_g17(crep.degenerate_fraction) << ", vacuous "
       << (crep.vacuous ? "yes" : "no") << "\n";
  };
  cond_line("phi", rep.cond_phi);
  cond_line("psi", rep.cond_psi);
  os << "classical indicators: sup|D_phi|rho "
     << format_g17(rep.classical.sup_dphi_rho) << ", sup|D_psi|rho "
     << format_g17(rep.classical.sup_dpsi_rho) << ", sup|D_phi-D_psi| "
     << format_g17(rep.classical.sup_diff) << "\n";
  os << "tail: j_min " << rep.tail.j_min << ", head_max "
     << format_g17(rep.tail.head_max) << ", tail_max "
     << format_g17(rep.tail.tail_max) << ", slope "
     << format_g17(rep.tail.slope) << "\n";
  os << verdict_line(rep.tail) << "\n";
  if (rep.bracket_available) {
    os << "essential bracket: lower " << format_g17(rep.bracket.lower)
       << ", upper_proxy " << format_g17(rep.bracket.upper_proxy)
       << ", point family decayed "
       << (rep.bracket.point_family_decayed ? "yes" : "no") << "\n";
  } else {
    os << "essential bracket: skipped\n";
  }
  if (!rep.notes.empty()) {
    os << "notes:\n";
    for (const std::string& n : rep.notes) os << "  - " << n << "\n";
  }
  write_text_atomic(join_path(out_dir, "report.txt"), os.str());

  std::cout << verdict_line(rep.tail) << "\n";
  std::cout << "reports written to " << out_dir << "\n";
  return 0;
}

int suite_default_trials(const std::string& suite) {
  if (suite == "lemma21") return 2000;
  if (suite == "lemma22") return 3;
  if (suite == "lemma23") return 2;
  if (suite == "lemma31") return 2;
  return 5000;
}

PropertyReport run_one_suite(const std::string& suite, const VerifyConfig& cfg,
                             int trials) {
  if (suite == "lemma21")
    return lemma21_suite(cfg.instance, trials, cfg.params, cfg.search);
  if (suite == "lemma22")
    return lemma22_suite(cfg.instance, trials, cfg.params, cfg.search,
                         cfg.slack, cfg.points_per_instance);
  if (suite == "lemma23")
    return lemma23_suite(cfg.instance, trials, cfg.params, cfg.search,
                         cfg.slack);
  if (suite == "lemma31")
    return lemma31_suite(cfg.instance, trials, cfg.params, cfg.search,
                         {0.9, 0.99, 0.995}, cfg.slack);
  return geometry_suite(cfg.instance, trials);
}

int run_verify(const std::string& config_path, const std::string& out_dir,
               const std::string& suites_arg) {
  const VerifyConfig cfg = load_verify_config(config_path);

  std::vector<std::string> suites;
  if (!suites_arg.empty()) {
    std::istringstream is(suites_arg);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      if (tok.empty()) continue;
      bool known = false;
      for (const char* s : kSuiteNames) known = known || tok == s;
      if (!known) throw ConfigError("--suites: unknown suite \"" + tok + "\"");
      suites.push_back(tok);
    }
  } else {
    suites = cfg.suites;
  }
  if (suites.empty()) {
    std::cerr << "verify: empty suite list (use --suites or the \"suites\" "
                 "config key)\n";
    return 2;
  }

  std::filesystem::create_directories(out_dir);
  bool all_pass = true;
  for (const std::string& suite : suites) {
    int trials = suite_default_trials(suite);
    for (const SuiteTrials& t : cfg.trials)
      if (t.suite == suite) trials = t.trials;
    const PropertyReport rep = run_one_suite(suite, cfg, trials);
    all_pass = all_pass && rep.pass();

    std::ostringstream os;
    os << "suite: " << rep.suite << "\n";
    os << "status: " << (rep.pass() ? "PASS" : "FAIL") << "\n";
    os << "trials: " << rep.trials << "\n";
    os << "constants:\n";
    for (const auto& [name, value] : rep.empirical_constants)
      os << "  " << name << " = " << format_g17(value) << "\n";
    os << "failures: " << rep.failures.size() << "\n";
    for (const Counterexample& ce : rep.failures)
      os << "  [seed " << ce.seed << " trial " << ce.trial << "] " << ce.detail
         << "\n";
    write_text_atomic(join_path(out_dir, "verify_" + suite + ".txt"),
                      os.str());

    std::cout << suite << ": " << (rep.pass() ? "PASS" : "FAIL");
    if (!rep.pass()) std::cout << " (" << rep.failures.size() << " counterexamples)";
    std::cout << "\n";
  }
  return all_pass ? 0 : 1;
}

int run_asymptotics(double alpha, int jmax, const std::string& out_dir) {
  if (!(alpha > 0.0)) throw ConfigError("--alpha must be positive");
  if (jmax < 1 || jmax > 65536) throw ConfigError("--jmax must be in [1, 65536]");

  std::ostringstream key;
  key << "asymptotics alpha=" << format_g17(alpha) << " jmax=" << jmax;
  const std::uint64_t hash = fnv1a64(key.str());
  const SearchConfig cfg;

  std::vector<int> js = {0};
  for (int j = 1; j <= jmax; j *= 2) js.push_back(j);
  if (js.back() != jmax) js.push_back(jmax);

  const PolyMap id1 = PolyMap::identity(1);
  const CVec xi{Complex{1.0, 0.0}};
  std::ostringstream norms;
  norms << "j,closed,grid,rel_error\n" << csv_comment(cfg.seed, hash) << "\n";
  std::cout << "monomial norms (alpha = " << format_g17(alpha) << ")\n";
  for (const int j : js) {
    const double closed = monomial_norm_closed(j, alpha);
    const double grid =
        weighted_sup_norm(slice_power(id1, xi, j), 1, alpha, cfg).value;
    const double rel = std::abs(grid - closed) / closed;
    norms << j << "," << format_g17(closed) << "," << format_g17(grid) << ","
          << format_g17(rel) << "\n";
    std::cout << "  j=" << j << " closed=" << format_g17(closed)
              << " grid=" << format_g17(grid) << " rel_error=" << format_g17(rel)
              << "\n";
  }

  const AsymptoticsReport coeffs = coeff_asymptotics(alpha, jmax, {});
  std::ostringstream sums;
  sums << "k,partial_sum,ratio\n" << csv_comment(cfg.seed, hash) << "\n";
  std::cout << "coefficient partial sums (S_k / k^(2 alpha))\n";
  for (const auto& row : coeffs.sums) {
    sums << row.k << "," << format_g17(row.partial_sum) << ","
         << format_g17(row.ratio) << "\n";
    std::cout << "  k=" << row.k << " S_k=" << format_g17(row.partial_sum)
              << " ratio=" << format_g17(row.ratio) << "\n";
  }

  std::filesystem::create_directories(out_dir);
  write_text_atomic(join_path(out_dir, "asymptotics_norms.csv"), norms.str());
  write_text_atomic(join_path(out_dir, "asymptotics_coeffs.csv"), sums.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"difference of weighted composition operators on the unit "
               "ball: criteria, verification suites, and asymptotics"};
  app.require_subcommand(1);

  std::string an_config, an_out = ".", an_ladder;
  std::uint64_t an_seed = 0;
  CLI::App* an = app.add_subcommand(
      "analyze", "run the boundedness/compactness analysis on an instance");
  an->add_option("config", an_config, "instance config (JSON)")->required();
  an->add_option("--out", an_out, "output directory");
  an->add_option("--ladder", an_ladder, "comma-separated degree ladder");
  CLI::Option* an_seed_opt =
      an->add_option("--seed", an_seed, "override the search seed");

  std::string ve_config, ve_out = ".", ve_suites;
  CLI::App* ve = app.add_subcommand(
      "verify", "run property verification suites against random instances");
  ve->add_option("config", ve_config, "verify config (JSON)")->required();
  ve->add_option("--out", ve_out, "output directory");
  ve->add_option("--suites", ve_suites,
                 "comma-separated suites: lemma21,lemma22,lemma23,lemma31,"
                 "geometry");

  double as_alpha = 1.0;
  int as_jmax = 256;
  std::string as_out = ".";
  CLI::App* as = app.add_subcommand(
      "asymptotics", "closed-form vs grid monomial norms and coefficient sums");
  as->add_option("--alpha", as_alpha, "space exponent")->required();
  as->add_option("--jmax", as_jmax, "largest degree")->required();
  as->add_option("--out", as_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (an->parsed())
      return run_analyze(an_config, an_out, an_ladder,
                         an_seed_opt->count() > 0, an_seed);
    if (ve->parsed()) return run_verify(ve_config, ve_out, ve_suites);
    return run_asymptotics(as_alpha, as_jmax, as_out);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
