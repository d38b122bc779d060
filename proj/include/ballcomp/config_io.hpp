#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ballcomp/funcmodel.hpp"
#include "ballcomp/norms.hpp"
#include "ballcomp/verify.hpp"

namespace ballcomp {

// Raised for unreadable, unparseable, or schema-violating config files.
// what() is "<path>:<line>: <reason>" so the message is jump-to-able.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Analyzer instance file. JSON schema:
//   { "n": int, "alpha": num, "beta": num,
//     "u": { "<multi-index>": [re, im], ... }, "v": { ... },
//     "phi": [ <component table>, ... n entries ], "psi": [ ... ],
//     "search": { "radial_points": int, "sphere_samples": int,
//                 "refine_iters": int, "r_cap": num, "seed": int },
//     "ladder": [ints], "delta_margin": num }
// Multi-index keys are space-separated exponents, e.g. "2 0 1". Keys other
// than the ones above are rejected. search, ladder, and delta_margin are
// optional; coefficient tables may be empty (the zero function).
struct AnalyzeConfig {
  SymbolQuadruple symbols;
  SpaceParams params;
  SearchConfig search;
  std::vector<int> ladder;
  double delta_margin = 1e-3;
  std::uint64_t config_hash = 0;  // FNV-1a of the raw file bytes
};

struct SuiteTrials {
  std::string suite;
  int trials = 0;
};

// Verification run file. JSON schema:
//   { "n": int, "alpha": num, "beta": num, "seed": int, "max_degree": int,
//     "shrink": num, "slack": num, "points_per_instance": int,
//     "trials": { "<suite>": int, ... }, "suites": ["lemma21", ...],
//     "search": { ... as above } }
// Only n, alpha, and beta are required. "trials" holds per-suite trial
// counts; suites not named keep their defaults. An empty or absent "suites"
// leaves suite selection to the command line.
struct VerifyConfig {
  InstanceSpec instance;
  SpaceParams params;
  SearchConfig search;
  double slack = 1.05;
  int points_per_instance = 50;
  std::vector<SuiteTrials> trials;
  std::vector<std::string> suites;
  std::uint64_t config_hash = 0;
};

AnalyzeConfig load_analyze_config(const std::string& path);
VerifyConfig load_verify_config(const std::string& path);

extern const char* const kSuiteNames[5];

std::uint64_t fnv1a64(std::string_view bytes);

// %.17g with a '.' decimal point regardless of the global locale.
std::string format_g17(double x);

// "# ballcomp <version> seed=<seed> config=<16 hex digits>". Every CSV the
// tools emit carries this line directly under the header row.
std::string csv_comment(std::uint64_t seed, std::uint64_t config_hash);

// Writes content through a temp file in the target directory plus rename,
// so readers never observe a partial file.
void write_text_atomic(const std::string& path, const std::string& content);

}
