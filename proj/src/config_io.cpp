#include "ballcomp/config_io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <string>

#include "json.hpp"

#include "ballcomp/version.hpp"

namespace ballcomp {

const char* const kSuiteNames[5] = {"lemma21", "lemma22", "lemma23",
                                    "lemma31", "geometry"};

namespace {

using nlohmann::json;

int line_of_byte(const std::string& raw, std::size_t byte) {
  int line = 1;
  const std::size_t stop = std::min(byte, raw.size());
  for (std::size_t i = 0; i < stop; ++i)
    if (raw[i] == '\n') ++line;
  return line;
}

[[noreturn]] void fail(const std::string& path, int line,
                       const std::string& msg) {
  throw ConfigError(path + ":" + std::to_string(line) + ": " + msg);
}

// Carries the raw text so schema errors can be anchored to the line where
// the offending key first appears.
struct Ctx {
  std::string path;
  std::string raw;

  int key_line(const std::string& key) const {
    const std::size_t pos = raw.find("\"" + key + "\"");
    return pos == std::string::npos ? 1 : line_of_byte(raw, pos);
  }
  [[noreturn]] void fail_key(const std::string& key,
                             const std::string& msg) const {
    fail(path, key_line(key), msg);
  }
};

Ctx read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ":1: cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return Ctx{path, os.str()};
}

json parse_root(const Ctx& c) {
  json root;
  try {
    root = json::parse(c.raw);
  } catch (const json::parse_error& e) {
    fail(c.path, line_of_byte(c.raw, e.byte > 0 ? e.byte - 1 : 0),
         std::string("parse error: ") + e.what());
  }
  if (!root.is_object()) fail(c.path, 1, "top level must be a JSON object");
  return root;
}

void check_keys(const Ctx& c, const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return item.key() == k; });
    if (!known)
      c.fail_key(item.key(),
                 "unknown key \"" + item.key() + "\" in " + where);
  }
}

const json& require(const Ctx& c, const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end())
    fail(c.path, 1, std::string("missing required key \"") + key + "\"");
  return *it;
}

double get_num(const Ctx& c, const json& v, const std::string& key) {
  if (!v.is_number()) c.fail_key(key, "\"" + key + "\" must be a number");
  return v.get<double>();
}

int get_int(const Ctx& c, const json& v, const std::string& key) {
  if (!v.is_number_integer())
    c.fail_key(key, "\"" + key + "\" must be an integer");
  const long long x = v.get<long long>();
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
    c.fail_key(key, "\"" + key + "\" out of range");
  return static_cast<int>(x);
}

std::uint64_t get_seed(const Ctx& c, const json& v, const std::string& key) {
  if (!v.is_number_integer() || v.get<long long>() < 0)
    c.fail_key(key, "\"" + key + "\" must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

MultiIndex parse_multi_index(const Ctx& c, const std::string& key, int n) {
  MultiIndex m;
  std::istringstream is(key);
  int e = 0;
  while (is >> e) {
    if (e < 0) c.fail_key(key, "negative exponent in multi-index \"" + key + "\"");
    m.exponents.push_back(e);
  }
  if (!is.eof())
    c.fail_key(key, "multi-index \"" + key +
                        "\" must be space-separated nonnegative integers");
  if (static_cast<int>(m.exponents.size()) != n)
    c.fail_key(key, "multi-index \"" + key + "\" has " +
                        std::to_string(m.exponents.size()) +
                        " exponents, expected " + std::to_string(n));
  return m;
}

PolyFn parse_poly(const Ctx& c, const json& tbl, const std::string& where,
                  int n) {
  if (!tbl.is_object())
    c.fail_key(where, "\"" + where + "\" must be an object mapping "
                      "multi-indices to [re, im] pairs");
  PolyFn f(n);
  for (const auto& item : tbl.items()) {
    const MultiIndex m = parse_multi_index(c, item.key(), n);
    const json& val = item.value();
    if (!val.is_array() || val.size() != 2 || !val[0].is_number() ||
        !val[1].is_number())
      c.fail_key(item.key(),
                 "coefficient for \"" + item.key() + "\" must be [re, im]");
    f.set_coeff(m, Complex{val[0].get<double>(), val[1].get<double>()});
  }
  return f;
}

PolyMap parse_map(const Ctx& c, const json& arr, const std::string& where,
                  int n) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != n)
    c.fail_key(where, "\"" + where + "\" must be an array of " +
                          std::to_string(n) + " component tables");
  std::vector<PolyFn> comps;
  for (const json& t : arr) comps.push_back(parse_poly(c, t, where, n));
  return PolyMap(std::move(comps));
}

SearchConfig parse_search(const Ctx& c, const json& obj) {
  SearchConfig cfg;
  if (!obj.is_object()) c.fail_key("search", "\"search\" must be an object");
  check_keys(c, obj, "\"search\"",
             {"radial_points", "sphere_samples", "refine_iters", "r_cap",
              "seed"});
  if (const auto it = obj.find("radial_points"); it != obj.end())
    cfg.radial_points = get_int(c, *it, "radial_points");
  if (const auto it = obj.find("sphere_samples"); it != obj.end())
    cfg.sphere_samples = get_int(c, *it, "sphere_samples");
  if (const auto it = obj.find("refine_iters"); it != obj.end())
    cfg.refine_iters = get_int(c, *it, "refine_iters");
  if (const auto it = obj.find("r_cap"); it != obj.end())
    cfg.r_cap = get_num(c, *it, "r_cap");
  if (const auto it = obj.find("seed"); it != obj.end())
    cfg.seed = get_seed(c, *it, "seed");
  return cfg;
}

std::vector<int> parse_ladder(const Ctx& c, const json& arr) {
  if (!arr.is_array() || arr.empty())
    c.fail_key("ladder", "\"ladder\" must be a nonempty array of integers");
  std::vector<int> ladder;
  for (const json& v : arr) ladder.push_back(get_int(c, v, "ladder"));
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (ladder[i] < 0)
      c.fail_key("ladder", "\"ladder\" degrees must be nonnegative");
    if (i > 0 && ladder[i] <= ladder[i - 1])
      c.fail_key("ladder", "\"ladder\" must be strictly increasing");
  }
  return ladder;
}

bool known_suite(const std::string& name) {
  return std::any_of(std::begin(kSuiteNames), std::end(kSuiteNames),
                     [&](const char* s) { return name == s; });
}

}  // namespace

AnalyzeConfig load_analyze_config(const std::string& path) {
  const Ctx c = read_file(path);
  const json root = parse_root(c);
  check_keys(c, root, "the instance config",
             {"n", "alpha", "beta", "u", "v", "phi", "psi", "search", "ladder",
              "delta_margin"});

  const int n = get_int(c, require(c, root, "n"), "n");
  if (n < 1 || n > 6) c.fail_key("n", "\"n\" must be in [1, 6]");
  SpaceParams params;
  params.alpha = get_num(c, require(c, root, "alpha"), "alpha");
  params.beta = get_num(c, require(c, root, "beta"), "beta");
  if (!(params.alpha > 0.0)) c.fail_key("alpha", "\"alpha\" must be positive");
  if (!(params.beta > 0.0)) c.fail_key("beta", "\"beta\" must be positive");

  PolyFn u = parse_poly(c, require(c, root, "u"), "u", n);
  PolyFn v = parse_poly(c, require(c, root, "v"), "v", n);
  PolyMap phi = parse_map(c, require(c, root, "phi"), "phi", n);
  PolyMap psi = parse_map(c, require(c, root, "psi"), "psi", n);

  SearchConfig search;
  if (const auto it = root.find("search"); it != root.end())
    search = parse_search(c, *it);

  std::vector<int> ladder = {0, 1, 2, 4, 8, 16, 32, 64, 128, 256};
  if (const auto it = root.find("ladder"); it != root.end())
    ladder = parse_ladder(c, *it);

  double delta_margin = 1e-3;
  if (const auto it = root.find("delta_margin"); it != root.end()) {
    delta_margin = get_num(c, *it, "delta_margin");
    if (!(delta_margin >= 0.0) || delta_margin >= 1.0)
      c.fail_key("delta_margin", "\"delta_margin\" must be in [0, 1)");
  }

  return AnalyzeConfig{
      SymbolQuadruple{std::move(u), std::move(v), std::move(phi),
                      std::move(psi)},
      params,
      search,
      std::move(ladder),
      delta_margin,
      fnv1a64(c.raw)};
}

VerifyConfig load_verify_config(const std::string& path) {
  const Ctx c = read_file(path);
  const json root = parse_root(c);
  check_keys(c, root, "the verify config",
             {"n", "alpha", "beta", "seed", "max_degree", "shrink", "slack",
              "points_per_instance", "trials", "suites", "search"});

  VerifyConfig out;
  out.instance.dim = get_int(c, require(c, root, "n"), "n");
  out.params.alpha = get_num(c, require(c, root, "alpha"), "alpha");
  out.params.beta = get_num(c, require(c, root, "beta"), "beta");
  if (!(out.params.alpha > 0.0)) c.fail_key("alpha", "\"alpha\" must be positive");
  if (!(out.params.beta > 0.0)) c.fail_key("beta", "\"beta\" must be positive");

  if (const auto it = root.find("seed"); it != root.end())
    out.instance.seed = get_seed(c, *it, "seed");
  if (const auto it = root.find("max_degree"); it != root.end())
    out.instance.max_degree = get_int(c, *it, "max_degree");
  if (const auto it = root.find("shrink"); it != root.end())
    out.instance.shrink = get_num(c, *it, "shrink");
  try {
    validate_instance_spec(out.instance);
  } catch (const std::invalid_argument& e) {
    fail(c.path, 1, e.what());
  }

  if (const auto it = root.find("slack"); it != root.end()) {
    out.slack = get_num(c, *it, "slack");
    if (!(out.slack >= 1.0)) c.fail_key("slack", "\"slack\" must be >= 1");
  }
  if (const auto it = root.find("points_per_instance"); it != root.end()) {
    out.points_per_instance = get_int(c, *it, "points_per_instance");
    if (out.points_per_instance < 1)
      c.fail_key("points_per_instance",
                 "\"points_per_instance\" must be >= 1");
  }
  if (const auto it = root.find("trials"); it != root.end()) {
    if (!it->is_object())
      c.fail_key("trials", "\"trials\" must map suite names to counts");
    for (const auto& item : it->items()) {
      if (!known_suite(item.key()))
        c.fail_key(item.key(), "unknown suite \"" + item.key() + "\"");
      const int t = get_int(c, item.value(), item.key());
      if (t < 1) c.fail_key(item.key(), "trial count must be >= 1");
      out.trials.push_back({item.key(), t});
    }
  }
  if (const auto it = root.find("suites"); it != root.end()) {
    if (!it->is_array())
      c.fail_key("suites", "\"suites\" must be an array of suite names");
    for (const json& v : *it) {
      if (!v.is_string() || !known_suite(v.get<std::string>()))
        c.fail_key("suites", "unknown suite in \"suites\"");
      out.suites.push_back(v.get<std::string>());
    }
  }
  if (const auto it = root.find("search"); it != root.end())
    out.search = parse_search(c, *it);

  out.config_hash = fnv1a64(c.raw);
  return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (const char ch : bytes) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ULL;
  }
  return h;
}

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  std::string s(buf);
  // The process never calls setlocale, but a '.' is part of the file format.
  std::replace(s.begin(), s.end(), ',', '.');
  return s;
}

std::string csv_comment(std::uint64_t seed, std::uint64_t config_hash) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "# ballcomp %s seed=%llu config=%016llx",
                kVersion, static_cast<unsigned long long>(seed),
                static_cast<unsigned long long>(config_hash));
  return std::string(buf);
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("short write to " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}
