#include "fisher/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fisher {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

void RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    if (key.empty())
      throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
    kv_[key] = trim(t.substr(eq + 1));
  }
}

void RunConfig::set(const std::string& key, const std::string& value) { kv_[trim(key)] = trim(value); }

void RunConfig::set_line(const std::string& kev) {
  const auto eq = kev.find('=');
  if (eq == std::string::npos) throw ConfigError("--set expects section.key=value, got: " + kev);
  set(kev.substr(0, eq), kev.substr(eq + 1));
}

bool RunConfig::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string RunConfig::get(const std::string& key, const std::string& fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

int RunConfig::get_int(const std::string& key, int fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  try {
    size_t pos = 0;
    const int v = std::stoi(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ConfigError("bad integer for " + key + ": " + it->second);
  }
}

double RunConfig::get_double(const std::string& key, double fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  try {
    size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ConfigError("bad real for " + key + ": " + it->second);
  }
}

std::vector<double> RunConfig::get_doubles(const std::string& key,
                                           const std::vector<double>& fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  std::istringstream ss(it->second);
  std::vector<double> out;
  double x;
  while (ss >> x) out.push_back(x);
  if (out.empty() || !ss.eof()) throw ConfigError("bad real list for " + key + ": " + it->second);
  return out;
}

std::vector<int> RunConfig::get_ints(const std::string& key,
                                     const std::vector<int>& fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  std::istringstream ss(it->second);
  std::vector<int> out;
  int x;
  while (ss >> x) out.push_back(x);
  if (out.empty() || !ss.eof()) throw ConfigError("bad integer list for " + key + ": " + it->second);
  return out;
}

ParamSet RunConfig::params() const {
  ParamSet p;
  p.n = get_int("params.n", 1);
  p.c = get_double("params.c", 1.0);
  p.alpha = get_double("params.alpha", 0.25);
  p.beta = get_double("params.beta", -1.0);
  return p;
}

TorusGrid RunConfig::grid() const {
  const std::vector<int> pts = get_ints("grid.points", {512});
  std::vector<double> len = get_doubles("grid.lengths", {});
  if (len.empty()) len.assign(pts.size(), 10.0);
  if (len.size() == 1 && pts.size() > 1) len.assign(pts.size(), len[0]);
  return make_grid(pts, len);
}

InitSpec RunConfig::init(std::uint64_t default_seed) const {
  InitSpec spec;
  const std::string kind = get("init.kind", "smooth");
  if (kind == "constant") spec.kind = InitKind::Constant;
  else if (kind == "smooth") spec.kind = InitKind::SmoothRandom;
  else if (kind == "bump") spec.kind = InitKind::Bump;
  else throw ConfigError("init.kind must be constant, smooth or bump");
  spec.value = get_double("init.value", 0.5);
  spec.seed = std::uint64_t(get_int("init.seed", int(default_seed)));
  spec.band = get_int("init.band", 4);
  spec.floor = get_double("init.floor", 0.05);
  spec.center = get_doubles("init.center", {});
  spec.width = get_double("init.width", 0.1);
  spec.height = get_double("init.height", 0.9);
  return spec;
}

std::vector<std::string> RunConfig::manifest_lines() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : kv_) out.push_back(k + " = " + v);
  return out;
}

void apply_thread_cap() {
#ifdef _OPENMP
  if (const char* env = std::getenv("FISHER_HARNACK_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) omp_set_num_threads(std::min(cap, omp_get_max_threads()));
  }
#endif
}

double fitted_order(const std::vector<double>& h, const std::vector<double>& err) {
  // Slope of ln(err) vs ln(h); errors at the floor are clipped to keep the
  // logs finite.
  const size_t m = h.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < m; ++i) {
    const double x = std::log(h[i]);
    const double y = std::log(std::max(err[i], 1e-300));
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace fisher
