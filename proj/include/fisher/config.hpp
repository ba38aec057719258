#ifndef FISHER_CONFIG_HPP_
#define FISHER_CONFIG_HPP_

#include <map>
#include <string>
#include <vector>

#include "fisher/errors.hpp"
#include "fisher/params.hpp"
#include "fisher/solver.hpp"

namespace fisher {

/**
 * Flat "section.key = value" configuration. Lines starting with '#' and blank
 * lines are ignored; later assignments (including --set overrides) win.
 */
class RunConfig {
 public:
  void load_file(const std::string& path);          // throws ConfigError
  void set(const std::string& key, const std::string& value);
  void set_line(const std::string& key_eq_value);   // "section.key=value"

  bool has(const std::string& key) const;
  std::string get(const std::string& key, const std::string& fallback) const;
  int get_int(const std::string& key, int fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::vector<double> get_doubles(const std::string& key,
                                  const std::vector<double>& fallback) const;
  std::vector<int> get_ints(const std::string& key, const std::vector<int>& fallback) const;

  ParamSet params() const;
  TorusGrid grid() const;
  InitSpec init(std::uint64_t default_seed) const;

  /// Sorted "key = value" lines echoing the fully resolved configuration.
  std::vector<std::string> manifest_lines() const;

 private:
  std::map<std::string, std::string> kv_;
};

/// Honors FISHER_HARNACK_THREADS (worker cap) when set.
void apply_thread_cap();

/// Least-squares slope of log(err) against log(h): the measured order.
double fitted_order(const std::vector<double>& h, const std::vector<double>& err);

}  // namespace fisher

#endif  // FISHER_CONFIG_HPP_
