#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qchar/qcore.hpp"

namespace qchar::suites {

using json = nlohmann::ordered_json;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::optional<int> zmax, qlo, qhi;
  int imax_buffer = 2;
  int precision = 100;
  int samples = 5;
  uint64_t seed = 20240607;
  int D = 5;
  std::optional<int> k, k1, k2, l1, l2, l3, d1, d2, n;
};
json config_echo(const RunConfig& c);

struct Check {
  std::string name;
  json params;
  bool pass = false;
  json counterexample;  // null when passing
};

struct Report {
  std::string suite;
  std::vector<Check> checks;
  double seconds = 0;
  size_t failed() const;
  bool pass() const { return failed() == 0; }
};

// sl2-all, chsp, ses, boundary, gl, toda, irec, isum, terms, gt-numeric, whittaker, all
const std::vector<std::string>& suite_names();
Report run_suite(const std::string& name, const RunConfig& cfg);

struct Criterion {
  int id;
  std::string title;
  std::vector<std::string> groups;
  double time_limit_s;  // 0 if none
};
const std::vector<Criterion>& criteria();
// at the settings stated for the criterion; a time limit overrun is a failing check
Report run_criterion(int id);

// deterministic report; wall-clock is kept out so repeated runs are byte-identical
json to_json(const Report& r, const RunConfig& c);
std::string to_table(const Report& r);

json series_json(const Series2& s);
std::string series_table(const Series2& s);

}  // namespace qchar::suites
