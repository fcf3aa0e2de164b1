#pragma once

// Verification suites: seeded property checks with independent oracles.
// Each suite returns a table of rows; a row compares one measured quantity
// against its threshold.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <bregproj/json_io.hpp>

namespace bregproj::suites {

enum class Bound { at_most, at_least };

struct Row {
  std::string group;
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  Bound bound = Bound::at_most;
  bool gating = true;  // informational rows never fail a suite
  bool passed = true;
  std::string note;
};

struct Report {
  std::string suite;
  std::string case_name;
  std::uint64_t seed = 0;
  double seconds = 0.0;
  std::vector<Row> rows;

  /// Adds a row and evaluates it (NaN never passes).
  Row& check(std::string group, std::string name, double value, Bound bound, double threshold, std::string note = {});
  Row& info(std::string group, std::string name, double value, std::string note = {});
  void merge(const Report& other);

  bool passed() const;
  std::vector<const Row*> failures() const;
  Json to_json() const;
  std::string csv() const;
};

struct Options {
  std::uint64_t seed = 7;
  std::string case_name;  // suite-specific selector; empty runs every case
  double effort = 1.0;    // scales sample counts (1 = acceptance sizes)
};

using SuiteFn = std::function<Report(const Options&)>;

/// Suites in acceptance order: conjugacy, identities, pythagorean, oracle, alber,
/// cyclic, operators, spectral, embeddings, holder, moduli, quasigauge.
const std::vector<std::string>& suite_names();
bool has_suite(const std::string& name);
/// Throws std::invalid_argument for unknown names; records wall time.
Report run_suite(const std::string& name, const Options& opt);

Report conjugacy(const Options& opt);
Report identities(const Options& opt);
Report pythagorean(const Options& opt);
Report oracle(const Options& opt);
Report alber(const Options& opt);
Report cyclic(const Options& opt);
Report operators(const Options& opt);
Report spectral(const Options& opt);
Report embeddings(const Options& opt);
Report holder(const Options& opt);
Report moduli(const Options& opt);
Report quasigauge(const Options& opt);

}  // namespace bregproj::suites
