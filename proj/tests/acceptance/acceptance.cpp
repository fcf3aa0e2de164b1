// Runs the twelve acceptance criteria and prints one PASS/FAIL line each.
//
//   bregproj_acceptance [--only N[,M...]] [--expect-fail N[,M...]] [--report file.csv] [--seed S]
//
// Exit status is 0 when every criterion matches its expectation. Criteria
// named in --expect-fail still print FAIL; an expected failure that passes is
// reported as a mismatch so the list cannot go stale.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "suites.hpp"

namespace {

struct Criterion {
  int id;
  const char* suite;
  const char* title;
  double max_seconds;  // 0 = no runtime bound
};

const std::vector<Criterion> kCriteria = {
    {1, "conjugacy", "Fenchel-Young, gradient inverse and finite differences", 60},
    {2, "identities", "five Bregman identities", 60},
    {3, "pythagorean", "left/right pythagorean inequalities and affine equality", 300},
    {4, "oracle", "projections vs grid brute force and first-order solver", 0},
    {5, "alber", "Alber decomposition reconstruction and pairing", 0},
    {6, "cyclic", "Dykstra and KL cyclic limits", 0},
    {7, "operators", "resolvent pythagorean, prox coherence, quasinonexpansivity", 0},
    {8, "spectral", "spectral divergences: invariance, reduction, Umegaki", 0},
    {9, "embeddings", "Mazur, D_gamma, Lozanovskii, CPTP monotonicity", 0},
    {10, "holder", "Holder exponent ratios", 600},
    {11, "moduli", "moduli of convexity and smoothness exponents", 0},
    {12, "quasigauge", "conjugate integral lemma", 0},
};

std::set<int> parse_ids(const std::string& s) {
  std::set<int> ids;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) ids.insert(std::stoi(tok));
  return ids;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bregproj acceptance criteria"};
  std::string only, expect_fail, report;
  std::uint64_t seed = 7;
  app.add_option("--only", only, "comma-separated criterion numbers");
  app.add_option("--expect-fail", expect_fail, "criteria known to fail");
  app.add_option("--report", report, "write every row as CSV");
  app.add_option("--seed", seed, "seed");
  CLI11_PARSE(app, argc, argv);

  const std::set<int> selected = parse_ids(only), expected_red = parse_ids(expect_fail);
  std::ofstream csv;
  if (!report.empty()) csv.open(report);
  bool header = true;
  int mismatches = 0;

  for (const Criterion& c : kCriteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    bregproj::suites::Options opt;
    opt.seed = seed;
    const bregproj::suites::Report rep = bregproj::suites::run_suite(c.suite, opt);
    const auto failures = rep.failures();
    const bool in_time = c.max_seconds <= 0 || rep.seconds <= c.max_seconds;
    const bool pass = failures.empty() && in_time;
    int gating = 0;
    for (const auto& r : rep.rows) gating += r.gating ? 1 : 0;

    std::printf("Criterion %2d %-12s %s  (%d checks, %zu failed, %.1fs%s) %s\n", c.id, c.suite, pass ? "PASS" : "FAIL", gating,
                failures.size(), rep.seconds,
                c.max_seconds > 0 ? (in_time ? " within limit" : " OVER TIME LIMIT") : "", c.title);
    for (std::size_t k = 0; k < failures.size() && k < 5; ++k) {
      const auto* r = failures[k];
      std::printf("    %s / %s = %s (%s %s)\n", r->group.c_str(), r->name.c_str(), bregproj::format_number(r->value).c_str(),
                  r->bound == bregproj::suites::Bound::at_most ? "<=" : ">=", bregproj::format_number(r->threshold).c_str());
    }
    if (failures.size() > 5) std::printf("    ... %zu more\n", failures.size() - 5);
    std::fflush(stdout);

    if (csv) {
      std::string body = rep.csv();
      if (!header) body = body.substr(body.find('\n') + 1);
      csv << body;
      header = false;
    }
    const bool expected_pass = !expected_red.count(c.id);
    if (pass != expected_pass) {
      ++mismatches;
      if (!expected_pass) std::printf("    criterion %d was expected to fail but passed\n", c.id);
    } else if (!pass) {
      std::printf("    expected failure (see README, known limitations)\n");
    }
  }
  return mismatches == 0 ? 0 : 1;
}
