// Acceptance gate: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exit status 0 iff everything passes.

#include <cstdio>
#include <string>
#include <vector>

#include "arq/verify.hpp"

namespace {

struct Criterion {
  int number;
  std::string suite;
  std::string description;
  double budget_seconds;  // <= 0: no runtime budget
};

}  // namespace

int main() {
  using namespace arq;
  const std::vector<Criterion> criteria = {
      {1, "a2-almost-split", "A2 triangle ending at S1: fiber S2, middle P1, exhaustive",
       1.0},
      {2, "typea-ar-sweep", "type-A sweep n=3..5, p=2,3: validation and DTr agreement",
       120.0},
      {3, "lemma31-nondegeneracy", "pairings full rank + duality dims on A4", 0.0},
      {4, "quasi-inverse-adjoint", "theta/xi invertible, triangle identities, naturality",
       0.0},
      {5, "thm-exist-sweep", "existence construction over every A3 submodule", 300.0},
      {6, "thm-c-six", "six equivalent conditions on A3 and A4", 0.0},
      {7, "radical-cross", "block radical equals brute-force radical on A3/F2", 0.0},
      {8, "euler-form", "dim Hom - dim Ext = Euler form, 200 seeded A4 pairs", 0.0},
      {9, "paper-5-2", "truncation fixture: stabilization, weak kernel, discrepancy",
       120.0},
      {10, "property-lemmas", "lemma property suites, seeded samples, zero violations",
       0.0},
  };

  VerifyOptions opts;  // spec defaults: p per suite, seed 0, cap 65536, windows 8..12
  bool all_pass = true;
  for (const Criterion& c : criteria) {
    SuiteResult result{};
    std::string note;
    try {
      result = run_suite(c.suite, opts);
    } catch (const std::exception& e) {
      result.pass = false;
      note = std::string(" [exception: ") + e.what() + "]";
    }
    bool in_budget = c.budget_seconds <= 0 || result.seconds <= c.budget_seconds;
    bool pass = result.pass && in_budget;
    all_pass = all_pass && pass;
    std::printf("[%s] criterion %2d (%s): %s (%.2fs)%s%s\n", pass ? "PASS" : "FAIL",
                c.number, c.suite.c_str(), c.description.c_str(), result.seconds,
                in_budget ? "" : " [over runtime budget]", note.c_str());
    if (!result.pass && result.details.contains("violations")) {
      std::printf("       first violation: %s\n",
                  result.details["violations"][0].dump().c_str());
    }
    std::fflush(stdout);
  }
  std::printf("%s\n", all_pass ? "ACCEPTANCE: PASS" : "ACCEPTANCE: FAIL");
  return all_pass ? 0 : 1;
}
