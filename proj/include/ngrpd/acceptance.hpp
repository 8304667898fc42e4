#ifndef NGRPD_ACCEPTANCE_HPP_
#define NGRPD_ACCEPTANCE_HPP_

// The bundled end-to-end suite: ten criteria, each an independent family of
// checks with its own verified range. Fixtures are JSON files in one
// directory; a fixture that fails to load or to validate fails its
// criterion with the fixture name in the witness.

#include <functional>
#include <string>
#include <vector>

#include "report.hpp"

namespace ngrpd {

  struct Criterion {
    int                            id = 0;
    std::string                    name;  // short slug, e.g. "galois-roundtrip"
    std::vector<std::string>       tags;  // module names, matched by --filter
    std::function<Report(std::string const& fixtures)> run;
  };

  std::vector<Criterion> acceptance_criteria();

  struct AcceptanceOptions {
    std::string fixtures;         // directory with the bundled JSON fixtures
    std::string filter;           // substring of the name or a tag; empty = all
    int         jobs = 1;
  };

  struct CriterionOutcome {
    int         id = 0;
    std::string name;
    Report      report;
    double      seconds = 0;  // not part of any JSON output
  };

  // Runs the selected criteria; outcomes come back in id order. `progress`
  // is called as each criterion finishes (possibly out of order).
  std::vector<CriterionOutcome> run_acceptance(AcceptanceOptions const&                          options,
                                               std::function<void(CriterionOutcome const&)> const& progress = {});

  // One check per criterion ("criterion 3: fibration-hypercover") carrying
  // the first failing witness and the criterion's verified range.
  Report selftest_report(std::vector<CriterionOutcome> const& outcomes);

  // Directory of the fixtures shipped with the source tree (compile-time).
  std::string default_fixture_dir();

  // Writes the canonical fixtures into `dir` (used to regenerate them).
  void write_fixtures(std::string const& dir);

}  // namespace ngrpd

#endif  // NGRPD_ACCEPTANCE_HPP_
