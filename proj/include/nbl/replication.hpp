#pragma once

#include <string>
#include <vector>

#include "nbl/model.hpp"
#include "nbl/search.hpp"

namespace nbl {

// A finite model or frame from the built-in catalog, with its designated
// point. Frame fixtures carry an empty valuation. Primed structures use the
// id suffix 'p' and state labels sp/tp; a trailing apostrophe or prime in a
// requested id is accepted as an alias.
struct Fixture {
  std::string id;
  NeighborhoodModel model;
  std::string point;
  bool is_frame;
};

const std::vector<Fixture>& fixture_catalog();
const Fixture& fixture(const std::string& id);  // throws ModelError if unknown

// Canonical JSON for a fixture (model format; frames omit the valuation).
std::string export_fixture(const std::string& id);

// The stock derivations shipped with the suite, as proof scripts for system
// E: "circimpliesdelta" (nabla phi & phi -> bullet phi) and "impliesphi"
// (bullet(circ phi | psi -> phi) -> phi).
const std::string& builtin_derivation_script(const std::string& id);
std::vector<std::string> builtin_derivation_ids();

struct SuiteOptions {
  int jobs = 1;
};

struct ClaimResult {
  std::string id;
  std::string description;
  bool pass = false;
  std::string detail;
  double elapsed_ms = 0.0;
};

struct SuiteReport {
  std::vector<ClaimResult> claims;

  int total() const { return static_cast<int>(claims.size()); }
  int failed() const;
  bool all_pass() const { return failed() == 0; }
};

// Runs every claim of the fixture catalog: property profiles, fragment
// (in)distinguishability with witness re-checks, frame equivalence at bounded
// vocabulary, the (n)-definability biconditional, per-system axiom soundness
// at bound 2, the negative controls, the derived equivalences over (c)/(t),
// the ignorance-interaction corollaries, and the stock derivations.
// Deterministic given the options; claims are ordered by id group as
// constructed.
SuiteReport run_fixture_suite(const SuiteOptions& opts = {});

// Restricts the suite to claims whose id starts with the prefix.
SuiteReport run_fixture_suite(const SuiteOptions& opts, const std::string& id_prefix);

// JSON report: {"claims":[{"id","verdict","detail"},...],"summary":{...}}.
// Timings are included only on request so reports compare byte-for-byte
// across runs and worker counts.
std::string report_to_json(const SuiteReport& report, bool with_timings = false);
std::string report_to_text(const SuiteReport& report);

}  // namespace nbl
