// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion carries its time budget; exceeding it fails the
// criterion even if the checks themselves pass.

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "nbl/formula.hpp"
#include "nbl/model.hpp"
#include "nbl/proofs.hpp"
#include "nbl/replication.hpp"
#include "nbl/search.hpp"
#include "nbl/semantics.hpp"
#include "oracle.hpp"
#include "test_paths.hpp"

using namespace nbl;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Failure {
  std::string what;
};

void expect(bool cond, const std::string& what) {
  if (!cond) throw Failure{what};
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(kNblCliPath) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::vector<NeighborhoodFrame> all_frames(int n_states) {
  std::vector<NeighborhoodFrame> out;
  FrameStream stream(n_states, {});
  while (auto fr = stream.next()) out.push_back(*fr);
  return out;
}

std::vector<std::map<std::string, StateSet>> valuations_over_p(int n_states) {
  std::vector<std::map<std::string, StateSet>> out;
  for (std::uint32_t bits = 0; bits <= StateSet::full(n_states).bits; ++bits)
    out.push_back({{"p", StateSet(bits)}});
  return out;
}

// criterion 1: bitset evaluator vs the naive set-based transcription
Outcome semantics_conformance() {
  std::uint64_t rng = 0xc0ffee;
  long comparisons = 0;
  for (const auto& fr : all_frames(1)) {
    for (const auto& val : valuations_over_p(1)) {
      NeighborhoodModel m(fr, val);
      std::uint64_t frng = rng;
      for (int i = 0; i < 500; ++i) {
        Formula f = oracle::random_formula({"p"}, 4, frng);
        StateSet fast = truth_set(m, f);
        for (int s = 0; s < fr.size(); ++s, ++comparisons)
          expect(fast.contains(s) == oracle::naive_satisfies(m, s, f),
                 "mismatch on a 1-state frame for " + f.render());
      }
    }
  }
  // stronger than required: every 2-state frame with a smaller sample
  for (const auto& fr : all_frames(2)) {
    for (const auto& val : valuations_over_p(2)) {
      NeighborhoodModel m(fr, val);
      std::uint64_t frng = rng + fr.neighborhoods(0).size();
      for (int i = 0; i < 12; ++i) {
        Formula f = oracle::random_formula({"p"}, 4, frng);
        StateSet fast = truth_set(m, f);
        for (int s = 0; s < fr.size(); ++s, ++comparisons)
          expect(fast.contains(s) == oracle::naive_satisfies(m, s, f),
                 "mismatch on a 2-state frame for " + f.render());
      }
    }
  }
  return {true, "evaluators agree on " + std::to_string(comparisons) +
                    " state checks (all 1- and 2-state frames)"};
}

// criterion 2: every axiom of every system valid over its class at bound 2
Outcome soundness_suites(int jobs) {
  SearchOptions opts;
  opts.jobs = jobs;
  int axioms = 0;
  for (SystemId sys : {SystemId::E, SystemId::Ec, SystemId::EN, SystemId::M,
                       SystemId::R, SystemId::K}) {
    SoundnessReport rep = axiom_soundness_suite(sys, 2, opts);
    for (const auto& row : rep.rows) {
      expect(row.verdict.valid(), std::string(system_name(sys)) + "/" + row.axiom +
                                      " has a countermodel");
      expect(!row.verdict.sampled, "bound-2 search must be exhaustive");
      ++axioms;
    }
  }
  return {true, std::to_string(axioms) +
                    " axiom/class checks exhaustive over frames with at most 2 "
                    "states, zero countermodels"};
}

struct NegativeControl {
  const char* name;
  const char* formula;
};

constexpr NegativeControl kControls[] = {
    {"E4", "bullet p -> nabla p"},
    {"M1", "nabla(p | q) & nabla(~p | r) -> nabla p"},
    {"CIRCTOP", "circ true"},
};

// criterion 3: deliberate mismatches produce re-checkable countermodels and
// CLI exit code 1
Outcome negative_controls(int jobs) {
  SearchOptions opts;
  opts.jobs = jobs;
  for (const auto& control : kControls) {
    Formula f = parse(control.formula);
    Verdict v = class_valid(f, {}, 2, opts);
    expect(!v.valid(), std::string(control.name) + " should fail over all frames");
    const auto& [model, state] = *v.witness;
    expect(!oracle::naive_satisfies(model, model.frame().state_index(state), f),
           std::string(control.name) + " witness does not re-check");
    int code = run_cli("valid --formula \"" + std::string(control.formula) +
                       "\" --class all --max-states 2");
    expect(code == 1, std::string(control.name) + " CLI exit code was " +
                          std::to_string(code));
  }
  return {true, "3 controls refuted at bound 2; witnesses re-check; exit code 1"};
}

std::vector<ClaimResult> suite_claims_with_prefixes(
    const SuiteOptions& opts, const std::vector<std::string>& prefixes) {
  SuiteReport full = run_fixture_suite(opts);
  std::vector<ClaimResult> out;
  for (const auto& claim : full.claims)
    for (const auto& prefix : prefixes)
      if (claim.id.rfind(prefix, 0) == 0) {
        out.push_back(claim);
        break;
      }
  return out;
}

const std::vector<std::string> kExpressivityPrefixes = {
    "P1.", "P2.", "P3.", "P6.", "P7.", "P8.", "P11.", "P12.", "R1."};

// criterion 4: the expressivity fixture claims
Outcome expressivity_replication(int jobs) {
  SuiteOptions opts;
  opts.jobs = jobs;
  auto claims = suite_claims_with_prefixes(opts, kExpressivityPrefixes);
  expect(claims.size() >= 40, "expressivity claim set is unexpectedly small");
  for (const auto& claim : claims)
    expect(claim.pass, claim.id + ": " + claim.detail);
  return {true, std::to_string(claims.size()) + " fixture claims pass"};
}

// criterion 5: frame_valid(circ true) iff (n), exhaustively through 3 states
Outcome definability(int jobs) {
  SearchOptions opts;
  opts.jobs = jobs;
  std::uint64_t total = 0;
  for (int n = 1; n <= 3; ++n) {
    DefinabilityResult r =
        check_defines_property(parse("circ true"), Property::N, n, opts);
    expect(r.violations == 0,
           std::to_string(r.violations) + " violations at size " + std::to_string(n));
    total += r.frames_checked;
  }
  expect(total == 4 + 256 + 16777216ull, "unexpected frame count");
  return {true, "biconditional exact on all " + std::to_string(total) + " frames"};
}

// criterion 6: undefinability fixtures and bounded frame equivalence
Outcome undefinability(int jobs) {
  SuiteOptions opts;
  opts.jobs = jobs;
  auto claims = suite_claims_with_prefixes(opts, {"P14.", "P15.", "P16."});
  expect(claims.size() >= 11, "undefinability claim set is unexpectedly small");
  for (const auto& claim : claims)
    expect(claim.pass, claim.id + ": " + claim.detail);
  return {true, std::to_string(claims.size()) +
                    " claims pass (profiles; indistinguishability over {p} and {p,q})"};
}

struct Mutant {
  const char* name;
  const char* script;
  int rejected_at;
};

const Mutant kMutants[] = {
    {"wrong MP reference",
     "1. nabla ?phi -> bullet ?phi | bullet ~?phi ; AX E3\n"
     "2. (nabla ?phi -> bullet ?phi | bullet ~?phi) -> (nabla ?phi & ?phi -> bullet "
     "?phi | bullet ~?phi) ; TAUT\n"
     "3. nabla ?phi & ?phi -> bullet ?phi | bullet ~?phi ; MP 2 1\n",
     3},
    {"wrong schema name",
     "1. nabla ?phi -> bullet ?phi | bullet ~?phi ; AX E1\n"
     "2. bullet ~?phi -> ~?phi ; AX E2\n"
     "3. nabla ?phi -> bullet ?phi | ~?phi ; CONSEQ 1, 2\n"
     "4. nabla ?phi & ?phi -> bullet ?phi ; CONSEQ 3\n",
     1},
    {"swapped RE operand",
     "1. ?phi & ?psi <-> ?psi & ?phi ; TAUT\n"
     "2. nabla(?psi & ?phi) <-> nabla(?phi & ?psi) ; RE-NABLA 1\n",
     2},
    {"broken CONSEQ",
     "1. nabla ?phi -> bullet ?phi | bullet ~?phi ; AX E3\n"
     "2. bullet ~?phi -> ~?phi ; AX E2\n"
     "3. nabla ?phi -> bullet ?phi ; CONSEQ 1, 2\n",
     3},
    {"forward reference",
     "1. nabla ?phi -> bullet ?phi | bullet ~?phi ; AX E3\n"
     "2. bullet ~?phi -> ~?phi ; AX E2\n"
     "3. nabla ?phi -> bullet ?phi | ~?phi ; CONSEQ 1, 4\n"
     "4. nabla ?phi & ?phi -> bullet ?phi ; CONSEQ 3\n",
     3},
};

// criterion 7: stock derivations accepted, mutants rejected precisely
Outcome proof_checking(int jobs) {
  SearchOptions opts;
  opts.jobs = jobs;
  const AxiomSystem& e = axiom_system(SystemId::E);
  const std::unordered_map<std::string, Formula> at_pqr = {
      {"phi", Formula::atom("p")},
      {"psi", Formula::atom("q")},
      {"chi", Formula::atom("r")},
  };
  int lines_checked = 0;
  for (const auto& id : builtin_derivation_ids()) {
    Derivation d = parse_derivation(builtin_derivation_script(id));
    CheckResult res = check_derivation(e, d);
    expect(res.accepted, id + " rejected at line " + std::to_string(res.failed_line) +
                             ": " + res.reason);
    for (const auto& line : d.lines) {
      Verdict v = class_valid(substitute(line.formula, at_pqr), {}, 2, opts);
      expect(v.valid(), id + " line " + std::to_string(line.number) +
                            " is not frame-valid at bound 2");
      ++lines_checked;
    }
  }
  for (const auto& mutant : kMutants) {
    CheckResult res = check_derivation(e, parse_derivation(mutant.script));
    expect(!res.accepted, std::string(mutant.name) + " was accepted");
    expect(res.failed_line == mutant.rejected_at,
           std::string(mutant.name) + " rejected at line " +
               std::to_string(res.failed_line) + ", expected " +
               std::to_string(mutant.rejected_at));
  }
  return {true, "2 derivations accepted (" + std::to_string(lines_checked) +
                    " lines frame-valid); 5 mutants rejected at the stated lines"};
}

// criterion 8: interaction corollaries of the four ignorance forms
Outcome corollaries(int jobs) {
  SearchOptions opts;
  opts.jobs = jobs;
  expect(class_valid(parse("bullet nabla p -> nabla p"), {}, 2, opts).valid(),
         "Rumsfeld ignorance should imply first-order ignorance");
  expect(class_valid(parse("nabla nabla p & nabla p -> bullet nabla p"), {}, 2, opts)
             .valid(),
         "second-order plus first-order should imply Rumsfeld ignorance");
  expect(class_valid(parse("bullet nabla p -> nabla nabla p"), {Property::C}, 2, opts)
             .valid(),
         "over (c), Rumsfeld ignorance should imply second-order ignorance");
  Verdict refuted = class_valid(parse("bullet nabla p -> nabla nabla p"), {}, 2, opts);
  expect(!refuted.valid(), "the (c)-only implication should fail unrestricted");
  expect(!oracle::naive_satisfies(
             refuted.witness->first,
             refuted.witness->first.frame().state_index(refuted.witness->second),
             parse("bullet nabla p -> nabla nabla p")),
         "refutation witness does not re-check");
  return {true, "all four verdicts as stated at bound 2"};
}

// stable JSON projections used by the determinism criterion
std::string stable_soundness_json(int jobs) {
  SearchOptions opts;
  opts.jobs = jobs;
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (SystemId sys : {SystemId::E, SystemId::Ec, SystemId::EN, SystemId::M,
                       SystemId::R, SystemId::K}) {
    SoundnessReport rep = axiom_soundness_suite(sys, 2, opts);
    for (const auto& row : rep.rows)
      doc.push_back({{"system", system_name(sys)},
                     {"axiom", row.axiom},
                     {"instance", row.instance.render()},
                     {"valid", row.verdict.valid()}});
  }
  return doc.dump(2);
}

std::string stable_negatives_json(int jobs) {
  SearchOptions opts;
  opts.jobs = jobs;
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& control : kControls) {
    Verdict v = class_valid(parse(control.formula), {}, 2, opts);
    nlohmann::ordered_json entry{{"control", control.name}, {"valid", v.valid()}};
    if (v.witness) {
      entry["witness_model"] =
          nlohmann::ordered_json::parse(model_to_json(v.witness->first));
      entry["witness_state"] = v.witness->second;
    }
    doc.push_back(std::move(entry));
  }
  return doc.dump(2);
}

std::string stable_expressivity_json(int jobs) {
  SuiteOptions opts;
  opts.jobs = jobs;
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& claim : suite_claims_with_prefixes(opts, kExpressivityPrefixes))
    doc.push_back({{"id", claim.id},
                   {"verdict", claim.pass ? "pass" : "fail"},
                   {"detail", claim.detail}});
  return doc.dump(2);
}

std::string stable_definability_json(int jobs) {
  SearchOptions opts;
  opts.jobs = jobs;
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (int n = 1; n <= 3; ++n) {
    DefinabilityResult r =
        check_defines_property(parse("circ true"), Property::N, n, opts);
    doc.push_back(
        {{"states", n}, {"frames", r.frames_checked}, {"violations", r.violations}});
  }
  return doc.dump(2);
}

// criterion 9: byte-identical reports for criteria 2..5 across worker counts
Outcome determinism() {
  const std::array<std::function<std::string(int)>, 4> builders = {
      stable_soundness_json, stable_negatives_json, stable_expressivity_json,
      stable_definability_json};
  const char* names[] = {"soundness", "negative-controls", "expressivity",
                         "definability"};
  for (size_t i = 0; i < builders.size(); ++i) {
    std::string once = builders[i](1);
    std::string again = builders[i](1);
    std::string wide = builders[i](8);
    expect(once == again, std::string(names[i]) + " report differs between runs");
    expect(once == wide,
           std::string(names[i]) + " report differs between --jobs 1 and --jobs 8");
  }
  return {true, "4 reports byte-identical across repeat runs and jobs 1 vs 8"};
}

struct Criterion {
  int number;
  std::string title;
  double limit_seconds;
  std::function<Outcome()> fn;
};

}  // namespace

int main() {
  const int jobs = 4;
  const std::vector<Criterion> criteria = {
      {1, "semantics conformance vs naive evaluator", 5.0, semantics_conformance},
      {2, "axiom soundness suites (E, Ec, EN, M, R, K)", 60.0,
       [&] { return soundness_suites(jobs); }},
      {3, "negative controls with re-checked witnesses", 30.0,
       [&] { return negative_controls(jobs); }},
      {4, "expressivity replication (P1-P3, P6-P8, P11, P12, R1)", 30.0,
       [&] { return expressivity_replication(jobs); }},
      {5, "definability of (n) by circ true through 3 states", 600.0,
       [&] { return definability(jobs); }},
      {6, "undefinability fixtures (P14, P15, P16)", 30.0,
       [&] { return undefinability(jobs); }},
      {7, "proof checking with mutated derivations", 10.0,
       [&] { return proof_checking(jobs); }},
      {8, "ignorance-form corollaries", 30.0, [&] { return corollaries(jobs); }},
      {9, "determinism of reports across worker counts", 600.0, determinism},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome outcome{false, ""};
    try {
      outcome = criterion.fn();
    } catch (const Failure& f) {
      outcome = {false, f.what};
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (outcome.pass && elapsed > criterion.limit_seconds) {
      outcome.pass = false;
      outcome.detail = "time budget exceeded";
    }
    if (!outcome.pass) ++failures;
    std::printf("[%s] criterion %d: %s -- %s (%.2fs, limit %.0fs)\n",
                outcome.pass ? "PASS" : "FAIL", criterion.number,
                criterion.title.c_str(), outcome.detail.c_str(), elapsed,
                criterion.limit_seconds);
  }
  if (failures)
    std::printf("%d criterion(s) failed\n", failures);
  else
    std::printf("all %zu criteria passed\n", criteria.size());
  return failures == 0 ? 0 : 1;
}
