#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "nbl/formula.hpp"
#include "nbl/semantics.hpp"

namespace nbl {

// An axiom schema: a named formula pattern over the metavariables
// ?phi, ?psi, ?chi.
struct AxiomSchema {
  std::string name;
  Formula pattern;
};

enum class SystemId { E, Ec, EN, M, R, K };

SystemId system_from_name(const std::string& name);
const char* system_name(SystemId id);

// The six Hilbert systems. Every system has the rules TAUT, MP, RE-NABLA,
// RE-BULLET and DEF; they differ only in their axiom schemas:
//   E  : E1  nabla phi <-> nabla ~phi
//        E2  bullet phi -> phi
//        E3  nabla phi -> bullet phi | bullet ~phi
//   Ec : E + E4  bullet phi -> nabla phi
//   EN : E + CIRCTOP  circ true
//   M  : E + M1..M4
//   R  : M + R1, R2
//   K  : R + CIRCTOP
struct AxiomSystem {
  SystemId id;
  std::string name;
  std::vector<AxiomSchema> axioms;

  const AxiomSchema* find_axiom(const std::string& name) const;
};

const AxiomSystem& axiom_system(SystemId id);

// The frame class each system is sound for: E/all, Ec/(c), EN/(n), M/(s),
// R/quasi-filter, K/filter.
PropertySet system_frame_class(SystemId id);

// Matches f against the schema pattern, purely syntactically after both sides
// are in primitive form. Returns the substitution on success.
std::optional<std::unordered_map<std::string, Formula>> match_schema(
    const AxiomSchema& schema, const Formula& f);

// Replaces maximal modal subformulas (and atoms/metavariables) by fresh
// propositional variables and decides the skeleton by truth table. At most 16
// distinct skeleton variables, else BudgetError.
bool is_tautology_instance(const Formula& f);

// Whether conclusion follows propositionally from the premises, over the
// shared modal-skeleton abstraction. Backs the CONSEQ justification.
bool is_tautological_consequence(const std::vector<Formula>& premises,
                                 const Formula& conclusion);

struct Justification {
  enum class Kind { Axiom, Taut, MP, ReNabla, ReBullet, Def, Conseq };
  Kind kind;
  std::string axiom;       // Axiom only
  std::vector<int> refs;   // cited line numbers
};

struct ProofLine {
  int number;
  Formula formula;
  Justification just;
};

struct Derivation {
  std::vector<ProofLine> lines;
};

// Proof scripts: one line per step,
//   k. <formula> ; <JUST>
// with JUST one of
//   AX <name> | TAUT | MP k1 k2 | RE-NABLA k1 | RE-BULLET k1 | DEF k1
//   | CONSEQ k1,k2,...
// Comments start with '#'. Line numbers must be strictly increasing.
Derivation parse_derivation(const std::string& script);

struct CheckResult {
  bool accepted = false;
  int failed_line = 0;      // 0 when accepted
  std::string reason;

  static CheckResult ok() { return {true, 0, ""}; }
  static CheckResult fail(int line, std::string why) {
    return {false, line, std::move(why)};
  }
};

// Verifies each line against its justification:
//  - AX name:        instance of that schema of the system
//  - TAUT:           tautology over the modal skeleton
//  - MP i j:         line j is (line i -> this line)
//  - RE-NABLA i:     line i is a <-> b, this line is nabla a <-> nabla b
//  - RE-BULLET i:    likewise for bullet
//  - DEF i:          equal to line i after unfolding defined operators
//  - CONSEQ i,...:   tautological consequence of the cited lines
// References must point to earlier lines.
CheckResult check_derivation(const AxiomSystem& system, const Derivation& d);

// For every schema of the system instantiated at phi:=p, psi:=q, chi:=r, runs
// class_valid over the system's frame class at the given exhaustive bound.
struct SoundnessRow {
  std::string axiom;
  Formula instance;
  Verdict verdict;
};
struct SoundnessReport {
  SystemId system;
  PropertySet frame_class;
  std::vector<SoundnessRow> rows;

  bool all_valid() const;
};
SoundnessReport axiom_soundness_suite(SystemId id, int max_states = 2,
                                      const SearchOptions& opts = {});

}  // namespace nbl
