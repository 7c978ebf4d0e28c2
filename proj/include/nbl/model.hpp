#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nbl/errors.hpp"

namespace nbl {

// A subset of the state space, one bit per state index. All truth-set
// arithmetic happens on these. Operations needing the universe take the
// state count explicitly.
struct StateSet {
  std::uint32_t bits = 0;

  constexpr StateSet() = default;
  constexpr explicit StateSet(std::uint32_t b) : bits(b) {}

  static constexpr StateSet empty() { return StateSet(0); }
  static constexpr StateSet full(int n) {
    return StateSet(n >= 32 ? ~0u : ((1u << n) - 1));
  }

  constexpr bool contains(int state) const { return (bits >> state) & 1u; }
  constexpr StateSet with(int state) const { return StateSet(bits | (1u << state)); }
  constexpr StateSet complement(int n) const { return StateSet(~bits & full(n).bits); }
  constexpr StateSet intersect(StateSet o) const { return StateSet(bits & o.bits); }
  constexpr StateSet unite(StateSet o) const { return StateSet(bits | o.bits); }
  constexpr bool subset_of(StateSet o) const { return (bits & ~o.bits) == 0; }
  constexpr bool is_empty() const { return bits == 0; }
  int count() const { return __builtin_popcount(bits); }

  constexpr auto operator<=>(const StateSet&) const = default;
};

// The ten neighborhood properties plus the derived frame classes.
enum class Property {
  N,            // contains the unit: S in N(s)
  R,            // contains its core: intersection of N(s) in N(s)
  I,            // closed under binary intersections
  S,            // supplemented / closed under supersets
  C,            // closed under complements
  D,            // X in N(s) implies S\X not in N(s)
  T,            // X in N(s) implies s in X
  B,            // s in X implies {u : S\X not in N(u)} in N(s)
  Four,         // X in N(s) implies {u : X in N(u)} in N(s)
  Five,         // X not in N(s) implies {u : X not in N(u)} in N(s)
  Monotone,     // alias for S
  QuasiFilter,  // I and S
  Filter,       // I, S and N
};

using PropertySet = std::vector<Property>;

const char* property_name(Property p);
// Accepts "n","r","i","s","c","d","t","b","4","5","monotone","quasi-filter","filter".
Property property_from_name(const std::string& name);
// Comma-joined names as above, or "all" for the empty set (no constraint).
PropertySet parse_property_set(const std::string& names);

// Finite neighborhood frame: a state space of labelled states and, per state,
// a duplicate-free collection of subsets kept sorted by bitmask so frames are
// structurally comparable. At most 20 states (one machine word per subset).
class NeighborhoodFrame {
 public:
  static constexpr int kMaxStates = 20;

  // Labels must be distinct; collections are canonicalized (sorted) and
  // duplicates rejected. Throws ModelError on violations.
  NeighborhoodFrame(std::vector<std::string> states,
                    std::vector<std::vector<StateSet>> neighborhoods);

  int size() const { return static_cast<int>(states_.size()); }
  const std::vector<std::string>& states() const { return states_; }
  const std::string& label(int s) const { return states_[s]; }
  // Index of a state label; throws ModelError if unknown.
  int state_index(const std::string& label) const;

  const std::vector<StateSet>& neighborhoods(int s) const { return nbhd_[s]; }
  bool contains(int s, StateSet x) const;
  StateSet universe() const { return StateSet::full(size()); }

  bool operator==(const NeighborhoodFrame&) const = default;

 private:
  std::vector<std::string> states_;
  std::vector<std::vector<StateSet>> nbhd_;
};

class NeighborhoodModel {
 public:
  NeighborhoodModel(NeighborhoodFrame frame,
                    std::map<std::string, StateSet> valuation);

  const NeighborhoodFrame& frame() const { return frame_; }
  const std::map<std::string, StateSet>& valuation_map() const { return valuation_; }
  // Truth set of an atom; atoms absent from the map denote the empty set.
  StateSet valuation(const std::string& atom) const;

  bool operator==(const NeighborhoodModel&) const = default;

 private:
  NeighborhoodFrame frame_;
  std::map<std::string, StateSet> valuation_;
};

// Literal transcription of the property clauses. (b), (4) and (5) loop over
// the full powerset of S. An empty N(s) satisfies (r) vacuously; see `core`
// for the intersection convention.
bool has_property(const NeighborhoodFrame& frame, Property p);
bool has_properties(const NeighborhoodFrame& frame, const PropertySet& props);

// Superset closure of every N(s). Result is supplemented and contains the
// input collections; idempotent.
NeighborhoodFrame supplementation(const NeighborhoodFrame& frame);
NeighborhoodModel supplementation(const NeighborhoodModel& model);

// Intersection of N(s), with the empty intersection defaulting to S.
StateSet core(const NeighborhoodFrame& frame, int s);

// JSON model files:
//   {"states": ["s","t"],
//    "neighborhoods": {"s": [["t"],["s","t"]], "t": []},
//    "valuation": {"p": ["s"]}}
// Frames are the same without "valuation". Unknown keys are rejected. State
// labels are sorted on import, so parsing is canonicalizing; to_json output
// re-imports byte-identically.
NeighborhoodModel model_from_json(const std::string& text);
NeighborhoodModel model_from_file(const std::string& path);
std::string model_to_json(const NeighborhoodModel& model);
std::string frame_to_json(const NeighborhoodFrame& frame);

}  // namespace nbl
