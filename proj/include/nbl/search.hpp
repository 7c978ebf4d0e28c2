#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nbl/formula.hpp"
#include "nbl/model.hpp"
#include "nbl/semantics.hpp"

namespace nbl {

// A sublanguage given by its allowed modalities. The propositional base is
// always available.
struct Fragment {
  bool nabla = false;
  bool bullet = false;
  bool box = false;

  static Fragment nabla_only() { return {true, false, false}; }
  static Fragment bullet_only() { return {false, true, false}; }
  static Fragment nabla_bullet() { return {true, true, false}; }
  static Fragment box_only() { return {false, false, true}; }
  // "nabla" | "bullet" | "nabla-bullet" | "box"
  static Fragment from_name(const std::string& name);
  std::string name() const;
};

// A formula of the fragment whose truth values differ at the two designated
// points; produced from the construction trace of the definable-pair fixpoint.
struct Witness {
  Formula formula;
};

enum class EnumerationMode { Exhaustive, Sampled };

// Deterministic stream of frames with exactly n_states states possessing all
// of props. Exhaustive mode (n_states <= 3) yields every such frame once, in
// canonical order: the tuple of per-state collection bitmasks, compared
// lexicographically. Sampled mode (required for n_states == 4) yields
// opts.sample_size frames drawn by a counter-based generator from opts.seed.
class FrameStream {
 public:
  FrameStream(int n_states, PropertySet props, SearchOptions opts = {},
              EnumerationMode mode = EnumerationMode::Exhaustive);

  std::optional<NeighborhoodFrame> next();

 private:
  int n_;
  PropertySet props_;
  SearchOptions opts_;
  EnumerationMode mode_;
  std::uint64_t cursor_ = 0;
  std::uint64_t limit_ = 0;
};

// Number of frames exhaustive enumeration would yield.
std::uint64_t count_frames(int n_states, const PropertySet& props);

// Every definable pair reached by the fixpoint, with the formula that built
// it; exposed so the construction can be audited against direct evaluation.
struct FixpointTrace {
  struct Entry {
    StateSet left, right;
    Formula formula;
  };
  std::vector<Entry> pool;
};

// Decides whether some formula of the fragment over the vocabulary separates
// the two pointed models, by closing the set of componentwise-definable set
// pairs under complement, intersection and the fragment's modal images. The
// procedure is exact: a witness exists iff a separating fragment formula over
// the vocabulary exists.
std::optional<Witness> distinguishable(const NeighborhoodModel& m, const std::string& s,
                                       const NeighborhoodModel& m2, const std::string& s2,
                                       Fragment frag,
                                       const std::vector<std::string>& vocab,
                                       FixpointTrace* trace = nullptr);

// Vocabulary defaults to the atoms with a nonempty valuation in either model.
std::optional<Witness> distinguishable(const NeighborhoodModel& m, const std::string& s,
                                       const NeighborhoodModel& m2, const std::string& s2,
                                       Fragment frag);

// Checks that f (given as a total map of state labels) is a bullet-morphism:
// it preserves valuations, and for every s and X' over the codomain,
//   s in f^-1[X'] and f^-1[X'] not in N(s)   iff
//   f(s) in X'    and X' not in N'(f(s)).
// L(bullet) formulas are invariant under such maps.
bool check_bullet_morphism(const NeighborhoodModel& m, const NeighborhoodModel& m2,
                           const std::map<std::string, std::string>& f);

// Least falsifying pointed model for f over the props class, in the canonical
// enumeration order used by class_valid; nullopt if none up to max_states.
std::optional<std::pair<NeighborhoodModel, std::string>> find_countermodel(
    const Formula& f, const PropertySet& props, int max_states,
    const SearchOptions& opts = {});

// Exhaustive check, over every frame with exactly n_states states, that
//   frame_valid(f)  iff  has_property(p).
struct DefinabilityResult {
  std::uint64_t frames_checked = 0;
  std::uint64_t violations = 0;
  // First violating frame in canonical order, when any.
  std::optional<NeighborhoodFrame> first_violation;
};
DefinabilityResult check_defines_property(const Formula& f, Property p,
                                          int n_states,
                                          const SearchOptions& opts = {});

}  // namespace nbl
