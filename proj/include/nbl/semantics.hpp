#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "nbl/formula.hpp"
#include "nbl/model.hpp"

namespace nbl {

// Truth set of f in m, computed bottom-up:
//   box f    holds at s iff f^M in N(s)
//   nabla f  holds at s iff f^M not in N(s) and S\f^M not in N(s)
//   bullet f holds at s iff s in f^M and f^M not in N(s)
// Metavariables cannot be evaluated and raise ModelError.
StateSet truth_set(const NeighborhoodModel& m, const Formula& f);

// s in truth_set(m, f); the label overload throws ModelError on unknown labels.
bool satisfies(const NeighborhoodModel& m, int state, const Formula& f);
bool satisfies(const NeighborhoodModel& m, const std::string& state, const Formula& f);

// f holds at every state of m.
bool model_valid(const NeighborhoodModel& m, const Formula& f);

// f holds in every model based on the frame. Quantifies valuations over the
// atoms of f only (others cannot affect truth); guarded by
// |atoms(f)| * |S| <= 24, else BudgetError.
bool frame_valid(const NeighborhoodFrame& frame, const Formula& f);

struct SearchOptions {
  int jobs = 1;
  std::uint64_t seed = 0x9e3779b97f4a7c15ull;  // sampled modes only
  std::uint64_t max_frames = 1ull << 26;       // per-size enumeration ceiling
  std::uint64_t sample_size = 1'000'000;       // frames drawn at sampled sizes
};

// Outcome of a bounded search over a frame class. A search is exhaustive for
// sizes up to 3 states; size 4 is covered by a seeded sample, in which case
// `sampled` is set and "valid up to bound" means "no counterexample found".
struct Verdict {
  enum class Status { ValidUpToBound, Countermodel };

  Status status = Status::ValidUpToBound;
  int bound = 0;
  bool sampled = false;
  std::uint64_t seed = 0;
  std::optional<std::pair<NeighborhoodModel, std::string>> witness;

  bool valid() const { return status == Status::ValidUpToBound; }
};

// Enumerates every frame with at most max_states states possessing all of
// props, in canonical order (state count, then the lexicographic tuple of
// per-state collection bitmasks), and checks frame validity of f under every
// valuation of f's atoms. Returns the canonically least countermodel, if any.
// max_states <= 4; size 4 is sampled with opts.seed. Deterministic for every
// jobs value. Throws BudgetError if the enumeration exceeds opts.max_frames.
Verdict class_valid(const Formula& f, const PropertySet& props, int max_states,
                    const SearchOptions& opts = {});

}  // namespace nbl
