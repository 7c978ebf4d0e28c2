#include "nbl/semantics.hpp"

namespace nbl {

StateSet truth_set(const NeighborhoodModel& m, const Formula& f) {
  const NeighborhoodFrame& fr = m.frame();
  const int n = fr.size();
  switch (f.kind()) {
    case Formula::Kind::Atom: return m.valuation(f.name());
    case Formula::Kind::Meta:
      throw ModelError("cannot evaluate metavariable '?" + f.name() + "'");
    case Formula::Kind::Top: return fr.universe();
    case Formula::Kind::Bot: return StateSet::empty();
    case Formula::Kind::Not: return truth_set(m, f.lhs()).complement(n);
    case Formula::Kind::And:
      return truth_set(m, f.lhs()).intersect(truth_set(m, f.rhs()));
    case Formula::Kind::Or:
      return truth_set(m, f.lhs()).unite(truth_set(m, f.rhs()));
    case Formula::Kind::Imp:
      return truth_set(m, f.lhs()).complement(n).unite(truth_set(m, f.rhs()));
    case Formula::Kind::Iff: {
      StateSet l = truth_set(m, f.lhs());
      StateSet r = truth_set(m, f.rhs());
      return StateSet(~(l.bits ^ r.bits)).intersect(fr.universe());
    }
    case Formula::Kind::Box: {
      StateSet x = truth_set(m, f.lhs());
      StateSet out;
      for (int s = 0; s < n; ++s)
        if (fr.contains(s, x)) out = out.with(s);
      return out;
    }
    case Formula::Kind::Nabla: {
      StateSet x = truth_set(m, f.lhs());
      StateSet xc = x.complement(n);
      StateSet out;
      for (int s = 0; s < n; ++s)
        if (!fr.contains(s, x) && !fr.contains(s, xc)) out = out.with(s);
      return out;
    }
    case Formula::Kind::Bullet: {
      StateSet x = truth_set(m, f.lhs());
      StateSet out;
      for (int s = 0; s < n; ++s)
        if (x.contains(s) && !fr.contains(s, x)) out = out.with(s);
      return out;
    }
  }
  return StateSet::empty();
}

bool satisfies(const NeighborhoodModel& m, int state, const Formula& f) {
  if (state < 0 || state >= m.frame().size())
    throw ModelError("state index out of range");
  return truth_set(m, f).contains(state);
}

bool satisfies(const NeighborhoodModel& m, const std::string& state, const Formula& f) {
  return satisfies(m, m.frame().state_index(state), f);
}

bool model_valid(const NeighborhoodModel& m, const Formula& f) {
  return truth_set(m, f) == m.frame().universe();
}

bool frame_valid(const NeighborhoodFrame& frame, const Formula& f) {
  const auto vocab = atoms(f);
  const int n = frame.size();
  const int cells = static_cast<int>(vocab.size()) * n;
  if (cells > 24)
    throw BudgetError("frame validity enumeration over " + std::to_string(cells) +
                      " atom-state cells exceeds the budget of 24");
  const std::uint64_t count = 1ull << cells;
  for (std::uint64_t v = 0; v < count; ++v) {
    std::map<std::string, StateSet> val;
    for (size_t i = 0; i < vocab.size(); ++i)
      val[vocab[i]] = StateSet(static_cast<std::uint32_t>((v >> (i * n)) & StateSet::full(n).bits));
    if (!model_valid(NeighborhoodModel(frame, std::move(val)), f)) return false;
  }
  return true;
}

}  // namespace nbl
