#include "nbl/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <map>
#include <set>
#include <thread>
#include <unordered_set>

namespace nbl {

Fragment Fragment::from_name(const std::string& name) {
  if (name == "nabla") return nabla_only();
  if (name == "bullet") return bullet_only();
  if (name == "nabla-bullet") return nabla_bullet();
  if (name == "box") return box_only();
  throw ModelError("unknown fragment '" + name + "'");
}

std::string Fragment::name() const {
  std::string out;
  if (nabla) out += "nabla";
  if (bullet) out += out.empty() ? "bullet" : "-bullet";
  if (box) out += out.empty() ? "box" : "-box";
  return out.empty() ? "propositional" : out;
}

namespace {

constexpr const char* kStateNames[4] = {"s", "t", "u", "v"};

// Frames with at most 4 states, one collection bitmask per state: bit X of
// nb[s] is set iff the subset with bitmask X is a neighborhood of s. A frame
// code packs the collection masks with state 0 in the most significant
// position, so numeric order on codes is the canonical lexicographic order.
struct DenseFrame {
  int n = 1;
  std::array<std::uint32_t, 4> nb{};

  int coll_bits() const { return 1 << n; }
  std::uint32_t full() const { return (1u << n) - 1; }
  bool member(int s, std::uint32_t x) const { return (nb[s] >> x) & 1u; }
};

std::uint64_t dense_space(int n) {
  return n == 4 ? 0 /* 2^64, does not fit */ : (1ull << ((1 << n) * n));
}

DenseFrame decode_frame(int n, std::uint64_t code) {
  DenseFrame fr;
  fr.n = n;
  const int cb = fr.coll_bits();
  const std::uint64_t mask = (cb == 16) ? 0xffffull : ((1ull << cb) - 1);
  for (int s = 0; s < n; ++s)
    fr.nb[s] = static_cast<std::uint32_t>((code >> (cb * (n - 1 - s))) & mask);
  return fr;
}

bool dense_has_basic(const DenseFrame& fr, Property p) {
  const int n = fr.n;
  const std::uint32_t full = fr.full();
  switch (p) {
    case Property::N:
      for (int s = 0; s < n; ++s)
        if (!fr.member(s, full)) return false;
      return true;
    case Property::R:
      for (int s = 0; s < n; ++s) {
        if (fr.nb[s] == 0) continue;
        std::uint32_t inter = full;
        for (std::uint32_t x = 0; x <= full; ++x)
          if (fr.member(s, x)) inter &= x;
        if (!fr.member(s, inter)) return false;
      }
      return true;
    case Property::I:
      for (int s = 0; s < n; ++s)
        for (std::uint32_t x = 0; x <= full; ++x) {
          if (!fr.member(s, x)) continue;
          for (std::uint32_t y = 0; y <= full; ++y)
            if (fr.member(s, y) && !fr.member(s, x & y)) return false;
        }
      return true;
    case Property::S:
      for (int s = 0; s < n; ++s)
        for (std::uint32_t x = 0; x <= full; ++x) {
          if (!fr.member(s, x)) continue;
          std::uint32_t rest = full & ~x;
          for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
            if (!fr.member(s, x | sub)) return false;
            if (sub == 0) break;
          }
        }
      return true;
    case Property::C:
      for (int s = 0; s < n; ++s)
        for (std::uint32_t x = 0; x <= full; ++x)
          if (fr.member(s, x) && !fr.member(s, full & ~x)) return false;
      return true;
    case Property::D:
      for (int s = 0; s < n; ++s)
        for (std::uint32_t x = 0; x <= full; ++x)
          if (fr.member(s, x) && fr.member(s, full & ~x)) return false;
      return true;
    case Property::T:
      for (int s = 0; s < n; ++s)
        for (std::uint32_t x = 0; x <= full; ++x)
          if (fr.member(s, x) && !((x >> s) & 1u)) return false;
      return true;
    case Property::B:
      for (int s = 0; s < n; ++s)
        for (std::uint32_t x = 0; x <= full; ++x) {
          if (!((x >> s) & 1u)) continue;
          std::uint32_t image = 0;
          for (int u = 0; u < n; ++u)
            if (!fr.member(u, full & ~x)) image |= 1u << u;
          if (!fr.member(s, image)) return false;
        }
      return true;
    case Property::Four:
      for (int s = 0; s < n; ++s)
        for (std::uint32_t x = 0; x <= full; ++x) {
          if (!fr.member(s, x)) continue;
          std::uint32_t image = 0;
          for (int u = 0; u < n; ++u)
            if (fr.member(u, x)) image |= 1u << u;
          if (!fr.member(s, image)) return false;
        }
      return true;
    case Property::Five:
      for (int s = 0; s < n; ++s)
        for (std::uint32_t x = 0; x <= full; ++x) {
          if (fr.member(s, x)) continue;
          std::uint32_t image = 0;
          for (int u = 0; u < n; ++u)
            if (!fr.member(u, x)) image |= 1u << u;
          if (!fr.member(s, image)) return false;
        }
      return true;
    default:
      return false;
  }
}

bool dense_has(const DenseFrame& fr, Property p) {
  switch (p) {
    case Property::Monotone: return dense_has_basic(fr, Property::S);
    case Property::QuasiFilter:
      return dense_has_basic(fr, Property::I) && dense_has_basic(fr, Property::S);
    case Property::Filter:
      return dense_has(fr, Property::QuasiFilter) && dense_has_basic(fr, Property::N);
    default: return dense_has_basic(fr, p);
  }
}

bool dense_has_all(const DenseFrame& fr, const PropertySet& props) {
  for (Property p : props)
    if (!dense_has(fr, p)) return false;
  return true;
}

NeighborhoodFrame materialize(const DenseFrame& fr) {
  std::vector<std::string> labels(kStateNames, kStateNames + fr.n);
  std::vector<std::vector<StateSet>> colls(fr.n);
  for (int s = 0; s < fr.n; ++s)
    for (std::uint32_t x = 0; x <= fr.full(); ++x)
      if (fr.member(s, x)) colls[s].push_back(StateSet(x));
  return NeighborhoodFrame(std::move(labels), std::move(colls));
}

// Formulas are compiled once to postfix programs so the enumeration loops
// evaluate without touching the tree.
struct Prog {
  enum class Op : std::uint8_t {
    Atom, Top, Bot, Not, And, Or, Imp, Iff, Box, Nabla, Bullet,
  };
  struct Ins {
    Op op;
    int atom = -1;
  };
  static constexpr int kMaxStack = 64;
  std::vector<Ins> code;
  std::vector<std::string> vocab;
};

void compile_into(const Formula& f, const std::vector<std::string>& vocab,
                  std::vector<Prog::Ins>& out) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Atom: {
      auto it = std::lower_bound(vocab.begin(), vocab.end(), f.name());
      out.push_back({Prog::Op::Atom, static_cast<int>(it - vocab.begin())});
      return;
    }
    case K::Meta:
      throw ModelError("cannot evaluate metavariable '?" + f.name() + "'");
    case K::Top: out.push_back({Prog::Op::Top}); return;
    case K::Bot: out.push_back({Prog::Op::Bot}); return;
    case K::Not:
      compile_into(f.lhs(), vocab, out);
      out.push_back({Prog::Op::Not});
      return;
    case K::Nabla:
      compile_into(f.lhs(), vocab, out);
      out.push_back({Prog::Op::Nabla});
      return;
    case K::Bullet:
      compile_into(f.lhs(), vocab, out);
      out.push_back({Prog::Op::Bullet});
      return;
    case K::Box:
      compile_into(f.lhs(), vocab, out);
      out.push_back({Prog::Op::Box});
      return;
    case K::And:
    case K::Or:
    case K::Imp:
    case K::Iff: {
      compile_into(f.lhs(), vocab, out);
      compile_into(f.rhs(), vocab, out);
      Prog::Op op = f.kind() == K::And   ? Prog::Op::And
                    : f.kind() == K::Or  ? Prog::Op::Or
                    : f.kind() == K::Imp ? Prog::Op::Imp
                                         : Prog::Op::Iff;
      out.push_back({op});
      return;
    }
  }
}

Prog compile(const Formula& f) {
  Prog p;
  p.vocab = atoms(f);
  compile_into(f, p.vocab, p.code);
  int depth = 0, max_depth = 0;
  for (const auto& ins : p.code) {
    switch (ins.op) {
      case Prog::Op::And:
      case Prog::Op::Or:
      case Prog::Op::Imp:
      case Prog::Op::Iff:
        --depth;
        break;
      case Prog::Op::Atom:
      case Prog::Op::Top:
      case Prog::Op::Bot:
        max_depth = std::max(max_depth, ++depth);
        break;
      default:
        break;
    }
  }
  if (max_depth >= Prog::kMaxStack)
    throw BudgetError("formula is nested too deeply for the enumeration evaluator");
  return p;
}

// Truth set of the program over a dense frame, valuation given per atom.
std::uint32_t eval_dense(const Prog& prog, const DenseFrame& fr,
                         const std::uint32_t* atom_vals) {
  const std::uint32_t full = fr.full();
  std::uint32_t stack[Prog::kMaxStack];
  int top = -1;
  for (const auto& ins : prog.code) {
    switch (ins.op) {
      case Prog::Op::Atom: stack[++top] = atom_vals[ins.atom]; break;
      case Prog::Op::Top: stack[++top] = full; break;
      case Prog::Op::Bot: stack[++top] = 0; break;
      case Prog::Op::Not: stack[top] = ~stack[top] & full; break;
      case Prog::Op::And: --top; stack[top] &= stack[top + 1]; break;
      case Prog::Op::Or: --top; stack[top] |= stack[top + 1]; break;
      case Prog::Op::Imp: --top; stack[top] = (~stack[top] & full) | stack[top + 1]; break;
      case Prog::Op::Iff: --top; stack[top] = ~(stack[top] ^ stack[top + 1]) & full; break;
      case Prog::Op::Box: {
        std::uint32_t x = stack[top], out = 0;
        for (int s = 0; s < fr.n; ++s)
          if (fr.member(s, x)) out |= 1u << s;
        stack[top] = out;
        break;
      }
      case Prog::Op::Nabla: {
        std::uint32_t x = stack[top], xc = ~x & full, out = 0;
        for (int s = 0; s < fr.n; ++s)
          if (!fr.member(s, x) && !fr.member(s, xc)) out |= 1u << s;
        stack[top] = out;
        break;
      }
      case Prog::Op::Bullet: {
        std::uint32_t x = stack[top], out = 0;
        for (int s = 0; s < fr.n; ++s)
          if (((x >> s) & 1u) && !fr.member(s, x)) out |= 1u << s;
        stack[top] = out;
        break;
      }
    }
  }
  return stack[top];
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t sampled_code(int n, std::uint64_t seed, std::uint64_t index) {
  std::uint64_t r = splitmix64(seed ^ splitmix64((std::uint64_t(n) << 56) | index));
  if (n == 4) return r;  // the code space is exactly 2^64
  return r % dense_space(n);
}

struct ScanHit {
  int n;
  std::uint64_t order;  // frame code (exhaustive) or sample index (sampled)
  std::uint64_t val_index;
  int state;
};

// Scans one frame under every valuation of the program's atoms; returns the
// least (valuation, state) falsifying the formula somewhere.
std::optional<std::pair<std::uint64_t, int>> falsify_on_frame(const Prog& prog,
                                                              const DenseFrame& fr) {
  const int k = static_cast<int>(prog.vocab.size());
  const std::uint32_t full = fr.full();
  const std::uint64_t val_count = 1ull << (k * fr.n);
  std::uint32_t atom_vals[24];  // the class_valid guard keeps k * n <= 24
  for (std::uint64_t v = 0; v < val_count; ++v) {
    for (int i = 0; i < k; ++i)
      atom_vals[i] = static_cast<std::uint32_t>((v >> (i * fr.n)) & full);
    std::uint32_t ts = eval_dense(prog, fr, atom_vals);
    if (ts != full) {
      int state = __builtin_ctz(~ts & full);
      return std::make_pair(v, state);
    }
  }
  return std::nullopt;
}

// Splits [0, total) into chunks and runs fn(chunk_begin, chunk_end) on worker
// threads. fn must be safe to run concurrently.
template <typename Fn>
void parallel_ranges(std::uint64_t total, int jobs, Fn&& fn) {
  jobs = std::max(1, jobs);
  if (jobs == 1 || total < 1024) {
    fn(0, total);
    return;
  }
  std::uint64_t chunk = (total + jobs - 1) / jobs;
  std::vector<std::thread> workers;
  for (int j = 0; j < jobs; ++j) {
    std::uint64_t b = std::min<std::uint64_t>(total, j * chunk);
    std::uint64_t e = std::min<std::uint64_t>(total, b + chunk);
    if (b >= e) break;
    workers.emplace_back([&fn, b, e] { fn(b, e); });
  }
  for (auto& w : workers) w.join();
}

struct LevelScan {
  bool sampled = false;
  std::optional<ScanHit> hit;
};

LevelScan scan_level(const Prog& prog, const PropertySet& props, int n,
                     const SearchOptions& opts) {
  LevelScan result;
  const bool sampled = (n == 4) || (n == 3 && prog.vocab.size() >= 3);
  result.sampled = sampled;
  const std::uint64_t total = sampled ? opts.sample_size : dense_space(n);
  if (!sampled && total > opts.max_frames)
    throw BudgetError("enumeration of " + std::to_string(total) +
                      " frames with " + std::to_string(n) +
                      " states exceeds the frame budget");

  std::vector<std::optional<ScanHit>> local(std::max(1, opts.jobs));
  std::atomic<int> slot{0};
  parallel_ranges(total, opts.jobs, [&](std::uint64_t b, std::uint64_t e) {
    int my = slot.fetch_add(1);
    for (std::uint64_t i = b; i < e; ++i) {
      std::uint64_t code = sampled ? sampled_code(n, opts.seed, i) : i;
      DenseFrame fr = decode_frame(n, code);
      if (!dense_has_all(fr, props)) continue;
      if (auto f = falsify_on_frame(prog, fr)) {
        local[my] = ScanHit{n, i, f->first, f->second};
        return;  // ascending scan: first hit in the chunk is chunk-least
      }
    }
  });
  for (const auto& h : local) {
    if (!h) continue;
    if (!result.hit || h->order < result.hit->order) result.hit = h;
  }
  return result;
}

NeighborhoodModel materialize_hit(const Prog& prog, const ScanHit& hit,
                                  const SearchOptions& opts, bool sampled) {
  std::uint64_t code = sampled ? sampled_code(hit.n, opts.seed, hit.order) : hit.order;
  DenseFrame fr = decode_frame(hit.n, code);
  std::map<std::string, StateSet> val;
  for (size_t i = 0; i < prog.vocab.size(); ++i)
    val[prog.vocab[i]] =
        StateSet(static_cast<std::uint32_t>((hit.val_index >> (i * hit.n)) & fr.full()));
  return NeighborhoodModel(materialize(fr), std::move(val));
}

}  // namespace

FrameStream::FrameStream(int n_states, PropertySet props, SearchOptions opts,
                         EnumerationMode mode)
    : n_(n_states), props_(std::move(props)), opts_(opts), mode_(mode) {
  if (n_states < 1 || n_states > 4)
    throw BudgetError("frame enumeration supports 1 to 4 states");
  if (mode_ == EnumerationMode::Exhaustive) {
    if (n_states > 3)
      throw BudgetError("exhaustive enumeration is limited to 3 states; use sampled mode");
    limit_ = dense_space(n_states);
    if (limit_ > opts_.max_frames)
      throw BudgetError("exhaustive enumeration exceeds the frame budget");
  } else {
    limit_ = opts_.sample_size;
  }
}

std::optional<NeighborhoodFrame> FrameStream::next() {
  while (cursor_ < limit_) {
    std::uint64_t code = mode_ == EnumerationMode::Sampled
                             ? sampled_code(n_, opts_.seed, cursor_)
                             : cursor_;
    ++cursor_;
    DenseFrame fr = decode_frame(n_, code);
    if (dense_has_all(fr, props_)) return materialize(fr);
  }
  return std::nullopt;
}

std::uint64_t count_frames(int n_states, const PropertySet& props) {
  if (n_states < 1 || n_states > 3)
    throw BudgetError("exhaustive counting is limited to 3 states");
  std::uint64_t total = dense_space(n_states);
  std::uint64_t count = 0;
  for (std::uint64_t code = 0; code < total; ++code)
    if (dense_has_all(decode_frame(n_states, code), props)) ++count;
  return count;
}

Verdict class_valid(const Formula& f, const PropertySet& props, int max_states,
                    const SearchOptions& opts) {
  if (max_states < 1 || max_states > 4)
    throw BudgetError("class validity bound must be between 1 and 4 states");
  Prog prog = compile(expand_defined(f));
  if (static_cast<int>(prog.vocab.size()) * max_states > 24)
    throw BudgetError("valuation enumeration exceeds the 24 atom-state cell budget");
  Verdict verdict;
  verdict.bound = max_states;
  verdict.seed = opts.seed;
  for (int n = 1; n <= max_states; ++n) {
    LevelScan scan = scan_level(prog, props, n, opts);
    verdict.sampled = verdict.sampled || scan.sampled;
    if (scan.hit) {
      NeighborhoodModel model = materialize_hit(prog, *scan.hit, opts, scan.sampled);
      std::string state = model.frame().label(scan.hit->state);
      verdict.status = Verdict::Status::Countermodel;
      verdict.witness = std::make_pair(std::move(model), std::move(state));
      return verdict;
    }
  }
  return verdict;
}

std::optional<std::pair<NeighborhoodModel, std::string>> find_countermodel(
    const Formula& f, const PropertySet& props, int max_states,
    const SearchOptions& opts) {
  Verdict v = class_valid(f, props, max_states, opts);
  return v.witness;
}

// ---------------------------------------------------------------------------
// Definable-pair fixpoint

namespace {

struct PoolEntry {
  StateSet a, b;
  Formula formula;
};

std::uint64_t pair_key(StateSet a, StateSet b) {
  return (std::uint64_t(a.bits) << 32) | b.bits;
}

StateSet nabla_image(const NeighborhoodFrame& fr, StateSet x) {
  StateSet xc = x.complement(fr.size()), out;
  for (int s = 0; s < fr.size(); ++s)
    if (!fr.contains(s, x) && !fr.contains(s, xc)) out = out.with(s);
  return out;
}

StateSet bullet_image(const NeighborhoodFrame& fr, StateSet x) {
  StateSet out;
  for (int s = 0; s < fr.size(); ++s)
    if (x.contains(s) && !fr.contains(s, x)) out = out.with(s);
  return out;
}

StateSet box_image(const NeighborhoodFrame& fr, StateSet x) {
  StateSet out;
  for (int s = 0; s < fr.size(); ++s)
    if (fr.contains(s, x)) out = out.with(s);
  return out;
}

}  // namespace

std::optional<Witness> distinguishable(const NeighborhoodModel& m, const std::string& s,
                                       const NeighborhoodModel& m2, const std::string& s2,
                                       Fragment frag,
                                       const std::vector<std::string>& vocab,
                                       FixpointTrace* trace) {
  const NeighborhoodFrame& fa = m.frame();
  const NeighborhoodFrame& fb = m2.frame();
  if (fa.size() + fb.size() > 24)
    throw BudgetError("definable-pair pool would exceed 2^24 entries");
  const int sa = fa.state_index(s);
  const int sb = fb.state_index(s2);

  std::vector<PoolEntry> pool;
  std::unordered_set<std::uint64_t> seen;
  std::optional<Witness> found;

  auto push = [&](StateSet a, StateSet b, Formula f) {
    if (!seen.insert(pair_key(a, b)).second) return;
    if (!found && a.contains(sa) != b.contains(sb)) found = Witness{f};
    pool.push_back(PoolEntry{a, b, std::move(f)});
  };

  push(StateSet::empty(), StateSet::empty(), Formula::bot());
  push(fa.universe(), fb.universe(), Formula::top());
  std::vector<std::string> sorted_vocab = vocab;
  std::sort(sorted_vocab.begin(), sorted_vocab.end());
  for (const auto& atom : sorted_vocab)
    push(m.valuation(atom), m2.valuation(atom), Formula::atom(atom));

  for (size_t i = 0; i < pool.size(); ++i) {
    if (found && !trace) break;
    // pool grows while we iterate; copy the current element
    PoolEntry cur = pool[i];
    push(cur.a.complement(fa.size()), cur.b.complement(fb.size()),
         Formula::negation(cur.formula));
    if (frag.nabla)
      push(nabla_image(fa, cur.a), nabla_image(fb, cur.b),
           Formula::nabla(cur.formula));
    if (frag.bullet)
      push(bullet_image(fa, cur.a), bullet_image(fb, cur.b),
           Formula::bullet(cur.formula));
    if (frag.box)
      push(box_image(fa, cur.a), box_image(fb, cur.b), Formula::box(cur.formula));
    for (size_t j = 0; j < i; ++j)
      push(pool[j].a.intersect(cur.a), pool[j].b.intersect(cur.b),
           Formula::conj(pool[j].formula, cur.formula));
  }
  if (trace)
    for (const auto& e : pool)
      trace->pool.push_back(FixpointTrace::Entry{e.a, e.b, e.formula});
  return found;
}

std::optional<Witness> distinguishable(const NeighborhoodModel& m, const std::string& s,
                                       const NeighborhoodModel& m2, const std::string& s2,
                                       Fragment frag) {
  std::set<std::string> vocab;
  for (const auto& [atom, set] : m.valuation_map())
    if (!set.is_empty()) vocab.insert(atom);
  for (const auto& [atom, set] : m2.valuation_map())
    if (!set.is_empty()) vocab.insert(atom);
  return distinguishable(m, s, m2, s2, frag,
                         std::vector<std::string>(vocab.begin(), vocab.end()));
}

bool check_bullet_morphism(const NeighborhoodModel& m, const NeighborhoodModel& m2,
                           const std::map<std::string, std::string>& f) {
  const NeighborhoodFrame& fa = m.frame();
  const NeighborhoodFrame& fb = m2.frame();
  std::vector<int> map(fa.size(), -1);
  for (const auto& [from, to] : f) map[fa.state_index(from)] = fb.state_index(to);
  for (int s = 0; s < fa.size(); ++s)
    if (map[s] < 0) throw ModelError("morphism is not total: state '" + fa.label(s) + "' unmapped");

  std::set<std::string> atoms_union;
  for (const auto& [atom, _] : m.valuation_map()) atoms_union.insert(atom);
  for (const auto& [atom, _] : m2.valuation_map()) atoms_union.insert(atom);
  for (const auto& atom : atoms_union) {
    StateSet va = m.valuation(atom);
    StateSet vb = m2.valuation(atom);
    for (int s = 0; s < fa.size(); ++s)
      if (va.contains(s) != vb.contains(map[s])) return false;
  }

  const std::uint32_t fullb = fb.universe().bits;
  for (int s = 0; s < fa.size(); ++s) {
    for (std::uint32_t xb = 0; xb <= fullb; ++xb) {
      StateSet xprime(xb);
      StateSet preimage;
      for (int u = 0; u < fa.size(); ++u)
        if (xprime.contains(map[u])) preimage = preimage.with(u);
      bool lhs = preimage.contains(s) && !fa.contains(s, preimage);
      bool rhs = xprime.contains(map[s]) && !fb.contains(map[s], xprime);
      if (lhs != rhs) return false;
    }
  }
  return true;
}

DefinabilityResult check_defines_property(const Formula& f, Property p,
                                          int n_states, const SearchOptions& opts) {
  if (n_states < 1 || n_states > 3)
    throw BudgetError("definability scan is exhaustive and limited to 3 states");
  Prog prog = compile(expand_defined(f));
  if (static_cast<int>(prog.vocab.size()) * n_states > 24)
    throw BudgetError("valuation enumeration exceeds the 24 atom-state cell budget");
  const std::uint64_t total = dense_space(n_states);
  if (total > opts.max_frames)
    throw BudgetError("definability scan exceeds the frame budget");

  const int jobs = std::max(1, opts.jobs);
  std::vector<std::uint64_t> violations(jobs, 0);
  std::vector<std::optional<std::uint64_t>> first(jobs);
  std::atomic<int> slot{0};
  parallel_ranges(total, jobs, [&](std::uint64_t b, std::uint64_t e) {
    int my = slot.fetch_add(1);
    for (std::uint64_t code = b; code < e; ++code) {
      DenseFrame fr = decode_frame(n_states, code);
      bool valid = !falsify_on_frame(prog, fr).has_value();
      if (valid != dense_has(fr, p)) {
        ++violations[my];
        if (!first[my]) first[my] = code;
      }
    }
  });

  DefinabilityResult result;
  result.frames_checked = total;
  std::optional<std::uint64_t> least;
  for (int j = 0; j < jobs; ++j) {
    result.violations += violations[j];
    if (first[j] && (!least || *first[j] < *least)) least = first[j];
  }
  if (least) result.first_violation = materialize(decode_frame(n_states, *least));
  return result;
}

}  // namespace nbl
