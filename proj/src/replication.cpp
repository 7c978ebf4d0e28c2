#include "nbl/replication.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "nbl/proofs.hpp"
#include "nbl/semantics.hpp"

namespace nbl {

namespace {

NeighborhoodModel build2(bool primed, std::vector<std::uint32_t> n0,
                         std::vector<std::uint32_t> n1, std::uint32_t p_mask) {
  std::vector<std::string> labels =
      primed ? std::vector<std::string>{"sp", "tp"} : std::vector<std::string>{"s", "t"};
  std::vector<std::vector<StateSet>> colls(2);
  for (auto b : n0) colls[0].push_back(StateSet(b));
  for (auto b : n1) colls[1].push_back(StateSet(b));
  std::map<std::string, StateSet> val;
  if (p_mask) val["p"] = StateSet(p_mask);
  return NeighborhoodModel(NeighborhoodFrame(labels, std::move(colls)), std::move(val));
}

NeighborhoodModel build1(std::vector<std::uint32_t> n0) {
  std::vector<std::vector<StateSet>> colls(1);
  for (auto b : n0) colls[0].push_back(StateSet(b));
  return NeighborhoodModel(NeighborhoodFrame({"s"}, std::move(colls)), {});
}

std::vector<Fixture> build_catalog() {
  std::vector<Fixture> cat;
  auto model = [&](const char* id, NeighborhoodModel m, const char* pt) {
    cat.push_back(Fixture{id, std::move(m), pt, false});
  };
  auto frame = [&](const char* id, NeighborhoodModel m, const char* pt) {
    cat.push_back(Fixture{id, std::move(m), pt, true});
  };

  // Subset bitmasks over state order (s, t): {}=0, {s}=1, {t}=2, {s,t}=3.
  model("P1.M", build2(false, {2, 3}, {}, 1), "s");
  model("P1.Mp", build2(true, {2, 3}, {}, 3), "sp");

  model("P2.M", build2(false, {0, 2, 3}, {0, 1, 2, 3}, 1), "s");
  model("P2.Mp", build2(true, {0, 2, 3}, {0, 1, 2, 3}, 3), "sp");

  model("P3.M", build2(false, {0, 1}, {2, 3}, 0), "s");
  model("P3.Mp", build2(true, {3, 1}, {2, 0}, 0), "sp");

  model("R1.M", build2(false, {0, 3, 1}, {2}, 0), "s");
  model("R1.Mp", build2(true, {3, 1}, {2, 0}, 0), "sp");

  model("P6.M", build2(false, {3}, {3}, 2), "s");
  model("P6.Mp", build2(true, {3, 2}, {3}, 2), "sp");

  model("P7.M", build2(false, {3}, {2, 3}, 2), "s");
  model("P7.Mp", build2(true, {3, 2}, {2, 3}, 2), "sp");

  model("P8.M", build2(false, {1, 2}, {0, 1, 2, 3}, 3), "s");
  model("P8.Mp", build2(true, {1, 0, 2}, {0, 1, 2, 3}, 3), "sp");

  model("P12.M", build2(false, {0, 1, 2, 3}, {2, 3}, 0), "s");
  model("P12.Mp", build2(true, {3, 1}, {2, 0, 1, 3}, 0), "sp");

  frame("P14.F1", build1({1}), "s");
  frame("P14.F2", build1({1, 0}), "s");
  frame("P14.F3", build2(false, {3, 1, 2}, {3, 1, 2}, 0), "s");

  frame("P15.F", build2(false, {3, 1}, {3, 1}, 0), "s");
  frame("P15.Fp", build2(true, {3, 1}, {3, 1, 0}, 0), "sp");

  frame("P16.F", build2(false, {3, 2}, {3, 2}, 0), "s");
  frame("P16.Fp", build2(true, {2, 3}, {0, 3, 1, 2}, 0), "sp");

  return cat;
}

std::string normalize_id(std::string id) {
  // M' and M<prime> are aliases for Mp.
  auto replace_all = [&](const std::string& from, const std::string& to) {
    size_t pos = 0;
    while ((pos = id.find(from, pos)) != std::string::npos) {
      id.replace(pos, from.size(), to);
      pos += to.size();
    }
  };
  replace_all("′", "p");
  replace_all("'", "p");
  return id;
}

}  // namespace

const std::vector<Fixture>& fixture_catalog() {
  static const std::vector<Fixture> cat = build_catalog();
  return cat;
}

const Fixture& fixture(const std::string& id) {
  std::string key = normalize_id(id);
  for (const auto& f : fixture_catalog())
    if (f.id == key) return f;
  throw ModelError("unknown fixture id '" + id + "'");
}

std::string export_fixture(const std::string& id) {
  const Fixture& f = fixture(id);
  return f.is_frame ? frame_to_json(f.model.frame()) : model_to_json(f.model);
}

const std::string& builtin_derivation_script(const std::string& id) {
  static const std::string circimpliesdelta =
      "# nabla phi & phi -> bullet phi, in system E\n"
      "1. nabla ?phi -> bullet ?phi | bullet ~?phi ; AX E3\n"
      "2. bullet ~?phi -> ~?phi ; AX E2\n"
      "3. nabla ?phi -> bullet ?phi | ~?phi ; CONSEQ 1, 2\n"
      "4. nabla ?phi & ?phi -> bullet ?phi ; CONSEQ 3\n";
  static const std::string impliesphi =
      "# bullet(circ phi | psi -> phi) -> phi, in system E\n"
      "1. bullet(circ ?phi | ?psi -> ?phi) -> (circ ?phi | ?psi -> ?phi) ; AX E2\n"
      "2. (circ ?phi | ?psi -> ?phi) -> (circ ?phi -> ?phi) ; TAUT\n"
      "3. bullet(circ ?phi | ?psi -> ?phi) -> (circ ?phi -> ?phi) ; CONSEQ 1, 2\n"
      "4. bullet ?phi -> ?phi ; AX E2\n"
      "5. bullet(circ ?phi | ?psi -> ?phi) -> ?phi ; CONSEQ 3, 4\n";
  if (id == "circimpliesdelta") return circimpliesdelta;
  if (id == "impliesphi") return impliesphi;
  throw ModelError("unknown derivation id '" + id + "'");
}

std::vector<std::string> builtin_derivation_ids() {
  return {"circimpliesdelta", "impliesphi"};
}

int SuiteReport::failed() const {
  return static_cast<int>(
      std::count_if(claims.begin(), claims.end(),
                    [](const ClaimResult& c) { return !c.pass; }));
}

// ---------------------------------------------------------------------------
// Claims

namespace {

struct Check {
  bool pass;
  std::string detail;
};

using ClaimFn = std::function<Check()>;

struct Claim {
  std::string id;
  std::string description;
  ClaimFn fn;
};

std::string props_to_string(const PropertySet& ps) {
  if (ps.empty()) return "all";
  std::string out;
  for (Property p : ps) {
    if (!out.empty()) out += ",";
    out += property_name(p);
  }
  return out;
}

Check check_profile(const Fixture& fx, const PropertySet& has,
                    const PropertySet& lacks) {
  for (Property p : has)
    if (!has_property(fx.model.frame(), p))
      return {false, std::string("expected (") + property_name(p) + ") to hold"};
  for (Property p : lacks)
    if (has_property(fx.model.frame(), p))
      return {false, std::string("expected (") + property_name(p) + ") to fail"};
  std::string detail = "has " + props_to_string(has);
  if (!lacks.empty()) detail += "; lacks " + props_to_string(lacks);
  return {true, detail};
}

Check check_indistinguishable(const Fixture& a, const Fixture& b, Fragment frag) {
  auto w = distinguishable(a.model, a.point, b.model, b.point, frag, {"p"});
  if (w)
    return {false, "unexpected separating formula " + w->formula.render()};
  return {true, "no separating " + frag.name() + " formula over {p}"};
}

Check check_distinguishable(const Fixture& a, const Fixture& b, Fragment frag,
                            const std::string& expected_witness) {
  auto w = distinguishable(a.model, a.point, b.model, b.point, frag, {"p"});
  if (!w) return {false, "engine found no separating formula"};
  bool engine_ok = satisfies(a.model, a.point, w->formula) !=
                   satisfies(b.model, b.point, w->formula);
  Formula expected = parse(expected_witness);
  bool quoted_ok = satisfies(a.model, a.point, expected) !=
                  satisfies(b.model, b.point, expected);
  if (!engine_ok) return {false, "engine witness fails to re-check"};
  if (!quoted_ok)
    return {false, "expected witness " + expected_witness + " fails to re-check"};
  return {true, "witness " + w->formula.render() + "; expected " + expected_witness +
                    " re-checks"};
}

Check check_satisfies(const Fixture& fx, const std::string& formula, bool expected) {
  bool got = satisfies(fx.model, fx.point, parse(formula));
  if (got != expected)
    return {false, formula + " is " + (got ? "true" : "false") + " at " + fx.point};
  return {true, formula + (expected ? " holds at " : " fails at ") + fx.point};
}

Check check_class_verdict(const std::string& formula, const PropertySet& props,
                          bool expect_valid, const SearchOptions& opts) {
  Formula f = parse(formula);
  Verdict v = class_valid(f, props, 2, opts);
  if (expect_valid != v.valid()) {
    return {false, formula + " over " + props_to_string(props) +
                       (v.valid() ? ": unexpectedly valid up to bound"
                                  : ": unexpected countermodel")};
  }
  if (!expect_valid) {
    const auto& [model, state] = *v.witness;
    if (satisfies(model, state, f))
      return {false, "countermodel fails to re-check"};
    return {true, "countermodel at state " + state + " of " +
                      std::to_string(model.frame().size()) + "-state frame re-checks"};
  }
  return {true, formula + " valid over " + props_to_string(props) + " up to 2 states"};
}

// Bounded frame equivalence: every pointed model on one frame (valuations
// over the vocabulary) has an L(nabla,bullet)-indistinguishable pointed model
// on the other, and conversely.
bool equivalent_one_way(const NeighborhoodFrame& from, const NeighborhoodFrame& to,
                        const std::vector<std::string>& vocab) {
  const int nf = from.size(), nt = to.size();
  const int kf = static_cast<int>(vocab.size());
  const std::uint64_t from_vals = 1ull << (kf * nf);
  const std::uint64_t to_vals = 1ull << (kf * nt);
  for (std::uint64_t va = 0; va < from_vals; ++va) {
    std::map<std::string, StateSet> val_a;
    for (int i = 0; i < kf; ++i)
      val_a[vocab[i]] = StateSet((va >> (i * nf)) & StateSet::full(nf).bits);
    NeighborhoodModel ma(from, val_a);
    for (int x = 0; x < nf; ++x) {
      bool matched = false;
      for (std::uint64_t vb = 0; vb < to_vals && !matched; ++vb) {
        std::map<std::string, StateSet> val_b;
        for (int i = 0; i < kf; ++i)
          val_b[vocab[i]] = StateSet((vb >> (i * nt)) & StateSet::full(nt).bits);
        NeighborhoodModel mb(to, val_b);
        for (int y = 0; y < nt && !matched; ++y)
          matched = !distinguishable(ma, from.label(x), mb, to.label(y),
                                     Fragment::nabla_bullet(), vocab);
      }
      if (!matched) return false;
    }
  }
  return true;
}

Check check_frame_equivalent(const Fixture& a, const Fixture& b) {
  for (const auto& vocab :
       {std::vector<std::string>{"p"}, std::vector<std::string>{"p", "q"}}) {
    if (!equivalent_one_way(a.model.frame(), b.model.frame(), vocab) ||
        !equivalent_one_way(b.model.frame(), a.model.frame(), vocab))
      return {false, "frames distinguishable over vocabulary of size " +
                         std::to_string(vocab.size())};
  }
  return {true, "pointwise indistinguishable for all valuations over {p} and {p,q}"};
}

Check check_derivation_claim(const std::string& script_id, const SearchOptions& opts) {
  Derivation d = parse_derivation(builtin_derivation_script(script_id));
  CheckResult res = check_derivation(axiom_system(SystemId::E), d);
  if (!res.accepted)
    return {false, "rejected at line " + std::to_string(res.failed_line) + ": " + res.reason};
  const std::unordered_map<std::string, Formula> at_pqr = {
      {"phi", Formula::atom("p")},
      {"psi", Formula::atom("q")},
      {"chi", Formula::atom("r")},
  };
  for (const auto& line : d.lines) {
    Verdict v = class_valid(substitute(line.formula, at_pqr), {}, 2, opts);
    if (!v.valid())
      return {false, "line " + std::to_string(line.number) +
                         " instantiated at p/q/r is not frame-valid"};
  }
  return {true, "accepted in E; every line frame-valid at bound 2"};
}

std::vector<Claim> build_claims(const SuiteOptions& suite_opts) {
  SearchOptions opts;
  opts.jobs = suite_opts.jobs;

  std::vector<Claim> claims;
  auto add = [&](std::string id, std::string desc, ClaimFn fn) {
    claims.push_back(Claim{std::move(id), std::move(desc), std::move(fn)});
  };

  struct ProfileSpec {
    const char* fixture;
    PropertySet has;
    PropertySet lacks;
  };
  const Property N = Property::N, R = Property::R, I = Property::I,
                 S = Property::S, C = Property::C, D = Property::D,
                 T = Property::T, B = Property::B, Four = Property::Four,
                 Five = Property::Five;
  const std::vector<ProfileSpec> profiles = {
      {"P1.M", {R, I, S, D}, {N}},
      {"P1.Mp", {R, I, S, D}, {}},
      {"P2.M", {N, B}, {}},
      {"P2.Mp", {N, B}, {}},
      {"P3.M", {Four, Five}, {}},
      {"P3.Mp", {Four, Five}, {}},
      {"R1.M", {R, I, Four, Five}, {}},
      {"R1.Mp", {R, I, Four, Five}, {}},
      {"P6.M", {N, R, I, S, D, B}, {}},
      {"P6.Mp", {N, R, I, S, D, B}, {}},
      {"P7.M", {Four}, {}},
      {"P7.Mp", {Four}, {}},
      {"P8.M", {Five}, {}},
      {"P8.Mp", {Five}, {}},
      {"P12.M", {N, S, B}, {}},
      {"P12.Mp", {N, S, B}, {}},
      {"P14.F1", {D, T}, {C}},
      {"P14.F2", {C, R, I, B}, {D, T}},
      {"P14.F3", {}, {R, I, B}},
      {"P15.F", {S, Four}, {}},
      {"P15.Fp", {}, {S, Four}},
      {"P16.F", {Five}, {}},
      {"P16.Fp", {}, {Five}},
  };
  for (const auto& spec : profiles) {
    add(std::string(spec.fixture) + ".profile",
        std::string("property profile of ") + spec.fixture,
        [spec] { return check_profile(fixture(spec.fixture), spec.has, spec.lacks); });
  }

  struct PairSpec {
    const char* group;
    const char* left;
    const char* right;
    Fragment indist;
    Fragment dist;
    const char* witness;
  };
  const std::vector<PairSpec> pairs = {
      {"P1", "P1.M", "P1.Mp", Fragment::nabla_only(), Fragment::bullet_only(), "bullet p"},
      {"P2", "P2.M", "P2.Mp", Fragment::nabla_only(), Fragment::bullet_only(), "bullet p"},
      {"P3", "P3.M", "P3.Mp", Fragment::nabla_only(), Fragment::bullet_only(), "bullet ~p"},
      {"P6", "P6.M", "P6.Mp", Fragment::bullet_only(), Fragment::nabla_only(), "nabla p"},
      {"P7", "P7.M", "P7.Mp", Fragment::bullet_only(), Fragment::nabla_only(), "nabla p"},
      {"P8", "P8.M", "P8.Mp", Fragment::bullet_only(), Fragment::nabla_only(), "nabla p"},
  };
  for (const auto& spec : pairs) {
    add(std::string(spec.group) + ".indist." + spec.indist.name(),
        std::string(spec.left) + " and " + spec.right + " agree on L(" +
            spec.indist.name() + ")",
        [spec] {
          return check_indistinguishable(fixture(spec.left), fixture(spec.right),
                                         spec.indist);
        });
    add(std::string(spec.group) + ".dist." + spec.dist.name(),
        std::string(spec.left) + " and " + spec.right + " separated in L(" +
            spec.dist.name() + ")",
        [spec] {
          return check_distinguishable(fixture(spec.left), fixture(spec.right),
                                       spec.dist, spec.witness);
        });
  }

  // Remark fixtures: indistinguishable in both unimodal fragments and in the
  // bimodal language; separated only with box.
  add("R1.indist.bullet", "remark models agree on L(bullet)", [] {
    return check_indistinguishable(fixture("R1.M"), fixture("R1.Mp"),
                                   Fragment::bullet_only());
  });
  add("R1.indist.nabla", "remark models agree on L(nabla)", [] {
    return check_indistinguishable(fixture("R1.M"), fixture("R1.Mp"),
                                   Fragment::nabla_only());
  });
  add("P11.indist.nabla-bullet", "remark models agree on L(nabla,bullet)", [] {
    return check_indistinguishable(fixture("R1.M"), fixture("R1.Mp"),
                                   Fragment::nabla_bullet());
  });
  add("P11.dist.box", "remark models separated in L(box)", [] {
    return check_distinguishable(fixture("R1.M"), fixture("R1.Mp"),
                                 Fragment::box_only(), "box false");
  });
  add("P12.indist.nabla-bullet", "P12 models agree on L(nabla,bullet)", [] {
    return check_indistinguishable(fixture("P12.M"), fixture("P12.Mp"),
                                   Fragment::nabla_bullet());
  });
  add("P12.dist.box", "P12 models separated in L(box)", [] {
    return check_distinguishable(fixture("P12.M"), fixture("P12.Mp"),
                                 Fragment::box_only(), "box p");
  });

  // Spot truths at the designated points.
  add("P1.sat", "bullet p holds at (P1.M, s)",
      [] { return check_satisfies(fixture("P1.M"), "bullet p", true); });
  add("P1.falsify", "bullet p fails at (P1.Mp, sp)",
      [] { return check_satisfies(fixture("P1.Mp"), "bullet p", false); });
  add("P3.sat", "bullet ~p holds at (P3.M, s)",
      [] { return check_satisfies(fixture("P3.M"), "bullet ~p", true); });
  add("P3.falsify", "bullet ~p fails at (P3.Mp, sp)",
      [] { return check_satisfies(fixture("P3.Mp"), "bullet ~p", false); });
  add("R1.falsify", "bullet p fails at (R1.M, s)",
      [] { return check_satisfies(fixture("R1.M"), "bullet p", false); });
  add("P6.sat", "nabla p holds at (P6.M, s)",
      [] { return check_satisfies(fixture("P6.M"), "nabla p", true); });
  add("P6.falsify", "nabla p fails at (P6.Mp, sp)",
      [] { return check_satisfies(fixture("P6.Mp"), "nabla p", false); });
  add("P12.sat", "box p holds at (P12.M, s)",
      [] { return check_satisfies(fixture("P12.M"), "box p", true); });
  add("P12.falsify", "box p fails at (P12.Mp, sp)",
      [] { return check_satisfies(fixture("P12.Mp"), "box p", false); });

  // Frame undefinability fixtures.
  add("P14.equiv.F1F2", "P14.F1 and P14.F2 validate the same formulas (bounded)",
      [] { return check_frame_equivalent(fixture("P14.F1"), fixture("P14.F2")); });
  add("P14.equiv.F2F3", "P14.F2 and P14.F3 validate the same formulas (bounded)",
      [] { return check_frame_equivalent(fixture("P14.F2"), fixture("P14.F3")); });
  add("P15.equiv", "P15.F and P15.Fp validate the same formulas (bounded)",
      [] { return check_frame_equivalent(fixture("P15.F"), fixture("P15.Fp")); });
  add("P16.equiv", "P16.F and P16.Fp validate the same formulas (bounded)",
      [] { return check_frame_equivalent(fixture("P16.F"), fixture("P16.Fp")); });

  // (n) is defined by circ true: exhaustive biconditional per frame size.
  add("P13.defines.n", "circ true defines (n) on all frames of 1..3 states",
      [opts] {
        for (int n = 1; n <= 3; ++n) {
          DefinabilityResult r =
              check_defines_property(parse("circ true"), Property::N, n, opts);
          if (r.violations != 0)
            return Check{false, std::to_string(r.violations) + " violations at size " +
                                    std::to_string(n)};
        }
        return Check{true, "biconditional exact on 4 + 256 + 16777216 frames"};
      });

  // Axiom soundness per system over its frame class.
  for (SystemId sys : {SystemId::E, SystemId::Ec, SystemId::EN, SystemId::M,
                       SystemId::R, SystemId::K}) {
    add(std::string("SND.") + system_name(sys),
        std::string("axioms of ") + system_name(sys) + " valid over " +
            props_to_string(system_frame_class(sys)),
        [sys, opts] {
          SoundnessReport rep = axiom_soundness_suite(sys, 2, opts);
          for (const auto& row : rep.rows)
            if (!row.verdict.valid())
              return Check{false, "axiom " + row.axiom + " has a countermodel"};
          return Check{true, std::to_string(rep.rows.size()) + " axioms valid at bound 2"};
        });
  }

  // Negative controls: each deliberately mismatched pair yields a countermodel.
  add("NEG.E4.all", "E4 fails over the unrestricted class", [opts] {
    return check_class_verdict("bullet p -> nabla p", {}, false, opts);
  });
  add("NEG.M1.all", "M1 fails over the unrestricted class", [opts] {
    return check_class_verdict("nabla(p | q) & nabla(~p | r) -> nabla p", {}, false, opts);
  });
  add("NEG.CIRCTOP.all", "circ true fails over the unrestricted class", [opts] {
    return check_class_verdict("circ true", {}, false, opts);
  });

  // Interaction equivalences over (c)- and (t)-frames, refuted elsewhere.
  add("EQ.bullet.c", "bullet p <-> p & nabla p over (c)", [opts] {
    return check_class_verdict("bullet p <-> p & nabla p", {Property::C}, true, opts);
  });
  add("EQ.bullet.t", "bullet p <-> p & nabla p over (t)", [opts] {
    return check_class_verdict("bullet p <-> p & nabla p", {Property::T}, true, opts);
  });
  add("EQ.bullet.all", "bullet p <-> p & nabla p refuted over all frames", [opts] {
    return check_class_verdict("bullet p <-> p & nabla p", {}, false, opts);
  });
  add("EQ.nabla.c", "nabla p <-> bullet p | bullet ~p over (c)", [opts] {
    return check_class_verdict("nabla p <-> bullet p | bullet ~p", {Property::C}, true, opts);
  });
  add("EQ.nabla.t", "nabla p <-> bullet p | bullet ~p over (t)", [opts] {
    return check_class_verdict("nabla p <-> bullet p | bullet ~p", {Property::T}, true, opts);
  });
  add("EQ.nabla.all", "nabla p <-> bullet p | bullet ~p refuted over all frames", [opts] {
    return check_class_verdict("nabla p <-> bullet p | bullet ~p", {}, false, opts);
  });

  // Corollaries on the four ignorance forms.
  add("COR.rumsfeld-fo", "bullet nabla p -> nabla p valid everywhere", [opts] {
    return check_class_verdict("bullet nabla p -> nabla p", {}, true, opts);
  });
  add("COR.so-fo-rumsfeld", "nabla nabla p & nabla p -> bullet nabla p valid everywhere",
      [opts] {
        return check_class_verdict("nabla nabla p & nabla p -> bullet nabla p", {}, true,
                                   opts);
      });
  add("COR.rumsfeld-so.c", "bullet nabla p -> nabla nabla p valid over (c)", [opts] {
    return check_class_verdict("bullet nabla p -> nabla nabla p", {Property::C}, true,
                               opts);
  });
  add("COR.rumsfeld-so.all", "bullet nabla p -> nabla nabla p refuted over all frames",
      [opts] {
        return check_class_verdict("bullet nabla p -> nabla nabla p", {}, false, opts);
      });

  // Transcribed derivations.
  add("PRF.circimpliesdelta", "derivation of nabla phi & phi -> bullet phi checks in E",
      [opts] { return check_derivation_claim("circimpliesdelta", opts); });
  add("PRF.impliesphi",
      "derivation of bullet(circ phi | psi -> phi) -> phi checks in E",
      [opts] { return check_derivation_claim("impliesphi", opts); });

  return claims;
}

}  // namespace

SuiteReport run_fixture_suite(const SuiteOptions& opts) {
  return run_fixture_suite(opts, "");
}

SuiteReport run_fixture_suite(const SuiteOptions& opts, const std::string& id_prefix) {
  SuiteReport report;
  for (const auto& claim : build_claims(opts)) {
    if (!id_prefix.empty() && claim.id.rfind(id_prefix, 0) != 0) continue;
    auto start = std::chrono::steady_clock::now();
    ClaimResult result;
    result.id = claim.id;
    result.description = claim.description;
    try {
      Check check = claim.fn();
      result.pass = check.pass;
      result.detail = check.detail;
    } catch (const std::exception& e) {
      result.pass = false;
      result.detail = std::string("error: ") + e.what();
    }
    result.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    report.claims.push_back(std::move(result));
  }
  return report;
}

std::string report_to_json(const SuiteReport& report, bool with_timings) {
  nlohmann::ordered_json doc;
  doc["claims"] = nlohmann::ordered_json::array();
  for (const auto& c : report.claims) {
    nlohmann::ordered_json entry;
    entry["id"] = c.id;
    entry["verdict"] = c.pass ? "pass" : "fail";
    entry["detail"] = c.detail;
    if (with_timings) entry["elapsed_ms"] = c.elapsed_ms;
    doc["claims"].push_back(std::move(entry));
  }
  doc["summary"] = {{"total", report.total()},
                    {"passed", report.total() - report.failed()},
                    {"failed", report.failed()}};
  return doc.dump(2) + "\n";
}

std::string report_to_text(const SuiteReport& report) {
  std::ostringstream out;
  for (const auto& c : report.claims) {
    out << (c.pass ? "[PASS] " : "[FAIL] ") << c.id << ": " << c.description;
    if (!c.detail.empty()) out << " -- " << c.detail;
    out << " (" << static_cast<int>(c.elapsed_ms) << " ms)\n";
  }
  out << report.total() - report.failed() << "/" << report.total()
      << " claims passed\n";
  return out.str();
}

}  // namespace nbl
