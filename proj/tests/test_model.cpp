#include <doctest.h>

#include "nbl/model.hpp"
#include "nbl/replication.hpp"
#include "oracle.hpp"

using namespace nbl;

namespace {

// all 2-state frames: collection masks over subsets {}=0,{s}=1,{t}=2,{s,t}=3
NeighborhoodFrame frame2(unsigned cs, unsigned ct) {
  std::vector<std::vector<StateSet>> colls(2);
  for (unsigned x = 0; x < 4; ++x) {
    if ((cs >> x) & 1) colls[0].push_back(StateSet(x));
    if ((ct >> x) & 1) colls[1].push_back(StateSet(x));
  }
  return NeighborhoodFrame({"s", "t"}, std::move(colls));
}

}  // namespace

TEST_CASE("state set arithmetic") {
  StateSet full = StateSet::full(3);
  CHECK(full.bits == 0b111);
  CHECK(StateSet(0b101).complement(3) == StateSet(0b010));
  CHECK(StateSet(0b110).intersect(StateSet(0b011)) == StateSet(0b010));
  CHECK(StateSet(0b001).subset_of(StateSet(0b011)));
  CHECK(!StateSet(0b100).subset_of(StateSet(0b011)));
}

TEST_CASE("frame construction validates input") {
  CHECK_THROWS_AS(NeighborhoodFrame({}, {}), ModelError);
  CHECK_THROWS_AS(NeighborhoodFrame({"s", "s"}, {{}, {}}), ModelError);
  // duplicate neighborhood
  CHECK_THROWS_AS(NeighborhoodFrame({"s"}, {{StateSet(1), StateSet(1)}}), ModelError);
  // set mentions a state outside S
  CHECK_THROWS_AS(NeighborhoodFrame({"s"}, {{StateSet(2)}}), ModelError);
}

TEST_CASE("model file format") {
  const std::string text = R"({
    "states": ["s", "t"],
    "neighborhoods": {"s": [["t"], ["s", "t"]], "t": []},
    "valuation": {"p": ["s"]}
  })";
  NeighborhoodModel m = model_from_json(text);
  CHECK(m.frame().size() == 2);
  CHECK(m.frame().neighborhoods(0) == std::vector<StateSet>{StateSet(2), StateSet(3)});
  CHECK(m.frame().neighborhoods(1).empty());
  CHECK(m.valuation("p") == StateSet(1));
  CHECK(m.valuation("q") == StateSet::empty());  // absent atoms denote {}

  // canonical output re-imports byte-identically
  std::string out = model_to_json(m);
  CHECK(model_to_json(model_from_json(out)) == out);

  CHECK_THROWS_AS(model_from_json(R"({"states":["s"],"neighborhoods":{},"extra":1})"),
                  ModelError);
  CHECK_THROWS_AS(model_from_json(R"({"states":["s"],"neighborhoods":{"x":[]}})"),
                  ModelError);
  CHECK_THROWS_AS(model_from_json(R"({"states":["s"],"neighborhoods":{"s":[["t"]]}})"),
                  ModelError);
  CHECK_THROWS_AS(model_from_json(R"({"states":["s"]})"), ModelError);
  CHECK_THROWS_AS(model_from_json("not json"), ModelError);
}

TEST_CASE("property checkers on catalog fixtures") {
  const NeighborhoodFrame& p1 = fixture("P1.M").model.frame();
  for (Property p : {Property::R, Property::I, Property::S, Property::D})
    CHECK(has_property(p1, p));
  CHECK(!has_property(p1, Property::N));

  CHECK(has_property(fixture("P16.F").model.frame(), Property::Five));
  CHECK(!has_property(fixture("P16.Fp").model.frame(), Property::Five));
  CHECK(!has_property(fixture("P15.Fp").model.frame(), Property::S));
}

TEST_CASE("has_property agrees with the naive oracle on every 2-state frame") {
  for (unsigned cs = 0; cs < 16; ++cs)
    for (unsigned ct = 0; ct < 16; ++ct) {
      NeighborhoodFrame fr = frame2(cs, ct);
      for (Property p :
           {Property::N, Property::R, Property::I, Property::S, Property::C,
            Property::D, Property::T, Property::B, Property::Four, Property::Five}) {
        CAPTURE(cs);
        CAPTURE(ct);
        CAPTURE(property_name(p));
        CHECK(has_property(fr, p) == oracle::naive_has_property(fr, p));
      }
    }
}

TEST_CASE("derived classes are the stated conjunctions, exhaustively at 2 states") {
  for (unsigned cs = 0; cs < 16; ++cs)
    for (unsigned ct = 0; ct < 16; ++ct) {
      NeighborhoodFrame fr = frame2(cs, ct);
      bool i = has_property(fr, Property::I);
      bool s = has_property(fr, Property::S);
      bool n = has_property(fr, Property::N);
      CHECK(has_property(fr, Property::QuasiFilter) == (i && s));
      CHECK(has_property(fr, Property::Filter) == (i && s && n));
      CHECK(has_property(fr, Property::Monotone) == s);
    }
}

TEST_CASE("supplementation basics") {
  NeighborhoodFrame fr({"s", "t"}, {{StateSet(2)}, {}});
  NeighborhoodFrame sup = supplementation(fr);
  CHECK(sup.neighborhoods(0) == std::vector<StateSet>{StateSet(2), StateSet(3)});
  CHECK(sup.neighborhoods(1).empty());
}

TEST_CASE("supplementation is idempotent, monotone-making and preserving") {
  for (unsigned cs = 0; cs < 16; ++cs)
    for (unsigned ct = 0; ct < 16; ++ct) {
      NeighborhoodFrame fr = frame2(cs, ct);
      NeighborhoodFrame sup = supplementation(fr);
      CHECK(has_property(sup, Property::S));
      CHECK(supplementation(sup) == sup);
      for (int st = 0; st < 2; ++st)
        for (StateSet x : fr.neighborhoods(st)) CHECK(sup.contains(st, x));
      if (has_property(fr, Property::I)) CHECK(has_property(sup, Property::I));
      if (has_property(fr, Property::N)) CHECK(has_property(sup, Property::N));
    }
}

TEST_CASE("supplementation on random larger frames") {
  std::uint64_t rng = 77;
  auto next = [&rng] {
    rng ^= rng << 13;
    rng ^= rng >> 7;
    rng ^= rng << 17;
    return rng;
  };
  for (int trial = 0; trial < 10000; ++trial) {
    int n = 1 + static_cast<int>(next() % 4);
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back(std::string(1, char('a' + i)));
    std::vector<std::vector<StateSet>> colls(n);
    for (int st = 0; st < n; ++st) {
      std::uint32_t mask = static_cast<std::uint32_t>(next() & ((1u << (1 << n)) - 1));
      for (std::uint32_t x = 0; x < (1u << n); ++x)
        if ((mask >> x) & 1) colls[st].push_back(StateSet(x));
    }
    NeighborhoodFrame fr(labels, colls);
    NeighborhoodFrame sup = supplementation(fr);
    CHECK(has_property(sup, Property::S));
    CHECK(supplementation(sup) == sup);
  }
}

TEST_CASE("core of a neighborhood collection") {
  NeighborhoodFrame fr({"s", "t"}, {{StateSet(2), StateSet(3)}, {}});
  CHECK(core(fr, 0) == StateSet(2));
  CHECK(core(fr, 1) == StateSet(3));  // empty intersection defaults to S
  NeighborhoodFrame fr2({"s"}, {{StateSet(0)}});
  CHECK(core(fr2, 0) == StateSet(0));
}
