#include "doctest.h"
#include "inqml/model.hpp"
#include "support/corpus.hpp"

using namespace inqml;

namespace {

RawModel two_worlds() {
  RawModel raw;
  raw.atoms = {"p"};
  raw.worlds = {"w", "w1", "w2"};
  return raw;
}

}  // namespace

TEST_CASE("validate keeps only maximal states") {
  RawModel raw = two_worlds();
  raw.sigma = {{"w", {{"w1"}, {"w1", "w2"}}}};
  const Model m = validate(raw);
  REQUIRE(m.sigma(0).maximal().size() == 1);
  CHECK(m.sigma(0).maximal()[0] == m.state({"w1", "w2"}));
}

TEST_CASE("no listed states denotes the trivial inquisitive state") {
  const Model m = validate(two_worlds());
  CHECK(m.sigma(0).maximal().empty());
  const auto all = m.sigma(0).enumerate();
  REQUIRE(all.size() == 1);
  CHECK(all[0].empty());
}

TEST_CASE("validate rejects bad references") {
  RawModel raw = two_worlds();
  raw.sigma = {{"w", {{"w9"}}}};
  CHECK_THROWS_AS(validate(raw), UnknownNameError);
  raw = two_worlds();
  raw.valuation = {{"w", {"zz"}}};
  CHECK_THROWS_AS(validate(raw), UnknownNameError);
  raw = two_worlds();
  raw.worlds.push_back("w");
  CHECK_THROWS_AS(validate(raw), ValidationError);
  raw = two_worlds();
  raw.sigma = {{"w", {}}, {"w", {}}};
  CHECK_THROWS_AS(validate(raw), ValidationError);
}

TEST_CASE("sigma is the union of the maximal states") {
  RawModel raw = two_worlds();
  raw.sigma = {{"w", {{"w1"}, {"w2"}}}, {"w1", {{"w1", "w2"}}}};
  const Model m = validate(raw);
  CHECK(sigma(m, 0) == m.state({"w1", "w2"}));
  CHECK(sigma(m, 2).empty());
  CHECK(sigma(m, 1) == m.state({"w1", "w2"}));
}

TEST_CASE("kripke projection is pointwise sigma") {
  const Model m = fixtures::m_dagger();
  const KripkeModel k = kripke_of(m);
  for (std::size_t w = 0; w < m.size(); ++w) CHECK(k.access[w] == sigma(m, w));
  CHECK(k.valuation == m.valuation());
  const KripkeModel kc = kripke_of(generate_chain(2));
  CHECK(kc.access[0] == WorldSet::of(2, {1}));
  CHECK(kc.access[1].empty());
}

TEST_CASE("enumerate states") {
  const std::size_t n = 2;
  CHECK(enumerate_states(InqState(n, {WorldSet::of(n, {0, 1})})) ==
        std::vector<InfoState>{WorldSet(n), WorldSet::of(n, {0}), WorldSet::of(n, {1}), WorldSet::of(n, {0, 1})});
  CHECK(enumerate_states(InqState(n)) == std::vector<InfoState>{WorldSet(n)});
  CHECK(enumerate_states(InqState(n, {WorldSet::of(n, {0}), WorldSet::of(n, {1})})) ==
        std::vector<InfoState>{WorldSet(n), WorldSet::of(n, {0}), WorldSet::of(n, {1})});
}

TEST_CASE("enumeration guard") {
  Limits tight;
  tight.max_closure_states = 4;
  CHECK_THROWS_AS(enumerate_states(InqState(3, {WorldSet::full(3)}), tight), ResourceLimitError);
}

TEST_CASE("sigma equals the union of the closure") {
  for (const auto& named : fixtures::corpus30()) {
    const Model& m = named.model;
    for (std::size_t w = 0; w < m.size(); ++w) {
      WorldSet u(m.size());
      for (const auto& s : enumerate_states(m.sigma(w))) u |= s;
      CHECK(u == sigma(m, w));
    }
  }
}

TEST_CASE("chain and cycle generators") {
  const Model c2 = generate_chain(2);
  CHECK(c2.worlds() == std::vector<std::string>{"u0", "u1"});
  REQUIRE(c2.sigma(0).maximal().size() == 1);
  CHECK(c2.sigma(0).maximal()[0] == WorldSet::of(2, {1}));
  CHECK(c2.sigma(1).maximal().empty());
  const Model y1 = generate_cycle(1);
  REQUIRE(y1.sigma(0).maximal().size() == 1);
  CHECK(y1.sigma(0).maximal()[0] == WorldSet::of(1, {0}));
  CHECK_THROWS(generate_chain(0));
}

TEST_CASE("chain has a path of length n-1 and no cycle; cycle has one") {
  for (std::size_t n = 1; n <= 6; ++n) {
    const KripkeModel k = kripke_of(generate_chain(n));
    std::size_t w = 0, steps = 0;
    while (!k.access[w].empty()) {
      w = k.access[w].first();
      ++steps;
      REQUIRE(steps < n);
    }
    CHECK(steps == n - 1);
    const KripkeModel kc = kripke_of(generate_cycle(n));
    CHECK(kc.access[n - 1].test(0));
  }
}

TEST_CASE("random generator is reproducible and valid") {
  const RandomSpec spec{1, 4, 2, 0.5};
  CHECK(generate_random(spec) == generate_random(spec));
  CHECK_FALSE(generate_random(spec) == generate_random({2, 4, 2, 0.5}));
  CHECK_THROWS(generate_random({1, 0, 1, 0.5}));
  CHECK_THROWS(generate_random({1, 3, 1, 1.5}));
  const Model big = generate_random({5, 16, 2, 0.3});
  CHECK(big.size() == 16);
}

TEST_CASE("validate is idempotent on canonical forms") {
  for (const auto& named : fixtures::corpus30()) {
    const Model& m = named.model;
    RawModel raw;
    raw.atoms = m.atoms();
    raw.worlds = m.worlds();
    for (std::size_t w = 0; w < m.size(); ++w) {
      std::vector<std::string> atoms;
      for (std::size_t a = 0; a < m.atoms().size(); ++a)
        if (m.valuation()[a].test(w)) atoms.push_back(m.atoms()[a]);
      raw.valuation.emplace_back(m.worlds()[w], atoms);
      std::vector<std::vector<std::string>> states;
      // Listing the whole closure must canonicalize back to the antichain.
      for (const auto& s : enumerate_states(m.sigma(w))) {
        std::vector<std::string> names;
        for (auto x : s.members()) names.push_back(m.worlds()[x]);
        states.push_back(names);
      }
      raw.sigma.emplace_back(m.worlds()[w], states);
    }
    CHECK(validate(raw) == m);
  }
}

TEST_CASE("disjoint union") {
  const Model a = fixtures::m_dagger();
  const Model u = disjoint_union(a, a);
  CHECK(u.size() == 4);
  CHECK(u.worlds()[2] == "w1#1");
  CHECK(sigma(u, 2) == WorldSet::of(4, {2, 3}));
  CHECK(u.atom_extension("p") == WorldSet::of(4, {0, 2}));
}

TEST_CASE("undeclared atoms have empty extension") {
  CHECK(fixtures::m_dagger().atom_extension("zz").empty());
  CHECK_THROWS_AS(fixtures::m_dagger().world_index("w9"), UnknownNameError);
}
