#include "doctest.h"
#include "inqml/semantics.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace inqml;

namespace {

const Model dagger = fixtures::m_dagger();

bool sup(const Model& m, std::initializer_list<std::size_t> s, const char* f) {
  return supports(m, WorldSet::of(m.size(), s), parse_formula(f));
}

}  // namespace

TEST_CASE("question not settled by the full state") { CHECK_FALSE(sup(dagger, {0, 1}, "?p")); }

TEST_CASE("ex falso") {
  for (const auto& f : fixtures::named_formulas()) CHECK(supports(dagger, WorldSet(2), f));
}

TEST_CASE("boxplus question at w1") { CHECK(sup(dagger, {0}, "[+]?p")); }

TEST_CASE("truth at worlds") {
  CHECK_FALSE(true_at(dagger, 0, parse_formula("[]?p")));
  CHECK(true_at(dagger, 0, parse_formula("[+]?p")));
  CHECK(true_at(dagger, 0, parse_formula("p")));
  CHECK_FALSE(true_at(dagger, 1, parse_formula("p")));
  CHECK(true_at(dagger, 0, parse_formula("p | q")));
  CHECK_THROWS_AS(true_at(dagger, 7, parse_formula("p")), UnknownNameError);
}

TEST_CASE("truth-conditionality") {
  for (const auto& named : fixtures::corpus30()) {
    CHECK(is_truth_conditional_on(named.model, parse_formula("[]?p")));
    CHECK(is_truth_conditional_on(named.model, parse_formula("p")));
  }
  CHECK_FALSE(is_truth_conditional_on(dagger, parse_formula("?p")));
  Limits tight;
  tight.max_truth_conditional_worlds = 1;
  CHECK_THROWS_AS(is_truth_conditional_on(dagger, parse_formula("p"), tight), ResourceLimitError);
}

TEST_CASE("kripke evaluator") {
  const KripkeModel k = kripke_of(dagger);
  CHECK_FALSE(kripke_eval(k, 0, parse_formula("[]p")));
  CHECK(kripke_eval(k, 0, parse_formula("p & ~_|_")));
  CHECK(kripke_eval(kripke_of(generate_chain(2)), 1, parse_formula("[]_|_")));
  CHECK_THROWS_AS(kripke_eval(k, 0, parse_formula("?p")), UnsupportedFragmentError);
  CHECK_THROWS_AS(kripke_eval(k, 0, parse_formula("[+]p")), UnsupportedFragmentError);
}

TEST_CASE("evaluator agrees with the literal definition") {
  const auto formulas = fixtures::random_formulas(120, 5, {"p", "q"}, 3, 8);
  for (const auto& named : fixtures::random_corpus(40, 4, 2, 300)) {
    const Model& m = named.model;
    Evaluator ev(m);
    for (const auto& s : oracle::subsets(oracle::to_set(WorldSet::full(m.size())))) {
      WorldSet ws(m.size());
      for (auto x : s) ws.set(x);
      for (const auto& f : formulas) CHECK_MESSAGE(ev.supports(ws, f) == oracle::supports(m, s, f), to_string(f));
    }
  }
}

TEST_CASE("boxplus over maximal states equals boxplus over the closure") {
  const auto formulas = fixtures::random_formulas(100, 9, {"p", "q"}, 2, 7);
  EvalOptions full;
  full.boxplus_maximal_only = false;
  for (const auto& named : fixtures::corpus30()) {
    const Model& m = named.model;
    Evaluator fast(m), slow(m, full);
    for (std::size_t w = 0; w < m.size(); ++w)
      for (const auto& f : formulas) {
        const Formula g = Formula::boxplus(f);
        CHECK(fast.true_at(w, g) == slow.true_at(w, g));
      }
  }
}

TEST_CASE("persistency") {
  const auto formulas = fixtures::random_formulas(80, 21, {"p", "q"}, 3, 8);
  for (const auto& named : fixtures::random_corpus(30, 4, 2, 500)) {
    const Model& m = named.model;
    Evaluator ev(m);
    const WorldSet all = WorldSet::full(m.size());
    for (const auto& f : formulas)
      for_each_subset(all, [&](const WorldSet& s) {
        if (!ev.supports(s, f)) return;
        for_each_subset(s, [&](const WorldSet& t) { CHECK(ev.supports(t, f)); });
      });
  }
}

TEST_CASE("modalities coincide on declaratives") {
  const auto formulas = fixtures::random_formulas(200, 31, {"p", "q"}, 2, 7);
  for (const auto& named : fixtures::corpus30()) {
    Evaluator ev(named.model);
    for (const auto& f : formulas) {
      if (!is_declarative(f)) continue;
      for (std::size_t w = 0; w < named.model.size(); ++w)
        CHECK(ev.true_at(w, Formula::box(f)) == ev.true_at(w, Formula::boxplus(f)));
    }
  }
}

TEST_CASE("standard modal formulas agree with kripke semantics") {
  const auto formulas = fixtures::random_formulas(200, 41, {"p", "q"}, 3, 8, false, false);
  for (const auto& named : fixtures::corpus30()) {
    const KripkeModel k = kripke_of(named.model);
    for (const auto& f : formulas)
      for (std::size_t w = 0; w < named.model.size(); ++w)
        CHECK(true_at(named.model, w, f) == kripke_eval(k, w, f));
  }
}

TEST_CASE("declarative formulas are truth-conditional") {
  const auto formulas = fixtures::random_formulas(200, 51, {"p", "q"}, 2, 7);
  for (const auto& named : fixtures::corpus30())
    for (const auto& f : formulas)
      if (is_declarative(f)) CHECK(is_truth_conditional_on(named.model, f));
}

TEST_CASE("evaluator refuses large models") {
  CHECK_THROWS(Evaluator(generate_chain(65)));
}
