#include "doctest.h"
#include "inqml/bisim.hpp"
#include "inqml/semantics.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace inqml;

namespace {

const Model dagger = fixtures::m_dagger();
const Model star = fixtures::m_star();

bool in_closure(const Model& m, std::size_t w, const InfoState& s) { return m.sigma(w).contains(s); }

// Replays a distinguishing play against the rules of the game.
void check_play(const Model& a, std::size_t u, const Model& b, std::size_t v, std::size_t n,
                const DistinguishingPlay& play) {
  std::size_t rounds = 0;
  std::size_t i = 0;
  const auto& mv = play.moves;
  while (i < mv.size()) {
    REQUIRE(i + 3 <= mv.size());
    const GameMove& s1 = mv[i];
    const GameMove& s2 = mv[i + 1];
    const GameMove& w1 = mv[i + 2];
    ++rounds;
    REQUIRE(s1.by_challenger);
    REQUIRE_FALSE(s2.by_challenger);
    REQUIRE(s1.type == GameMove::Type::pick_state);
    REQUIRE(s2.type == GameMove::Type::pick_state);
    REQUIRE(s1.side != s2.side);
    const bool left = s1.side == Side::left;
    CHECK(in_closure(left ? a : b, left ? u : v, s1.state));
    CHECK(in_closure(left ? b : a, left ? v : u, s2.state));
    REQUIRE(w1.by_challenger);
    REQUIRE(w1.type == GameMove::Type::pick_world);
    const InfoState& picked_in = w1.side == s1.side ? s1.state : s2.state;
    const InfoState& answer_in = w1.side == s1.side ? s2.state : s1.state;
    CHECK(picked_in.test(w1.world));
    if (i + 3 == mv.size()) {
      CHECK(play.outcome == "stuck");
      CHECK(answer_in.empty());
      i += 3;
      break;
    }
    const GameMove& w2 = mv[i + 3];
    REQUIRE_FALSE(w2.by_challenger);
    REQUIRE(w2.side != w1.side);
    CHECK(answer_in.test(w2.world));
    u = w1.side == Side::left ? w1.world : w2.world;
    v = w1.side == Side::left ? w2.world : w1.world;
    i += 4;
  }
  CHECK(rounds <= n);
  if (play.outcome == "atoms") {
    CHECK(play.final_left == u);
    CHECK(play.final_right == v);
    CHECK(a.atom_extension(play.atom).test(u) != b.atom_extension(play.atom).test(v));
  }
}

}  // namespace

TEST_CASE("identity is a bisimulation") {
  for (const auto& named : fixtures::corpus30())
    for (std::size_t w = 0; w < named.model.size(); ++w) CHECK(world_bisim(named.model, w, named.model, w, kOmega));
}

TEST_CASE("star and dagger at w1") {
  CHECK_FALSE(world_bisim(star, 0, dagger, 0, 1));
  CHECK(world_bisim(star, 0, dagger, 0, 0));
  Bisimulation b(star, dagger);
  auto play = distinguishing_play(b, 0, 0, 1);
  REQUIRE(play.has_value());
  CHECK(play->moves[0].state == WorldSet::of(2, {0, 1}));
  check_play(star, 0, dagger, 0, 1, *play);
  CHECK_FALSE(distinguishing_play(b, 0, 0, 0).has_value());
}

TEST_CASE("state bisimilarity") {
  CHECK(state_bisim(dagger, WorldSet(2), dagger, WorldSet(2), 3));
  CHECK_FALSE(state_bisim(dagger, WorldSet(2), dagger, WorldSet::of(2, {0}), 0));
  CHECK(state_bisim(dagger, WorldSet::full(2), dagger, WorldSet::full(2), 2));
}

TEST_CASE("inquisitive state bisimilarity") {
  CHECK(inqstate_bisim(dagger, InqState(2), star, InqState(2), 2));
  CHECK_FALSE(inqstate_bisim(star, star.sigma(0), dagger, dagger.sigma(0), 0));
  for (const auto& named : fixtures::corpus30())
    for (std::size_t w = 0; w < named.model.size(); ++w)
      CHECK(inqstate_bisim(named.model, named.model.sigma(w), named.model, named.model.sigma(w), 3));
}

TEST_CASE("global bisimilarity") {
  for (const auto& named : fixtures::corpus30()) {
    CHECK(global_bisim(named.model, named.model));
    CHECK(global_bisim(named.model, disjoint_union(named.model, named.model)));
  }
  CHECK_FALSE(global_bisim(generate_chain(2), generate_cycle(1)));
}

TEST_CASE("refinement agrees with the literal game") {
  const auto corpus = fixtures::corpus30();
  for (const auto& a : corpus)
    for (const auto& b : corpus) {
      oracle::Game game(a.model, b.model);
      Bisimulation bis(a.model, b.model);
      const std::size_t horizon = a.model.size() * b.model.size() + 1;
      for (std::size_t u = 0; u < a.model.size(); ++u)
        for (std::size_t v = 0; v < b.model.size(); ++v) {
          for (std::size_t n = 0; n <= 3; ++n) CHECK(bis.worlds(u, v, n) == game.worlds(u, v, n));
          CHECK(bis.worlds(u, v, kOmega) == game.worlds(u, v, horizon));
        }
    }
}

TEST_CASE("maximal-state forth check equals the full closure check") {
  BisimOptions full;
  full.forth = ForthCheck::full_closure;
  const auto corpus = fixtures::corpus30();
  for (const auto& a : corpus)
    for (const auto& b : corpus) {
      Bisimulation fast(a.model, b.model), slow(a.model, b.model, full);
      for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{2}, kOmega}) CHECK(fast.relation(n) == slow.relation(n));
    }
}

TEST_CASE("levels are monotone") {
  const auto corpus = fixtures::corpus30();
  for (const auto& a : corpus)
    for (const auto& b : corpus) {
      Bisimulation bis(a.model, b.model);
      for (std::size_t u = 0; u < a.model.size(); ++u)
        for (std::size_t v = 0; v < b.model.size(); ++v) {
          for (std::size_t n = 0; n < 4; ++n)
            if (bis.worlds(u, v, n + 1)) CHECK(bis.worlds(u, v, n));
          if (bis.worlds(u, v, kOmega))
            for (std::size_t n = 0; n < 5; ++n) CHECK(bis.worlds(u, v, n));
        }
    }
}

TEST_CASE("distinguishing plays are legal and short") {
  const auto corpus = fixtures::corpus30();
  std::size_t plays = 0;
  for (const auto& a : corpus)
    for (const auto& b : corpus) {
      Bisimulation bis(a.model, b.model);
      for (std::size_t u = 0; u < a.model.size(); ++u)
        for (std::size_t v = 0; v < b.model.size(); ++v)
          for (std::size_t n = 0; n <= 3; ++n)
            if (auto play = distinguishing_play(bis, u, v, n)) {
              ++plays;
              check_play(a.model, u, b.model, v, n, *play);
            }
    }
  CHECK(plays > 100);
}

TEST_CASE("n-bisimilar worlds agree on formulas of depth n") {
  const auto corpus = fixtures::corpus30();
  std::vector<std::vector<Formula>> by_depth;
  for (std::size_t n = 0; n <= 2; ++n) by_depth.push_back(fixtures::random_formulas(60, 70 + n, {"p", "q"}, n, 7));
  for (const auto& a : corpus)
    for (const auto& b : corpus) {
      Bisimulation bis(a.model, b.model);
      Evaluator ea(a.model), eb(b.model);
      for (std::size_t u = 0; u < a.model.size(); ++u)
        for (std::size_t v = 0; v < b.model.size(); ++v)
          for (std::size_t n = 0; n <= 2; ++n) {
            if (!bis.worlds(u, v, n)) continue;
            for (const auto& f : by_depth[n]) CHECK(ea.true_at(u, f) == eb.true_at(v, f));
          }
    }
}

TEST_CASE("chain head and cycle: n-bisimilar, not n+1") {
  for (std::size_t n = 0; n <= 6; ++n) {
    const Model chain = generate_chain(n + 1);
    const Model cycle = generate_cycle(1);
    CHECK(world_bisim(chain, 0, cycle, 0, n));
    CHECK_FALSE(world_bisim(chain, 0, cycle, 0, n + 1));
    Bisimulation b(chain, cycle);
    CHECK(b.agreement_level(0, 0) == n);
  }
}

TEST_CASE("bisimulation classes") {
  const Model m = disjoint_union(dagger, star);
  const auto c0 = bisim_classes(m, 0);
  CHECK(c0 == std::vector<std::size_t>{0, 1, 0, 1});
  const auto c1 = bisim_classes(m, 1);
  CHECK(c1 == std::vector<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("unknown worlds are rejected") {
  CHECK_THROWS_AS(world_bisim(dagger, 5, dagger, 0, 1), UnknownNameError);
}
