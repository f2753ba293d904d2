#include <set>

#include "doctest.h"
#include "inqml/formula.hpp"
#include "inqml/semantics.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace inqml;

namespace {
const Formula p = Formula::atom("p");
const Formula q = Formula::atom("q");
const Formula bot = Formula::bottom();
}  // namespace

TEST_CASE("question expands to p or not p") {
  CHECK(parse_formula("?p") == Formula::idisj(p, Formula::implies(p, bot)));
}

TEST_CASE("unary binds tighter than implication") {
  CHECK(parse_formula("[] p -> [+] q") == Formula::implies(Formula::box(p), Formula::boxplus(q)));
}

TEST_CASE("classical disjunction expands through negation") {
  const Formula np = Formula::implies(p, bot), nq = Formula::implies(q, bot);
  CHECK(parse_formula("p | q") == Formula::implies(Formula::conj(np, nq), bot));
}

TEST_CASE("precedence and associativity") {
  CHECK(parse_formula("p & q \\/ p") == Formula::idisj(Formula::conj(p, q), p));
  CHECK(parse_formula("p -> q -> p") == Formula::implies(p, Formula::implies(q, p)));
  CHECK(parse_formula("p \\/ q \\/ p") == Formula::idisj(Formula::idisj(p, q), p));
  CHECK(parse_formula("p & q & p") == Formula::conj(Formula::conj(p, q), p));
  CHECK(parse_formula("~[]?p") == Formula::neg(Formula::box(Formula::question(p))));
  CHECK(parse_formula("(p -> q) -> p") == Formula::implies(Formula::implies(p, q), p));
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(parse_formula("p &"), ParseError);
  CHECK_THROWS_AS(parse_formula("p $ q"), ParseError);
  CHECK_THROWS_AS(parse_formula("(p"), ParseError);
  CHECK_THROWS_AS(parse_formula(""), ParseError);
  CHECK_THROWS_AS(parse_formula("p q"), ParseError);
  try {
    parse_formula("p & # q");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("print then parse is the identity") {
  for (const auto& f : fixtures::named_formulas()) CHECK(parse_formula(to_string(f)) == f);
  for (const auto& f : fixtures::random_formulas(500, 7, {"p", "q", "r"}, 3, 10))
    CHECK_MESSAGE(parse_formula(to_string(f)) == f, to_string(f));
}

TEST_CASE("modal depth") {
  CHECK(modal_depth(p) == 0);
  CHECK(modal_depth(parse_formula("[]?p")) == 1);
  CHECK(modal_depth(parse_formula("[+][]p")) == 2);
  CHECK(modal_depth(parse_formula("[]p & [+]([]q -> p)")) == 2);
}

TEST_CASE("declarative fragment") {
  CHECK_FALSE(is_declarative(parse_formula("?p")));
  CHECK(is_declarative(parse_formula("[]?p")));
  CHECK(is_declarative(parse_formula("p & ~q")));
  CHECK(is_declarative(parse_formula("[+]?p -> p")));
  CHECK_FALSE(is_declarative(parse_formula("p -> ?q")));
}

TEST_CASE("degenerate folds") {
  CHECK(Formula::conj_all({}) == Formula::top());
  CHECK(Formula::cdisj_all({}) == bot);
  CHECK(Formula::idisj_all({}) == bot);
  CHECK(Formula::top() == Formula::implies(bot, bot));
}

TEST_CASE("resolutions of a question") {
  const auto r = resolutions(parse_formula("?p"));
  REQUIRE(r.size() == 2);
  CHECK(r[0] == p);
  CHECK(r[1] == Formula::neg(p));
}

TEST_CASE("resolutions of modal formulas and conjunctions") {
  const Formula bq = parse_formula("[]?p");
  CHECK(resolutions(bq) == std::vector<Formula>{bq});
  const Formula pq = parse_formula("p & q");
  CHECK(resolutions(pq) == std::vector<Formula>{pq});
}

TEST_CASE("resolutions of an implication enumerate functions") {
  // R(?p -> ?q): four functions from {p, ¬p} to {q, ¬q}.
  const auto r = resolutions(parse_formula("?p -> ?q"));
  CHECK(r.size() == 4);
  for (const auto& a : r) CHECK(is_declarative(a));
}

TEST_CASE("resolution guard") {
  Limits tight;
  tight.max_resolutions = 8;
  CHECK_THROWS_AS(resolutions(parse_formula("(?p & ?q & ?r) -> (?p & ?q)"), tight), ResourceLimitError);
}

TEST_CASE("a formula is supported iff one of its resolutions is") {
  const auto formulas = fixtures::random_formulas(150, 11, {"p", "q"}, 2, 6);
  for (const auto& named : fixtures::random_corpus(20, 3, 2, 40)) {
    const Model& m = named.model;
    const auto states = oracle::subsets(oracle::to_set(WorldSet::full(m.size())));
    for (const auto& f : formulas) {
      const auto rs = resolutions(f);
      for (const auto& a : rs) CHECK(is_declarative(a));
      for (const auto& s : states) {
        bool any = false;
        for (const auto& a : rs) any = any || oracle::supports(m, s, a);
        CHECK_MESSAGE(oracle::supports(m, s, f) == any, to_string(f));
      }
    }
  }
}

TEST_CASE("hash consing gives structural equality") {
  CHECK(parse_formula("p & q") == Formula::conj(Formula::atom("p"), Formula::atom("q")));
  CHECK(parse_formula("p & q") != parse_formula("q & p"));
  std::set<std::string> atoms;
  for (const auto& a : atoms_of(parse_formula("[](p -> q) \\/ [+]r"))) atoms.insert(a);
  CHECK(atoms == std::set<std::string>{"p", "q", "r"});
}

TEST_CASE("random formulas respect their bounds") {
  for (const auto& f : fixtures::random_formulas(300, 3, {"p"}, 2, 7)) CHECK(modal_depth(f) <= 2);
  for (const auto& f : fixtures::random_formulas(100, 3, {"p"}, 3, 7, false, false)) {
    CHECK(is_standard_modal(f));
  }
}
