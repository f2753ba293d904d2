#ifndef INQML_FOLOG_HPP
#define INQML_FOLOG_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "inqml/error.hpp"
#include "inqml/formula.hpp"
#include "inqml/relational.hpp"

namespace inqml {

enum class Sort { world, state };

struct Var {
  Sort sort;
  std::string name;
  friend auto operator<=>(const Var&, const Var&) = default;
};

inline Var wvar(std::string name) { return {Sort::world, std::move(name)}; }
inline Var svar(std::string name) { return {Sort::state, std::move(name)}; }

enum class FOKind { True, False, Pred, E, Eps, Eq, Not, And, Or, Implies, Iff, Exists, Forall };

struct FONode;

// Immutable two-sorted first-order formula over {E, ε, P_i, =}.
class FOFormula {
 public:
  static FOFormula truth();
  static FOFormula falsity();
  static FOFormula pred(std::string atom, Var w);
  static FOFormula e(Var w, Var s);
  static FOFormula eps(Var w, Var s);
  static FOFormula eq(Var a, Var b);
  static FOFormula neg(FOFormula f);
  static FOFormula conj(std::vector<FOFormula> fs);  // empty: true
  static FOFormula disj(std::vector<FOFormula> fs);  // empty: false
  static FOFormula implies(FOFormula l, FOFormula r);
  static FOFormula iff(FOFormula l, FOFormula r);
  static FOFormula exists(Var v, FOFormula body);
  static FOFormula forall(Var v, FOFormula body);

  FOKind kind() const noexcept;
  const FONode& node() const noexcept { return *node_; }

 private:
  explicit FOFormula(std::shared_ptr<const FONode> n) : node_(std::move(n)) {}
  std::shared_ptr<const FONode> node_;
};

struct FONode {
  FOKind kind;
  std::string atom;          // Pred
  std::vector<Var> vars;     // argument list; bound variable for quantifiers
  std::vector<FOFormula> kids;
};

std::string to_string(const FOFormula& f);
std::size_t quantifier_rank(const FOFormula& f);
std::set<Var> free_vars(const FOFormula& f);

// Element of a relational model, by sort and index.
struct Element {
  Sort sort;
  std::size_t index;
  friend auto operator<=>(const Element&, const Element&) = default;
};

using Assignment = std::map<Var, std::size_t>;

// Throws PreconditionError for unassigned free variables or out-of-range values.
bool fo_eval(const RelationalModel& r, const FOFormula& f, const Assignment& a);

// Free state variable of the translations.
inline const Var kTranslationVar = svar("x");

// Clause-by-clause translation; the □ clause needs σ(y) ∈ S, so it is
// correct over locally full and full encodings.
FOFormula translate_direct(const Formula& f);
// The □ clause goes through resolutions and world-truth; correct over all
// valid encodings.
FOFormula translate_resolution(const Formula& f, const Limits& limits = {});

enum class GameOutcome { equivalent, not_equivalent, undecided };
const char* to_string(GameOutcome o);

struct GameStats {
  std::size_t nodes = 0;
  std::size_t memo_hits = 0;
};

// q-round two-sorted Ehrenfeucht–Fraïssé game. The i-th pebble of `a` is
// matched with the i-th pebble of `b`. The node budget is limits.max_game_nodes.
GameOutcome fo_equiv_q(const RelationalModel& r1, const std::vector<Element>& a,
                       const RelationalModel& r2, const std::vector<Element>& b, std::size_t q,
                       const Limits& limits = {}, GameStats* stats = nullptr);

// Free world variable of the unrelativized formula, free state variable of
// the relativized one.
inline const Var kWfWorldVar = wvar("w");
inline const Var kWfStateVar = svar("x");
FOFormula wf_formula(bool relativized);

}  // namespace inqml

#endif  // INQML_FOLOG_HPP
