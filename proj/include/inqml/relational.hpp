#ifndef INQML_RELATIONAL_HPP
#define INQML_RELATIONAL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "inqml/bitset.hpp"
#include "inqml/error.hpp"
#include "inqml/model.hpp"

namespace inqml {

enum class EncodingKind { rel, lf, full };

EncodingKind parse_encoding_kind(const std::string& s);
const char* to_string(EncodingKind k);

// Two-sorted structure ⟨W, S, E, ε, (P_i)⟩ with states stored extensionally
// as subsets of W (ε is membership). E[w] is a set of state indices.
class RelationalModel {
 public:
  RelationalModel() = default;
  RelationalModel(std::vector<std::string> atoms, std::vector<std::string> worlds,
                  std::vector<WorldSet> predicates, std::vector<WorldSet> states,
                  std::vector<WorldSet> e);

  std::size_t world_count() const noexcept { return worlds_.size(); }
  std::size_t state_count() const noexcept { return states_.size(); }
  const std::vector<std::string>& atoms() const noexcept { return atoms_; }
  const std::vector<std::string>& worlds() const noexcept { return worlds_; }
  const std::vector<WorldSet>& predicates() const noexcept { return predicates_; }
  const std::vector<WorldSet>& states() const noexcept { return states_; }
  const WorldSet& state(std::size_t i) const { return states_.at(i); }
  const std::vector<WorldSet>& e() const noexcept { return e_; }
  const WorldSet& e(std::size_t w) const { return e_.at(w); }

  bool has_e(std::size_t w, std::size_t s) const { return e_[w].test(s); }
  bool member(std::size_t w, std::size_t s) const { return states_[s].test(w); }
  // Extension of the named atom; ∅ for undeclared atoms.
  WorldSet predicate(const std::string& atom) const;
  std::optional<std::size_t> atom_index(const std::string& atom) const;
  std::size_t world_index(const std::string& name) const;
  std::optional<std::size_t> find_world(const std::string& name) const;
  std::optional<std::size_t> find_state(const WorldSet& s) const;

  friend bool operator==(const RelationalModel&, const RelationalModel&) = default;

 private:
  std::vector<std::string> atoms_;
  std::vector<std::string> worlds_;
  std::vector<WorldSet> predicates_;  // per atom, over W
  std::vector<WorldSet> states_;      // over W
  std::vector<WorldSet> e_;           // per world, over S indices
};

// Unvalidated description by names; E refers to indices into `states`.
struct RawRelationalModel {
  std::vector<std::string> atoms;
  std::vector<std::string> worlds;
  std::vector<std::pair<std::string, std::vector<std::string>>> predicates;
  std::vector<std::vector<std::string>> states;
  std::vector<std::pair<std::string, std::vector<std::size_t>>> e;
};

struct Violation {
  enum class Axiom { extensionality, non_emptiness, downward_closure, empty_state, worlds };
  Axiom axiom;
  std::size_t world = 0;
  std::size_t state = 0;
  WorldSet subset;  // downward closure: the missing subset
  std::string message;
};

const char* to_string(Violation::Axiom a);

class RelationalValidationError : public ValidationError {
 public:
  explicit RelationalValidationError(std::vector<Violation> v);
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// Resolves names; throws UnknownNameError on dangling references. Does not
// check the axioms.
RelationalModel build_relational(const RawRelationalModel& raw);
// First witness of each violated axiom; empty when valid.
std::vector<Violation> check_relational(const RelationalModel& r, const Limits& limits = {});
RelationalModel validate_relational(const RawRelationalModel& raw, const Limits& limits = {});
const RelationalModel& validate_relational(const RelationalModel& r, const Limits& limits = {});

RelationalModel encode(const Model& m, EncodingKind kind, const Limits& limits = {});

struct Classification {
  bool full = false;
  bool locally_full = false;
};
Classification classify(const RelationalModel& r, const Limits& limits = {});

// R[w] = ⋃{s : wEs}
KripkeModel kripke_of_relational(const RelationalModel& r);
Model decode(const RelationalModel& r);
// No cycle of the induced Kripke graph is reachable from w.
bool wellfounded_at(const RelationalModel& r, std::size_t w);

}  // namespace inqml

#endif  // INQML_RELATIONAL_HPP
