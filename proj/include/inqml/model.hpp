#ifndef INQML_MODEL_HPP
#define INQML_MODEL_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "inqml/bitset.hpp"
#include "inqml/error.hpp"

namespace inqml {

// An information state: a subset of the world index set.
using InfoState = WorldSet;

// A nonempty downward-closed family of information states, stored as the
// antichain of its maximal nonempty members. The empty antichain denotes {∅}.
class InqState {
 public:
  InqState() = default;
  explicit InqState(std::size_t universe) : universe_(universe) {}
  // Canonicalizes: drops ∅ and non-maximal members, sorts.
  InqState(std::size_t universe, std::vector<InfoState> generators);

  std::size_t universe() const noexcept { return universe_; }
  const std::vector<InfoState>& maximal() const noexcept { return maximal_; }
  bool contains(const InfoState& s) const;
  InfoState union_all() const;
  // Full downward closure including ∅, canonical order, no duplicates.
  std::vector<InfoState> enumerate(const Limits& limits = {}) const;

  friend bool operator==(const InqState&, const InqState&) = default;

 private:
  std::size_t universe_ = 0;
  std::vector<InfoState> maximal_;
};

struct KripkeModel {
  std::vector<std::string> atoms;
  std::vector<std::string> worlds;
  std::vector<WorldSet> valuation;  // per atom
  std::vector<WorldSet> access;     // per world

  friend bool operator==(const KripkeModel&, const KripkeModel&) = default;
};

// Unvalidated description of a model, by names.
struct RawModel {
  std::vector<std::string> atoms;
  std::vector<std::string> worlds;
  std::vector<std::pair<std::string, std::vector<std::string>>> valuation;  // world -> true atoms
  std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> sigma;  // world -> states
};

// Finite inquisitive modal model ⟨W, Σ, V⟩. World order is declaration order.
class Model {
 public:
  Model() = default;
  Model(std::vector<std::string> atoms, std::vector<std::string> worlds,
        std::vector<WorldSet> valuation, std::vector<InqState> sigma);

  std::size_t size() const noexcept { return worlds_.size(); }
  const std::vector<std::string>& atoms() const noexcept { return atoms_; }
  const std::vector<std::string>& worlds() const noexcept { return worlds_; }
  const std::vector<WorldSet>& valuation() const noexcept { return valuation_; }
  const std::vector<InqState>& sigma() const noexcept { return sigma_; }
  const InqState& sigma(std::size_t w) const { return sigma_.at(w); }

  std::size_t world_index(const std::string& name) const;  // throws UnknownNameError
  std::optional<std::size_t> find_world(const std::string& name) const;
  std::optional<std::size_t> atom_index(const std::string& name) const;
  // Worlds where the atom holds; ∅ for atoms the model does not declare.
  WorldSet atom_extension(const std::string& name) const;
  InfoState state(const std::vector<std::string>& names) const;

  friend bool operator==(const Model&, const Model&) = default;

 private:
  std::vector<std::string> atoms_;
  std::vector<std::string> worlds_;
  std::vector<WorldSet> valuation_;
  std::vector<InqState> sigma_;
};

Model validate(const RawModel& raw);
InfoState sigma(const Model& m, std::size_t w);
KripkeModel kripke_of(const Model& m);
std::vector<InfoState> enumerate_states(const InqState& pi, const Limits& limits = {});

struct ChainSpec { std::size_t n; };
struct CycleSpec { std::size_t n; };
struct RandomSpec {
  std::uint64_t seed;
  std::size_t worlds;
  std::size_t atoms;
  double density;
};

Model generate_chain(std::size_t n);
Model generate_cycle(std::size_t n);
Model generate_random(const RandomSpec& spec);

// Atom names used by generators: p, q, r, s, t, then a5, a6, ...
std::vector<std::string> default_atoms(std::size_t count);

// Worlds of `a` followed by worlds of `b`, names suffixed to stay distinct.
Model disjoint_union(const Model& a, const Model& b);

}  // namespace inqml

#endif  // INQML_MODEL_HPP
