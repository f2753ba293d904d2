#ifndef INQML_SEMANTICS_HPP
#define INQML_SEMANTICS_HPP

#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "inqml/formula.hpp"
#include "inqml/model.hpp"

namespace inqml {

struct EvalOptions {
  // ⊞ quantifies over the maximal states of Σ(w) only; by persistency this is
  // result-identical to quantifying over the full closure.
  bool boxplus_maximal_only = true;
  Limits limits;
};

// Support evaluation over one model, memoized per (subformula, state) for the
// evaluator's lifetime. Models of up to 64 worlds.
class Evaluator {
 public:
  explicit Evaluator(const Model& model, EvalOptions options = {});

  bool supports(const InfoState& s, const Formula& f);
  bool true_at(std::size_t world, const Formula& f);

  const Model& model() const noexcept { return model_; }

 private:
  struct Key {
    const FormulaNode* node;
    std::uint64_t state;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      return std::hash<const void*>{}(k.node) * 31 + std::hash<std::uint64_t>{}(k.state);
    }
  };

  bool eval(const Formula& f, std::uint64_t s);
  std::uint64_t atom_mask(const std::string& name);
  void retain(const Formula& f);

  const Model& model_;
  EvalOptions options_;
  std::vector<std::uint64_t> sigma_union_;
  std::vector<std::vector<std::uint64_t>> sigma_max_;
  std::vector<std::vector<std::uint64_t>> sigma_closure_;  // lazily filled
  std::unordered_map<std::string, std::uint64_t> atoms_;
  std::unordered_map<Key, bool, KeyHash> memo_;
  std::unordered_set<const FormulaNode*> retained_ptrs_;
  std::vector<Formula> retained_;  // keeps memo keys alive
};

bool supports(const Model& m, const InfoState& s, const Formula& f, const EvalOptions& options = {});
bool true_at(const Model& m, std::size_t w, const Formula& f);
// Brute force over all 2^|W| states.
bool is_truth_conditional_on(const Model& m, const Formula& f, const Limits& limits = {});
// Standard Kripke truth; the formula must contain neither ⫾ nor ⊞.
bool kripke_eval(const KripkeModel& k, std::size_t w, const Formula& f);

}  // namespace inqml

#endif  // INQML_SEMANTICS_HPP
