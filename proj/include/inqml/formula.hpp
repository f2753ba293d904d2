#ifndef INQML_FORMULA_HPP
#define INQML_FORMULA_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "inqml/error.hpp"

namespace inqml {

enum class Kind : std::uint8_t { Atom, Bottom, And, Implies, IDisj, Box, BoxPlus };

struct FormulaNode;

// Immutable, hash-consed formula over the six core connectives. Two formulas
// are structurally equal iff they share a node, so equality is O(1).
// Negation, classical disjunction and `?` are expanded on construction.
class Formula {
 public:
  Formula();  // ⊥

  static Formula atom(std::string name);
  static Formula bottom();
  static Formula top();  // ⊥ → ⊥
  static Formula conj(const Formula& l, const Formula& r);
  static Formula implies(const Formula& l, const Formula& r);
  static Formula idisj(const Formula& l, const Formula& r);
  static Formula box(const Formula& sub);
  static Formula boxplus(const Formula& sub);

  static Formula neg(const Formula& f);                          // f → ⊥
  static Formula cdisj(const Formula& l, const Formula& r);      // ¬(¬l ∧ ¬r)
  static Formula question(const Formula& f);                     // f ⫾ ¬f

  // Left folds; empty conjunction is ⊤, empty disjunctions are ⊥.
  static Formula conj_all(const std::vector<Formula>& fs);
  static Formula cdisj_all(const std::vector<Formula>& fs);
  static Formula idisj_all(const std::vector<Formula>& fs);

  Kind kind() const noexcept;
  const std::string& name() const;  // Atom only
  const Formula& left() const;      // binary nodes; Box/BoxPlus operand
  const Formula& right() const;     // binary nodes
  const Formula& sub() const { return left(); }

  std::size_t hash() const noexcept;
  const FormulaNode* node() const noexcept { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b) noexcept {
    return a.node_ == b.node_;
  }
  friend bool operator!=(const Formula& a, const Formula& b) noexcept {
    return a.node_ != b.node_;
  }

 private:
  explicit Formula(std::shared_ptr<const FormulaNode> n) : node_(std::move(n)) {}
  explicit Formula(std::nullptr_t) {}
  static Formula make(Kind k, std::string name, const Formula* l, const Formula* r);

  std::shared_ptr<const FormulaNode> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

struct FormulaNode {
  Kind kind;
  std::string name;
  Formula left;
  Formula right;
  std::size_t hash;
  std::size_t modal_depth;
  std::uint64_t tree_size;  // saturating
  bool declarative;
  bool standard_modal;
  ~FormulaNode();
};

Formula parse_formula(std::string_view text);
std::string to_string(const Formula& f);

std::size_t modal_depth(const Formula& f);
// Generated from atoms, ⊥, □ψ and ⊞ψ by ∧ and →.
bool is_declarative(const Formula& f);
// True when the formula contains neither ⫾ nor ⊞ (standard modal language).
bool is_standard_modal(const Formula& f);
std::vector<std::string> atoms_of(const Formula& f);

// Resolutions in insertion order with structural deduplication.
std::vector<Formula> resolutions(const Formula& f, const Limits& limits = {});

// Appends `f` to `out` unless already present.
void push_unique(std::vector<Formula>& out, const Formula& f);

struct RandomFormulaOptions {
  std::size_t max_modal_depth = 2;
  std::size_t max_size = 7;  // connective budget
  bool allow_idisj = true;
  bool allow_boxplus = true;
};

Formula random_formula(std::mt19937_64& rng, const std::vector<std::string>& atoms,
                       const RandomFormulaOptions& options = {});

}  // namespace inqml

#endif  // INQML_FORMULA_HPP
