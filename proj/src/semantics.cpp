#include "inqml/semantics.hpp"

#include <algorithm>
#include <bit>

namespace inqml {

Evaluator::Evaluator(const Model& model, EvalOptions options)
    : model_(model), options_(options) {
  if (model.size() > 64)
    throw ResourceLimitError("support evaluation handles at most 64 worlds");
  const std::size_t n = model.size();
  sigma_union_.resize(n);
  sigma_max_.resize(n);
  sigma_closure_.resize(n);
  for (std::size_t w = 0; w < n; ++w) {
    sigma_union_[w] = model.sigma(w).union_all().to_mask();
    for (const InfoState& m : model.sigma(w).maximal()) sigma_max_[w].push_back(m.to_mask());
  }
}

void Evaluator::retain(const Formula& f) {
  if (retained_ptrs_.insert(f.node()).second) retained_.push_back(f);
}

bool Evaluator::supports(const InfoState& s, const Formula& f) {
  if (s.universe() != model_.size()) throw std::invalid_argument("state over a different world set");
  retain(f);
  return eval(f, s.to_mask());
}

bool Evaluator::true_at(std::size_t world, const Formula& f) {
  if (world >= model_.size()) throw UnknownNameError("unknown world index " + std::to_string(world));
  retain(f);
  return eval(f, std::uint64_t{1} << world);
}

std::uint64_t Evaluator::atom_mask(const std::string& name) {
  auto it = atoms_.find(name);
  if (it != atoms_.end()) return it->second;
  const std::uint64_t m = model_.atom_extension(name).to_mask();
  atoms_.emplace(name, m);
  return m;
}

bool Evaluator::eval(const Formula& f, std::uint64_t s) {
  switch (f.kind()) {
    case Kind::Atom: return (s & ~atom_mask(f.name())) == 0;
    case Kind::Bottom: return s == 0;
    case Kind::And: return eval(f.left(), s) && eval(f.right(), s);
    case Kind::IDisj: return eval(f.left(), s) || eval(f.right(), s);
    default: break;
  }
  if (s == 0) return true;  // every formula is supported by ∅
  const Key key{f.node(), s};
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  bool result = true;
  switch (f.kind()) {
    case Kind::Implies: {
      const int k = std::popcount(s);
      if ((std::size_t{1} << k) > options_.limits.max_closure_states)
        throw ResourceLimitError("implication over a state of " + std::to_string(k) +
                                 " worlds exceeds the subset limit");
      std::vector<std::uint64_t> subs;
      subs.reserve(std::size_t{1} << k);
      for (std::uint64_t t = s;; t = (t - 1) & s) {
        subs.push_back(t);
        if (t == 0) break;
      }
      std::stable_sort(subs.begin(), subs.end(), [](std::uint64_t a, std::uint64_t b) {
        return std::popcount(a) > std::popcount(b);
      });
      for (std::uint64_t t : subs) {
        if (eval(f.left(), t) && !eval(f.right(), t)) {
          result = false;
          break;
        }
      }
      break;
    }
    case Kind::Box:
      for (std::uint64_t r = s; r != 0 && result; r &= r - 1)
        result = eval(f.sub(), sigma_union_[std::countr_zero(r)]);
      break;
    case Kind::BoxPlus:
      for (std::uint64_t r = s; r != 0 && result; r &= r - 1) {
        const auto w = static_cast<std::size_t>(std::countr_zero(r));
        if (options_.boxplus_maximal_only) {
          for (std::uint64_t t : sigma_max_[w])
            if (!eval(f.sub(), t)) {
              result = false;
              break;
            }
        } else {
          if (sigma_closure_[w].empty())
            for (const InfoState& t : model_.sigma(w).enumerate(options_.limits))
              sigma_closure_[w].push_back(t.to_mask());
          for (std::uint64_t t : sigma_closure_[w])
            if (!eval(f.sub(), t)) {
              result = false;
              break;
            }
        }
      }
      break;
    default: break;
  }
  memo_.emplace(key, result);
  return result;
}

bool supports(const Model& m, const InfoState& s, const Formula& f, const EvalOptions& options) {
  return Evaluator(m, options).supports(s, f);
}

bool true_at(const Model& m, std::size_t w, const Formula& f) {
  return Evaluator(m).true_at(w, f);
}

bool is_truth_conditional_on(const Model& m, const Formula& f, const Limits& limits) {
  if (m.size() > limits.max_truth_conditional_worlds)
    throw ResourceLimitError("truth-conditionality check limited to " +
                             std::to_string(limits.max_truth_conditional_worlds) + " worlds");
  Evaluator ev(m);
  std::uint64_t truth = 0;
  for (std::size_t w = 0; w < m.size(); ++w)
    if (ev.true_at(w, f)) truth |= std::uint64_t{1} << w;
  const std::uint64_t n = std::uint64_t{1} << m.size();
  for (std::uint64_t s = 0; s < n; ++s) {
    const bool all_true = (s & ~truth) == 0;
    if (ev.supports(WorldSet::from_mask(m.size(), s), f) != all_true) return false;
  }
  return true;
}

namespace {

WorldSet extension(const KripkeModel& k, const Formula& f,
                   std::unordered_map<const FormulaNode*, WorldSet>& memo) {
  if (auto it = memo.find(f.node()); it != memo.end()) return it->second;
  const std::size_t n = k.worlds.size();
  WorldSet out(n);
  switch (f.kind()) {
    case Kind::Atom:
      for (std::size_t a = 0; a < k.atoms.size(); ++a)
        if (k.atoms[a] == f.name()) out = k.valuation[a];
      break;
    case Kind::Bottom: break;
    case Kind::And: out = extension(k, f.left(), memo) & extension(k, f.right(), memo); break;
    case Kind::Implies:
      out = (WorldSet::full(n) - extension(k, f.left(), memo)) | extension(k, f.right(), memo);
      break;
    case Kind::Box: {
      const WorldSet sub = extension(k, f.sub(), memo);
      for (std::size_t w = 0; w < n; ++w)
        if (k.access[w].is_subset_of(sub)) out.set(w);
      break;
    }
    case Kind::IDisj:
    case Kind::BoxPlus:
      throw UnsupportedFragmentError("Kripke evaluation is undefined for inquisitive disjunction and [+]");
  }
  memo.emplace(f.node(), out);
  return out;
}

}  // namespace

bool kripke_eval(const KripkeModel& k, std::size_t w, const Formula& f) {
  if (!is_standard_modal(f))
    throw UnsupportedFragmentError("Kripke evaluation is undefined for inquisitive disjunction and [+]");
  if (w >= k.worlds.size()) throw UnknownNameError("unknown world index " + std::to_string(w));
  std::unordered_map<const FormulaNode*, WorldSet> memo;
  return extension(k, f, memo).test(w);
}

}  // namespace inqml
