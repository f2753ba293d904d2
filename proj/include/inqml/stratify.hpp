#ifndef INQML_STRATIFY_HPP
#define INQML_STRATIFY_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "inqml/error.hpp"
#include "inqml/relational.hpp"

namespace inqml {

struct PointedRelational {
  RelationalModel model;
  std::size_t point = 0;
};

// Restriction to the elements within Gaifman distance ℓ of w in the
// bipartite E ∪ ε incidence graph. Boundary worlds keep the E-successors
// whose subsets all survive, and always ∅.
PointedRelational neighborhood(const RelationalModel& r, std::size_t w, std::size_t ell);

// Stratum labelling. The empty state belongs to every stratum and is
// labelled -1.
struct Strata {
  bool stratified = false;
  std::vector<long> world_level;
  std::vector<long> state_level;
  std::string conflict;  // when not stratified
};

Strata stratify(const RelationalModel& r);
// Depth form: the truncation N^ℓ(w) is stratified. The labelling refers to
// the truncation.
Strata stratify_to_depth(const RelationalModel& r, std::size_t w, std::size_t ell);
bool is_stratified(const RelationalModel& r);
bool is_stratified_to_depth(const RelationalModel& r, std::size_t w, std::size_t ell);
// Independent check of a labelling against the definition.
bool verify_strata(const RelationalModel& r, const Strata& s);

// Partial unfolding to depth ℓ from w: levels 0..ℓ/2 are fresh copies named
// by paths, the last level points into one appended pristine copy of r.
PointedRelational unfold(const RelationalModel& r, std::size_t w, std::size_t ell,
                         const Limits& limits = {});

// Tagged union. Tags default to "0:", "1:", ... With identify_empty the empty
// states merge into one; without, the result is not extensional.
RelationalModel disjoint_sum(const std::vector<RelationalModel>& parts, bool identify_empty,
                             const std::vector<std::string>& tags = {});

struct Upgrade {
  std::size_t ell = 0;
  PointedRelational truncation;
  PointedRelational m0;  // q⊗M ⊕ M↾N^ℓ(w),w ⊕ q⊗M↾N^ℓ(w)
  PointedRelational m1;  // q⊗M ⊕ M,w ⊕ q⊗M↾N^ℓ(w)
};

// ℓ = 2^q; r must be stratified to depth ℓ from w.
Upgrade build_upgrade(const RelationalModel& r, std::size_t w, std::size_t q, const Limits& limits = {});

struct CutoffResult {
  bool n_bisimilar = false;
  bool bisimilar = false;
  bool holds() const noexcept { return !n_bisimilar || bisimilar; }
};

// n-bisimilarity of the two depth-ℓ truncations against their full bisimilarity.
CutoffResult check_cutoff(const RelationalModel& r, std::size_t w, const RelationalModel& r2, std::size_t w2,
                          std::size_t ell, std::size_t n);

}  // namespace inqml

#endif  // INQML_STRATIFY_HPP
