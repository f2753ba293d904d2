#ifndef INQML_CHARFORM_HPP
#define INQML_CHARFORM_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "inqml/bisim.hpp"
#include "inqml/formula.hpp"
#include "inqml/model.hpp"

namespace inqml {

// How the negated ⊞-conjuncts of χ^{n+1}_w range over Π ⊆ Σ(w).
enum class PiEnumeration {
  // Downward-closed sets of realized ∼ⁿ-types of states in Σ(w).
  quotient,
  // Downward-closed nonempty subfamilies of the expanded closure of Σ(w).
  literal,
};

struct CharformOptions {
  PiEnumeration pi = PiEnumeration::quotient;
  // Vocabulary for χ⁰; defaults to the model's atoms.
  std::optional<std::vector<std::string>> atoms;
  Limits limits;
};

// Characteristic formulas χⁿ for the worlds, information states and
// inquisitive states of one model. Results are cached per level.
class CharacteristicFormulas {
 public:
  explicit CharacteristicFormulas(const Model& model, CharformOptions options = {});

  Formula world(std::size_t w, std::size_t n);
  Formula state(const InfoState& s, std::size_t n);
  Formula inqstate(const InqState& pi, std::size_t n);

 private:
  std::size_t rep(std::size_t w, std::size_t n);
  InfoState type_of(const InfoState& s, std::size_t n);
  std::vector<InfoState> realized_types(const InqState& pi, std::size_t n);
  Formula type_formula(const InfoState& type, std::size_t n);
  Formula family_formula(const std::vector<InfoState>& family, std::size_t n);
  Formula build_world(std::size_t w, std::size_t n);

  const Model& model_;
  CharformOptions options_;
  std::vector<std::string> atoms_;
  Bisimulation self_;
  std::map<std::pair<std::size_t, std::size_t>, Formula> world_cache_;
};

Formula chi_world(const Model& m, std::size_t w, std::size_t n, const CharformOptions& options = {});
Formula chi_state(const Model& m, const InfoState& s, std::size_t n, const CharformOptions& options = {});
Formula chi_inqstate(const Model& m, const InqState& pi, std::size_t n, const CharformOptions& options = {});

// Enumerates the downward-closed subfamilies of a downward-closed family
// (given in canonical order), calling f with a membership mask over
// `family`. Only nonempty subfamilies are produced; `proper` skips the whole
// family.
void for_each_downset(const std::vector<InfoState>& family, bool proper, std::size_t limit,
                      const std::function<void(const std::vector<bool>&)>& f);

struct EfVerdict {
  bool equivalent = false;
  std::optional<Formula> witness;  // depth ≤ n, supported on `supported_by` only
  Side supported_by = Side::left;
};

// Compares two state-pointed models at level n: a distinguishing
// characteristic formula when ∼ⁿ fails, otherwise agreement on both χⁿ and
// `samples` random formulas of depth ≤ n (std::logic_error on disagreement).
EfVerdict verify_ef(const Model& a, const InfoState& s, const Model& b, const InfoState& t,
                    std::size_t n, std::size_t samples = 100, std::uint64_t seed = 1);

}  // namespace inqml

#endif  // INQML_CHARFORM_HPP
