#ifndef INQML_BISIM_HPP
#define INQML_BISIM_HPP

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "inqml/model.hpp"

namespace inqml {

inline constexpr std::size_t kOmega = std::numeric_limits<std::size_t>::max();

enum class ForthCheck {
  maximal_states,  // quantify over maximal states of Σ(u) only
  full_closure,    // literal quantification over the expanded closures
};

struct BisimOptions {
  ForthCheck forth = ForthCheck::maximal_states;
  Limits limits;
};

// Decreasing chain Z_0 ⊇ Z_1 ⊇ ... of world relations between two models,
// where Z_n holds exactly when player II wins the n-round game. Levels are
// computed on demand; Z_ω is the first repeated relation.
class Bisimulation {
 public:
  Bisimulation(const Model& left, const Model& right, BisimOptions options = {});

  const Model& left() const noexcept { return left_; }
  const Model& right() const noexcept { return right_; }

  // Row u holds the right worlds related to left world u at level n.
  const std::vector<WorldSet>& relation(std::size_t n);
  bool worlds(std::size_t u, std::size_t v, std::size_t n);
  bool states(const InfoState& s, const InfoState& t, std::size_t n);
  bool inqstates(const InqState& pi, const InqState& rho, std::size_t n);
  // Index of the first level equal to its successor.
  std::size_t stable_level();
  // Largest level at which the pair is related (kOmega if related at all levels).
  std::size_t agreement_level(std::size_t u, std::size_t v);

 private:
  void extend();
  bool match(const InfoState& s, const InfoState& t, std::size_t level) const;

  const Model& left_;
  const Model& right_;
  BisimOptions options_;
  std::vector<std::vector<WorldSet>> rows_;  // per level
  std::vector<std::vector<WorldSet>> cols_;  // transposes
  std::vector<std::vector<InfoState>> left_closure_, right_closure_;
  bool stable_ = false;
};

bool world_bisim(const Model& a, std::size_t w, const Model& b, std::size_t v, std::size_t n,
                 const BisimOptions& options = {});
bool state_bisim(const Model& a, const InfoState& s, const Model& b, const InfoState& t,
                 std::size_t n, const BisimOptions& options = {});
bool inqstate_bisim(const Model& a, const InqState& pi, const Model& b, const InqState& rho,
                    std::size_t n, const BisimOptions& options = {});
bool global_bisim(const Model& a, const Model& b);

enum class Side { left, right };

struct GameMove {
  enum class Type { pick_state, pick_world };
  bool by_challenger;  // player I; otherwise player II
  Type type;
  Side side;
  InfoState state;     // pick_state
  std::size_t world = 0;  // pick_world
};

struct DistinguishingPlay {
  std::vector<GameMove> moves;
  // "atoms" when the final world position disagrees on `atom`;
  // "stuck" when player II cannot answer.
  std::string outcome;
  std::string atom;
  std::size_t final_left = 0, final_right = 0;
};

// A play in which player I follows a winning strategy from (u, v) against
// player II's most resilient answers. Empty when II wins the n-round game.
std::optional<DistinguishingPlay> distinguishing_play(Bisimulation& b, std::size_t u, std::size_t v,
                                                      std::size_t n);

// Equivalence classes of ∼ⁿ inside one model: representative (least index) per world.
std::vector<std::size_t> bisim_classes(const Model& m, std::size_t n);

}  // namespace inqml

#endif  // INQML_BISIM_HPP
