#include "inqml/bisim.hpp"

#include <algorithm>
#include <set>

namespace inqml {
namespace {

std::vector<std::string> atom_union(const Model& a, const Model& b) {
  std::vector<std::string> out = a.atoms();
  for (const auto& x : b.atoms())
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  return out;
}

std::vector<WorldSet> transpose(const std::vector<WorldSet>& rows, std::size_t right_size) {
  std::vector<WorldSet> cols(right_size, WorldSet(rows.size()));
  for (std::size_t u = 0; u < rows.size(); ++u) rows[u].for_each([&](std::size_t v) { cols[v].set(u); });
  return cols;
}

// Every x in s has a partner (per `rel`) in t.
bool covered(const InfoState& s, const InfoState& t, const std::vector<WorldSet>& rel) {
  bool ok = true;
  s.for_each([&](std::size_t x) {
    if (ok && !rel[x].intersects(t)) ok = false;
  });
  return ok;
}

}  // namespace

Bisimulation::Bisimulation(const Model& left, const Model& right, BisimOptions options)
    : left_(left), right_(right), options_(options) {}

void Bisimulation::extend() {
  const std::size_t n = left_.size(), m = right_.size();
  if (rows_.empty()) {
    std::vector<WorldSet> z0(n, WorldSet::full(m));
    for (const auto& a : atom_union(left_, right_)) {
      const WorldSet la = left_.atom_extension(a), ra = right_.atom_extension(a);
      for (std::size_t u = 0; u < n; ++u) {
        if (la.test(u)) z0[u] &= ra;
        else z0[u] -= ra;
      }
    }
    cols_.push_back(transpose(z0, m));
    rows_.push_back(std::move(z0));
    return;
  }
  if (stable_) return;
  const std::size_t k = rows_.size() - 1;
  const auto& rows = rows_[k];
  const auto& cols = cols_[k];
  if (options_.forth == ForthCheck::full_closure && left_closure_.empty()) {
    for (std::size_t u = 0; u < n; ++u) left_closure_.push_back(left_.sigma(u).enumerate(options_.limits));
    for (std::size_t v = 0; v < m; ++v) right_closure_.push_back(right_.sigma(v).enumerate(options_.limits));
  }
  std::vector<WorldSet> next(n, WorldSet(m));
  for (std::size_t u = 0; u < n; ++u) {
    rows_[0][u].for_each([&](std::size_t v) {
      bool ok;
      if (options_.forth == ForthCheck::maximal_states) {
        const auto& lm = left_.sigma(u).maximal();
        const auto& rm = right_.sigma(v).maximal();
        ok = std::all_of(lm.begin(), lm.end(), [&](const InfoState& s) {
          return std::any_of(rm.begin(), rm.end(), [&](const InfoState& t) { return covered(s, t, rows); });
        });
        ok = ok && std::all_of(rm.begin(), rm.end(), [&](const InfoState& t) {
          return std::any_of(lm.begin(), lm.end(), [&](const InfoState& s) { return covered(t, s, cols); });
        });
      } else {
        const auto& lc = left_closure_[u];
        const auto& rc = right_closure_[v];
        ok = std::all_of(lc.begin(), lc.end(), [&](const InfoState& s) {
          return std::any_of(rc.begin(), rc.end(), [&](const InfoState& t) { return match(s, t, k); });
        });
        ok = ok && std::all_of(rc.begin(), rc.end(), [&](const InfoState& t) {
          return std::any_of(lc.begin(), lc.end(), [&](const InfoState& s) { return match(s, t, k); });
        });
      }
      if (ok) next[u].set(v);
    });
  }
  if (next == rows) {
    stable_ = true;
    return;
  }
  cols_.push_back(transpose(next, m));
  rows_.push_back(std::move(next));
}

const std::vector<WorldSet>& Bisimulation::relation(std::size_t n) {
  if (rows_.empty()) extend();
  while (!stable_ && rows_.size() <= n) extend();
  return rows_[std::min(n, rows_.size() - 1)];
}

bool Bisimulation::worlds(std::size_t u, std::size_t v, std::size_t n) {
  if (u >= left_.size() || v >= right_.size()) throw UnknownNameError("unknown world index");
  return relation(n)[u].test(v);
}

bool Bisimulation::match(const InfoState& s, const InfoState& t, std::size_t level) const {
  return covered(s, t, rows_[level]) && covered(t, s, cols_[level]);
}

bool Bisimulation::states(const InfoState& s, const InfoState& t, std::size_t n) {
  relation(n);
  return match(s, t, std::min(n, rows_.size() - 1));
}

bool Bisimulation::inqstates(const InqState& pi, const InqState& rho, std::size_t n) {
  relation(n);
  const std::size_t k = std::min(n, rows_.size() - 1);
  if (options_.forth == ForthCheck::maximal_states) {
    const auto& lm = pi.maximal();
    const auto& rm = rho.maximal();
    return std::all_of(lm.begin(), lm.end(), [&](const InfoState& s) {
             return std::any_of(rm.begin(), rm.end(), [&](const InfoState& t) { return covered(s, t, rows_[k]); });
           }) &&
           std::all_of(rm.begin(), rm.end(), [&](const InfoState& t) {
             return std::any_of(lm.begin(), lm.end(), [&](const InfoState& s) { return covered(t, s, cols_[k]); });
           });
  }
  const auto lc = pi.enumerate(options_.limits);
  const auto rc = rho.enumerate(options_.limits);
  return std::all_of(lc.begin(), lc.end(), [&](const InfoState& s) {
           return std::any_of(rc.begin(), rc.end(), [&](const InfoState& t) { return match(s, t, k); });
         }) &&
         std::all_of(rc.begin(), rc.end(), [&](const InfoState& t) {
           return std::any_of(lc.begin(), lc.end(), [&](const InfoState& s) { return match(s, t, k); });
         });
}

std::size_t Bisimulation::stable_level() {
  if (rows_.empty()) extend();
  while (!stable_) extend();
  return rows_.size() - 1;
}

std::size_t Bisimulation::agreement_level(std::size_t u, std::size_t v) {
  const std::size_t top = stable_level();
  if (rows_[top][u].test(v)) return kOmega;
  std::size_t j = 0;
  while (j + 1 <= top && rows_[j + 1][u].test(v)) ++j;
  return rows_[0][u].test(v) ? j : kOmega - 1;  // kOmega - 1 marks "not even level 0"
}

bool world_bisim(const Model& a, std::size_t w, const Model& b, std::size_t v, std::size_t n,
                 const BisimOptions& options) {
  return Bisimulation(a, b, options).worlds(w, v, n);
}

bool state_bisim(const Model& a, const InfoState& s, const Model& b, const InfoState& t,
                 std::size_t n, const BisimOptions& options) {
  return Bisimulation(a, b, options).states(s, t, n);
}

bool inqstate_bisim(const Model& a, const InqState& pi, const Model& b, const InqState& rho,
                    std::size_t n, const BisimOptions& options) {
  return Bisimulation(a, b, options).inqstates(pi, rho, n);
}

bool global_bisim(const Model& a, const Model& b) {
  Bisimulation bis(a, b);
  const auto& rows = bis.relation(kOmega);
  WorldSet hit(b.size());
  for (const auto& r : rows) {
    if (r.empty()) return false;
    hit |= r;
  }
  return hit == WorldSet::full(b.size());
}

std::vector<std::size_t> bisim_classes(const Model& m, std::size_t n) {
  Bisimulation bis(m, m);
  const auto& rows = bis.relation(n);
  std::vector<std::size_t> rep(m.size());
  for (std::size_t w = 0; w < m.size(); ++w) rep[w] = rows[w].first();
  return rep;
}

std::optional<DistinguishingPlay> distinguishing_play(Bisimulation& b, std::size_t u, std::size_t v,
                                                      std::size_t n) {
  if (b.worlds(u, v, n)) return std::nullopt;
  DistinguishingPlay play;
  const Model& lm = b.left();
  const Model& rm = b.right();
  while (true) {
    if (!b.worlds(u, v, 0)) {
      for (const auto& a : atom_union(lm, rm))
        if (lm.atom_extension(a).test(u) != rm.atom_extension(a).test(v)) {
          play.atom = a;
          break;
        }
      play.outcome = "atoms";
      play.final_left = u;
      play.final_right = v;
      return play;
    }
    std::size_t j = 1;
    while (b.worlds(u, v, j)) ++j;
    const std::size_t level = j - 1;
    b.stable_level();
    const std::vector<WorldSet> rows = b.relation(level);
    std::vector<WorldSet> cols(rm.size(), WorldSet(lm.size()));
    for (std::size_t x = 0; x < lm.size(); ++x) rows[x].for_each([&](std::size_t y) { cols[y].set(x); });

    // Orient the round: `from` is the side player I plays on.
    bool found = false;
    for (int pass = 0; pass < 2 && !found; ++pass) {
      const bool left_first = pass == 0;
      const auto& mine = left_first ? lm.sigma(u).maximal() : rm.sigma(v).maximal();
      const auto& theirs = left_first ? rm.sigma(v).maximal() : lm.sigma(u).maximal();
      const auto& rel = left_first ? rows : cols;
      const auto& back = left_first ? cols : rows;
      for (const InfoState& s : mine) {
        if (std::any_of(theirs.begin(), theirs.end(), [&](const InfoState& t) { return covered(s, t, rel); }))
          continue;
        found = true;
        const Side my_side = left_first ? Side::left : Side::right;
        const Side other = left_first ? Side::right : Side::left;
        play.moves.push_back({true, GameMove::Type::pick_state, my_side, s, 0});
        // II answers inside the maximal state covering most of s.
        InfoState answer(left_first ? rm.size() : lm.size());
        std::size_t best = 0;
        bool any = false;
        for (const InfoState& t : theirs) {
          InfoState cand(t.universe());
          t.for_each([&](std::size_t y) {
            if (back[y].intersects(s)) cand.set(y);
          });
          std::size_t cover = 0;
          s.for_each([&](std::size_t x) { cover += rel[x].intersects(cand) ? 1 : 0; });
          if (!any || cover > best) {
            answer = cand;
            best = cover;
            any = true;
          }
        }
        play.moves.push_back({false, GameMove::Type::pick_state, other, answer, 0});
        std::size_t x = s.first();
        while (x < s.universe() && rel[x].intersects(answer)) x = s.next(x + 1);
        play.moves.push_back({true, GameMove::Type::pick_world, my_side, {}, x});
        if (answer.empty()) {
          play.outcome = "stuck";
          play.final_left = left_first ? x : u;
          play.final_right = left_first ? v : x;
          return play;
        }
        std::size_t y = answer.first(), best_y = y;
        std::size_t best_level = 0;
        bool first = true;
        for (; y < answer.universe(); y = answer.next(y + 1)) {
          const std::size_t lvl = left_first ? b.agreement_level(x, y) : b.agreement_level(y, x);
          const std::size_t score = lvl == kOmega - 1 ? 0 : lvl + 1;
          if (first || score > best_level) {
            best_level = score;
            best_y = y;
            first = false;
          }
        }
        play.moves.push_back({false, GameMove::Type::pick_world, other, {}, best_y});
        if (left_first) {
          u = x;
          v = best_y;
        } else {
          u = best_y;
          v = x;
        }
        break;
      }
    }
    if (!found) throw std::logic_error("refinement and game disagree");
  }
}

}  // namespace inqml
