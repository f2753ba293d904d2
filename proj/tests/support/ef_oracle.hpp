// Unpruned q-round Ehrenfeucht–Fraïssé game on two-sorted relational
// structures. Exponential; for structures with a dozen elements at most.
#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "inqml/folog.hpp"
#include "inqml/relational.hpp"

namespace oracle {

using namespace inqml;

class EfGame {
 public:
  EfGame(const RelationalModel& a, const RelationalModel& b) : a_(a), b_(b) {
    std::set<std::string> v(a.atoms().begin(), a.atoms().end());
    v.insert(b.atoms().begin(), b.atoms().end());
    vocab_.assign(v.begin(), v.end());
  }

  bool play(std::vector<Element> xs, std::vector<Element> ys, std::size_t q) {
    if (!partial_iso(xs, ys)) return false;
    if (q == 0) return true;
    for (int side = 0; side < 2; ++side) {
      const RelationalModel& here = side == 0 ? a_ : b_;
      const RelationalModel& there = side == 0 ? b_ : a_;
      for (const Element& e : elements(here)) {
        bool answered = false;
        for (const Element& f : elements(there)) {
          if (f.sort != e.sort) continue;
          auto nx = xs, ny = ys;
          nx.push_back(side == 0 ? e : f);
          ny.push_back(side == 0 ? f : e);
          if (play(nx, ny, q - 1)) {
            answered = true;
            break;
          }
        }
        if (!answered) return false;
      }
    }
    return true;
  }

 private:
  static std::vector<Element> elements(const RelationalModel& r) {
    std::vector<Element> out;
    for (std::size_t w = 0; w < r.world_count(); ++w) out.push_back({Sort::world, w});
    for (std::size_t s = 0; s < r.state_count(); ++s) out.push_back({Sort::state, s});
    return out;
  }

  bool partial_iso(const std::vector<Element>& xs, const std::vector<Element>& ys) const {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (xs[i].sort != ys[i].sort) return false;
      if (xs[i].sort == Sort::world)
        for (const auto& p : vocab_)
          if (a_.predicate(p).test(xs[i].index) != b_.predicate(p).test(ys[i].index)) return false;
      for (std::size_t j = 0; j < xs.size(); ++j) {
        if ((xs[i] == xs[j]) != (ys[i] == ys[j])) return false;
        if (xs[i].sort == Sort::world && xs[j].sort == Sort::state) {
          if (a_.has_e(xs[i].index, xs[j].index) != b_.has_e(ys[i].index, ys[j].index)) return false;
          if (a_.member(xs[i].index, xs[j].index) != b_.member(ys[i].index, ys[j].index)) return false;
        }
      }
    }
    return true;
  }

  const RelationalModel& a_;
  const RelationalModel& b_;
  std::vector<std::string> vocab_;
};

}  // namespace oracle
