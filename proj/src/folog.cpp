#include "inqml/folog.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <unordered_map>

namespace inqml {

// ---- construction ----------------------------------------------------------

FOKind FOFormula::kind() const noexcept { return node_->kind; }

FOFormula FOFormula::truth() { return FOFormula(std::make_shared<const FONode>(FONode{FOKind::True, {}, {}, {}})); }
FOFormula FOFormula::falsity() { return FOFormula(std::make_shared<const FONode>(FONode{FOKind::False, {}, {}, {}})); }

FOFormula FOFormula::pred(std::string atom, Var w) {
  if (w.sort != Sort::world) throw ValidationError("predicate argument must be a world variable");
  return FOFormula(std::make_shared<const FONode>(FONode{FOKind::Pred, std::move(atom), {std::move(w)}, {}}));
}

FOFormula FOFormula::e(Var w, Var s) {
  if (w.sort != Sort::world || s.sort != Sort::state) throw ValidationError("E takes a world and a state");
  return FOFormula(std::make_shared<const FONode>(FONode{FOKind::E, {}, {std::move(w), std::move(s)}, {}}));
}

FOFormula FOFormula::eps(Var w, Var s) {
  if (w.sort != Sort::world || s.sort != Sort::state) throw ValidationError("eps takes a world and a state");
  return FOFormula(std::make_shared<const FONode>(FONode{FOKind::Eps, {}, {std::move(w), std::move(s)}, {}}));
}

FOFormula FOFormula::eq(Var a, Var b) {
  if (a.sort != b.sort) throw ValidationError("equality between different sorts");
  return FOFormula(std::make_shared<const FONode>(FONode{FOKind::Eq, {}, {std::move(a), std::move(b)}, {}}));
}

FOFormula FOFormula::neg(FOFormula f) {
  return FOFormula(std::make_shared<const FONode>(FONode{FOKind::Not, {}, {}, {std::move(f)}}));
}

FOFormula FOFormula::conj(std::vector<FOFormula> fs) {
  if (fs.empty()) return truth();
  if (fs.size() == 1) return fs.front();
  return FOFormula(std::make_shared<const FONode>(FONode{FOKind::And, {}, {}, std::move(fs)}));
}

FOFormula FOFormula::disj(std::vector<FOFormula> fs) {
  if (fs.empty()) return falsity();
  if (fs.size() == 1) return fs.front();
  return FOFormula(std::make_shared<const FONode>(FONode{FOKind::Or, {}, {}, std::move(fs)}));
}

FOFormula FOFormula::implies(FOFormula l, FOFormula r) {
  return FOFormula(std::make_shared<const FONode>(FONode{FOKind::Implies, {}, {}, {std::move(l), std::move(r)}}));
}

FOFormula FOFormula::iff(FOFormula l, FOFormula r) {
  return FOFormula(std::make_shared<const FONode>(FONode{FOKind::Iff, {}, {}, {std::move(l), std::move(r)}}));
}

FOFormula FOFormula::exists(Var v, FOFormula body) {
  return FOFormula(std::make_shared<const FONode>(FONode{FOKind::Exists, {}, {std::move(v)}, {std::move(body)}}));
}

FOFormula FOFormula::forall(Var v, FOFormula body) {
  return FOFormula(std::make_shared<const FONode>(FONode{FOKind::Forall, {}, {std::move(v)}, {std::move(body)}}));
}

// ---- printing and measures -------------------------------------------------

namespace {

void print(const FOFormula& f, std::string& out) {
  const FONode& n = f.node();
  auto args = [&](const char* head) {
    out += '(';
    out += head;
    for (const auto& v : n.vars) {
      out += ' ';
      out += v.name;
    }
    out += ')';
  };
  auto nary = [&](const char* head) {
    out += '(';
    out += head;
    for (const auto& k : n.kids) {
      out += ' ';
      print(k, out);
    }
    out += ')';
  };
  switch (n.kind) {
    case FOKind::True: out += "true"; break;
    case FOKind::False: out += "false"; break;
    case FOKind::Pred:
      out += "(P " + n.atom + ' ' + n.vars[0].name + ')';
      break;
    case FOKind::E: args("E"); break;
    case FOKind::Eps: args("eps"); break;
    case FOKind::Eq: args("="); break;
    case FOKind::Not: nary("not"); break;
    case FOKind::And: nary("and"); break;
    case FOKind::Or: nary("or"); break;
    case FOKind::Implies: nary("->"); break;
    case FOKind::Iff: nary("<->"); break;
    case FOKind::Exists:
    case FOKind::Forall:
      out += n.kind == FOKind::Exists ? "(exists " : "(forall ";
      out += n.vars[0].sort == Sort::world ? "w " : "s ";
      out += n.vars[0].name;
      out += ' ';
      print(n.kids[0], out);
      out += ')';
      break;
  }
}

void collect_free(const FOFormula& f, std::set<Var>& bound, std::set<Var>& out) {
  const FONode& n = f.node();
  if (n.kind == FOKind::Exists || n.kind == FOKind::Forall) {
    const bool fresh = bound.insert(n.vars[0]).second;
    collect_free(n.kids[0], bound, out);
    if (fresh) bound.erase(n.vars[0]);
    return;
  }
  for (const auto& v : n.vars)
    if (!bound.count(v)) out.insert(v);
  for (const auto& k : n.kids) collect_free(k, bound, out);
}

}  // namespace

std::string to_string(const FOFormula& f) {
  std::string out;
  print(f, out);
  return out;
}

std::size_t quantifier_rank(const FOFormula& f) {
  const FONode& n = f.node();
  std::size_t r = 0;
  for (const auto& k : n.kids) r = std::max(r, quantifier_rank(k));
  if (n.kind == FOKind::Exists || n.kind == FOKind::Forall) ++r;
  return r;
}

std::set<Var> free_vars(const FOFormula& f) {
  std::set<Var> bound, out;
  collect_free(f, bound, out);
  return out;
}

// ---- evaluation ------------------------------------------------------------

namespace {

// Variables resolved to slots of a flat environment.
struct Compiled {
  FOKind kind;
  int pred = -1;  // -1: undeclared atom, false everywhere
  int a = -1, b = -1;
  Sort sort = Sort::world;
  std::vector<Compiled> kids;
};

struct Compiler {
  const RelationalModel& r;
  std::map<Var, int> scope;
  int slots = 0;

  int slot_of(const Var& v) const {
    auto it = scope.find(v);
    if (it == scope.end()) throw PreconditionError("unassigned variable '" + v.name + "'");
    return it->second;
  }

  Compiled run(const FOFormula& f) {
    const FONode& n = f.node();
    Compiled c;
    c.kind = n.kind;
    switch (n.kind) {
      case FOKind::True:
      case FOKind::False:
        break;
      case FOKind::Pred:
        if (auto i = r.atom_index(n.atom)) c.pred = static_cast<int>(*i);
        c.a = slot_of(n.vars[0]);
        break;
      case FOKind::E:
      case FOKind::Eps:
      case FOKind::Eq:
        c.a = slot_of(n.vars[0]);
        c.b = slot_of(n.vars[1]);
        break;
      case FOKind::Exists:
      case FOKind::Forall: {
        const Var& v = n.vars[0];
        c.sort = v.sort;
        c.a = slots++;
        auto saved = scope.find(v) == scope.end() ? std::optional<int>{} : std::optional<int>{scope[v]};
        scope[v] = c.a;
        c.kids.push_back(run(n.kids[0]));
        if (saved) scope[v] = *saved; else scope.erase(v);
        break;
      }
      default:
        for (const auto& k : n.kids) c.kids.push_back(run(k));
    }
    return c;
  }
};

bool eval(const RelationalModel& r, const Compiled& c, std::vector<std::size_t>& env) {
  switch (c.kind) {
    case FOKind::True: return true;
    case FOKind::False: return false;
    case FOKind::Pred: return c.pred >= 0 && r.predicates()[c.pred].test(env[c.a]);
    case FOKind::E: return r.has_e(env[c.a], env[c.b]);
    case FOKind::Eps: return r.member(env[c.a], env[c.b]);
    case FOKind::Eq: return env[c.a] == env[c.b];
    case FOKind::Not: return !eval(r, c.kids[0], env);
    case FOKind::And:
      for (const auto& k : c.kids)
        if (!eval(r, k, env)) return false;
      return true;
    case FOKind::Or:
      for (const auto& k : c.kids)
        if (eval(r, k, env)) return true;
      return false;
    case FOKind::Implies: return !eval(r, c.kids[0], env) || eval(r, c.kids[1], env);
    case FOKind::Iff: return eval(r, c.kids[0], env) == eval(r, c.kids[1], env);
    case FOKind::Exists:
    case FOKind::Forall: {
      const bool ex = c.kind == FOKind::Exists;
      const std::size_t n = c.sort == Sort::world ? r.world_count() : r.state_count();
      for (std::size_t i = 0; i < n; ++i) {
        env[c.a] = i;
        if (eval(r, c.kids[0], env) == ex) return ex;
      }
      return !ex;
    }
  }
  return false;
}

}  // namespace

bool fo_eval(const RelationalModel& r, const FOFormula& f, const Assignment& a) {
  Compiler comp{r, {}, 0};
  std::vector<std::size_t> env;
  for (const auto& [v, value] : a) {
    const std::size_t bound = v.sort == Sort::world ? r.world_count() : r.state_count();
    if (value >= bound) throw PreconditionError("assignment of '" + v.name + "' out of range");
    comp.scope[v] = comp.slots++;
    env.push_back(value);
  }
  const Compiled c = comp.run(f);
  env.resize(static_cast<std::size_t>(comp.slots), 0);
  return eval(r, c, env);
}

// ---- standard translation --------------------------------------------------

namespace {

using F = FOFormula;

struct Translator {
  bool via_resolutions;
  Limits limits;
  std::size_t worlds = 0, states = 0;

  Var world() { return wvar(worlds++ == 0 ? "y" : "y" + std::to_string(worlds - 1)); }
  Var state() { return svar("x" + std::to_string(++states)); }

  F subset(const Var& inner, const Var& outer) {
    Var y = world();
    return F::forall(y, F::implies(F::eps(y, inner), F::eps(y, outer)));
  }

  // Ryz: z lies in some state of E[y].
  F access(const Var& y, const Var& z) {
    Var t = state();
    return F::exists(t, F::conj({F::e(y, t), F::eps(z, t)}));
  }

  // x' holds exactly the worlds of σ(y).
  F is_sigma(const Var& xs, const Var& y) {
    Var z = world();
    return F::forall(z, F::iff(F::eps(z, xs), access(y, z)));
  }

  // σ(y) ⊨ ψ.
  F box_at(const Formula& psi, const Var& y) {
    if (!via_resolutions) {
      Var xs = state();
      return F::exists(xs, F::conj({is_sigma(xs, y), support(psi, xs)}));
    }
    std::vector<F> alts;
    for (const Formula& alpha : resolutions(psi, limits)) {
      Var z = world();
      F reach = access(y, z);
      alts.push_back(F::forall(z, F::implies(reach, truth(alpha, z))));
    }
    return F::disj(std::move(alts));
  }

  // Σ(y) ⊨ ψ pointwise.
  F boxplus_at(const Formula& psi, const Var& y) {
    Var xs = state();
    return F::forall(xs, F::implies(F::e(y, xs), support(psi, xs)));
  }

  // {z} ⊨ φ; support at a singleton is compositional on all connectives.
  F truth(const Formula& f, const Var& z) {
    switch (f.kind()) {
      case Kind::Atom: return F::pred(f.name(), z);
      case Kind::Bottom: return F::falsity();
      case Kind::And: return F::conj({truth(f.left(), z), truth(f.right(), z)});
      case Kind::Implies: {
        F l = truth(f.left(), z);
        return F::implies(l, truth(f.right(), z));
      }
      case Kind::IDisj: return F::disj({truth(f.left(), z), truth(f.right(), z)});
      case Kind::Box: return box_at(f.sub(), z);
      case Kind::BoxPlus: return boxplus_at(f.sub(), z);
    }
    return F::falsity();
  }

  F support(const Formula& f, const Var& x) {
    switch (f.kind()) {
      case Kind::Atom: {
        Var y = world();
        return F::forall(y, F::implies(F::eps(y, x), F::pred(f.name(), y)));
      }
      case Kind::Bottom: {
        Var y = world();
        return F::neg(F::exists(y, F::eps(y, x)));
      }
      case Kind::And: return F::conj({support(f.left(), x), support(f.right(), x)});
      case Kind::Implies: {
        Var xs = state();
        F sub = subset(xs, x);
        F l = support(f.left(), xs);
        F r = support(f.right(), xs);
        return F::forall(xs, F::implies(sub, F::implies(l, r)));
      }
      case Kind::IDisj: return F::disj({support(f.left(), x), support(f.right(), x)});
      case Kind::Box: {
        Var y = world();
        return F::forall(y, F::implies(F::eps(y, x), box_at(f.sub(), y)));
      }
      case Kind::BoxPlus: {
        Var y = world();
        Var xs = state();
        return F::forall(y, F::forall(xs, F::implies(F::conj({F::eps(y, x), F::e(y, xs)}), support(f.sub(), xs))));
      }
    }
    return F::falsity();
  }
};

}  // namespace

FOFormula translate_direct(const Formula& f) {
  Translator t{false, {}};
  return t.support(f, kTranslationVar);
}

FOFormula translate_resolution(const Formula& f, const Limits& limits) {
  Translator t{true, limits};
  return t.support(f, kTranslationVar);
}

// ---- well-foundedness --------------------------------------------------------

FOFormula wf_formula(bool relativized) {
  const Var X = svar("X"), y = wvar("y"), z = wvar("z"), t = svar("t");
  auto R = [&](const Var& a, const Var& b) { return F::exists(t, F::conj({F::e(a, t), F::eps(b, t)})); };
  if (!relativized) {
    const Var& w = kWfWorldVar;
    // ¬∃X (w ∈ X ∧ ∀y (y ∈ X → ∃z (z ∈ X ∧ Ryz)))
    return F::neg(F::exists(
        X, F::conj({F::eps(w, X),
                    F::forall(y, F::implies(F::eps(y, X), F::exists(z, F::conj({F::eps(z, X), R(y, z)}))))})));
  }
  const Var& s = kWfStateVar;
  const Var w = wvar("w"), u = wvar("u"), v = wvar("v");
  // Quantifiers over worlds and states relativised to s.
  F inside = F::forall(u, F::implies(F::eps(u, X), F::eps(u, s)));
  F no_path = F::neg(F::exists(
      X, F::conj({inside, F::eps(w, X),
                  F::forall(y, F::implies(F::conj({F::eps(y, s), F::eps(y, X)}),
                                          F::exists(z, F::conj({F::eps(z, s), F::eps(z, X), R(y, z)}))))})));
  return F::conj({F::exists(v, F::e(v, s)), F::forall(w, F::implies(F::eps(w, s), no_path))});
}

// ---- Ehrenfeucht–Fraïssé game ------------------------------------------------

const char* to_string(GameOutcome o) {
  switch (o) {
    case GameOutcome::equivalent: return "equivalent";
    case GameOutcome::not_equivalent: return "not_equivalent";
    case GameOutcome::undecided: return "undecided";
  }
  return "?";
}

namespace {

struct BudgetExceeded {};

struct VecHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const noexcept {
    std::size_t h = v.size();
    for (auto x : v) h ^= std::hash<std::uint64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

std::string base_name(const std::string& s) {
  const auto p = s.rfind(':');
  return p == std::string::npos ? s : s.substr(p + 1);
}

class EfGame {
 public:
  EfGame(const RelationalModel& a, const RelationalModel& b, const Limits& limits, GameStats* stats)
      : m_{&a, &b}, limits_(limits), stats_(stats) {
    // Shared dictionary of atomic world types over the union vocabulary.
    std::set<std::string> vocab(a.atoms().begin(), a.atoms().end());
    vocab.insert(b.atoms().begin(), b.atoms().end());
    std::map<std::vector<bool>, std::size_t> ids;
    for (int side = 0; side < 2; ++side) {
      const RelationalModel& r = *m_[side];
      std::vector<WorldSet> ext;
      for (const auto& atom : vocab) ext.push_back(r.predicate(atom));
      for (std::size_t w = 0; w < r.world_count(); ++w) {
        std::vector<bool> key;
        for (const auto& e : ext) key.push_back(e.test(w));
        type_[side].push_back(ids.emplace(key, ids.size()).first->second);
      }
    }
    for (int side = 0; side < 2; ++side) {
      const RelationalModel& r = *m_[side];
      names_[side][0] = r.worlds();
      for (const auto& s : r.states()) {
        std::string n;
        for (auto w : s.members()) n += base_name(r.worlds()[w]) + ',';
        names_[side][1].push_back(n);
      }
      for (auto& n : names_[side][0]) base_[side][0].push_back(base_name(n));
      base_[side][1] = names_[side][1];
    }
  }

  bool initial_ok(const std::vector<Element>& a, const std::vector<Element>& b) {
    if (a.size() != b.size()) throw PreconditionError("pebble lists differ in length");
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::size_t bound_a = a[i].sort == Sort::world ? m_[0]->world_count() : m_[0]->state_count();
      const std::size_t bound_b = b[i].sort == Sort::world ? m_[1]->world_count() : m_[1]->state_count();
      if (a[i].index >= bound_a || b[i].index >= bound_b) throw PreconditionError("pebble out of range");
      if (!compatible(pos_, {a[i], b[i]})) return false;
      pos_.push_back({a[i], b[i]});
    }
    return true;
  }

  bool run(std::size_t q) { return wins(pos_, q); }

 private:
  using Pair = std::pair<Element, Element>;

  bool compatible(const std::vector<Pair>& pos, const Pair& p) const {
    const auto& [x, y] = p;
    if (x.sort != y.sort) return false;
    if (x.sort == Sort::world && type_[0][x.index] != type_[1][y.index]) return false;
    for (const auto& [c, d] : pos) {
      if (c.sort == x.sort) {
        if ((c.index == x.index) != (d.index == y.index)) return false;
        continue;
      }
      const bool xw = x.sort == Sort::world;
      const std::size_t w1 = xw ? x.index : c.index, s1 = xw ? c.index : x.index;
      const std::size_t w2 = xw ? y.index : d.index, s2 = xw ? d.index : y.index;
      if (m_[0]->has_e(w1, s1) != m_[1]->has_e(w2, s2)) return false;
      if (m_[0]->member(w1, s1) != m_[1]->member(w2, s2)) return false;
    }
    return true;
  }

  std::vector<std::uint64_t> key(const std::vector<Pair>& pos, std::size_t k) const {
    std::vector<std::uint64_t> out;
    for (const auto& [c, d] : pos)
      out.push_back((static_cast<std::uint64_t>(c.sort) << 63) | (std::uint64_t(c.index) << 32) | d.index);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    out.push_back(k);
    return out;
  }

  // Candidate responses on side 1-side to spoiler element e on `side`:
  // same name first, then same base name, then index order.
  const std::vector<std::size_t>& order(int side, Sort sort, std::size_t e) {
    auto& cache = order_[side][static_cast<int>(sort)];
    const RelationalModel& other = *m_[1 - side];
    const std::size_t n = sort == Sort::world ? other.world_count() : other.state_count();
    if (cache.empty()) cache.resize(sort == Sort::world ? m_[side]->world_count() : m_[side]->state_count());
    auto& out = cache[e];
    if (out.empty() && n > 0) {
      const int si = static_cast<int>(sort);
      const std::string& nm = names_[side][si][e];
      const std::string& bn = base_[side][si][e];
      std::vector<std::pair<int, std::size_t>> ranked;
      for (std::size_t f = 0; f < n; ++f) {
        int rank = 2;
        if (names_[1 - side][si][f] == nm) rank = 0;
        else if (base_[1 - side][si][f] == bn) rank = 1;
        ranked.push_back({rank, f});
      }
      std::stable_sort(ranked.begin(), ranked.end());
      for (const auto& r : ranked) out.push_back(r.second);
    }
    return out;
  }

  bool wins(std::vector<Pair>& pos, std::size_t k) {
    if (k == 0) return true;
    if (++nodes_ > limits_.max_game_nodes) throw BudgetExceeded{};
    if (stats_) stats_->nodes = nodes_;
    auto kk = key(pos, k);
    if (auto it = memo_.find(kk); it != memo_.end()) {
      if (stats_) ++stats_->memo_hits;
      return it->second;
    }
    bool result = true;
    for (int side = 0; side < 2 && result; ++side) {
      for (Sort sort : {Sort::world, Sort::state}) {
        if (!result) break;
        const RelationalModel& r = *m_[side];
        const std::size_t n = sort == Sort::world ? r.world_count() : r.state_count();
        for (std::size_t e = 0; e < n && result; ++e) {
          const Element pick{sort, e};
          bool pebbled = false;
          for (const auto& p : pos)
            if ((side == 0 ? p.first : p.second) == pick) pebbled = true;
          if (pebbled) continue;  // answered by the partner pebble
          bool answered = false;
          for (std::size_t f : order(side, sort, e)) {
            const Element reply{sort, f};
            const Pair p = side == 0 ? Pair{pick, reply} : Pair{reply, pick};
            if (!compatible(pos, p)) continue;
            pos.push_back(p);
            const bool ok = wins(pos, k - 1);
            pos.pop_back();
            if (ok) {
              answered = true;
              break;
            }
          }
          if (!answered) result = false;
        }
      }
    }
    memo_.emplace(std::move(kk), result);
    return result;
  }

  const RelationalModel* m_[2];
  Limits limits_;
  GameStats* stats_;
  std::vector<std::size_t> type_[2];
  std::vector<std::string> names_[2][2];
  std::vector<std::string> base_[2][2];
  std::vector<std::vector<std::size_t>> order_[2][2];
  std::vector<Pair> pos_;
  std::unordered_map<std::vector<std::uint64_t>, bool, VecHash> memo_;
  std::size_t nodes_ = 0;
};

}  // namespace

GameOutcome fo_equiv_q(const RelationalModel& r1, const std::vector<Element>& a, const RelationalModel& r2,
                       const std::vector<Element>& b, std::size_t q, const Limits& limits, GameStats* stats) {
  EfGame game(r1, r2, limits, stats);
  if (!game.initial_ok(a, b)) return GameOutcome::not_equivalent;
  try {
    return game.run(q) ? GameOutcome::equivalent : GameOutcome::not_equivalent;
  } catch (const BudgetExceeded&) {
    return GameOutcome::undecided;
  }
}

}  // namespace inqml
