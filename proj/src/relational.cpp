#include "inqml/relational.hpp"

#include <algorithm>
#include <set>

namespace inqml {

EncodingKind parse_encoding_kind(const std::string& s) {
  if (s == "rel") return EncodingKind::rel;
  if (s == "lf") return EncodingKind::lf;
  if (s == "full") return EncodingKind::full;
  throw std::invalid_argument("unknown encoding kind '" + s + "' (expected rel, lf or full)");
}

const char* to_string(EncodingKind k) {
  switch (k) {
    case EncodingKind::rel: return "rel";
    case EncodingKind::lf: return "lf";
    case EncodingKind::full: return "full";
  }
  return "?";
}

const char* to_string(Violation::Axiom a) {
  switch (a) {
    case Violation::Axiom::extensionality: return "extensionality";
    case Violation::Axiom::non_emptiness: return "non-emptiness";
    case Violation::Axiom::downward_closure: return "downward-closure";
    case Violation::Axiom::empty_state: return "empty-state";
    case Violation::Axiom::worlds: return "worlds";
  }
  return "?";
}

namespace {
std::string summarize(const std::vector<Violation>& v) {
  std::string msg = "invalid relational model:";
  for (const auto& x : v) msg += " [" + std::string(to_string(x.axiom)) + "] " + x.message + ";";
  return msg;
}
}  // namespace

RelationalValidationError::RelationalValidationError(std::vector<Violation> v)
    : ValidationError(summarize(v)), violations_(std::move(v)) {}

RelationalModel::RelationalModel(std::vector<std::string> atoms, std::vector<std::string> worlds,
                                 std::vector<WorldSet> predicates, std::vector<WorldSet> states,
                                 std::vector<WorldSet> e)
    : atoms_(std::move(atoms)),
      worlds_(std::move(worlds)),
      predicates_(std::move(predicates)),
      states_(std::move(states)),
      e_(std::move(e)) {
  const std::size_t n = worlds_.size();
  if (predicates_.size() != atoms_.size()) throw ValidationError("predicate/atom count mismatch");
  if (e_.size() != n) throw ValidationError("E must have one row per world");
  for (const auto& p : predicates_)
    if (p.universe() != n) throw ValidationError("predicate over a different world set");
  for (const auto& s : states_)
    if (s.universe() != n) throw ValidationError("state over a different world set");
  for (const auto& row : e_)
    if (row.universe() != states_.size()) throw ValidationError("E row over a different state set");
}

std::optional<std::size_t> RelationalModel::atom_index(const std::string& atom) const {
  auto it = std::find(atoms_.begin(), atoms_.end(), atom);
  if (it == atoms_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - atoms_.begin());
}

WorldSet RelationalModel::predicate(const std::string& atom) const {
  if (auto a = atom_index(atom)) return predicates_[*a];
  return WorldSet(worlds_.size());
}

std::optional<std::size_t> RelationalModel::find_world(const std::string& name) const {
  auto it = std::find(worlds_.begin(), worlds_.end(), name);
  if (it == worlds_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - worlds_.begin());
}

std::size_t RelationalModel::world_index(const std::string& name) const {
  if (auto w = find_world(name)) return *w;
  throw UnknownNameError("unknown world '" + name + "'");
}

std::optional<std::size_t> RelationalModel::find_state(const WorldSet& s) const {
  auto it = std::find(states_.begin(), states_.end(), s);
  if (it == states_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - states_.begin());
}

RelationalModel build_relational(const RawRelationalModel& raw) {
  std::map<std::string, std::size_t> wid, aid;
  for (const auto& w : raw.worlds)
    if (!wid.emplace(w, wid.size()).second) throw ValidationError("duplicate world name '" + w + "'");
  for (const auto& a : raw.atoms)
    if (!aid.emplace(a, aid.size()).second) throw ValidationError("duplicate atom name '" + a + "'");
  const std::size_t n = raw.worlds.size();
  auto world = [&](const std::string& name) {
    auto it = wid.find(name);
    if (it == wid.end()) throw UnknownNameError("unknown world '" + name + "'");
    return it->second;
  };
  std::vector<WorldSet> preds(raw.atoms.size(), WorldSet(n));
  for (const auto& [a, ws] : raw.predicates) {
    auto it = aid.find(a);
    if (it == aid.end()) throw UnknownNameError("unknown atom '" + a + "'");
    for (const auto& w : ws) preds[it->second].set(world(w));
  }
  std::vector<WorldSet> states;
  for (const auto& st : raw.states) {
    WorldSet s(n);
    for (const auto& w : st) s.set(world(w));
    states.push_back(std::move(s));
  }
  std::vector<WorldSet> e(n, WorldSet(states.size()));
  for (const auto& [w, idx] : raw.e) {
    const std::size_t wi = world(w);
    for (std::size_t i : idx) {
      if (i >= states.size()) throw UnknownNameError("E refers to unknown state index " + std::to_string(i));
      e[wi].set(i);
    }
  }
  return RelationalModel(raw.atoms, raw.worlds, std::move(preds), std::move(states), std::move(e));
}

std::vector<Violation> check_relational(const RelationalModel& r, const Limits& limits) {
  std::vector<Violation> out;
  if (r.world_count() == 0)
    out.push_back({Violation::Axiom::worlds, 0, 0, {}, "W must be nonempty"});

  std::map<WorldSet, std::size_t> index;
  for (std::size_t i = 0; i < r.state_count(); ++i) {
    auto [it, fresh] = index.emplace(r.state(i), i);
    if (!fresh) {
      out.push_back({Violation::Axiom::extensionality, 0, i, r.state(i),
                     "states " + std::to_string(it->second) + " and " + std::to_string(i) +
                         " have the same members"});
      break;
    }
  }

  for (std::size_t w = 0; w < r.world_count(); ++w)
    if (r.e(w).empty()) {
      out.push_back({Violation::Axiom::non_emptiness, w, 0, {}, "E[" + r.worlds()[w] + "] is empty"});
      break;
    }

  bool dc_found = false;
  for (std::size_t w = 0; w < r.world_count() && !dc_found; ++w) {
    r.e(w).for_each([&](std::size_t si) {
      if (dc_found) return;
      const WorldSet& s = r.state(si);
      if (s.count() >= 63 || (std::size_t{1} << s.count()) > limits.max_closure_states)
        throw ResourceLimitError("downward-closure check exceeds subset limit");
      for_each_subset(s, [&](const WorldSet& t) {
        if (dc_found) return;
        auto it = index.find(t);
        if (it == index.end() || !r.has_e(w, it->second)) {
          dc_found = true;
          out.push_back({Violation::Axiom::downward_closure, w, si, t,
                         "state " + std::to_string(si) + " in E[" + r.worlds()[w] +
                             "] has a subset with no E-successor state"});
        }
      });
    });
  }

  if (index.find(WorldSet(r.world_count())) == index.end())
    out.push_back({Violation::Axiom::empty_state, 0, 0, {}, "the empty state is missing from S"});
  return out;
}

RelationalModel validate_relational(const RawRelationalModel& raw, const Limits& limits) {
  RelationalModel r = build_relational(raw);
  validate_relational(r, limits);
  return r;
}

const RelationalModel& validate_relational(const RelationalModel& r, const Limits& limits) {
  auto v = check_relational(r, limits);
  if (!v.empty()) throw RelationalValidationError(std::move(v));
  return r;
}

RelationalModel encode(const Model& m, EncodingKind kind, const Limits& limits) {
  const std::size_t n = m.size();
  std::vector<std::vector<InfoState>> closures;
  for (std::size_t w = 0; w < n; ++w) closures.push_back(m.sigma(w).enumerate(limits));
  std::set<InfoState> s;
  switch (kind) {
    case EncodingKind::rel:
      for (const auto& c : closures) s.insert(c.begin(), c.end());
      break;
    case EncodingKind::lf:
      s.insert(InfoState(n));
      for (std::size_t w = 0; w < n; ++w) {
        const InfoState sig = sigma(m, w);
        if ((std::size_t{1} << std::min<std::size_t>(sig.count(), 63)) > limits.max_closure_states)
          throw ResourceLimitError("locally full encoding exceeds state limit");
        for_each_subset(sig, [&](const InfoState& t) { s.insert(t); });
      }
      break;
    case EncodingKind::full:
      if (n > limits.max_powerset_worlds)
        throw ResourceLimitError("full encoding limited to " + std::to_string(limits.max_powerset_worlds) +
                                 " worlds");
      for_each_subset(WorldSet::full(n), [&](const InfoState& t) { s.insert(t); });
      break;
  }
  std::vector<WorldSet> states(s.begin(), s.end());
  std::map<InfoState, std::size_t> index;
  for (std::size_t i = 0; i < states.size(); ++i) index.emplace(states[i], i);
  std::vector<WorldSet> e(n, WorldSet(states.size()));
  for (std::size_t w = 0; w < n; ++w)
    for (const auto& t : closures[w]) e[w].set(index.at(t));
  return RelationalModel(m.atoms(), m.worlds(), m.valuation(), std::move(states), std::move(e));
}

Classification classify(const RelationalModel& r, const Limits& limits) {
  const std::size_t n = r.world_count();
  std::set<WorldSet> distinct(r.states().begin(), r.states().end());
  Classification c;
  c.full = n < 63 && distinct.size() == (std::size_t{1} << n);
  const KripkeModel k = kripke_of_relational(r);
  c.locally_full = true;
  for (std::size_t w = 0; w < n && c.locally_full; ++w) {
    const WorldSet& rw = k.access[w];
    if (rw.count() >= 63 || (std::size_t{1} << rw.count()) > limits.max_closure_states)
      throw ResourceLimitError("local fullness check exceeds subset limit");
    for_each_subset(rw, [&](const WorldSet& t) {
      if (c.locally_full && !distinct.count(t)) c.locally_full = false;
    });
  }
  return c;
}

KripkeModel kripke_of_relational(const RelationalModel& r) {
  const std::size_t n = r.world_count();
  KripkeModel k{r.atoms(), r.worlds(), r.predicates(), std::vector<WorldSet>(n, WorldSet(n))};
  for (std::size_t w = 0; w < n; ++w) r.e(w).for_each([&](std::size_t s) { k.access[w] |= r.state(s); });
  return k;
}

Model decode(const RelationalModel& r) {
  const std::size_t n = r.world_count();
  std::vector<InqState> sig;
  sig.reserve(n);
  for (std::size_t w = 0; w < n; ++w) {
    std::vector<InfoState> gens;
    r.e(w).for_each([&](std::size_t s) { gens.push_back(r.state(s)); });
    sig.emplace_back(n, std::move(gens));
  }
  return Model(r.atoms(), r.worlds(), r.predicates(), std::move(sig));
}

bool wellfounded_at(const RelationalModel& r, std::size_t w) {
  if (w >= r.world_count()) throw UnknownNameError("unknown world index " + std::to_string(w));
  const KripkeModel k = kripke_of_relational(r);
  enum : char { white, grey, black };
  std::vector<char> colour(r.world_count(), white);
  // Iterative DFS; a grey successor closes a cycle.
  std::vector<std::pair<std::size_t, std::size_t>> stack{{w, 0}};
  colour[w] = grey;
  while (!stack.empty()) {
    auto& [u, next] = stack.back();
    const std::size_t v = k.access[u].next(next);
    if (v >= r.world_count()) {
      colour[u] = black;
      stack.pop_back();
      continue;
    }
    next = v + 1;
    if (colour[v] == grey) return false;
    if (colour[v] == white) {
      colour[v] = grey;
      stack.push_back({v, 0});
    }
  }
  return true;
}

}  // namespace inqml
