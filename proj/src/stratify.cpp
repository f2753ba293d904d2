#include "inqml/stratify.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "inqml/bisim.hpp"

namespace inqml {

namespace {

void require_depth(std::size_t ell) {
  if (ell < 2 || ell % 2 != 0) throw PreconditionError("depth must be even and at least 2, got " + std::to_string(ell));
}

std::size_t empty_state(const RelationalModel& r) {
  auto e = r.find_state(WorldSet(r.world_count()));
  if (!e) throw PreconditionError("relational model has no empty state");
  return *e;
}

// Builds a model from member lists over `world_count` worlds; states are put in
// canonical order and E rows remapped accordingly.
RelationalModel assemble(std::vector<std::string> atoms, std::vector<std::string> worlds,
                         std::vector<WorldSet> preds, const std::vector<std::vector<std::size_t>>& states,
                         const std::vector<std::set<std::size_t>>& e) {
  const std::size_t n = worlds.size();
  std::vector<WorldSet> sets;
  for (const auto& s : states) sets.push_back(WorldSet::of(n, s));
  std::vector<std::size_t> perm(sets.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return sets[a] < sets[b]; });
  std::vector<std::size_t> where(sets.size());
  std::vector<WorldSet> sorted;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    where[perm[i]] = i;
    sorted.push_back(sets[perm[i]]);
  }
  std::vector<WorldSet> rows(n, WorldSet(sorted.size()));
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t s : e[w]) rows[w].set(where[s]);
  return RelationalModel(std::move(atoms), std::move(worlds), std::move(preds), std::move(sorted), std::move(rows));
}

}  // namespace

PointedRelational neighborhood(const RelationalModel& r, std::size_t w, std::size_t ell) {
  require_depth(ell);
  if (w >= r.world_count()) throw UnknownNameError("unknown world index " + std::to_string(w));
  const std::size_t empty = empty_state(r);
  const std::size_t n = r.world_count(), m = r.state_count();
  constexpr std::size_t far = static_cast<std::size_t>(-1);

  // Worlds are nodes 0..n-1, states n..n+m-1. The shared ∅ is left out of
  // the graph; otherwise it would put every world within distance 2.
  std::vector<std::vector<std::size_t>> adj(n + m);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t s = 0; s < m; ++s)
      if (s != empty && (r.has_e(u, s) || r.member(u, s))) {
        adj[u].push_back(n + s);
        adj[n + s].push_back(u);
      }
  std::vector<std::size_t> dist(n + m, far);
  std::deque<std::size_t> queue{w};
  dist[w] = 0;
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop_front();
    if (dist[x] == ell) continue;
    for (std::size_t y : adj[x])
      if (dist[y] == far) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
  }

  std::vector<std::size_t> new_world(n, far), new_state(m, far);
  std::vector<std::string> names;
  for (std::size_t u = 0; u < n; ++u)
    if (dist[u] != far) {
      new_world[u] = names.size();
      names.push_back(r.worlds()[u]);
    }
  std::vector<std::vector<std::size_t>> states;
  for (std::size_t s = 0; s < m; ++s)
    if (dist[n + s] != far || s == empty) {
      new_state[s] = states.size();
      std::vector<std::size_t> members;
      for (std::size_t v : r.state(s).members()) {
        if (new_world[v] == far) throw PreconditionError("state straddles the neighbourhood boundary");
        members.push_back(new_world[v]);
      }
      states.push_back(std::move(members));
    }

  std::map<WorldSet, std::size_t> index;
  for (std::size_t s = 0; s < m; ++s) index.emplace(r.state(s), s);
  std::vector<std::set<std::size_t>> e(names.size());
  for (std::size_t u = 0; u < n; ++u) {
    if (new_world[u] == far) continue;
    auto& row = e[new_world[u]];
    row.insert(new_state[empty]);
    r.e(u).for_each([&](std::size_t s) {
      if (new_state[s] == far) return;
      bool closed = true;
      for_each_subset(r.state(s), [&](const WorldSet& t) {
        auto it = index.find(t);
        if (it == index.end() || new_state[it->second] == far) closed = false;
      });
      if (closed) row.insert(new_state[s]);
    });
  }

  std::vector<WorldSet> preds;
  for (const auto& p : r.predicates()) {
    WorldSet q(names.size());
    p.for_each([&](std::size_t u) {
      if (new_world[u] != far) q.set(new_world[u]);
    });
    preds.push_back(std::move(q));
  }
  return {assemble(r.atoms(), std::move(names), std::move(preds), states, e), new_world[w]};
}

// ---- stratification ----------------------------------------------------------

Strata stratify(const RelationalModel& r) {
  const std::size_t n = r.world_count(), m = r.state_count();
  Strata out;
  out.world_level.assign(n, 0);
  out.state_level.assign(m, -1);

  // level(s) = level(w) for wEs; level(v) = level(s) + 1 for v ε s.
  std::vector<std::vector<std::pair<std::size_t, long>>> adj(n + m);
  for (std::size_t s = 0; s < m; ++s) {
    if (r.state(s).empty()) continue;
    for (std::size_t u = 0; u < n; ++u) {
      if (r.has_e(u, s)) {
        adj[u].push_back({n + s, 0});
        adj[n + s].push_back({u, 0});
      }
      if (r.member(u, s)) {
        adj[n + s].push_back({u, 1});
        adj[u].push_back({n + s, -1});
      }
    }
  }
  std::vector<long> pot(n + m, 0);
  std::vector<bool> seen(n + m, false);
  auto label = [&](std::size_t x) {
    return x < n ? "world " + r.worlds()[x] : "state " + std::to_string(x - n);
  };
  for (std::size_t start = 0; start < n + m; ++start) {
    if (seen[start] || (start >= n && r.state(start - n).empty())) continue;
    std::vector<std::size_t> comp{start};
    seen[start] = true;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      const std::size_t x = comp[i];
      for (const auto& [y, d] : adj[x]) {
        if (!seen[y]) {
          seen[y] = true;
          pot[y] = pot[x] + d;
          comp.push_back(y);
        } else if (pot[y] != pot[x] + d) {
          out.conflict = "no consistent level for " + label(y) + " (reached from " + label(x) + ")";
          return out;
        }
      }
    }
    // Shift to nonnegative levels; members of states then sit at level >= 1.
    long shift = 0;
    for (std::size_t x : comp) shift = std::max(shift, -pot[x]);
    for (std::size_t x : comp) {
      if (x < n) out.world_level[x] = pot[x] + shift;
      else out.state_level[x - n] = pot[x] + shift;
    }
  }
  out.stratified = true;
  return out;
}

bool verify_strata(const RelationalModel& r, const Strata& s) {
  if (!s.stratified) return false;
  if (s.world_level.size() != r.world_count() || s.state_level.size() != r.state_count()) return false;
  for (long l : s.world_level)
    if (l < 0) return false;
  for (std::size_t i = 0; i < r.state_count(); ++i) {
    const WorldSet& st = r.state(i);
    if (st.empty()) {
      if (s.state_level[i] != -1) return false;
      continue;
    }
    if (s.state_level[i] < 0) return false;
    bool ok = true;
    st.for_each([&](std::size_t v) { ok = ok && s.world_level[v] == s.state_level[i] + 1; });
    if (!ok) return false;
  }
  for (std::size_t w = 0; w < r.world_count(); ++w) {
    bool ok = true;
    r.e(w).for_each([&](std::size_t i) {
      ok = ok && (r.state(i).empty() || s.state_level[i] == s.world_level[w]);
    });
    if (!ok) return false;
  }
  return true;
}

Strata stratify_to_depth(const RelationalModel& r, std::size_t w, std::size_t ell) {
  return stratify(neighborhood(r, w, ell).model);
}

bool is_stratified(const RelationalModel& r) { return stratify(r).stratified; }

bool is_stratified_to_depth(const RelationalModel& r, std::size_t w, std::size_t ell) {
  return stratify_to_depth(r, w, ell).stratified;
}

// ---- unfolding ---------------------------------------------------------------

PointedRelational unfold(const RelationalModel& r, std::size_t w, std::size_t ell, const Limits& limits) {
  require_depth(ell);
  if (w >= r.world_count()) throw UnknownNameError("unknown world index " + std::to_string(w));
  const std::size_t empty = empty_state(r);
  const bool locally_full = classify(r, limits).locally_full;

  // Fresh copies carry a prefix no original name starts with.
  std::string prefix = "@";
  while (std::any_of(r.worlds().begin(), r.worlds().end(),
                     [&](const std::string& x) { return x.compare(0, prefix.size(), prefix) == 0; }))
    prefix += "@";

  std::vector<std::string> names;
  std::vector<std::size_t> origin;
  std::vector<std::vector<std::size_t>> states{{}};  // state 0 is ∅
  std::map<std::vector<std::size_t>, std::size_t> state_id{{{}, 0}};
  std::vector<std::set<std::size_t>> e;

  auto guard = [&] {
    if (names.size() + states.size() > limits.max_unfold_elements)
      throw ResourceLimitError("unfolding exceeds element limit");
  };
  auto add_world = [&](std::string name, std::size_t orig) {
    names.push_back(std::move(name));
    origin.push_back(orig);
    e.emplace_back();
    guard();
    return names.size() - 1;
  };
  auto add_state = [&](std::vector<std::size_t> members) {
    std::sort(members.begin(), members.end());
    auto [it, fresh] = state_id.emplace(members, states.size());
    if (fresh) {
      states.push_back(std::move(members));
      guard();
    }
    return it->second;
  };
  auto check_subsets = [&](std::size_t k) {
    if (k >= 63 || (std::size_t{1} << k) > limits.max_closure_states)
      throw ResourceLimitError("unfolding exceeds subset limit");
  };

  std::vector<std::size_t> frontier{add_world(prefix + r.worlds()[w], w)};
  for (std::size_t level = 0; level < ell / 2; ++level) {
    std::vector<std::size_t> next;
    for (std::size_t c : frontier) {
      const std::size_t u = origin[c];
      e[c].insert(0);
      std::vector<std::size_t> maximal;
      r.e(u).for_each([&](std::size_t s) {
        if (r.state(s).empty()) return;
        bool dominated = false;
        r.e(u).for_each([&](std::size_t t) {
          if (t != s && r.state(s).is_subset_of(r.state(t)) && !(r.state(s) == r.state(t))) dominated = true;
        });
        if (!dominated) maximal.push_back(s);
      });
      std::vector<std::size_t> children;
      for (std::size_t j = 0; j < maximal.size(); ++j) {
        const WorldSet& s = r.state(maximal[j]);
        check_subsets(s.count());
        std::map<std::size_t, std::size_t> copy;
        s.for_each([&](std::size_t v) {
          copy[v] = add_world(names[c] + "/" + std::to_string(j) + "/" + r.worlds()[v], v);
          next.push_back(copy[v]);
          children.push_back(copy[v]);
        });
        for_each_subset(s, [&](const WorldSet& t) {
          std::vector<std::size_t> members;
          t.for_each([&](std::size_t v) { members.push_back(copy[v]); });
          e[c].insert(add_state(std::move(members)));
        });
      }
      if (locally_full) {
        check_subsets(children.size());
        const std::size_t k = children.size();
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
          std::vector<std::size_t> members;
          for (std::size_t i = 0; i < k; ++i)
            if ((bits >> i) & 1u) members.push_back(children[i]);
          add_state(std::move(members));
        }
      }
    }
    frontier = std::move(next);
  }

  // Pristine copy of r; the boundary level points into it.
  const std::size_t base = names.size();
  for (std::size_t u = 0; u < r.world_count(); ++u) add_world(r.worlds()[u], u);
  std::vector<std::size_t> pristine_state(r.state_count());
  for (std::size_t s = 0; s < r.state_count(); ++s) {
    std::vector<std::size_t> members;
    r.state(s).for_each([&](std::size_t v) { members.push_back(base + v); });
    pristine_state[s] = s == empty ? 0 : add_state(std::move(members));
  }
  for (std::size_t u = 0; u < r.world_count(); ++u)
    r.e(u).for_each([&](std::size_t s) { e[base + u].insert(pristine_state[s]); });
  for (std::size_t c : frontier)
    r.e(origin[c]).for_each([&](std::size_t s) { e[c].insert(pristine_state[s]); });

  std::vector<WorldSet> preds;
  for (const auto& p : r.predicates()) {
    WorldSet q(names.size());
    for (std::size_t c = 0; c < names.size(); ++c)
      if (p.test(origin[c])) q.set(c);
    preds.push_back(std::move(q));
  }
  return {assemble(r.atoms(), std::move(names), std::move(preds), states, e), 0};
}

// ---- sums and upgrading --------------------------------------------------------

RelationalModel disjoint_sum(const std::vector<RelationalModel>& parts, bool identify_empty,
                             const std::vector<std::string>& tags) {
  if (!tags.empty() && tags.size() != parts.size()) throw PreconditionError("one tag per summand required");
  std::vector<std::string> atoms;
  for (const auto& p : parts)
    for (const auto& a : p.atoms())
      if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) atoms.push_back(a);

  std::vector<std::string> names;
  std::vector<std::size_t> offset;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    offset.push_back(names.size());
    const std::string tag = tags.empty() ? std::to_string(i) + ":" : tags[i];
    for (const auto& w : parts[i].worlds()) names.push_back(tag + w);
  }
  const std::size_t n = names.size();

  std::vector<WorldSet> states;
  std::vector<std::vector<std::size_t>> state_of(parts.size());
  if (identify_empty) states.push_back(WorldSet(n));
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (const auto& s : parts[i].states()) {
      if (identify_empty && s.empty()) {
        state_of[i].push_back(0);
        continue;
      }
      WorldSet t(n);
      s.for_each([&](std::size_t v) { t.set(offset[i] + v); });
      state_of[i].push_back(states.size());
      states.push_back(std::move(t));
    }

  std::vector<WorldSet> e(n, WorldSet(states.size()));
  std::vector<WorldSet> preds(atoms.size(), WorldSet(n));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const RelationalModel& p = parts[i];
    for (std::size_t w = 0; w < p.world_count(); ++w)
      p.e(w).for_each([&](std::size_t s) { e[offset[i] + w].set(state_of[i][s]); });
    for (std::size_t a = 0; a < atoms.size(); ++a)
      p.predicate(atoms[a]).for_each([&](std::size_t w) { preds[a].set(offset[i] + w); });
  }
  return RelationalModel(std::move(atoms), std::move(names), std::move(preds), std::move(states), std::move(e));
}

Upgrade build_upgrade(const RelationalModel& r, std::size_t w, std::size_t q, const Limits& limits) {
  if (q == 0 || q > 5) throw PreconditionError("upgrade needs 1 <= q <= 5");
  Upgrade up;
  up.ell = std::size_t{1} << q;
  if (!is_stratified_to_depth(r, w, up.ell))
    throw PreconditionError("model is not stratified to depth " + std::to_string(up.ell) + " from the point");
  up.truncation = neighborhood(r, w, up.ell);
  const std::size_t elements = (q + 1) * (r.world_count() + r.state_count()) +
                               (q + 1) * (up.truncation.model.world_count() + up.truncation.model.state_count());
  if (elements > limits.max_unfold_elements) throw ResourceLimitError("upgrade exceeds element limit");

  const std::string& name = r.worlds()[w];
  auto build = [&](const RelationalModel& middle) {
    std::vector<RelationalModel> parts;
    std::vector<std::string> tags;
    for (std::size_t i = 0; i < q; ++i) {
      parts.push_back(r);
      tags.push_back("m" + std::to_string(i) + ":");
    }
    parts.push_back(middle);
    tags.push_back("d:");
    for (std::size_t i = 0; i < q; ++i) {
      parts.push_back(up.truncation.model);
      tags.push_back("t" + std::to_string(i) + ":");
    }
    RelationalModel sum = disjoint_sum(parts, true, tags);
    const std::size_t point = sum.world_index("d:" + name);
    return PointedRelational{std::move(sum), point};
  };
  up.m0 = build(up.truncation.model);
  up.m1 = build(r);
  return up;
}

CutoffResult check_cutoff(const RelationalModel& r, std::size_t w, const RelationalModel& r2, std::size_t w2,
                          std::size_t ell, std::size_t n) {
  require_depth(ell);
  if (n < ell / 2) throw PreconditionError("cutoff needs n >= ell/2");
  if (!is_stratified_to_depth(r, w, ell) || !is_stratified_to_depth(r2, w2, ell))
    throw PreconditionError("both models must be stratified to depth " + std::to_string(ell));
  const PointedRelational a = neighborhood(r, w, ell);
  const PointedRelational b = neighborhood(r2, w2, ell);
  const Model ma = decode(a.model);
  const Model mb = decode(b.model);
  Bisimulation bis(ma, mb);
  CutoffResult out;
  out.n_bisimilar = bis.worlds(a.point, b.point, n);
  out.bisimilar = bis.worlds(a.point, b.point, kOmega);
  return out;
}

}  // namespace inqml
