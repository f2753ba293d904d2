#include "inqml/model.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>
#include <set>

namespace inqml {

InqState::InqState(std::size_t universe, std::vector<InfoState> generators) : universe_(universe) {
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const InfoState& s = generators[i];
    if (s.universe() != universe) throw ValidationError("state over a different world set");
    if (s.empty()) continue;
    bool dominated = false;
    // Canonical order is by size first, so any strict superset comes later.
    for (std::size_t j = i + 1; j < generators.size() && !dominated; ++j)
      dominated = s.is_subset_of(generators[j]);
    if (!dominated) maximal_.push_back(s);
  }
}

bool InqState::contains(const InfoState& s) const {
  if (s.empty()) return true;
  for (const InfoState& m : maximal_)
    if (s.is_subset_of(m)) return true;
  return false;
}

InfoState InqState::union_all() const {
  InfoState u(universe_);
  for (const InfoState& m : maximal_) u |= m;
  return u;
}

std::vector<InfoState> InqState::enumerate(const Limits& limits) const {
  std::size_t bound = 1;
  for (const InfoState& m : maximal_) {
    const std::size_t c = m.count();
    if (c >= 63 || (std::size_t{1} << c) > limits.max_closure_states)
      throw ResourceLimitError("downward closure exceeds limit of " +
                               std::to_string(limits.max_closure_states) + " states");
    bound += std::size_t{1} << c;
    if (bound > limits.max_closure_states * 2)
      throw ResourceLimitError("downward closure exceeds limit of " +
                               std::to_string(limits.max_closure_states) + " states");
  }
  std::set<InfoState> out;
  out.insert(InfoState(universe_));
  for (const InfoState& m : maximal_)
    for_each_subset(m, [&](const InfoState& t) { out.insert(t); });
  if (out.size() > limits.max_closure_states)
    throw ResourceLimitError("downward closure exceeds limit of " +
                             std::to_string(limits.max_closure_states) + " states");
  return {out.begin(), out.end()};
}

Model::Model(std::vector<std::string> atoms, std::vector<std::string> worlds,
             std::vector<WorldSet> valuation, std::vector<InqState> sigma)
    : atoms_(std::move(atoms)),
      worlds_(std::move(worlds)),
      valuation_(std::move(valuation)),
      sigma_(std::move(sigma)) {
  if (valuation_.size() != atoms_.size()) throw ValidationError("valuation/atom count mismatch");
  if (sigma_.size() != worlds_.size()) throw ValidationError("sigma must be total on worlds");
  for (const WorldSet& v : valuation_)
    if (v.universe() != worlds_.size()) throw ValidationError("valuation over a different world set");
  for (const InqState& s : sigma_)
    if (s.universe() != worlds_.size()) throw ValidationError("sigma over a different world set");
}

std::optional<std::size_t> Model::find_world(const std::string& name) const {
  auto it = std::find(worlds_.begin(), worlds_.end(), name);
  if (it == worlds_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - worlds_.begin());
}

std::size_t Model::world_index(const std::string& name) const {
  if (auto w = find_world(name)) return *w;
  throw UnknownNameError("unknown world '" + name + "'");
}

std::optional<std::size_t> Model::atom_index(const std::string& name) const {
  auto it = std::find(atoms_.begin(), atoms_.end(), name);
  if (it == atoms_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - atoms_.begin());
}

WorldSet Model::atom_extension(const std::string& name) const {
  if (auto a = atom_index(name)) return valuation_[*a];
  return WorldSet(size());
}

InfoState Model::state(const std::vector<std::string>& names) const {
  InfoState s(size());
  for (const auto& n : names) s.set(world_index(n));
  return s;
}

Model validate(const RawModel& raw) {
  std::map<std::string, std::size_t> world_ids, atom_ids;
  for (const auto& w : raw.worlds)
    if (!world_ids.emplace(w, world_ids.size()).second)
      throw ValidationError("duplicate world name '" + w + "'");
  for (const auto& a : raw.atoms)
    if (!atom_ids.emplace(a, atom_ids.size()).second)
      throw ValidationError("duplicate atom name '" + a + "'");
  const std::size_t n = raw.worlds.size();
  auto world = [&](const std::string& name) {
    auto it = world_ids.find(name);
    if (it == world_ids.end()) throw UnknownNameError("unknown world '" + name + "'");
    return it->second;
  };

  std::vector<WorldSet> valuation(raw.atoms.size(), WorldSet(n));
  for (const auto& [w, true_atoms] : raw.valuation) {
    const std::size_t wi = world(w);
    for (const auto& a : true_atoms) {
      auto it = atom_ids.find(a);
      if (it == atom_ids.end()) throw UnknownNameError("unknown atom '" + a + "'");
      valuation[it->second].set(wi);
    }
  }

  std::vector<std::vector<InfoState>> gens(n);
  std::vector<bool> seen(n, false);
  for (const auto& [w, states] : raw.sigma) {
    const std::size_t wi = world(w);
    if (seen[wi]) throw ValidationError("sigma given twice for world '" + w + "'");
    seen[wi] = true;
    for (const auto& st : states) {
      InfoState s(n);
      for (const auto& m : st) s.set(world(m));
      gens[wi].push_back(std::move(s));
    }
  }
  std::vector<InqState> sig;
  sig.reserve(n);
  for (std::size_t w = 0; w < n; ++w) sig.emplace_back(n, std::move(gens[w]));
  return Model(raw.atoms, raw.worlds, std::move(valuation), std::move(sig));
}

InfoState sigma(const Model& m, std::size_t w) {
  if (w >= m.size()) throw UnknownNameError("unknown world index " + std::to_string(w));
  return m.sigma(w).union_all();
}

KripkeModel kripke_of(const Model& m) {
  KripkeModel k{m.atoms(), m.worlds(), m.valuation(), {}};
  k.access.reserve(m.size());
  for (std::size_t w = 0; w < m.size(); ++w) k.access.push_back(sigma(m, w));
  return k;
}

std::vector<InfoState> enumerate_states(const InqState& pi, const Limits& limits) {
  return pi.enumerate(limits);
}

std::vector<std::string> default_atoms(std::size_t count) {
  static const char* names[] = {"p", "q", "r", "s", "t"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(i < 5 ? names[i] : "a" + std::to_string(i));
  return out;
}

namespace {

std::vector<std::string> numbered(const char* prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

Model successor_model(std::size_t n, bool wrap) {
  if (n < 1) throw std::invalid_argument("generator size must be at least 1");
  std::vector<InqState> sig;
  for (std::size_t i = 0; i < n; ++i) {
    if (i + 1 < n || wrap)
      sig.emplace_back(n, std::vector<InfoState>{WorldSet::of(n, {(i + 1) % n})});
    else
      sig.emplace_back(n);
  }
  return Model({}, numbered("u", n), {}, std::move(sig));
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Model generate_chain(std::size_t n) { return successor_model(n, false); }
Model generate_cycle(std::size_t n) { return successor_model(n, true); }

Model generate_random(const RandomSpec& spec) {
  if (spec.worlds < 1) throw std::invalid_argument("random model needs at least one world");
  if (!(spec.density >= 0.0 && spec.density <= 1.0))
    throw std::invalid_argument("density must lie in [0,1]");
  const std::size_t n = spec.worlds;
  std::mt19937_64 rng(spec.seed);
  std::vector<std::string> atoms = default_atoms(spec.atoms);
  std::vector<WorldSet> valuation(atoms.size(), WorldSet(n));
  for (std::size_t w = 0; w < n; ++w)
    for (auto& v : valuation)
      if (rng() & 1u) v.set(w);
  std::vector<InqState> sig;
  for (std::size_t w = 0; w < n; ++w) {
    std::vector<InfoState> gens;
    if (n <= 12) {
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask)
        if (uniform01(rng) < spec.density) gens.push_back(WorldSet::from_mask(n, mask));
    } else {
      for (std::size_t k = 0; k < n; ++k) {
        InfoState s(n);
        for (std::size_t x = 0; x < n; ++x)
          if (uniform01(rng) < spec.density) s.set(x);
        gens.push_back(std::move(s));
      }
    }
    sig.emplace_back(n, std::move(gens));
  }
  return Model(std::move(atoms), numbered("w", n), std::move(valuation), std::move(sig));
}

Model disjoint_union(const Model& a, const Model& b) {
  const std::size_t n = a.size() + b.size();
  std::vector<std::string> atoms = a.atoms();
  for (const auto& x : b.atoms())
    if (!a.atom_index(x)) atoms.push_back(x);
  std::vector<std::string> worlds;
  for (const auto& w : a.worlds()) worlds.push_back(w + "#0");
  for (const auto& w : b.worlds()) worlds.push_back(w + "#1");
  auto shift = [&](const WorldSet& s, std::size_t off) {
    WorldSet out(n);
    s.for_each([&](std::size_t i) { out.set(i + off); });
    return out;
  };
  std::vector<WorldSet> val;
  for (const auto& x : atoms)
    val.push_back(shift(a.atom_extension(x), 0) | shift(b.atom_extension(x), a.size()));
  std::vector<InqState> sig;
  for (std::size_t w = 0; w < a.size(); ++w) {
    std::vector<InfoState> g;
    for (const auto& s : a.sigma(w).maximal()) g.push_back(shift(s, 0));
    sig.emplace_back(n, std::move(g));
  }
  for (std::size_t w = 0; w < b.size(); ++w) {
    std::vector<InfoState> g;
    for (const auto& s : b.sigma(w).maximal()) g.push_back(shift(s, a.size()));
    sig.emplace_back(n, std::move(g));
  }
  return Model(std::move(atoms), std::move(worlds), std::move(val), std::move(sig));
}

}  // namespace inqml
