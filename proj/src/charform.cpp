#include "inqml/charform.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "inqml/semantics.hpp"

namespace inqml {

void for_each_downset(const std::vector<InfoState>& family, bool proper, std::size_t limit,
                      const std::function<void(const std::vector<bool>&)>& f) {
  const std::size_t n = family.size();
  if (n == 0) return;
  std::map<InfoState, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(family[i], i);
  std::vector<std::vector<std::size_t>> below(n);
  for (std::size_t i = 0; i < n; ++i) {
    family[i].for_each([&](std::size_t x) {
      InfoState t = family[i];
      t.reset(x);
      auto it = index.find(t);
      if (it == index.end()) throw std::logic_error("family is not downward closed");
      below[i].push_back(it->second);
    });
  }
  std::vector<bool> in(n, false);
  std::size_t produced = 0;
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t included) {
    if (i == n) {
      if (included == 0 || (proper && included == n)) return;
      if (++produced > limit)
        throw ResourceLimitError("downset enumeration exceeds limit of " + std::to_string(limit));
      f(in);
      return;
    }
    go(i + 1, included);
    if (std::all_of(below[i].begin(), below[i].end(), [&](std::size_t j) { return static_cast<bool>(in[j]); })) {
      in[i] = true;
      go(i + 1, included + 1);
      in[i] = false;
    }
  };
  go(0, 0);
}

CharacteristicFormulas::CharacteristicFormulas(const Model& model, CharformOptions options)
    : model_(model),
      options_(std::move(options)),
      atoms_(options_.atoms ? *options_.atoms : model.atoms()),
      self_(model, model) {}

std::size_t CharacteristicFormulas::rep(std::size_t w, std::size_t n) {
  return self_.relation(n)[w].first();
}

InfoState CharacteristicFormulas::type_of(const InfoState& s, std::size_t n) {
  InfoState t(model_.size());
  s.for_each([&](std::size_t x) { t.set(rep(x, n)); });
  return t;
}

std::vector<InfoState> CharacteristicFormulas::realized_types(const InqState& pi, std::size_t n) {
  std::set<InfoState> out;
  out.insert(InfoState(model_.size()));
  for (const InfoState& s : pi.maximal()) {
    const InfoState t = type_of(s, n);
    if (t.count() >= 63 || (std::size_t{1} << t.count()) > options_.limits.max_closure_states)
      throw ResourceLimitError("type closure exceeds limit");
    for_each_subset(t, [&](const InfoState& u) { out.insert(u); });
  }
  return {out.begin(), out.end()};
}

Formula CharacteristicFormulas::type_formula(const InfoState& s, std::size_t n) {
  std::vector<Formula> parts;
  s.for_each([&](std::size_t x) { push_unique(parts, world(x, n)); });
  return Formula::cdisj_all(parts);
}

Formula CharacteristicFormulas::family_formula(const std::vector<InfoState>& family, std::size_t n) {
  std::vector<Formula> parts;
  for (const InfoState& s : family) push_unique(parts, type_formula(s, n));
  return Formula::idisj_all(parts);
}

Formula CharacteristicFormulas::world(std::size_t w, std::size_t n) {
  if (w >= model_.size()) throw UnknownNameError("unknown world index " + std::to_string(w));
  const std::size_t key_world = options_.pi == PiEnumeration::quotient ? rep(w, n) : w;
  const auto key = std::make_pair(n, key_world);
  if (auto it = world_cache_.find(key); it != world_cache_.end()) return it->second;
  Formula f = build_world(key_world, n);
  world_cache_.emplace(key, f);
  return f;
}

Formula CharacteristicFormulas::build_world(std::size_t w, std::size_t n) {
  if (n == 0) {
    std::vector<Formula> pos, neg;
    for (const auto& a : atoms_) {
      if (model_.atom_extension(a).test(w)) pos.push_back(Formula::atom(a));
      else neg.push_back(Formula::neg(Formula::atom(a)));
    }
    pos.insert(pos.end(), neg.begin(), neg.end());
    return Formula::conj_all(pos);
  }
  const std::size_t k = n - 1;
  const InqState& sig = model_.sigma(w);
  std::vector<Formula> parts{world(w, k)};
  if (options_.pi == PiEnumeration::quotient) {
    const std::vector<InfoState> types = realized_types(sig, k);
    parts.push_back(Formula::boxplus(family_formula(types, k)));
    for_each_downset(types, true, options_.limits.max_downsets, [&](const std::vector<bool>& in) {
      std::vector<InfoState> d;
      for (std::size_t i = 0; i < types.size(); ++i)
        if (in[i]) d.push_back(types[i]);
      push_unique(parts, Formula::neg(Formula::boxplus(family_formula(d, k))));
    });
  } else {
    const std::vector<InfoState> closure = sig.enumerate(options_.limits);
    parts.push_back(Formula::boxplus(family_formula(closure, k)));
    for_each_downset(closure, false, options_.limits.max_downsets, [&](const std::vector<bool>& in) {
      std::vector<InfoState> d;
      for (std::size_t i = 0; i < closure.size(); ++i)
        if (in[i]) d.push_back(closure[i]);
      if (self_.inqstates(InqState(model_.size(), d), sig, k)) return;
      push_unique(parts, Formula::neg(Formula::boxplus(family_formula(d, k))));
    });
  }
  return Formula::conj_all(parts);
}

Formula CharacteristicFormulas::state(const InfoState& s, std::size_t n) {
  if (options_.pi == PiEnumeration::quotient) return type_formula(type_of(s, n), n);
  return type_formula(s, n);
}

Formula CharacteristicFormulas::inqstate(const InqState& pi, std::size_t n) {
  if (options_.pi == PiEnumeration::quotient) return family_formula(realized_types(pi, n), n);
  return family_formula(pi.enumerate(options_.limits), n);
}

Formula chi_world(const Model& m, std::size_t w, std::size_t n, const CharformOptions& options) {
  return CharacteristicFormulas(m, options).world(w, n);
}

Formula chi_state(const Model& m, const InfoState& s, std::size_t n, const CharformOptions& options) {
  return CharacteristicFormulas(m, options).state(s, n);
}

Formula chi_inqstate(const Model& m, const InqState& pi, std::size_t n, const CharformOptions& options) {
  return CharacteristicFormulas(m, options).inqstate(pi, n);
}

EfVerdict verify_ef(const Model& a, const InfoState& s, const Model& b, const InfoState& t,
                    std::size_t n, std::size_t samples, std::uint64_t seed) {
  std::vector<std::string> atoms = a.atoms();
  for (const auto& x : b.atoms())
    if (std::find(atoms.begin(), atoms.end(), x) == atoms.end()) atoms.push_back(x);
  CharformOptions opt;
  opt.atoms = atoms;
  Bisimulation bis(a, b);
  Evaluator ea(a), eb(b);
  CharacteristicFormulas ca(a, opt), cb(b, opt);

  if (!bis.states(s, t, n)) {
    const auto rows = bis.relation(n);
    // Does every world of t have a partner in s?
    bool t_covered = true;
    t.for_each([&](std::size_t y) {
      bool hit = false;
      s.for_each([&](std::size_t x) { hit = hit || rows[x].test(y); });
      t_covered = t_covered && hit;
    });
    EfVerdict v;
    if (!t_covered) {
      v.witness = ca.state(s, n);
      v.supported_by = Side::left;
      if (!ea.supports(s, *v.witness) || eb.supports(t, *v.witness))
        throw std::logic_error("characteristic formula fails to distinguish");
    } else {
      v.witness = cb.state(t, n);
      v.supported_by = Side::right;
      if (!eb.supports(t, *v.witness) || ea.supports(s, *v.witness))
        throw std::logic_error("characteristic formula fails to distinguish");
    }
    return v;
  }

  auto agree = [&](const Formula& f) { return ea.supports(s, f) == eb.supports(t, f); };
  if (!agree(ca.state(s, n)) || !agree(cb.state(t, n)))
    throw std::logic_error("n-bisimilar states disagree on a characteristic formula");
  std::mt19937_64 rng(seed);
  RandomFormulaOptions ro;
  ro.max_modal_depth = n;
  for (std::size_t i = 0; i < samples; ++i) {
    const Formula f = random_formula(rng, atoms, ro);
    if (!agree(f))
      throw std::logic_error("n-bisimilar states disagree on " + to_string(f));
  }
  return EfVerdict{true, std::nullopt, Side::left};
}

}  // namespace inqml
