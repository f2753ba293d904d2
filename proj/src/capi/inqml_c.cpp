#include "inqml/inqml.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "inqml/bisim.hpp"
#include "inqml/charform.hpp"
#include "inqml/folog.hpp"
#include "inqml/formula.hpp"
#include "inqml/io.hpp"
#include "inqml/model.hpp"
#include "inqml/relational.hpp"
#include "inqml/semantics.hpp"
#include "inqml/stratify.hpp"
#include "json.hpp"

struct inqml_model {
  inqml::Model m;
};
struct inqml_formula {
  inqml::Formula f;
};
struct inqml_relmodel {
  inqml::RelationalModel r;
};

namespace {

using inqml::Limits;
using ojson = nlohmann::ordered_json;

thread_local std::string g_error;
thread_local Limits g_limits;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ArgumentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class F>
inqml_status guarded(F&& body) {
  try {
    body();
    g_error.clear();
    return INQML_OK;
  } catch (const inqml::ParseError& e) {
    g_error = e.what();
    return INQML_ERR_PARSE;
  } catch (const inqml::ValidationError& e) {
    g_error = e.what();
    return INQML_ERR_VALIDATION;
  } catch (const inqml::UnknownNameError& e) {
    g_error = e.what();
    return INQML_ERR_UNKNOWN_NAME;
  } catch (const inqml::ResourceLimitError& e) {
    g_error = e.what();
    return INQML_ERR_RESOURCE;
  } catch (const inqml::UnsupportedFragmentError& e) {
    g_error = e.what();
    return INQML_ERR_UNSUPPORTED;
  } catch (const inqml::PreconditionError& e) {
    g_error = e.what();
    return INQML_ERR_INVALID_ARGUMENT;
  } catch (const ArgumentError& e) {
    g_error = e.what();
    return INQML_ERR_INVALID_ARGUMENT;
  } catch (const std::invalid_argument& e) {
    g_error = e.what();
    return INQML_ERR_INVALID_ARGUMENT;
  } catch (const IoError& e) {
    g_error = e.what();
    return INQML_ERR_IO;
  } catch (const std::exception& e) {
    g_error = std::string("internal error: ") + e.what();
    return INQML_ERR_INTERNAL;
  } catch (...) {
    g_error = "internal error";
    return INQML_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw ArgumentError(what);
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string read_file(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(std::string("cannot read '") + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    const auto b = cur.find_first_not_of(" \t");
    const auto e = cur.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
    cur.clear();
  };
  for (char c : text) {
    if (c == ',') flush();
    else cur += c;
  }
  flush();
  return out;
}

std::size_t parse_count(const std::string& s, const char* what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    throw ArgumentError(std::string("invalid ") + what + " '" + s + "'");
  }
  if (pos != s.size()) throw ArgumentError(std::string("invalid ") + what + " '" + s + "'");
  return static_cast<std::size_t>(v);
}

inqml::Model generate(const std::string& spec, std::uint64_t seed) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() == 2 && parts[0] == "chain") return inqml::generate_chain(parse_count(parts[1], "size"));
  if (parts.size() == 2 && parts[0] == "cycle") return inqml::generate_cycle(parse_count(parts[1], "size"));
  if (parts.size() == 4 && parts[0] == "random") {
    double density = 0;
    try {
      density = std::stod(parts[3]);
    } catch (const std::exception&) {
      throw ArgumentError("invalid density '" + parts[3] + "'");
    }
    return inqml::generate_random({seed, parse_count(parts[1], "world count"), parse_count(parts[2], "atom count"),
                                   density});
  }
  throw ArgumentError("unknown generator '" + spec + "' (expected chain:N, cycle:N or random:W:A:D)");
}

ojson names_json(const inqml::WorldSet& s, const std::vector<std::string>& names) {
  ojson out = ojson::array();
  s.for_each([&](std::size_t i) { out.push_back(names[i]); });
  return out;
}

ojson play_json(const inqml::DistinguishingPlay& play, const inqml::Model& a, const inqml::Model& b) {
  ojson moves = ojson::array();
  for (const auto& mv : play.moves) {
    const inqml::Model& side = mv.side == inqml::Side::left ? a : b;
    ojson j;
    j["player"] = mv.by_challenger ? "I" : "II";
    j["side"] = mv.side == inqml::Side::left ? "left" : "right";
    if (mv.type == inqml::GameMove::Type::pick_state) j["state"] = names_json(mv.state, side.worlds());
    else j["world"] = side.worlds()[mv.world];
    moves.push_back(std::move(j));
  }
  ojson out;
  out["moves"] = std::move(moves);
  out["outcome"] = play.outcome;
  if (!play.atom.empty()) out["atom"] = play.atom;
  out["final"] = {a.worlds()[play.final_left], b.worlds()[play.final_right]};
  return out;
}

std::size_t world_of(const inqml::RelationalModel& r, const char* name) {
  require(name != nullptr, "world name required");
  return r.world_index(name);
}

ojson size_json(const inqml::RelationalModel& r) {
  ojson j;
  j["worlds"] = r.world_count();
  j["states"] = r.state_count();
  return j;
}

}  // namespace

extern "C" {

const char* inqml_version(void) { return "0.1.0"; }

const char* inqml_last_error(void) { return g_error.c_str(); }

const char* inqml_status_name(inqml_status status) {
  switch (status) {
    case INQML_OK: return "ok";
    case INQML_ERR_PARSE: return "parse error";
    case INQML_ERR_VALIDATION: return "validation error";
    case INQML_ERR_UNKNOWN_NAME: return "unknown name";
    case INQML_ERR_RESOURCE: return "resource limit";
    case INQML_ERR_UNSUPPORTED: return "unsupported fragment";
    case INQML_ERR_INVALID_ARGUMENT: return "invalid argument";
    case INQML_ERR_IO: return "i/o error";
    case INQML_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void inqml_string_free(char* s) { std::free(s); }

void inqml_set_budget(uint64_t budget) {
  g_limits = Limits{};
  if (budget == 0) return;
  const auto b = static_cast<std::size_t>(budget);
  g_limits.max_closure_states = b;
  g_limits.max_resolutions = b;
  g_limits.max_downsets = b;
  g_limits.max_unfold_elements = b;
  g_limits.max_game_nodes = b;
}

inqml_status inqml_model_from_json(const char* text, inqml_model** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new inqml_model{inqml::model_from_json(text)};
  });
}

inqml_status inqml_model_load(const char* path, inqml_model** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new inqml_model{inqml::model_from_json(read_file(path))};
  });
}

inqml_status inqml_model_generate(const char* spec, uint64_t seed, inqml_model** out) {
  return guarded([&] {
    require(spec && out, "null argument");
    *out = new inqml_model{generate(spec, seed)};
  });
}

inqml_status inqml_model_to_json(const inqml_model* m, char** out) {
  return guarded([&] {
    require(m && out, "null argument");
    *out = dup(inqml::model_to_json(m->m));
  });
}

size_t inqml_model_world_count(const inqml_model* m) { return m ? m->m.size() : 0; }

void inqml_model_free(inqml_model* m) { delete m; }

inqml_status inqml_formula_parse(const char* text, inqml_formula** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new inqml_formula{inqml::parse_formula(text)};
  });
}

inqml_status inqml_formula_to_string(const inqml_formula* f, char** out) {
  return guarded([&] {
    require(f && out, "null argument");
    *out = dup(inqml::to_string(f->f));
  });
}

size_t inqml_formula_modal_depth(const inqml_formula* f) { return f ? inqml::modal_depth(f->f) : 0; }

int inqml_formula_is_declarative(const inqml_formula* f) { return f && inqml::is_declarative(f->f) ? 1 : 0; }

void inqml_formula_free(inqml_formula* f) { delete f; }

inqml_status inqml_relmodel_from_json(const char* text, inqml_relmodel** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new inqml_relmodel{inqml::validate_relational(inqml::raw_relational_from_json(text), g_limits)};
  });
}

inqml_status inqml_relmodel_load(const char* path, inqml_relmodel** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new inqml_relmodel{inqml::validate_relational(inqml::raw_relational_from_json(read_file(path)), g_limits)};
  });
}

inqml_status inqml_encode(const inqml_model* m, const char* kind, inqml_relmodel** out) {
  return guarded([&] {
    require(m && kind && out, "null argument");
    *out = new inqml_relmodel{inqml::encode(m->m, inqml::parse_encoding_kind(kind), g_limits)};
  });
}

inqml_status inqml_relmodel_to_json(const inqml_relmodel* r, char** out) {
  return guarded([&] {
    require(r && out, "null argument");
    *out = dup(inqml::relational_to_json(r->r));
  });
}

void inqml_relmodel_free(inqml_relmodel* r) { delete r; }

inqml_status inqml_check(const inqml_model* m, const inqml_formula* f, const char* state, const char* world,
                         int* verdict, char** json) {
  return guarded([&] {
    require(m && f && verdict && json, "null argument");
    require((state != nullptr) != (world != nullptr), "exactly one of state and world is required");
    ojson out;
    bool v = false;
    if (state) {
      inqml::EvalOptions opts;
      opts.limits = g_limits;
      v = inqml::supports(m->m, m->m.state(split_names(state)), f->f, opts);
      out["supports"] = v;
    } else {
      v = inqml::true_at(m->m, m->m.world_index(world), f->f);
      out["true_at"] = v;
    }
    *verdict = v ? 1 : 0;
    *json = dup(out.dump());
  });
}

inqml_status inqml_bisim(const inqml_model* a, const char* a_world, const char* a_state, const inqml_model* b,
                         const char* b_world, const char* b_state, long n, int* verdict, char** json) {
  return guarded([&] {
    require(a && b && verdict && json, "null argument");
    require((a_world != nullptr) != (a_state != nullptr), "exactly one of world and state per side");
    require((b_world != nullptr) != (b_state != nullptr), "exactly one of world and state per side");
    require((a_world != nullptr) == (b_world != nullptr), "both points must be worlds or both states");
    const std::size_t level = n < 0 ? inqml::kOmega : static_cast<std::size_t>(n);
    inqml::BisimOptions opts;
    opts.limits = g_limits;
    inqml::Bisimulation bis(a->m, b->m, opts);
    ojson out;
    bool v = false;
    if (a_world) {
      const std::size_t u = a->m.world_index(a_world), w = b->m.world_index(b_world);
      v = bis.worlds(u, w, level);
      out["bisimilar"] = v;
      if (n < 0) out["n"] = "omega";
      else out["n"] = n;
      if (!v) {
        const std::size_t agree = bis.agreement_level(u, w);
        const std::size_t depth = agree == inqml::kOmega - 1 ? 0 : agree + 1;
        out["distinguished_at"] = depth;
        if (auto play = inqml::distinguishing_play(bis, u, w, depth)) out["play"] = play_json(*play, a->m, b->m);
      }
    } else {
      v = bis.states(a->m.state(split_names(a_state)), b->m.state(split_names(b_state)), level);
      out["bisimilar"] = v;
      if (n < 0) out["n"] = "omega";
      else out["n"] = n;
    }
    *verdict = v ? 1 : 0;
    *json = dup(out.dump());
  });
}

inqml_status inqml_charform(const inqml_model* m, const char* world, const char* state, unsigned n, int literal,
                            char** json) {
  return guarded([&] {
    require(m && json, "null argument");
    require((world != nullptr) != (state != nullptr), "exactly one of state and world is required");
    inqml::CharformOptions opts;
    opts.pi = literal ? inqml::PiEnumeration::literal : inqml::PiEnumeration::quotient;
    opts.limits = g_limits;
    const inqml::Formula f = world ? inqml::chi_world(m->m, m->m.world_index(world), n, opts)
                                   : inqml::chi_state(m->m, m->m.state(split_names(state)), n, opts);
    ojson out;
    out["n"] = n;
    out["pi"] = literal ? "literal" : "quotient";
    out["modal_depth"] = inqml::modal_depth(f);
    out["formula"] = inqml::to_string(f);
    *json = dup(out.dump());
  });
}

inqml_status inqml_translate(const inqml_formula* f, const char* mode, char** json) {
  return guarded([&] {
    require(f && mode && json, "null argument");
    const std::string md = mode;
    require(md == "direct" || md == "resolution", "mode must be direct or resolution");
    const inqml::FOFormula fo =
        md == "direct" ? inqml::translate_direct(f->f) : inqml::translate_resolution(f->f, g_limits);
    ojson out;
    out["mode"] = md;
    out["free"] = inqml::kTranslationVar.name;
    out["quantifier_rank"] = inqml::quantifier_rank(fo);
    out["fo"] = inqml::to_string(fo);
    *json = dup(out.dump());
  });
}

inqml_status inqml_validate(const char* text, int* verdict, char** json) {
  return guarded([&] {
    require(text && verdict && json, "null argument");
    const auto doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw inqml::ValidationError("invalid JSON");
    ojson out;
    bool valid = false;
    if (doc.is_object() && doc.contains("S")) {
      out["kind"] = "relational";
      const inqml::RawRelationalModel raw = inqml::raw_relational_from_json(text);
      try {
        const inqml::RelationalModel r = inqml::build_relational(raw);
        const auto violations = inqml::check_relational(r, g_limits);
        valid = violations.empty();
        out["valid"] = valid;
        if (valid) {
          const auto c = inqml::classify(r, g_limits);
          out["full"] = c.full;
          out["locally_full"] = c.locally_full;
        } else {
          ojson vs = ojson::array();
          for (const auto& v : violations) {
            ojson j;
            j["axiom"] = inqml::to_string(v.axiom);
            if (v.axiom == inqml::Violation::Axiom::downward_closure) {
              j["world"] = r.worlds()[v.world];
              j["state"] = names_json(r.state(v.state), r.worlds());
              j["subset"] = names_json(v.subset, r.worlds());
            } else if (v.axiom == inqml::Violation::Axiom::non_emptiness) {
              j["world"] = r.worlds()[v.world];
            } else if (v.axiom == inqml::Violation::Axiom::extensionality) {
              j["state"] = names_json(r.state(v.state), r.worlds());
            }
            j["message"] = v.message;
            vs.push_back(std::move(j));
          }
          out["violations"] = std::move(vs);
        }
      } catch (const inqml::Error& e) {
        out["valid"] = false;
        out["error"] = e.what();
      }
    } else {
      out["kind"] = "model";
      const inqml::RawModel raw = inqml::raw_model_from_json(text);
      try {
        const inqml::Model m = inqml::validate(raw);
        valid = true;
        out["valid"] = true;
        out["worlds"] = m.size();
        out["atoms"] = m.atoms().size();
      } catch (const inqml::Error& e) {
        out["valid"] = false;
        out["error"] = e.what();
      }
    }
    *verdict = valid ? 1 : 0;
    *json = dup(out.dump());
  });
}

inqml_status inqml_unfold(const inqml_relmodel* r, const char* world, unsigned ell, char** json) {
  return guarded([&] {
    require(r && json, "null argument");
    const std::size_t w = world_of(r->r, world);
    const inqml::PointedRelational u = inqml::unfold(r->r, w, ell, g_limits);
    const inqml::Strata strata = inqml::stratify_to_depth(u.model, u.point, ell);
    const inqml::PointedRelational trunc = inqml::neighborhood(u.model, u.point, ell);
    const inqml::Model before = inqml::decode(r->r);
    const inqml::Model after = inqml::decode(u.model);
    inqml::BisimOptions opts;
    opts.limits = g_limits;
    ojson out;
    out["point"] = u.model.worlds()[u.point];
    out["ell"] = ell;
    out["stratified_to_depth"] = strata.stratified && inqml::verify_strata(trunc.model, strata);
    out["bisimilar"] = inqml::world_bisim(before, w, after, u.point, inqml::kOmega, opts);
    out["strata"] = ojson::parse(inqml::strata_to_json(trunc.model, strata));
    out["model"] = ojson::parse(inqml::relational_to_json(u.model));
    *json = dup(out.dump());
  });
}

inqml_status inqml_upgrade_demo(const inqml_model* m, const char* world, const char* kind, unsigned q, int* verdict,
                                char** json) {
  return guarded([&] {
    require(m && world && kind && verdict && json, "null argument");
    require(q >= 1 && q <= 3, "q must be between 1 and 3");
    const std::size_t w = m->m.world_index(world);
    const std::size_t ell = std::size_t{1} << q;
    const inqml::RelationalModel r = inqml::encode(m->m, inqml::parse_encoding_kind(kind), g_limits);
    const inqml::PointedRelational u = inqml::unfold(r, w, ell, g_limits);
    const inqml::Upgrade up = inqml::build_upgrade(u.model, u.point, q, g_limits);
    inqml::GameStats stats;
    const inqml::GameOutcome ef = inqml::fo_equiv_q(up.m0.model, {{inqml::Sort::world, up.m0.point}}, up.m1.model,
                                                    {{inqml::Sort::world, up.m1.point}}, q, g_limits, &stats);
    inqml::BisimOptions opts;
    opts.limits = g_limits;
    const inqml::Model du = inqml::decode(u.model);
    const inqml::Model dt = inqml::decode(up.truncation.model);
    const inqml::Model d0 = inqml::decode(up.m0.model);
    const inqml::Model d1 = inqml::decode(up.m1.model);
    const bool unfold_ok = inqml::world_bisim(m->m, w, du, u.point, inqml::kOmega, opts);
    const bool m0_ok = inqml::world_bisim(d0, up.m0.point, dt, up.truncation.point, inqml::kOmega, opts);
    const bool m1_ok = inqml::world_bisim(d1, up.m1.point, du, u.point, inqml::kOmega, opts);
    const bool cutoff = inqml::check_cutoff(u.model, u.point, u.model, u.point, ell, ell / 2).holds();

    ojson out;
    out["q"] = q;
    out["ell"] = ell;
    out["kind"] = kind;
    ojson uj = size_json(u.model);
    uj["bisimilar_to_input"] = unfold_ok;
    uj["stratified_to_depth"] = inqml::is_stratified_to_depth(u.model, u.point, ell);
    out["unfolded"] = std::move(uj);
    out["truncation"] = size_json(up.truncation.model);
    ojson j0 = size_json(up.m0.model);
    j0["bisimilar_to_truncation"] = m0_ok;
    out["m0"] = std::move(j0);
    ojson j1 = size_json(up.m1.model);
    j1["bisimilar_to_unfolded"] = m1_ok;
    out["m1"] = std::move(j1);
    out["ef"] = inqml::to_string(ef);
    out["game_nodes"] = stats.nodes;
    out["cutoff"] = cutoff;
    *verdict = ef == inqml::GameOutcome::equivalent && unfold_ok && m0_ok && m1_ok && cutoff ? 1 : 0;
    *json = dup(out.dump());
  });
}

inqml_status inqml_wf_demo(unsigned n, int* verdict, char** json) {
  return guarded([&] {
    require(verdict && json, "null argument");
    const inqml::Model chain = inqml::generate_chain(n + 2);
    const inqml::Model cycle = inqml::generate_cycle(1);
    inqml::BisimOptions opts;
    opts.limits = g_limits;
    const bool nb = inqml::world_bisim(chain, 0, cycle, 0, n, opts);
    const inqml::FOFormula wf = inqml::wf_formula(false);
    const bool wf_chain = inqml::fo_eval(inqml::encode(chain, inqml::EncodingKind::full, g_limits), wf,
                                         {{inqml::kWfWorldVar, 0}});
    const bool wf_cycle = inqml::fo_eval(inqml::encode(cycle, inqml::EncodingKind::full, g_limits), wf,
                                         {{inqml::kWfWorldVar, 0}});
    ojson out;
    out["n_bisimilar"] = nb;
    out["wf_chain"] = wf_chain;
    out["wf_cycle"] = wf_cycle;
    *verdict = nb && wf_chain != wf_cycle ? 1 : 0;
    *json = dup(out.dump());
  });
}

}  // extern "C"
