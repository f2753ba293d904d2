#include "inqml/io.hpp"

#include <map>

#include "json.hpp"

namespace inqml {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
}

template <class T>
T get(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string("malformed field '") + what + "'");
  }
}

const json& object_field(const json& doc, const char* key) {
  static const json empty = json::object();
  auto it = doc.find(key);
  if (it == doc.end()) return empty;
  if (!it->is_object()) throw ValidationError(std::string("field '") + key + "' must be an object");
  return *it;
}

ordered_json names_of(const WorldSet& s, const std::vector<std::string>& names) {
  ordered_json out = ordered_json::array();
  s.for_each([&](std::size_t i) { out.push_back(names[i]); });
  return out;
}

}  // namespace

RawModel raw_model_from_json(const std::string& text) {
  const json doc = parse(text);
  if (!doc.is_object()) throw ValidationError("model file must be a JSON object");
  RawModel raw;
  if (!doc.contains("worlds")) throw ValidationError("model file lacks 'worlds'");
  raw.worlds = get<std::vector<std::string>>(doc["worlds"], "worlds");
  if (doc.contains("atoms")) raw.atoms = get<std::vector<std::string>>(doc["atoms"], "atoms");
  for (const auto& [w, atoms] : object_field(doc, "valuation").items())
    raw.valuation.emplace_back(w, get<std::vector<std::string>>(atoms, "valuation"));
  for (const auto& [w, states] : object_field(doc, "sigma_max").items())
    raw.sigma.emplace_back(w, get<std::vector<std::vector<std::string>>>(states, "sigma_max"));
  return raw;
}

Model model_from_json(const std::string& text) { return validate(raw_model_from_json(text)); }

std::string model_to_json(const Model& m, int indent) {
  ordered_json doc;
  doc["atoms"] = m.atoms();
  doc["worlds"] = m.worlds();
  ordered_json val = ordered_json::object();
  for (std::size_t w = 0; w < m.size(); ++w) {
    ordered_json atoms = ordered_json::array();
    for (std::size_t a = 0; a < m.atoms().size(); ++a)
      if (m.valuation()[a].test(w)) atoms.push_back(m.atoms()[a]);
    val[m.worlds()[w]] = std::move(atoms);
  }
  doc["valuation"] = std::move(val);
  ordered_json sig = ordered_json::object();
  for (std::size_t w = 0; w < m.size(); ++w) {
    ordered_json states = ordered_json::array();
    for (const auto& s : m.sigma(w).maximal()) states.push_back(names_of(s, m.worlds()));
    sig[m.worlds()[w]] = std::move(states);
  }
  doc["sigma_max"] = std::move(sig);
  return doc.dump(indent);
}

RawRelationalModel raw_relational_from_json(const std::string& text) {
  const json doc = parse(text);
  if (!doc.is_object()) throw ValidationError("relational model file must be a JSON object");
  RawRelationalModel raw;
  if (!doc.contains("worlds")) throw ValidationError("relational model file lacks 'worlds'");
  if (!doc.contains("S")) throw ValidationError("relational model file lacks 'S'");
  raw.worlds = get<std::vector<std::string>>(doc["worlds"], "worlds");
  if (doc.contains("atoms")) raw.atoms = get<std::vector<std::string>>(doc["atoms"], "atoms");
  for (const auto& [a, ws] : object_field(doc, "P").items())
    raw.predicates.emplace_back(a, get<std::vector<std::string>>(ws, "P"));
  raw.states = get<std::vector<std::vector<std::string>>>(doc["S"], "S");
  for (const auto& [w, idx] : object_field(doc, "E").items()) {
    // nlohmann would wrap negative numbers into size_t silently.
    if (!idx.is_array()) throw ValidationError("malformed field 'E'");
    for (const auto& i : idx)
      if (!i.is_number_unsigned()) throw ValidationError("state indices in 'E' must be non-negative integers");
    raw.e.emplace_back(w, get<std::vector<std::size_t>>(idx, "E"));
  }
  return raw;
}

std::string relational_to_json(const RelationalModel& r, int indent) {
  ordered_json doc;
  doc["atoms"] = r.atoms();
  doc["worlds"] = r.worlds();
  ordered_json p = ordered_json::object();
  for (std::size_t a = 0; a < r.atoms().size(); ++a) p[r.atoms()[a]] = names_of(r.predicates()[a], r.worlds());
  doc["P"] = std::move(p);
  ordered_json s = ordered_json::array();
  for (const auto& st : r.states()) s.push_back(names_of(st, r.worlds()));
  doc["S"] = std::move(s);
  ordered_json e = ordered_json::object();
  for (std::size_t w = 0; w < r.world_count(); ++w) e[r.worlds()[w]] = r.e(w).members();
  doc["E"] = std::move(e);
  return doc.dump(indent);
}

std::string strata_to_json(const RelationalModel& r, const Strata& s, int indent) {
  std::map<long, std::pair<ordered_json, ordered_json>> levels;
  for (std::size_t w = 0; w < r.world_count(); ++w) {
    auto& [ws, ss] = levels[s.world_level.at(w)];
    if (ws.is_null()) ws = ordered_json::array();
    ws.push_back(r.worlds()[w]);
  }
  for (std::size_t i = 0; i < r.state_count(); ++i) {
    if (s.state_level.at(i) < 0) continue;
    auto& [ws, ss] = levels[s.state_level[i]];
    if (ss.is_null()) ss = ordered_json::array();
    ss.push_back(names_of(r.state(i), r.worlds()));
  }
  ordered_json out = ordered_json::array();
  for (auto& [level, pr] : levels) {
    ordered_json entry;
    entry["level"] = level;
    entry["worlds"] = pr.first.is_null() ? ordered_json::array() : pr.first;
    entry["states"] = pr.second.is_null() ? ordered_json::array() : pr.second;
    out.push_back(std::move(entry));
  }
  return out.dump(indent);
}

}  // namespace inqml
