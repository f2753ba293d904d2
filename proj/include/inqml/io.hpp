#ifndef INQML_IO_HPP
#define INQML_IO_HPP

#include <string>

#include "inqml/model.hpp"
#include "inqml/relational.hpp"
#include "inqml/stratify.hpp"

namespace inqml {

// Model file: {"atoms":[…],"worlds":[…],"valuation":{world:[atoms]},"sigma_max":{world:[[worlds]…]}}
RawModel raw_model_from_json(const std::string& text);
Model model_from_json(const std::string& text);
// indent < 0 gives a single line.
std::string model_to_json(const Model& m, int indent = -1);

// Relational file: {"atoms":[…],"worlds":[…],"P":{atom:[worlds]},"S":[[worlds]…],"E":{world:[indices]}}
RawRelationalModel raw_relational_from_json(const std::string& text);
std::string relational_to_json(const RelationalModel& r, int indent = -1);

// [{"level":i,"worlds":[…],"states":[[…]…]}…]; ∅ is left out.
std::string strata_to_json(const RelationalModel& r, const Strata& s, int indent = -1);

}  // namespace inqml

#endif  // INQML_IO_HPP
