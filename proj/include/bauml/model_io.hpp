#ifndef BAUML_MODEL_IO_HPP
#define BAUML_MODEL_IO_HPP

#include <string>

#include "bauml/model.hpp"

namespace bauml {

// Parses the textual model format (see docs/bauml.ebnf) and validates the
// result. Throws SyntaxError / ValidationError.* diagnostics.
BaumlModel parse_model(const std::string& text);
BaumlModel parse_model_file(const std::string& path);

// Canonical text form; parse_model(serialize_model(m)) is structurally
// equal to m.
std::string serialize_model(const BaumlModel& m);

}  // namespace bauml

#endif
