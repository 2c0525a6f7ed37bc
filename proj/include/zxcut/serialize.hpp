#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "zxcut/diagram.hpp"
#include "zxcut/rewrite.hpp"

namespace zxcut {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

nlohmann::json scalar_to_json(const ExactScalar& s);
ExactScalar scalar_from_json(const nlohmann::json& j);

// Vertex ids are kept as they are, gaps included.
nlohmann::json diagram_to_json(const Diagram& d);
Diagram diagram_from_json(const nlohmann::json& j);

std::string dump_diagram(const Diagram& d);
Diagram parse_diagram(const std::string& text);

nlohmann::json trace_to_json(const RewriteTrace& trace);

// zxlive/pyzx style picture; Hadamard edges use the "hadamard edge" style.
std::string to_tikz(const Diagram& d);

}  // namespace zxcut
