#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "flowc/document.hpp"
#include "flowc/structure.hpp"

namespace flowc {

/// Python 3 source, 4-space indentation, LF line endings, one trailing newline.
std::string emit_python(const Program& program);

/// Graphviz digraph: ovals for start/end, boxes for blocks, diamonds for branches.
std::string emit_dot(const FlowchartDoc& doc);

/// Compact JSON dump of the tree (schema in docs/ast-json.md).
std::string emit_ast_json(const Program& program);

class BadProgramJson : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inverse of emit_ast_json. Throws BadProgramJson.
Program program_from_json(std::string_view text);

}  // namespace flowc
