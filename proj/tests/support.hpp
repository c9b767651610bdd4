#pragma once

#include <initializer_list>
#include <string>

#include "flowc/document.hpp"

namespace flowc::test {

struct NodeSpec {
  const char* id;
  const char* kind;
  const char* text = "";
};

struct EdgeSpec {
  const char* from;
  const char* to;
  const char* label = "";
};

/// In-memory document; kinds and labels use their file spellings.
FlowchartDoc build_doc(std::initializer_list<NodeSpec> nodes, std::initializer_list<EdgeSpec> edges);

std::string read_file(const std::string& path);
std::string example_path(const std::string& name);
FlowchartDoc load_example(const std::string& name);

}  // namespace flowc::test
