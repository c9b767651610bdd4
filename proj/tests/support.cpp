#include "support.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace flowc::test {

namespace {

NodeKind kind_from(std::string_view s) {
  if (s == "start") return NodeKind::Start;
  if (s == "end") return NodeKind::End;
  if (s == "block") return NodeKind::Block;
  if (s == "branch") return NodeKind::Branch;
  throw std::invalid_argument("bad kind in test document");
}

EdgeLabel label_from(std::string_view s) {
  if (s == "true") return EdgeLabel::True;
  if (s == "false") return EdgeLabel::False;
  return EdgeLabel::None;
}

}  // namespace

FlowchartDoc build_doc(std::initializer_list<NodeSpec> nodes, std::initializer_list<EdgeSpec> edges) {
  std::vector<Node> n;
  for (const auto& spec : nodes) n.push_back(Node{NodeId(spec.id), kind_from(spec.kind), spec.text});
  std::vector<Edge> e;
  for (const auto& spec : edges) e.push_back(Edge{NodeId(spec.from), NodeId(spec.to), label_from(spec.label)});
  return FlowchartDoc(std::move(n), std::move(e));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::string example_path(const std::string& name) { return std::string(FLOWC_EXAMPLES_DIR) + "/" + name; }

FlowchartDoc load_example(const std::string& name) { return parse_document(read_file(example_path(name))); }

}  // namespace flowc::test
