#include "flowc/document.hpp"

#include <algorithm>
#include <cctype>
#include <iterator>
#include <set>
#include <sstream>

#include "json.hpp"

namespace flowc {

namespace {

std::string format_location(const std::string& message, std::size_t line, std::size_t column) {
  if (line == 0) return message;
  std::ostringstream out;
  out << "line " << line << ", column " << column << ": " << message;
  return out.str();
}

}  // namespace

bool NodeId::is_valid(std::string_view text) {
  if (text.empty()) return false;
  auto head = static_cast<unsigned char>(text.front());
  if (!(std::isalpha(head) || head == '_')) return false;
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (!(std::isalnum(c) || c == '_')) return false;
  }
  return true;
}

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Start: return "start";
    case NodeKind::End: return "end";
    case NodeKind::Block: return "block";
    case NodeKind::Branch: return "branch";
  }
  return "block";
}

std::string_view to_string(EdgeLabel label) {
  switch (label) {
    case EdgeLabel::None: return "none";
    case EdgeLabel::True: return "true";
    case EdgeLabel::False: return "false";
  }
  return "none";
}

MalformedDocument::MalformedDocument(const std::string& message, std::size_t line,
                                     std::size_t column)
    : std::runtime_error(format_location(message, line, column)),
      detail_(message),
      line_(line),
      column_(column) {}

FlowchartDoc::FlowchartDoc(std::vector<Node> nodes, std::vector<Edge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  by_id_.reserve(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& node = nodes_[i];
    if (!NodeId::is_valid(node.id.str())) {
      throw MalformedDocument("invalid node id \"" + node.id.str() + "\"");
    }
    if (!by_id_.emplace(node.id.str(), i).second) {
      throw MalformedDocument("duplicate node id \"" + node.id.str() + "\"");
    }
    if ((node.kind == NodeKind::Start || node.kind == NodeKind::End) && !node.text.empty()) {
      throw MalformedDocument("node \"" + node.id.str() + "\" of kind " +
                              std::string(to_string(node.kind)) + " must not carry text");
    }
  }
  out_.resize(nodes_.size());
  in_.resize(nodes_.size());
  edge_ends_.reserve(edges_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    std::size_t from = index_of(edge.from);
    std::size_t to = index_of(edge.to);
    if (from == npos) throw MalformedDocument("edge references unknown node \"" + edge.from.str() + "\"");
    if (to == npos) throw MalformedDocument("edge references unknown node \"" + edge.to.str() + "\"");
    if (edge.label != EdgeLabel::None && nodes_[from].kind != NodeKind::Branch) {
      throw MalformedDocument("edge from non-branch node \"" + edge.from.str() + "\" carries a label");
    }
    out_[from].push_back(e);
    in_[to].push_back(e);
    edge_ends_.emplace_back(from, to);
  }
}

std::size_t FlowchartDoc::index_of(const NodeId& id) const { return index_of(id.str()); }

std::size_t FlowchartDoc::index_of(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  return it == by_id_.end() ? npos : it->second;
}

const Node* FlowchartDoc::find(const NodeId& id) const {
  std::size_t i = index_of(id);
  return i == npos ? nullptr : &nodes_[i];
}

FlowchartDoc FlowchartDoc::with_edge(Edge edge) const {
  std::vector<Edge> edges = edges_;
  edges.push_back(std::move(edge));
  return FlowchartDoc(nodes_, std::move(edges));
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

using json = nlohmann::json;

// Forward iterator over the input that publishes how far the JSON lexer has
// read, so SAX events can be mapped back to a line and column.
class TrackingIterator {
 public:
  using iterator_category = std::forward_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  TrackingIterator() = default;
  TrackingIterator(const char* at, std::size_t* furthest, const char* base)
      : at_(at), furthest_(furthest), base_(base) {}

  reference operator*() const { return *at_; }
  TrackingIterator& operator++() {
    ++at_;
    if (furthest_ != nullptr) *furthest_ = static_cast<std::size_t>(at_ - base_);
    return *this;
  }
  TrackingIterator operator++(int) {
    TrackingIterator copy = *this;
    ++*this;
    return copy;
  }
  friend bool operator==(const TrackingIterator& a, const TrackingIterator& b) { return a.at_ == b.at_; }
  friend bool operator!=(const TrackingIterator& a, const TrackingIterator& b) { return a.at_ != b.at_; }

 private:
  const char* at_ = nullptr;
  std::size_t* furthest_ = nullptr;
  const char* base_ = nullptr;
};

struct Located {
  std::string value;
  std::size_t offset = 0;
  bool present = false;
};

struct RawNode {
  Located id, kind, text;
  std::size_t offset = 0;
};

struct RawEdge {
  Located from, to, label;
  std::size_t offset = 0;
};

// Strict schema reader. Any deviation aborts with an offset-tagged message.
class DocumentReader {
 public:
  DocumentReader(const std::size_t* offset) : offset_(offset) {}

  bool null() { return scalar("null"); }
  bool boolean(bool) { return scalar("boolean"); }
  bool number_integer(json::number_integer_t) { return scalar("number"); }
  bool number_unsigned(json::number_unsigned_t) { return scalar("number"); }
  bool number_float(json::number_float_t, const std::string&) { return scalar("number"); }
  bool binary(json::binary_t&) { return scalar("binary"); }

  bool string(std::string& value) {
    if (skip_depth_ > 0) return true;
    if (state_ == State::NodeObject || state_ == State::EdgeObject) {
      if (pending_ == nullptr) return fail("unexpected string");
      *pending_ = Located{value, *offset_, true};
      pending_ = nullptr;
      return true;
    }
    if (state_ == State::TopObject && skipping_meta_value_) {
      skipping_meta_value_ = false;
      return true;
    }
    return fail("unexpected string value");
  }

  bool start_object(std::size_t) {
    if (skip_depth_ > 0) {
      ++skip_depth_;
      return true;
    }
    switch (state_) {
      case State::Init:
        state_ = State::TopObject;
        return true;
      case State::TopObject:
        if (skipping_meta_value_) {
          skipping_meta_value_ = false;
          skip_depth_ = 1;
          return true;
        }
        return fail("unexpected object");
      case State::NodesArray:
        nodes.emplace_back();
        nodes.back().offset = *offset_;
        state_ = State::NodeObject;
        return true;
      case State::EdgesArray:
        edges.emplace_back();
        edges.back().offset = *offset_;
        state_ = State::EdgeObject;
        return true;
      default:
        return fail(pending_ != nullptr ? "expected a string value" : "unexpected object");
    }
  }

  bool end_object() {
    if (skip_depth_ > 0) {
      --skip_depth_;
      return true;
    }
    switch (state_) {
      case State::TopObject:
        if (!seen_nodes_) return fail("missing \"nodes\" array");
        if (!seen_edges_) return fail("missing \"edges\" array");
        state_ = State::Done;
        return true;
      case State::NodeObject:
        if (pending_ != nullptr) return fail("missing value");
        if (!nodes.back().id.present) return fail("node is missing \"id\"");
        if (!nodes.back().kind.present) return fail("node is missing \"kind\"");
        state_ = State::NodesArray;
        return true;
      case State::EdgeObject:
        if (pending_ != nullptr) return fail("missing value");
        if (!edges.back().from.present) return fail("edge is missing \"from\"");
        if (!edges.back().to.present) return fail("edge is missing \"to\"");
        state_ = State::EdgesArray;
        return true;
      default:
        return fail("unexpected end of object");
    }
  }

  bool start_array(std::size_t) {
    if (skip_depth_ > 0) {
      ++skip_depth_;
      return true;
    }
    if (state_ == State::TopObject) {
      if (skipping_meta_value_) {
        skipping_meta_value_ = false;
        skip_depth_ = 1;
        return true;
      }
      if (expect_ == Expect::Nodes) {
        state_ = State::NodesArray;
        return true;
      }
      if (expect_ == Expect::Edges) {
        state_ = State::EdgesArray;
        return true;
      }
    }
    return fail("unexpected array");
  }

  bool end_array() {
    if (skip_depth_ > 0) {
      --skip_depth_;
      return true;
    }
    if (state_ == State::NodesArray || state_ == State::EdgesArray) {
      state_ = State::TopObject;
      expect_ = Expect::Key;
      return true;
    }
    return fail("unexpected end of array");
  }

  bool key(std::string& name) {
    if (skip_depth_ > 0) return true;
    switch (state_) {
      case State::TopObject:
        if (name == "nodes") {
          if (seen_nodes_) return fail("duplicate key \"nodes\"");
          seen_nodes_ = true;
          expect_ = Expect::Nodes;
          return true;
        }
        if (name == "edges") {
          if (seen_edges_) return fail("duplicate key \"edges\"");
          seen_edges_ = true;
          expect_ = Expect::Edges;
          return true;
        }
        if (name == "meta") {
          if (seen_meta_) return fail("duplicate key \"meta\"");
          seen_meta_ = true;
          skipping_meta_value_ = true;
          return true;
        }
        return fail("unknown key \"" + name + "\"");
      case State::NodeObject: {
        RawNode& node = nodes.back();
        Located* slot = name == "id" ? &node.id : name == "kind" ? &node.kind : name == "text" ? &node.text : nullptr;
        return bind(slot, name);
      }
      case State::EdgeObject: {
        RawEdge& edge = edges.back();
        Located* slot = name == "from" ? &edge.from : name == "to" ? &edge.to : name == "label" ? &edge.label : nullptr;
        return bind(slot, name);
      }
      default:
        return fail("unexpected key");
    }
  }

  bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) {
    error_offset = position == 0 ? 0 : position - 1;
    std::string what = ex.what();
    // Strip nlohmann's "[json.exception.parse_error.101] parse error at line 1, column 2: " prefix.
    auto colon = what.find(": ");
    error = colon == std::string::npos ? what : what.substr(colon + 2);
    return false;
  }

  std::vector<RawNode> nodes;
  std::vector<RawEdge> edges;
  std::string error;
  std::size_t error_offset = 0;

 private:
  enum class State { Init, TopObject, NodesArray, NodeObject, EdgesArray, EdgeObject, Done };
  enum class Expect { Key, Nodes, Edges };

  bool scalar(const char* what) {
    if (skip_depth_ > 0) return true;
    if (state_ == State::TopObject && skipping_meta_value_) {
      skipping_meta_value_ = false;
      return true;
    }
    if (pending_ != nullptr) return fail("expected a string value, found " + std::string(what));
    return fail("unexpected " + std::string(what));
  }

  bool bind(Located* slot, const std::string& name) {
    if (slot == nullptr) return fail("unknown key \"" + name + "\"");
    if (slot->present) return fail("duplicate key \"" + name + "\"");
    pending_ = slot;
    return true;
  }

  bool fail(std::string message) {
    error = std::move(message);
    error_offset = *offset_ == 0 ? 0 : *offset_ - 1;
    return false;
  }

  const std::size_t* offset_;
  State state_ = State::Init;
  Expect expect_ = Expect::Key;
  Located* pending_ = nullptr;
  bool seen_nodes_ = false;
  bool seen_edges_ = false;
  bool seen_meta_ = false;
  bool skipping_meta_value_ = false;
  int skip_depth_ = 0;
};

struct LineColumn {
  std::size_t line = 1;
  std::size_t column = 1;
};

LineColumn locate(std::string_view text, std::size_t offset) {
  LineColumn lc;
  offset = std::min(offset, text.size());
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++lc.line;
      lc.column = 1;
    } else {
      ++lc.column;
    }
  }
  return lc;
}

[[noreturn]] void malformed(std::string_view text, std::size_t offset, const std::string& message) {
  LineColumn lc = locate(text, offset);
  throw MalformedDocument(message, lc.line, lc.column);
}

// Value offsets point just past the closing quote; back up to the opening one.
std::size_t value_start(std::string_view text, const Located& value) {
  std::size_t end = std::min(value.offset, text.size());
  if (end == 0) return 0;
  std::size_t i = end - 1;
  while (i > 0) {
    --i;
    if (text[i] == '"' && (i == 0 || text[i - 1] != '\\')) return i;
  }
  return 0;
}

}  // namespace

FlowchartDoc parse_document(std::string_view text) {
  std::size_t offset = 0;
  DocumentReader reader(&offset);
  const char* base = text.data();
  TrackingIterator first(base, &offset, base);
  TrackingIterator last(base + text.size(), nullptr, base);
  bool ok = json::sax_parse(first, last, &reader);
  if (!ok) {
    malformed(text, reader.error_offset, reader.error.empty() ? "malformed document" : reader.error);
  }

  std::vector<Node> nodes;
  nodes.reserve(reader.nodes.size());
  std::unordered_map<std::string, NodeKind> kinds;
  for (const RawNode& raw : reader.nodes) {
    if (!NodeId::is_valid(raw.id.value)) {
      malformed(text, value_start(text, raw.id), "invalid node id \"" + raw.id.value + "\"");
    }
    NodeKind kind;
    if (raw.kind.value == "start") kind = NodeKind::Start;
    else if (raw.kind.value == "end") kind = NodeKind::End;
    else if (raw.kind.value == "block") kind = NodeKind::Block;
    else if (raw.kind.value == "branch") kind = NodeKind::Branch;
    else malformed(text, value_start(text, raw.kind), "unknown node kind \"" + raw.kind.value + "\"");

    if (!kinds.emplace(raw.id.value, kind).second) {
      malformed(text, value_start(text, raw.id), "duplicate node id \"" + raw.id.value + "\"");
    }
    if ((kind == NodeKind::Start || kind == NodeKind::End) && !raw.text.value.empty()) {
      malformed(text, value_start(text, raw.text),
                std::string(to_string(kind)) + " node \"" + raw.id.value + "\" must not carry text");
    }
    nodes.push_back(Node{NodeId(raw.id.value), kind, raw.text.value});
  }

  std::vector<Edge> edges;
  edges.reserve(reader.edges.size());
  for (const RawEdge& raw : reader.edges) {
    auto from = kinds.find(raw.from.value);
    if (from == kinds.end()) {
      malformed(text, value_start(text, raw.from), "edge references unknown node \"" + raw.from.value + "\"");
    }
    if (kinds.find(raw.to.value) == kinds.end()) {
      malformed(text, value_start(text, raw.to), "edge references unknown node \"" + raw.to.value + "\"");
    }
    EdgeLabel label = EdgeLabel::None;
    if (raw.label.present) {
      if (raw.label.value == "true") label = EdgeLabel::True;
      else if (raw.label.value == "false") label = EdgeLabel::False;
      else malformed(text, value_start(text, raw.label), "unknown edge label \"" + raw.label.value + "\"");
      if (from->second != NodeKind::Branch) {
        malformed(text, value_start(text, raw.label),
                  "edge from non-branch node \"" + raw.from.value + "\" carries a label");
      }
    }
    edges.push_back(Edge{NodeId(raw.from.value), NodeId(raw.to.value), label});
  }

  return FlowchartDoc(std::move(nodes), std::move(edges));
}

std::string serialize_document(const FlowchartDoc& doc) {
  auto quote = [](const std::string& s) { return json(s).dump(); };
  std::string out = "{\n  \"nodes\": [";
  const auto& nodes = doc.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& node = nodes[i];
    out += i == 0 ? "\n" : ",\n";
    out += "    {\"id\": " + quote(node.id.str()) + ", \"kind\": \"" + std::string(to_string(node.kind)) + "\"";
    if (node.kind == NodeKind::Block || node.kind == NodeKind::Branch) {
      out += ", \"text\": " + quote(node.text);
    }
    out += "}";
  }
  out += nodes.empty() ? "],\n" : "\n  ],\n";
  out += "  \"edges\": [";
  const auto& edges = doc.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& edge = edges[i];
    out += i == 0 ? "\n" : ",\n";
    out += "    {\"from\": " + quote(edge.from.str()) + ", \"to\": " + quote(edge.to.str());
    if (edge.label != EdgeLabel::None) out += ", \"label\": \"" + std::string(to_string(edge.label)) + "\"";
    out += "}";
  }
  out += edges.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

}  // namespace flowc
