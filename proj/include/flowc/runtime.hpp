#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flowc/document.hpp"
#include "flowc/structure.hpp"

namespace flowc {

enum class TraceStatus { Completed, StepLimitExceeded, RuntimeError };

struct Trace {
  std::vector<std::string> lines;
  TraceStatus status = TraceStatus::Completed;
  /// "Kind: detail" when status is RuntimeError, empty otherwise.
  std::string error;

  friend bool operator==(const Trace&, const Trace&) = default;
};

struct Limits {
  /// Statements executed plus conditions evaluated.
  std::uint64_t max_steps = 100000;
};

/// Executes the flowchart by following edges. Needs only local validity;
/// throws std::invalid_argument when validate_local reports errors.
Trace run_graph(const FlowchartDoc& doc, const Limits& limits = {});

/// Executes the structured tree. Iterative, so deep nesting is safe.
Trace run_program(const Program& program, const Limits& limits = {});

// ---------------------------------------------------------------------------
// Random constrained flowcharts

/// Random program over variables a..d with counter-bounded loops. The
/// flowchart it unparses to has roughly `size` nodes.
Program generate_program(std::uint64_t seed, std::size_t size);

/// Draws a program as a flowchart: one block per statement, one branch per
/// loop or conditional. When `fresh_ends` is set, a trailing conditional at
/// top level sends each side to its own end node.
FlowchartDoc unparse_program(const Program& program, bool fresh_ends = false);

/// unparse_program(generate_program(seed, size)), with the end style also
/// chosen by the seed.
FlowchartDoc generate_constrained(std::uint64_t seed, std::size_t size);

/// Redirects one block's outgoing edge to a block above it on the
/// depth-first path from Start (true sides explored first). nullopt when
/// the document has no such pair.
std::optional<FlowchartDoc> break_constrained(const FlowchartDoc& doc, std::uint64_t seed);

}  // namespace flowc
