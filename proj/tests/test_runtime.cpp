#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "flowc/json_io.hpp"
#include "flowc/runtime.hpp"
#include "support.hpp"

using namespace flowc;
using test::build_doc;

namespace {

FlowchartDoc forever() {
  return build_doc({{"s", "start"}, {"i", "block", "x = 1"}, {"b", "branch", "1 == 1"}, {"p", "block", "print x"},
                    {"e", "end"}},
                   {{"s", "i"}, {"i", "b"}, {"b", "p", "true"}, {"b", "e", "false"}, {"p", "b"}});
}

bool is_prefix(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

// Random graph with correct degrees and labels; structure is left to chance.
FlowchartDoc random_graph(std::mt19937& rng) {
  static const char* statements[] = {"x = x + 1", "x = 0", "print x", "y = x // 2", "print y", "x = x - 3",
                                     "y = y * 2", "print \"s\"", "y = 1"};
  static const char* conditions[] = {"x < 3", "y > 0", "x % 2 == 0", "x != y", "x", "not (x > 5)"};
  const int blocks = 1 + static_cast<int>(rng() % 5);
  const int branches = static_cast<int>(rng() % 3);
  std::vector<Node> nodes{{NodeId("s"), NodeKind::Start, ""}, {NodeId("e"), NodeKind::End, ""}};
  for (int i = 0; i < blocks; ++i) {
    nodes.push_back(Node{NodeId("k" + std::to_string(i)), NodeKind::Block, statements[rng() % 9]});
  }
  for (int i = 0; i < branches; ++i) {
    nodes.push_back(Node{NodeId("c" + std::to_string(i)), NodeKind::Branch, conditions[rng() % 6]});
  }
  const std::size_t n = nodes.size();
  auto pick = [&](std::size_t self) {
    while (true) {
      const std::size_t t = 1 + rng() % (n - 1);
      if (t != self) return t;
    }
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    switch (nodes[i].kind) {
      case NodeKind::Start:
      case NodeKind::Block:
        edges.push_back(Edge{nodes[i].id, nodes[pick(i)].id, EdgeLabel::None});
        break;
      case NodeKind::Branch:
        edges.push_back(Edge{nodes[i].id, nodes[pick(i)].id, EdgeLabel::True});
        edges.push_back(Edge{nodes[i].id, nodes[pick(i)].id, EdgeLabel::False});
        break;
      case NodeKind::End:
        break;
    }
  }
  return FlowchartDoc(std::move(nodes), std::move(edges));
}

}  // namespace

TEST(GraphEngine, Euclid) {
  const Trace trace = run_graph(test::load_example("euclid.flow.json"));
  EXPECT_EQ(trace.status, TraceStatus::Completed);
  EXPECT_EQ(trace.lines, (std::vector<std::string>{"Greatest common divisor is:", std::to_string(std::gcd(6, 2))}));
}

TEST(GraphEngine, StepLimit) {
  const Trace trace = run_graph(forever(), Limits{11});
  EXPECT_EQ(trace.status, TraceStatus::StepLimitExceeded);
  // One step for x = 1, then two per iteration.
  EXPECT_EQ(trace.lines.size(), 5u);
  EXPECT_EQ(run_program(structure(forever()), Limits{11}), trace);
}

TEST(GraphEngine, RuntimeErrorKeepsEarlierLines) {
  const auto doc = build_doc({{"s", "start"}, {"a", "block", "print 1"}, {"b", "block", "print y"}, {"e", "end"}},
                             {{"s", "a"}, {"a", "b"}, {"b", "e"}});
  const Trace trace = run_graph(doc);
  EXPECT_EQ(trace.status, TraceStatus::RuntimeError);
  EXPECT_EQ(trace.lines, std::vector<std::string>{"1"});
  EXPECT_EQ(trace.error.rfind("UnboundVariable: ", 0), 0u);
  EXPECT_EQ(run_program(structure(doc)), trace);
}

TEST(GraphEngine, RunsStructurallyInvalidDocuments) {
  const Trace trace = run_graph(test::load_example("outer_back_edge.flow.json"));
  EXPECT_EQ(trace.status, TraceStatus::Completed);
  EXPECT_EQ(trace.lines, std::vector<std::string>{"1"});
}

TEST(GraphEngine, RequiresLocalValidity) {
  EXPECT_THROW(run_graph(test::load_example("selfloop.flow.json")), std::invalid_argument);
}

TEST(GraphEngine, BranchUsesTruthiness) {
  const auto doc = build_doc({{"s", "start"}, {"a", "block", "x = \"\""}, {"b", "branch", "x"},
                              {"t", "block", "print 1"}, {"f", "block", "print 0"}, {"e", "end"}},
                             {{"s", "a"}, {"a", "b"}, {"b", "t", "true"}, {"b", "f", "false"}, {"t", "e"}, {"f", "e"}});
  EXPECT_EQ(run_graph(doc).lines, std::vector<std::string>{"0"});
}

TEST(TreeEngine, EmptyProgram) {
  EXPECT_EQ(run_program(Program{}), (Trace{{}, TraceStatus::Completed, ""}));
}

TEST(TreeEngine, ForcedNontermination) {
  const Program program{{SNode{SWhile{parse_expression("1 == 1"), false, {SNode{SPrint{make_int(0)}}}}}}};
  const Trace trace = run_program(program, Limits{100});
  EXPECT_EQ(trace.status, TraceStatus::StepLimitExceeded);
  EXPECT_EQ(trace.lines.size(), 50u);
}

TEST(TreeEngine, NegatedLoop) {
  const Trace trace = run_program(structure(test::load_example("countdown.flow.json")));
  EXPECT_EQ(trace.lines, (std::vector<std::string>{"3", "2", "1", "liftoff"}));
}

TEST(Engines, StepLimitMonotonicity) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto doc = generate_constrained(seed, 30);
    const Program program = structure(doc);
    Trace previous = run_graph(doc, Limits{1});
    for (std::uint64_t limit : {2, 5, 13, 40, 200, 100000}) {
      const Trace graph = run_graph(doc, Limits{limit});
      EXPECT_TRUE(is_prefix(previous.lines, graph.lines));
      EXPECT_EQ(run_program(program, Limits{limit}), graph) << "seed " << seed << " limit " << limit;
      previous = graph;
    }
  }
}

TEST(Engines, AgreeOnGeneratedDocuments) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    for (std::size_t size : {2, 10, 30, 80}) {
      const auto doc = generate_constrained(seed, size);
      const Trace graph = run_graph(doc);
      ASSERT_EQ(run_program(structure(doc)), graph) << "seed " << seed << " size " << size;
      ASSERT_EQ(graph.status, TraceStatus::Completed);
    }
  }
}

TEST(Engines, AgreeOnRandomValidGraphs) {
  std::mt19937 rng(11);
  int valid = 0;
  int errors = 0;
  int limited = 0;
  for (int i = 0; i < 20000; ++i) {
    const auto doc = random_graph(rng);
    if (has_errors(validate(doc))) continue;
    ++valid;
    const Trace graph = run_graph(doc, Limits{500});
    ASSERT_EQ(run_program(structure(doc), Limits{500}), graph) << serialize_document(doc);
    errors += graph.status == TraceStatus::RuntimeError;
    limited += graph.status == TraceStatus::StepLimitExceeded;
  }
  EXPECT_GT(valid, 1000);
  EXPECT_GT(errors, 0);
  EXPECT_GT(limited, 0);
}

TEST(Generator, Deterministic) {
  EXPECT_EQ(generate_constrained(42, 30), generate_constrained(42, 30));
  EXPECT_EQ(generate_program(42, 30), generate_program(42, 30));
  EXPECT_NE(serialize_document(generate_constrained(1, 30)), serialize_document(generate_constrained(2, 30)));
}

TEST(Generator, MinimalSize) {
  const auto doc = generate_constrained(0, 2);
  EXPECT_GE(doc.nodes().size(), 2u);
  EXPECT_FALSE(has_errors(validate(doc)));
}

TEST(Generator, SizeIsRoughlyHonoured) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto doc = generate_constrained(seed, 30);
    EXPECT_GE(doc.nodes().size(), 25u);
    EXPECT_LE(doc.nodes().size(), 34u);
  }
}

TEST(Generator, ProducesEveryShape) {
  int loops = 0;
  int negated = 0;
  int conditionals = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    for (const auto& item : generate_program(seed, 30).body) {
      if (const auto* w = std::get_if<SWhile>(&item.node)) {
        ++loops;
        negated += w->negated;
      }
      conditionals += std::holds_alternative<SIf>(item.node);
    }
  }
  EXPECT_GT(loops, 20);
  EXPECT_GT(negated, 5);
  EXPECT_GT(conditionals, 20);
}

TEST(Breaker, NeedsABlockPair) {
  EXPECT_FALSE(break_constrained(build_doc({{"s", "start"}, {"e", "end"}}, {{"s", "e"}}), 0).has_value());
  const auto broken = break_constrained(generate_constrained(3, 30), 3);
  ASSERT_TRUE(broken.has_value());
  EXPECT_NE(*broken, generate_constrained(3, 30));
}

TEST(TraceJson, Shape) {
  EXPECT_EQ(to_json(run_graph(test::load_example("euclid.flow.json"))).dump(),
            R"({"lines":["Greatest common divisor is:","2"],"status":"completed"})");
  EXPECT_EQ(to_json(Trace{{}, TraceStatus::StepLimitExceeded, ""}).dump(), R"({"lines":[],"status":"step_limit"})");
  EXPECT_EQ(to_json(Trace{{"a"}, TraceStatus::RuntimeError, "DivisionByZero: integer division by zero"}).dump(),
            R"({"lines":["a"],"status":{"error":"DivisionByZero: integer division by zero"}})");
}
