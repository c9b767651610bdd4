#include "flowc/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <sstream>

#include "flowc/codegen.hpp"
#include "flowc/json_io.hpp"
#include "flowc/runtime.hpp"
#include "flowc/structure.hpp"
#include "flowc/validate.hpp"

namespace flowc {

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

// Raised inside a command to stop with an exit code after its error line.
struct Stop {
  int code;
};

class Session {
 public:
  Session(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  [[noreturn]] void fail(int code, std::string_view kind, const std::string& message) {
    err_ << "error: " << kind << ": " << message << '\n';
    throw Stop{code};
  }

  FlowchartDoc load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(kUsage, "IOError", "cannot read '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    try {
      return parse_document(text.str());
    } catch (const MalformedDocument& e) {
      fail(kUsage, "MalformedDocument", path + ": " + e.what());
    }
  }

  // Prints diagnostics to standard error, or as JSON to standard output.
  void report(const std::vector<Diagnostic>& diagnostics, bool json) {
    if (json) {
      out_ << Json{{"diagnostics", to_json(diagnostics)}}.dump(2) << '\n';
    }
    for (const auto& d : diagnostics) {
      err_ << to_string(d.severity) << ": " << to_string(d.code) << ": " << d.message << '\n';
    }
  }

  Program structured(const FlowchartDoc& doc, bool json) {
    auto diagnostics = validate(doc);
    if (has_errors(diagnostics)) {
      report(diagnostics, json);
      throw Stop{kFailed};
    }
    return structure(doc);
  }

  void write(const std::string& text, const std::string& path) {
    if (path.empty()) {
      out_ << text;
      return;
    }
    std::ofstream file(path, std::ios::binary);
    file << text;
    if (!file) fail(kUsage, "IOError", "cannot write '" + path + "'");
  }

  std::ostream& out() { return out_; }

 private:
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Flowchart compiler: validate, structure, emit Python and run flowcharts", "flowc"};
  app.require_subcommand(1);

  std::string file;
  bool json = false;
  std::string output;
  std::string engine = "ast";
  std::uint64_t max_steps = Limits{}.max_steps;
  std::string format;

  auto* check = app.add_subcommand("check", "Validate a flowchart; exit 0 iff no errors");
  check->add_option("file", file, "Flowchart document (.flow.json)")->required();
  check->add_flag("--json", json, "Print diagnostics as JSON on standard output");

  auto* emit = app.add_subcommand("emit", "Generate Python 3 source");
  emit->add_option("file", file, "Flowchart document (.flow.json)")->required();
  emit->add_option("-o,--output", output, "Write to this file instead of standard output");
  emit->add_flag("--json", json, "Print {\"python\": ...} or diagnostics as JSON");

  auto* structure_cmd = app.add_subcommand("structure", "Print the structured program as JSON");
  structure_cmd->add_option("file", file, "Flowchart document (.flow.json)")->required();
  structure_cmd->add_flag("--json", json, "Print diagnostics as JSON on failure");

  auto* run = app.add_subcommand("run", "Execute a flowchart and print its output");
  run->add_option("file", file, "Flowchart document (.flow.json)")->required();
  run->add_option("--engine", engine, "graph (follow edges) or ast (structured tree)")
      ->check(CLI::IsMember({"graph", "ast"}));
  run->add_option("--max-steps", max_steps, "Step budget")->check(CLI::PositiveNumber);
  run->add_flag("--json", json, "Print the trace as JSON");

  auto* export_cmd = app.add_subcommand("export", "Export the document");
  export_cmd->add_option("file", file, "Flowchart document (.flow.json)")->required();
  export_cmd->add_option("--format", format, "dot or json")->required()->check(CLI::IsMember({"dot", "json"}));
  export_cmd->add_flag("--json", json, "Wrap DOT output as {\"dot\": ...}");

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << '\n';
    return kUsage;
  }

  Session session(out, err);
  try {
    if (check->parsed()) {
      auto diagnostics = validate(session.load(file));
      session.report(diagnostics, json);
      return has_errors(diagnostics) ? kFailed : kOk;
    }
    if (emit->parsed()) {
      const auto doc = session.load(file);
      const std::string python = emit_python(session.structured(doc, json));
      if (json) session.write(Json{{"python", python}}.dump(2) + "\n", output);
      else session.write(python, output);
      return kOk;
    }
    if (structure_cmd->parsed()) {
      const auto doc = session.load(file);
      out << emit_ast_json(session.structured(doc, json)) << '\n';
      return kOk;
    }
    if (export_cmd->parsed()) {
      const auto doc = session.load(file);
      if (format == "json") out << serialize_document(doc);
      else if (json) out << Json{{"dot", emit_dot(doc)}}.dump(2) << '\n';
      else out << emit_dot(doc);
      return kOk;
    }
    // run
    const auto doc = session.load(file);
    const Limits limits{max_steps};
    Trace trace;
    if (engine == "graph") {
      auto local = validate_local(doc);
      if (has_errors(local)) {
        session.report(local, json);
        return kFailed;
      }
      trace = run_graph(doc, limits);
    } else {
      trace = run_program(session.structured(doc, json), limits);
    }
    if (json) {
      out << to_json(trace).dump(2) << '\n';
    } else {
      for (const auto& line : trace.lines) out << line << '\n';
    }
    out.flush();
    if (trace.status == TraceStatus::RuntimeError) session.fail(kFailed, "RuntimeError", trace.error);
    if (trace.status == TraceStatus::StepLimitExceeded) {
      session.fail(kFailed, "StepLimitExceeded", "stopped after " + std::to_string(max_steps) + " steps");
    }
    return kOk;
  } catch (const Stop& stop) {
    return stop.code;
  }
}

}  // namespace flowc
