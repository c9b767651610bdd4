#include "python_oracle.hpp"

#include <json.hpp>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <unistd.h>

#include "support.hpp"

namespace flowc::test {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kDriver = R"PY(
import contextlib, io, json, sys

items = json.load(open(sys.argv[1], encoding="utf-8"))
mode = sys.argv[3]
out = []
for item in items:
    if mode == "exec":
        result = {"compiled": True, "error": None, "lines": []}
        try:
            code = compile(item, "<flowc>", "exec")
        except SyntaxError:
            result["compiled"] = False
            out.append(result)
            continue
        buf = io.StringIO()
        try:
            with contextlib.redirect_stdout(buf):
                exec(code, {})
        except Exception as e:
            result["error"] = type(e).__name__
        result["lines"] = buf.getvalue().split("\n")[:-1]
        out.append(result)
    else:
        try:
            out.append({"text": str(eval(item, {})), "raised": False})
        except Exception as e:
            out.append({"text": type(e).__name__, "raised": True})
json.dump(out, open(sys.argv[2], "w", encoding="utf-8"))
)PY";

std::string python() { return FLOWC_PYTHON; }

json run_driver(const json& input, const char* mode) {
  static std::atomic<int> counter{0};
  const fs::path dir = fs::temp_directory_path() /
                       ("flowc_py_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  fs::create_directories(dir);
  const fs::path script = dir / "driver.py";
  const fs::path in = dir / "in.json";
  const fs::path out = dir / "out.json";
  std::ofstream(script) << kDriver;
  std::ofstream(in) << input.dump();
  const std::string cmd = "\"" + python() + "\" \"" + script.string() + "\" \"" + in.string() + "\" \"" +
                          out.string() + "\" " + mode;
  const int status = std::system(cmd.c_str());
  json result;
  if (status == 0) result = json::parse(read_file(out.string()));
  fs::remove_all(dir);
  if (status != 0) throw std::runtime_error("python driver failed: " + cmd);
  return result;
}

}  // namespace

bool python_available() {
  static const bool available = [] {
    if (python().empty()) return false;
    const std::string cmd = "\"" + python() + "\" -c \"import sys; sys.exit(0 if sys.version_info[0] == 3 else 1)\"";
    return std::system(cmd.c_str()) == 0;
  }();
  return available;
}

std::vector<PythonRun> run_python_sources(const std::vector<std::string>& sources) {
  const json result = run_driver(json(sources), "exec");
  std::vector<PythonRun> out;
  for (const auto& r : result) {
    PythonRun run;
    run.compiled = r["compiled"].get<bool>();
    run.lines = r["lines"].get<std::vector<std::string>>();
    if (!r["error"].is_null()) run.error = r["error"].get<std::string>();
    out.push_back(std::move(run));
  }
  return out;
}

std::vector<PythonValue> eval_python_expressions(const std::vector<std::string>& exprs) {
  const json result = run_driver(json(exprs), "eval");
  std::vector<PythonValue> out;
  for (const auto& r : result) out.push_back(PythonValue{r["text"].get<std::string>(), r["raised"].get<bool>()});
  return out;
}

}  // namespace flowc::test
