#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "commands.hpp"
#include "spec_io.hpp"

namespace fs = std::filesystem;
using qdf::cli::Json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = qdf::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("qdf_cli_" + std::to_string(counter()++) + "_" +
                                                  std::to_string(reinterpret_cast<std::uintptr_t>(this)))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  [[nodiscard]] std::string file(const std::string& name) const { return (path_ / name).string(); }
  [[nodiscard]] std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name) << text;
    return file(name);
  }

 private:
  static int& counter() {
    static int c = 0;
    return c;
  }
  fs::path path_;
};

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream cells_in(line);
    std::string cell;
    while (std::getline(cells_in, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string command_for(const std::string& stem) {
  for (const char* name : {"norms", "classify", "halmos", "sparse", "berg", "szego"})
    if (stem.rfind(name, 0) == 0) return name;
  if (stem.rfind("weyl_amenability", 0) == 0) return "weyl-amenability";
  if (stem.rfind("weyl_represent", 0) == 0) return "weyl-represent";
  return {};
}

std::vector<fs::path> shipped_specs() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(QDF_SPECS_DIR))
    if (e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("norms on the sqrt shift has unit ratio2") {
  const auto r = run({"norms", "--spec", std::string(QDF_SPECS_DIR) + "/norms_sqrt_shift.json", "--no-timestamp",
                      "--n-start", "10", "--n-end", "1000", "--n-geometric", "10"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<std::string>{"n", "rank", "u", "s1", "s2", "ratio1", "ratio2"});
  for (std::size_t i = 1; i < 4; ++i) CHECK(std::abs(std::stod(rows[i][6]) - 1.0) < 1e-12);
  CHECK(rows[1][0] == "10");
  CHECK(rows[3][0] == "1000");
  CHECK(r.out.find("# tool: qdf ") == 0);
  CHECK(r.out.find("# timestamp:") == std::string::npos);
}

TEST_CASE("weyl-amenability lists level dimensions") {
  TempDir dir;
  const auto spec = dir.write("w.json", R"({"experiment": {"elements": ["p", "q"], "epsilon": 1}})");
  const auto r = run({"weyl-amenability", "--spec", spec, "--no-timestamp"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0][2] == "dim_v");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const long n = std::stol(rows[i][1]);
    CHECK(std::stol(rows[i][2]) == (n + 1) * (n + 2) / 2);
    CHECK(rows[i][4].find('/') != std::string::npos);
  }
}

TEST_CASE("malformed JSON exits 2 and writes nothing") {
  TempDir dir;
  const auto spec = dir.write("bad.json", R"({"operator": {"kind": "weighted_shift", "weight": "sqrt"})");
  const auto out = dir.file("report.csv");
  const auto r = run({"norms", "--spec", spec, "--out", out});
  CHECK(r.code == qdf::cli::kExitInvalid);
  CHECK(r.err.find("InvalidSpec") == 0);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("schema violations exit 2") {
  TempDir dir;
  const std::vector<std::string> bad = {
      R"({"operator": {"kind": "weighted_shift", "weight": "sqrt", "extra": 1}, "experiment": {"ns": [1]}})",
      R"({"operator": {"kind": "no_such_kind"}, "experiment": {"ns": [1]}})",
      R"({"operator": {"kind": "weighted_shift", "weight": "cube"}, "experiment": {"ns": [1]}})",
      R"({"operator": {"kind": "weighted_shift", "weight": "sqrt"}, "surprise": {}})",
      R"({"operator": {"kind": "sum", "terms": []}, "experiment": {"ns": [1]}})",
      R"({"operator": {"kind": "hermite_q"}, "projection": {"kind": "sparse", "selector": {"rule": "list", "values": [3, 2]}}, "experiment": {"ns": [1]}})",
      R"({"operator": {"kind": "hermite_q"}, "experiment": {"ns": [3, 2]}})",
      R"([1, 2, 3])",
  };
  for (std::size_t i = 0; i < bad.size(); ++i) {
    const auto spec = dir.write("bad" + std::to_string(i) + ".json", bad[i]);
    const auto r = run({"norms", "--spec", spec});
    CAPTURE(bad[i]);
    CHECK(r.code == qdf::cli::kExitInvalid);
  }
  CHECK(run({"norms", "--spec", dir.file("missing.json")}).code == qdf::cli::kExitInvalid);
  CHECK(run({"frobnicate"}).code == qdf::cli::kExitInvalid);
  CHECK(run({"norms"}).code == qdf::cli::kExitInvalid);
}

TEST_CASE("computation errors exit 3 with the error name") {
  TempDir dir;
  const auto spec = dir.write("s.json", R"({
    "operator": {"kind": "weighted_shift", "weight": "const:1"},
    "projection": {"kind": "canonical"},
    "experiment": {"epsilon": 0.5, "search_limit": 100, "window": 200}})");
  const auto r = run({"halmos", "--spec", spec});
  CHECK(r.code == qdf::cli::kExitComputation);
  CHECK(r.err.find("NotQuasidiagonalAlongFamily") == 0);

  const auto szego = dir.write("z.json", R"({
    "operator": {"kind": "weighted_shift", "weight": "sqrt"},
    "experiment": {"ns": [4], "ps": [1]}})");
  CHECK(run({"szego", "--spec", szego}).code == qdf::cli::kExitInvalid);

  const auto sparse = dir.write("s2.json", R"({
    "operator": {"kind": "weighted_shift", "weight": "inverse"},
    "experiment": {"boundaries": [0, 2, 4], "selector": {"rule": "geometric", "base": 2}, "ns": [1, 2]}})");
  const auto sp = run({"sparse", "--spec", sparse});
  CHECK(sp.code == qdf::cli::kExitComputation);
  CHECK(sp.err.find("SelectorOutOfRange") == 0);

  const auto represent = dir.write("r.json", R"({"experiment": {"element": "p^4", "dim": 3}})");
  const auto re = run({"weyl-represent", "--spec", represent});
  CHECK(re.code == qdf::cli::kExitComputation);
  CHECK(re.err.find("DegreeExceedsWindow") == 0);

  const auto matrix = dir.write("m.txt", "2\n0 1\n0 0\n");
  const auto berg = dir.write("b.json", R"({"experiment": {"matrix_file": "m.txt", "epsilon": 0.1}})");
  const auto b = run({"berg", "--spec", berg});
  CHECK(b.code == qdf::cli::kExitComputation);
  CHECK(b.err.find("NotHermitian") == 0);
}

TEST_CASE("identical inputs give byte-identical reports") {
  TempDir dir;
  for (const auto& path : shipped_specs()) {
    const auto command = command_for(path.stem().string());
    if (command.empty() || command == "sparse") continue;  // sparse runs are covered by the smoke test
    for (const char* format : {"csv", "json"}) {
      const auto a = dir.file("a.out");
      const auto b = dir.file("b.out");
      CAPTURE(path.string());
      REQUIRE(run({command, "--spec", path.string(), "--no-timestamp", "--format", format, "--out", a}).code == 0);
      REQUIRE(run({command, "--spec", path.string(), "--no-timestamp", "--format", format, "--out", b}).code == 0);
      std::ifstream ia(a, std::ios::binary);
      std::ifstream ib(b, std::ios::binary);
      const std::string ta((std::istreambuf_iterator<char>(ia)), {});
      const std::string tb((std::istreambuf_iterator<char>(ib)), {});
      CHECK(!ta.empty());
      CHECK(ta == tb);
    }
  }
}

TEST_CASE("every shipped spec runs") {
  for (const auto& path : shipped_specs()) {
    const auto command = command_for(path.stem().string());
    CAPTURE(path.string());
    REQUIRE_FALSE(command.empty());
    const auto r = run({command, "--spec", path.string(), "--no-timestamp"});
    CHECK(r.code == 0);
    CHECK(r.err.empty());
  }
}

TEST_CASE("shipped specs round-trip through the schema") {
  for (const auto& path : shipped_specs()) {
    CAPTURE(path.string());
    const auto spec = qdf::cli::load_spec_file(path.string());
    const Json once = qdf::cli::to_json(spec);
    const auto again = qdf::cli::parse_spec(once.dump());
    CHECK(qdf::cli::to_json(again) == once);
    CHECK(qdf::cli::spec_hash(again) == qdf::cli::spec_hash(spec));
    if (spec.op) CHECK(*again.op == *spec.op);
    if (spec.family) CHECK(*again.family == *spec.family);
    CHECK(again.experiment == spec.experiment);
  }
}

TEST_CASE("json reports carry metadata and tables") {
  const auto r = run({"szego", "--spec", std::string(QDF_SPECS_DIR) + "/szego_cosine.json", "--no-timestamp",
                      "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = Json::parse(r.out);
  CHECK(doc["metadata"]["command"] == "szego");
  CHECK(doc["metadata"]["spec_hash"].get<std::string>().size() == 16);
  CHECK(doc["tables"]["szego"].is_array());
  CHECK(doc["tables"]["szego"][0].contains("gap"));
}
