#include <doctest.h>

#include <fstream>
#include <sstream>

#include "surveylens/cli.hpp"
#include "surveylens/pipeline.hpp"
#include "test_support.hpp"

using namespace surveylens;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "surveylens");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

void write(const fs::path& p, const std::string& s) { std::ofstream(p, std::ios::binary) << s; }

std::string responses() { return test_support::fixture("responses.txt").string(); }

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"cluster"}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"cluster", "--input", responses(), "--embedder", "bogus"}).code == kExitUsage);
  CHECK(run({"cluster", "--input", responses(), "--dim", "0"}).code == kExitUsage);
  CHECK(run({"cluster", "--input", responses(), "--k-min", "5", "--k-max", "3"}).code == kExitUsage);
  CHECK(run({"cluster", "--input", responses(), "--k-max", "28"}).code == kExitUsage);
  CHECK(run({"assign", "--input", responses()}).code == kExitUsage);
}

TEST_CASE("--version") {
  const auto r = run({"--version"});
  CHECK(r.code == 0);
  CHECK(r.out.find("surveylens 0.1.0") != std::string::npos);
}

TEST_CASE("malformed input exits with 3 and names the line") {
  const auto dir = test_support::scratch_dir("cli_malformed");
  write(dir / "r.txt", "one\n  \nthree\n");
  const auto r = run({"cluster", "--input", (dir / "r.txt").string()});
  CHECK(r.code == kExitBadInput);
  CHECK(r.err.find("line 2") != std::string::npos);
  CHECK(run({"cluster", "--input", (dir / "missing.txt").string()}).code == kExitBadInput);
}

TEST_CASE("too few responses exits with 5") {
  const auto dir = test_support::scratch_dir("cli_few");
  write(dir / "r.txt", "acid\nbase\n");
  const auto r = run({"cluster", "--input", (dir / "r.txt").string(), "--out",
                      (dir / "report.json").string()});
  CHECK(r.code == kExitTooFewSamples);
  CHECK(r.err.find("3") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "report.json"));
}

TEST_CASE("empty titles exits with 6") {
  const auto dir = test_support::scratch_dir("cli_titles");
  write(dir / "t.txt", "\n");
  const auto r = run({"assign", "--input", responses(), "--titles", (dir / "t.txt").string()});
  CHECK(r.code == kExitNoTitles);
}

TEST_CASE("provider failures exit with 4") {
  const auto dir = test_support::scratch_dir("cli_provider");
  write(dir / "c.jsonl", "{\"dimension\": 2, \"model_id\": \"m\"}\n{\"text\": \"x\", \"vector\": [1, 0]}\n");
  const auto r = run({"cluster", "--input", responses(), "--embedder",
                      "cache:" + (dir / "c.jsonl").string()});
  CHECK(r.code == kExitProvider);
  CHECK(r.err.find("About acids") != std::string::npos);

  const auto bad_dim = run({"cluster", "--input", responses(), "--dim", "384", "--embedder",
                            "cache:" + (dir / "c.jsonl").string()});
  CHECK(bad_dim.code == kExitProvider);
}

TEST_CASE("cluster runs are byte-identical and write svgs next to the report") {
  const auto a = test_support::scratch_dir("cli_det_a");
  const auto b = test_support::scratch_dir("cli_det_b");
  for (const auto& dir : {a, b}) {
    const auto r = run({"cluster", "--input", responses(), "--seed", "7", "--dim", "64", "--out",
                        (dir / "report.json").string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
  }
  const auto report = read_file(a / "report.json");
  CHECK(report == read_file(b / "report.json"));
  const auto parsed = parse_report(report);
  REQUIRE_FALSE(parsed.wordclouds.empty());
  for (const auto& w : parsed.wordclouds) {
    CHECK(read_file(a / w.file) == read_file(b / w.file));
  }

  SUBCASE("render reproduces the svgs") {
    const auto c = test_support::scratch_dir("cli_render");
    REQUIRE(run({"render", "--report", (a / "report.json").string(), "--svg-dir", c.string()}).code == 0);
    for (const auto& w : parsed.wordclouds) CHECK(read_file(c / w.file) == read_file(a / w.file));
  }
}

TEST_CASE("report goes to stdout without --out") {
  const auto r = run({"cluster", "--input", responses(), "--dim", "32"});
  REQUIRE(r.code == 0);
  CHECK(parse_report(r.out).mode == "cluster");
}

TEST_CASE("assigning a response to its own title gives similarity 1") {
  const auto dir = test_support::scratch_dir("cli_assign_self");
  write(dir / "r.txt", "The chapter on acids\n");
  write(dir / "t.txt", "The chapter on acids\n");
  const auto r = run({"assign", "--input", (dir / "r.txt").string(), "--titles",
                      (dir / "t.txt").string(), "--out", (dir / "report.json").string()});
  REQUIRE(r.code == 0);
  const auto report = parse_report(read_file(dir / "report.json"));
  REQUIRE(report.assignment.has_value());
  REQUIRE(report.assignment->responses.size() == 1);
  CHECK(report.assignment->responses[0].label == 0);
  CHECK(report.assignment->responses[0].similarity == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.assignment->labels[0].count == 1);
}
