#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "incidence/axioms.hpp"
#include "incidence/isomorphism.hpp"
#include "json.hpp"

using namespace incidence;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = cli::run(args, in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string fixture_text(const std::string& name) {
  const auto r = run({"fixture", name});
  REQUIRE(r.code == 0);
  return r.out;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("incidence-cli-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string write(const std::string& name, const std::string& text) const {
    const auto p = (path / name).string();
    std::ofstream(p) << text;
    return p;
  }
};

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({"upper", "-"}).code == cli::kUsage);
  CHECK(run({"fixture"}).code == cli::kUsage);
  CHECK(run({"--help"}).code == cli::kPass);
}

TEST_CASE("input errors map to distinct exit codes") {
  CHECK(run({"validate", "/nonexistent/x.cat"}).code == cli::kIo);
  const auto parse = run({"validate", "-"}, "object A rank zero\n");
  CHECK(parse.code == cli::kUsage);
  CHECK(parse.err.find("line 1") != std::string::npos);
  CHECK(run({"validate", "-"}, "object A rank 1\nobject B rank 1\narrow a : A -> B\n").code ==
        cli::kUsage);
  CHECK(run({"upper", "-", "--object", "nowhere"}, fixture_text("segment")).code ==
        cli::kUnknownOrPrecondition);
  CHECK(run({"fixture", "dodecahedron"}).code == cli::kUnknownOrPrecondition);
  CHECK(run({"validate", "-", "--signs"}, "object A rank 0\n").code ==
        cli::kUnknownOrPrecondition);
}

TEST_CASE("validate reports pass and violations") {
  CHECK(run({"validate", "-", "--signs"}, fixture_text("torus")).code == cli::kPass);
  const auto ray = run({"validate", "-", "--check", "diamond", "--scope", "all"},
                       fixture_text("ray"));
  CHECK(ray.code == cli::kViolation);
  CHECK(ray.out.find("null -> R") != std::string::npos);
  const auto json = run({"validate", "-", "--all", "--format", "json"}, fixture_text("cube"));
  CHECK(json.code == cli::kPass);
  const auto doc = nlohmann::json::parse(json.out);
  CHECK(doc["format"] == "validation-report");
  CHECK(doc["report"]["verdict"] == "pass");
}

TEST_CASE("check-cw names the failing witness") {
  const auto r = run({"check-cw", "-"}, fixture_text("annulus"));
  CHECK(r.code == cli::kViolation);
  CHECK(r.out.find("(null -> F)") != std::string::npos);
  CHECK(run({"check-cw", "-"}, fixture_text("torus")).code == cli::kPass);
}

TEST_CASE("fixture output rebuilds the in-memory fixture") {
  const auto list = run({"fixture", "--list"});
  std::istringstream names(list.out);
  std::string name;
  int seen = 0;
  while (std::getline(names, name)) {
    CAPTURE(name);
    const auto c = testing_support::build_text(fixture_text(name));
    CHECK(is_isomorphic(c, testing_support::build_fixture(name)));
    ++seen;
  }
  CHECK(seen == 12);
}

TEST_CASE("upper output re-parses and passes the axioms") {
  for (const auto& [name, object] : std::vector<std::pair<std::string, std::string>>{
           {"cube", "c0_0_0"}, {"torus", "P"}, {"crescent", "P"}, {"segment", "L"}}) {
    CAPTURE(name);
    const auto r = run({"upper", "-", "--object", object}, fixture_text(name));
    REQUIRE(r.code == cli::kPass);
    const auto c = testing_support::build_text(r.out);
    CHECK(validate_bounded_acyclic(*c).passed());
    CHECK(check_graded(*c).passed());
    CHECK(check_semi_diamond(*c, SignCheck::on).passed());
    CHECK(run({"validate", "-"}, r.out).code == cli::kPass);
  }
}

TEST_CASE("sections, lowers and iso agree") {
  TempDir dir;
  const auto cube = dir.write("cube.cat", fixture_text("cube"));
  const auto up = run({"upper", cube, "--object", "c0_0_0"});
  const auto sec = run({"section", cube, "--terminal-of", "c0_0_0"});
  REQUIRE(up.code == 0);
  REQUIRE(sec.code == 0);
  const auto a = dir.write("up.cat", up.out);
  const auto b = dir.write("sec.cat", sec.out);
  const auto tri = dir.write("tri.cat", fixture_text("ngon3"));
  CHECK(run({"iso", a, b}).code == cli::kPass);
  CHECK(run({"iso", a, tri}).code == cli::kPass);
  CHECK(run({"iso", a, cube}).code == cli::kViolation);

  const auto low = run({"lower", cube, "--object", "c0-1_0-1_0"});
  REQUIRE(low.code == 0);
  CHECK(run({"iso", dir.write("low.cat", low.out), tri}).code == cli::kViolation);
  CHECK(run({"section", cube}).code == cli::kUsage);
}

TEST_CASE("decompose writes one file per cluster") {
  TempDir dir;
  const auto up = run({"upper", "-", "--object", "P"}, fixture_text("crescent"));
  REQUIRE(up.code == 0);
  const auto parts = (dir.path / "parts").string();
  const auto r = run({"decompose", "-", "--split-dir", parts}, up.out);
  CHECK(r.code == cli::kPass);
  CHECK(r.out.find("clusters: 2") != std::string::npos);
  CHECK(fs::exists(fs::path(parts) / "part1.cat"));
  CHECK(fs::exists(fs::path(parts) / "part2.cat"));
  CHECK(run({"iso", (fs::path(parts) / "part1.cat").string(),
             (fs::path(parts) / "part2.cat").string()})
            .code == cli::kPass);
}

TEST_CASE("nerve and realize outputs") {
  const auto torus = fixture_text("torus");
  const auto r = run({"realize", "-"}, torus);
  CHECK(r.code == cli::kPass);
  CHECK(r.out.find("dimension 2: 8") != std::string::npos);
  CHECK(r.out.find("euler_characteristic: 0") != std::string::npos);
  const auto nv = nlohmann::json::parse(run({"nerve", "-"}, torus).out);
  CHECK(nv["format"] == "nerve");
  const auto via = run({"nerve", "-", "--through", "P"}, torus);
  CHECK(via.code == cli::kPass);
  CHECK(nlohmann::json::parse(via.out)["format"] == "nerve");
  const auto cx = nlohmann::json::parse(run({"realize", "-", "--format", "json"}, torus).out);
  CHECK(cx["format"] == "oriented-complex");
}

TEST_CASE("output files are written whole and outputs are deterministic") {
  TempDir dir;
  const auto cube = fixture_text("cube");
  const auto target = (dir.path / "cube.dot").string();
  CHECK(run({"hasse", "-", "-o", target}, cube).code == cli::kPass);
  std::ifstream file(target);
  std::stringstream written;
  written << file.rdbuf();
  const auto direct = run({"hasse", "-"}, cube).out;
  CHECK(written.str() == direct);
  CHECK_FALSE(fs::exists(target + ".tmp"));
  CHECK(direct.rfind("digraph", 0) == 0);
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"hasse", "-"}, {"nerve", "-"}, {"realize", "-", "--format", "json"},
           {"validate", "-", "--all", "--format", "json"}, {"upper", "-", "--object", "c0_0_0"}}) {
    CHECK(run(args, cube).out == run(args, cube).out);
  }
  CHECK(run({"hasse", "-", "-o", "/nonexistent/dir/out.dot"}, cube).code == cli::kIo);
}
