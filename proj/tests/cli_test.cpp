// End-to-end checks of the command line tool; each case spawns the built
// binary against files in a scratch directory.

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() /
                 ("assort_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out = scratch_dir() / ("out" + std::to_string(counter));
  const fs::path err = scratch_dir() / ("err" + std::to_string(counter));
  ++counter;
  const std::string cmd = std::string(ASSORT_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int rc = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

fs::path write_file(const std::string& name, const std::string& content) {
  const fs::path p = scratch_dir() / name;
  std::ofstream f(p, std::ios::binary);
  f << content;
  return p;
}

std::string le_bytes(const std::vector<std::uint64_t>& values) {
  std::string bytes;
  for (const std::uint64_t v : values)
    for (int k = 0; k < 8; ++k)
      bytes.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
  return bytes;
}

}  // namespace

TEST_CASE("sort reads and writes text files", "[cli]") {
  const fs::path in = write_file("example.txt", "5\n3\n5\n9\n3\n3\n120\n5\n");
  const fs::path out = scratch_dir() / "example_sorted.txt";
  const CliResult r =
      run_cli("sort --input " + in.string() + " --output " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(slurp(out) == "3\n3\n3\n5\n5\n5\n9\n120\n");
}

TEST_CASE("sorting is idempotent", "[cli]") {
  const fs::path in = write_file("idem.txt", "7\n1\n1\n9\n4\n");
  const fs::path once = scratch_dir() / "idem1.txt";
  const fs::path twice = scratch_dir() / "idem2.txt";
  REQUIRE(run_cli("sort -i " + in.string() + " -o " + once.string())
              .exit_code == 0);
  REQUIRE(run_cli("sort -i " + once.string() + " -o " + twice.string())
              .exit_code == 0);
  CHECK(slurp(once) == slurp(twice));
}

TEST_CASE("empty input gives empty output", "[cli]") {
  const fs::path in = write_file("empty.txt", "");
  const CliResult r = run_cli("sort --input " + in.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
}

TEST_CASE("a malformed line is reported with its number", "[cli]") {
  const fs::path in = write_file("bad.txt", "1\n2\nabc\n4\n");
  const CliResult r = run_cli("sort --input " + in.string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("abc") != std::string::npos);
  CHECK(r.err.find(":3") != std::string::npos);
}

TEST_CASE("binary and text paths sort the same values", "[cli]") {
  const std::vector<std::uint64_t> values = {900, 2, 2, 77, 1ull << 62, 0};
  const fs::path bin = write_file("values.bin", le_bytes(values));
  const fs::path bin_out = scratch_dir() / "values_sorted.bin";
  const CliResult r = run_cli("sort --format binary --input " + bin.string() +
                              " --output " + bin_out.string());
  REQUIRE(r.exit_code == 0);
  std::vector<std::uint64_t> expect = values;
  std::sort(expect.begin(), expect.end());
  CHECK(slurp(bin_out) == le_bytes(expect));

  std::string text;
  for (const auto v : values) text += std::to_string(v) + "\n";
  const fs::path txt = write_file("values.txt", text);
  const CliResult rt = run_cli("sort --input " + txt.string());
  std::string text_expect;
  for (const auto v : expect) text_expect += std::to_string(v) + "\n";
  CHECK(rt.out == text_expect);
}

TEST_CASE("truncated binary input is an error", "[cli]") {
  const fs::path bin = write_file("trunc.bin", std::string(12, '\x01'));
  const CliResult r = run_cli("sort --format binary --input " + bin.string());
  CHECK(r.exit_code == 2);
}

TEST_CASE("every variant sorts through the cli", "[cli]") {
  const fs::path in = write_file("variants.txt", "9\n1\n5\n5\n3\n");
  for (const std::string v : {"sequential", "recursive", "exact-epsilon"}) {
    const CliResult r =
        run_cli("sort --variant " + v + " --input " + in.string());
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out == "1\n3\n5\n5\n9\n");
  }
}

TEST_CASE("small word widths reject out-of-universe values", "[cli]") {
  const fs::path in = write_file("wide.txt", "300\n1\n");
  const CliResult r = run_cli("sort --w 8 --input " + in.string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("300") != std::string::npos);
}

TEST_CASE("trace emits one JSON line per pass", "[cli]") {
  const fs::path in = write_file("trace.txt", "5\n3\n5\n9\n3\n3\n120\n5\n");
  const CliResult r = run_cli("trace --w 8 --input " + in.string());
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string first, second, extra;
  REQUIRE(std::getline(lines, first));
  REQUIRE(std::getline(lines, second));
  CHECK_FALSE(std::getline(lines, extra));
  CHECK(first.find("\"pass\":1") != std::string::npos);
  CHECK(first.find("\"n_d\":3") != std::string::npos);
  CHECK(first.find("\"n_c\":4") != std::string::npos);
  CHECK(first.find("\"n_d_prime\":1") != std::string::npos);
}

TEST_CASE("a sorted distinct full-range input traces a single pass", "[cli]") {
  const fs::path in = write_file("onepass.txt", "0\n1\n2\n3\n4\n5\n6\n7\n");
  // with no reserved prefix the whole range fits one practiced interval
  const CliResult r = run_cli("trace --variant exact-epsilon --w 8 --input " +
                              in.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("\"n_d_prime\":0") != std::string::npos);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1);

  // the sequential driver reserves a slot up front, so the interval top
  // falls out and a trivial second pass picks it up
  const CliResult rs = run_cli("trace --w 8 --input " + in.string());
  REQUIRE(rs.exit_code == 0);
  CHECK(std::count(rs.out.begin(), rs.out.end(), '\n') == 2);
}

TEST_CASE("bench emits verified csv rows", "[cli]") {
  const CliResult r = run_cli(
      "bench --dist uniform --n 512 --beta 1 --algo sequential "
      "--repetitions 1 --seed 42");
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string header, row;
  REQUIRE(std::getline(lines, header));
  REQUIRE(std::getline(lines, row));
  CHECK(header ==
        "algorithm,n,m,beta,dist,seed,passes,scanned_words,wall_nanos,"
        "verified");
  CHECK(row.rfind("sequential,512,512,1,uniform,42,", 0) == 0);
  CHECK(row.find(",true") != std::string::npos);
}

TEST_CASE("bench expands --algo all", "[cli]") {
  const CliResult r = run_cli(
      "bench --dist uniform --n 128 --beta 1 --algo all --repetitions 1");
  REQUIRE(r.exit_code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1 + 6);
}

TEST_CASE("bench emits json lines on request", "[cli]") {
  const CliResult r = run_cli(
      "bench --dist sorted --n 64 --beta 1 --algo radix --repetitions 1 "
      "--emit jsonl");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("{\"algorithm\":\"radix\",\"n\":64,", 0) == 0);
  CHECK(r.out.find("\"verified\":true") != std::string::npos);
}

TEST_CASE("usage errors exit with code one", "[cli]") {
  CHECK(run_cli("bench --beta 0").exit_code == 1);
  CHECK(run_cli("frobnicate").exit_code == 1);
  CHECK(run_cli("sort --format nonsense /dev/null").exit_code == 1);
}
