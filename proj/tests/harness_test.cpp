#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <vector>

#include "assort/harness.hpp"

using namespace assort;

TEST_CASE("oracle sorts a copy", "[harness]") {
  const std::vector<Word> in = {3, 1, 2};
  CHECK(oracle_sort(in) == std::vector<Word>{1, 2, 3});
  CHECK(oracle_sort(std::vector<Word>{}).empty());
  const std::vector<Word> example = {5, 3, 5, 9, 3, 3, 120, 5};
  CHECK(oracle_sort(example) == std::vector<Word>{3, 3, 3, 5, 5, 5, 9, 120});
}

TEST_CASE("generation is deterministic per seed", "[harness]") {
  const WordModel m(64);
  for (const Distribution d :
       {Distribution::uniform, Distribution::exponential,
        Distribution::adversarial, Distribution::bestcase,
        Distribution::all_equal, Distribution::sorted_asc,
        Distribution::reverse}) {
    const GeneratorSpec spec{d, 500, 1000, 99};
    const auto a = generate(spec, m);
    const auto b = generate(spec, m);
    REQUIRE(a == b);
    REQUIRE(a.size() == 500);
    REQUIRE(std::all_of(a.begin(), a.end(), [](Word v) { return v < 1000; }));
  }
}

TEST_CASE("generation rejects ranges past the value limit", "[harness]") {
  const WordModel m(8);
  GeneratorSpec spec{Distribution::uniform, 10, 129, 1};
  CHECK_THROWS_AS(generate(spec, m), std::invalid_argument);
  spec.m = 0;
  CHECK_THROWS_AS(generate(spec, m), std::invalid_argument);
}

TEST_CASE("sorted and reverse generators are monotone", "[harness]") {
  const WordModel m(64);
  const auto asc = generate({Distribution::sorted_asc, 100, 1000, 1}, m);
  CHECK(std::is_sorted(asc.begin(), asc.end()));
  auto desc = generate({Distribution::reverse, 100, 1000, 1}, m);
  std::reverse(desc.begin(), desc.end());
  CHECK(desc == asc);
}

TEST_CASE("adversarial input feeds one integer per pass", "[harness]") {
  const auto one_per_pass = [](const WordModel& m, const GeneratorSpec& spec) {
    std::vector<Word> buf = generate(spec, m);
    const std::vector<Word> expect = oracle_sort(buf);
    std::vector<PassStats> trace;
    sort_sequential(std::span<Word>(buf), {0, buf.size()}, m, {},
                    [&](const PassStats& s) { trace.push_back(s); });
    REQUIRE(buf == expect);
    REQUIRE(trace.size() >= 2);
    for (std::size_t k = 0; k + 1 < trace.size(); ++k)
      REQUIRE(trace[k].n_d + trace[k].n_c == 1);
  };
  one_per_pass(WordModel(16), {Distribution::adversarial, 64, 256, 7});
  one_per_pass(WordModel(8), {Distribution::adversarial, 8, 64, 7});
}

TEST_CASE("bestcase input sorts in at most two passes", "[harness]") {
  for (const unsigned w : {11u, 64u}) {
    const WordModel m(w);
    const GeneratorSpec spec{Distribution::bestcase, 1024, 1024, 5};
    std::vector<Word> buf = generate(spec, m);
    const std::vector<Word> expect = oracle_sort(buf);
    const SortReport rep =
        sort_sequential(std::span<Word>(buf), {0, buf.size()}, m);
    REQUIRE(buf == expect);
    REQUIRE(rep.passes <= 2);
  }
}

TEST_CASE("baselines agree with the oracle", "[harness]") {
  const WordModel m(64);
  std::mt19937_64 eng(67);
  for (int trial = 0; trial < 50; ++trial) {
    const GeneratorSpec spec{Distribution::uniform, eng() % 1000,
                             1 + eng() % 5000, eng()};
    const auto input = generate(spec, m);
    const auto expect = oracle_sort(input);
    CHECK(baseline_counting_sort(input, spec.m) == expect);
    CHECK(baseline_radix_sort(input) == expect);
  }
}

TEST_CASE("counting sort enforces its memory cap", "[harness]") {
  const std::vector<Word> in = {1, 2, 3};
  CHECK_THROWS_AS(baseline_counting_sort(in, 1000, 100),
                  std::invalid_argument);
}

TEST_CASE("benchmark rows are always verified", "[harness]") {
  const WordModel m(64);
  const GeneratorSpec specs[] = {{Distribution::uniform, 4096, 4096, 3}};
  const std::string algos[] = {"sequential", "recursive", "exact-epsilon",
                               "counting", "radix", "std"};
  const auto rows = run_benchmark(specs, algos, 1, m);
  REQUIRE(rows.size() == 6);
  for (const auto& row : rows) {
    CHECK(row.verified);
    CHECK(row.n == 4096);
    CHECK(row.beta == 1.0);
  }
  CHECK(rows[0].passes >= 1);       // the in-place variants report passes
  CHECK(rows[3].passes == 0);       // baselines do not

  std::ostringstream csv;
  write_csv_header(csv);
  write_csv_row(csv, rows[0]);
  CHECK(csv.str().rfind("algorithm,n,m,beta,dist,seed,passes,scanned_words,"
                        "wall_nanos,verified\n",
                        0) == 0);
  CHECK(csv.str().find("sequential,4096,4096,1,uniform,3,") !=
        std::string::npos);
  CHECK(csv.str().find(",true\n") != std::string::npos);
}

TEST_CASE("benchmark rows stay inside the average-case pass bound",
          "[harness]") {
  const WordModel m(64);
  const GeneratorSpec specs[] = {{Distribution::uniform, 1 << 16, 1 << 16, 9}};
  const std::string algos[] = {"sequential"};
  const auto rows = run_benchmark(specs, algos, 1, m);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].verified);
  CHECK(rows[0].passes <= 18);  // ceil(log2 n) + 2
}

TEST_CASE("trace lines carry the pass counters", "[harness]") {
  PassStats s;
  s.delta = 3;
  s.epsilon = 1;
  s.n_d = 3;
  s.n_c = 4;
  s.n_d_prime = 1;
  std::ostringstream os;
  write_trace_line(os, 1, s);
  CHECK(os.str() ==
        "{\"pass\":1,\"delta\":3,\"epsilon\":1,\"n_d\":3,\"n_c\":4,"
        "\"n_d_prime\":1,\"epsilon_prime\":0}\n");
}
