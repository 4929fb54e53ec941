// assort - command line front end: sort integer files, run benchmark
// matrices, and emit per-pass traces.
//
// Exit codes: 0 success, 1 usage, 2 I/O or parse error, 3 verification
// failure.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "assort/assort.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitVerification = 3;

struct IoError {
  std::string message;
};

std::vector<assort::Word> read_text(std::istream& in,
                                    const std::string& name) {
  std::vector<assort::Word> values;
  std::string line;
  std::uint64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t a = line.find_first_not_of(" \t");
    if (a == std::string::npos) continue;
    std::size_t b = line.find_last_not_of(" \t");
    assort::Word v = 0;
    const auto [ptr, ec] =
        std::from_chars(line.data() + a, line.data() + b + 1, v);
    if (ec != std::errc{} || ptr != line.data() + b + 1)
      throw IoError{name + ":" + std::to_string(lineno) +
                    ": cannot parse '" + line + "' as an unsigned integer"};
    values.push_back(v);
  }
  return values;
}

std::vector<assort::Word> read_binary(std::istream& in,
                                      const std::string& name) {
  std::vector<assort::Word> values;
  unsigned char bytes[8];
  for (;;) {
    in.read(reinterpret_cast<char*>(bytes), 8);
    const std::streamsize got = in.gcount();
    if (got == 0) break;
    if (got != 8)
      throw IoError{name + ": trailing " + std::to_string(got) +
                    " bytes; expected whole 8-byte little-endian words"};
    assort::Word v = 0;
    for (int k = 7; k >= 0; --k) v = (v << 8) | bytes[k];
    values.push_back(v);
  }
  return values;
}

void write_text(std::ostream& out, const std::vector<assort::Word>& values) {
  char buf[24];
  for (const assort::Word v : values) {
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    out.write(buf, ptr - buf);
    out.put('\n');
  }
}

void write_binary(std::ostream& out, const std::vector<assort::Word>& values) {
  unsigned char bytes[8];
  for (const assort::Word v : values) {
    for (int k = 0; k < 8; ++k) bytes[k] = (v >> (8 * k)) & 0xff;
    out.write(reinterpret_cast<const char*>(bytes), 8);
  }
}

std::vector<assort::Word> read_input(const std::string& path,
                                     const std::string& format) {
  const bool binary = format == "binary";
  if (path.empty()) {
    return binary ? read_binary(std::cin, "<stdin>")
                  : read_text(std::cin, "<stdin>");
  }
  std::ifstream f(path, binary ? std::ios::binary : std::ios::in);
  if (!f) throw IoError{"cannot open input file: " + path};
  return binary ? read_binary(f, path) : read_text(f, path);
}

void write_output(const std::string& path, const std::string& format,
                  const std::vector<assort::Word>& values) {
  const bool binary = format == "binary";
  if (path.empty()) {
    binary ? write_binary(std::cout, values) : write_text(std::cout, values);
    std::cout.flush();
    return;
  }
  std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
  if (!f) throw IoError{"cannot open output file: " + path};
  binary ? write_binary(f, values) : write_text(f, values);
}

assort::Variant parse_variant(const std::string& s) {
  if (s == "sequential") return assort::Variant::sequential;
  if (s == "recursive") return assort::Variant::recursive;
  if (s == "exact-epsilon") return assort::Variant::exact_epsilon;
  throw IoError{"unknown variant: " + s};
}

void check_universe(const std::vector<assort::Word>& values,
                    const assort::WordModel& model) {
  for (const assort::Word v : values)
    if (v > model.word_mask())
      throw IoError{"value " + std::to_string(v) +
                    " outside the " + std::to_string(model.width()) +
                    "-bit universe"};
}

struct SortConfig {
  std::string input;
  std::string output;
  std::string format = "text";
  std::string variant = "sequential";
  unsigned w = 64;
  bool report = false;
};

int cmd_sort(const SortConfig& cfg) {
  const assort::WordModel model(cfg.w);
  std::vector<assort::Word> values = read_input(cfg.input, cfg.format);
  check_universe(values, model);
  assort::SortOptions opts;
  opts.variant = parse_variant(cfg.variant);
  const assort::SortReport rep =
      assort::sort(std::span<assort::Word>(values), model, opts);
  write_output(cfg.output, cfg.format, values);
  if (cfg.report)
    std::cerr << "passes=" << rep.passes
              << " scanned_words=" << rep.scanned_words
              << " n=" << values.size() << "\n";
  return kExitOk;
}

int cmd_trace(const SortConfig& cfg) {
  const assort::WordModel model(cfg.w);
  std::vector<assort::Word> values = read_input(cfg.input, cfg.format);
  check_universe(values, model);
  assort::SortOptions opts;
  opts.variant = parse_variant(cfg.variant);

  std::ostringstream trace;
  std::uint64_t pass = 0;
  assort::sort(std::span<assort::Word>(values), model, opts,
               [&](const assort::PassStats& s) {
                 assort::write_trace_line(trace, ++pass, s);
               });
  if (cfg.output.empty()) {
    std::cout << trace.str();
    std::cout.flush();
  } else {
    std::ofstream f(cfg.output);
    if (!f) throw IoError{"cannot open output file: " + cfg.output};
    f << trace.str();
  }
  return kExitOk;
}

struct BenchConfig {
  std::string output;
  std::string emit = "csv";
  std::vector<std::string> dists = {"uniform"};
  std::vector<std::uint64_t> ns = {4096};
  std::vector<double> betas;
  std::vector<std::uint64_t> ms;
  std::vector<std::string> algos = {"sequential"};
  std::uint64_t seed = 1;
  unsigned repetitions = 3;
  unsigned w = 64;
};

int cmd_bench(const BenchConfig& cfg) {
  const assort::WordModel model(cfg.w);

  std::vector<std::string> algos;
  for (const std::string& a : cfg.algos) {
    if (a == "all") {
      for (const std::string& r : assort::registered_algorithms())
        algos.push_back(r);
    } else {
      algos.push_back(a);
    }
  }

  std::vector<assort::GeneratorSpec> specs;
  std::uint64_t cell = 0;
  for (const std::string& d : cfg.dists) {
    for (const std::uint64_t n : cfg.ns) {
      std::vector<assort::Word> cell_ms;
      if (!cfg.ms.empty()) {
        cell_ms.assign(cfg.ms.begin(), cfg.ms.end());
      } else if (!cfg.betas.empty()) {
        for (const double beta : cfg.betas)
          cell_ms.push_back(std::max<assort::Word>(
              1, static_cast<assort::Word>(beta * static_cast<double>(n))));
      } else {
        cell_ms.push_back(std::max<assort::Word>(1, n));  // beta = 1
      }
      for (const assort::Word m : cell_ms) {
        assort::GeneratorSpec spec;
        spec.dist = assort::parse_distribution(d);
        spec.n = n;
        spec.m = m;
        spec.seed = cfg.seed + cell++;
        specs.push_back(spec);
      }
    }
  }

  std::vector<assort::BenchmarkRow> rows;
  try {
    rows = assort::run_benchmark(specs, algos, cfg.repetitions, model);
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerification;
  }

  std::ostringstream out;
  if (cfg.emit == "csv") {
    assort::write_csv_header(out);
    for (const auto& row : rows) assort::write_csv_row(out, row);
  } else {
    for (const auto& row : rows) assort::write_row_jsonl(out, row);
  }
  if (cfg.output.empty()) {
    std::cout << out.str();
    std::cout.flush();
  } else {
    std::ofstream f(cfg.output);
    if (!f) throw IoError{"cannot open output file: " + cfg.output};
    f << out.str();
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"in-place associative integer sorting"};
  app.require_subcommand(1);

  SortConfig sort_cfg;
  CLI::App* sort_cmd = app.add_subcommand("sort", "sort a file of integers");
  sort_cmd->add_option("--input,-i", sort_cfg.input, "input file (default stdin)");
  sort_cmd->add_option("--output,-o", sort_cfg.output, "output file (default stdout)");
  sort_cmd->add_option("--format", sort_cfg.format, "text|binary")
      ->check(CLI::IsMember({"text", "binary"}));
  sort_cmd->add_option("--variant", sort_cfg.variant,
                       "sequential|recursive|exact-epsilon")
      ->check(CLI::IsMember({"sequential", "recursive", "exact-epsilon"}));
  sort_cmd->add_option("--w", sort_cfg.w, "simulated word width (testing)")
      ->check(CLI::Range(4u, 64u));
  sort_cmd->add_flag("--report", sort_cfg.report, "print pass summary to stderr");

  SortConfig trace_cfg;
  CLI::App* trace_cmd =
      app.add_subcommand("trace", "sort and emit per-pass JSON lines");
  trace_cmd->add_option("--input,-i", trace_cfg.input, "input file (default stdin)");
  trace_cmd->add_option("--output,-o", trace_cfg.output, "output file (default stdout)");
  trace_cmd->add_option("--format", trace_cfg.format, "text|binary")
      ->check(CLI::IsMember({"text", "binary"}));
  trace_cmd->add_option("--variant", trace_cfg.variant,
                        "sequential|recursive|exact-epsilon")
      ->check(CLI::IsMember({"sequential", "recursive", "exact-epsilon"}));
  trace_cmd->add_option("--w", trace_cfg.w, "simulated word width (testing)")
      ->check(CLI::Range(4u, 64u));
  trace_cmd->add_option("--emit", trace_cfg.format, "jsonl")
      ->check(CLI::IsMember({"jsonl"}));

  BenchConfig bench_cfg;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "run a benchmark matrix, verified rows only");
  bench_cmd->add_option("--output,-o", bench_cfg.output, "output file (default stdout)");
  bench_cmd->add_option("--dist", bench_cfg.dists,
                        "uniform|exponential|adversarial|bestcase|all-equal|"
                        "sorted|reverse");
  bench_cmd->add_option("--n", bench_cfg.ns, "array lengths");
  auto* beta_opt = bench_cmd->add_option("--beta", bench_cfg.betas,
                                         "range/length ratios (m = beta*n)")
                       ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--m", bench_cfg.ms, "value ranges")
      ->excludes(beta_opt);
  bench_cmd
      ->add_option("--algo", bench_cfg.algos,
                   "sequential|recursive|exact-epsilon|counting|radix|std|all")
      ->check(CLI::IsMember({"sequential", "recursive", "exact-epsilon",
                             "counting", "radix", "std", "all"}));
  bench_cmd->add_option("--seed", bench_cfg.seed, "base seed");
  bench_cmd->add_option("--repetitions", bench_cfg.repetitions,
                        "timing repetitions (median reported)");
  bench_cmd->add_option("--w", bench_cfg.w, "simulated word width (testing)")
      ->check(CLI::Range(4u, 64u));
  bench_cmd->add_option("--emit", bench_cfg.emit, "csv|jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sort_cmd->parsed()) return cmd_sort(sort_cfg);
    if (trace_cmd->parsed()) return cmd_trace(trace_cfg);
    if (bench_cmd->parsed()) return cmd_bench(bench_cfg);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;  // semantically bad flag values (m past the universe)
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
