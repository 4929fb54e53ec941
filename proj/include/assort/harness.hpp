#pragma once
// Verification and measurement: the reference oracle, seeded input
// generators for the regimes the sorter is analysed under, baseline sorts
// with conventional auxiliary memory, and a benchmark runner that refuses
// to report an unverified row.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "drivers.hpp"

namespace assort {

enum class Distribution {
  uniform,
  exponential,
  adversarial,
  bestcase,
  all_equal,
  sorted_asc,
  reverse
};

inline std::string_view to_string(Distribution d) {
  switch (d) {
    case Distribution::uniform: return "uniform";
    case Distribution::exponential: return "exponential";
    case Distribution::adversarial: return "adversarial";
    case Distribution::bestcase: return "bestcase";
    case Distribution::all_equal: return "all-equal";
    case Distribution::sorted_asc: return "sorted";
    case Distribution::reverse: return "reverse";
  }
  return "?";
}

inline Distribution parse_distribution(std::string_view s) {
  if (s == "uniform") return Distribution::uniform;
  if (s == "exponential") return Distribution::exponential;
  if (s == "adversarial") return Distribution::adversarial;
  if (s == "bestcase") return Distribution::bestcase;
  if (s == "all-equal") return Distribution::all_equal;
  if (s == "sorted") return Distribution::sorted_asc;
  if (s == "reverse") return Distribution::reverse;
  throw std::invalid_argument("unknown distribution: " + std::string(s));
}

struct GeneratorSpec {
  Distribution dist = Distribution::uniform;
  std::uint64_t n = 0;
  Word m = 1;  // values drawn from [0, m)
  std::uint64_t seed = 1;
};

/// Ground truth: a plain comparison sort of a copy. Shares nothing with
/// the in-place code paths.
inline std::vector<Word> oracle_sort(std::span<const Word> values) {
  std::vector<Word> out(values.begin(), values.end());
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

inline double unit_open(std::mt19937_64& eng) {
  // (0, 1]: never zero, so logarithms stay finite
  return (static_cast<double>(eng() >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace detail

/// Deterministic input generation. The adversarial construction places one
/// value per pass window so each pass practices exactly one integer until a
/// final run of duplicates; it mirrors the interval sizing of the sorter
/// for the given word model, which is why the model is a parameter.
inline std::vector<Word> generate(const GeneratorSpec& spec,
                                  const WordModel& model) {
  if (spec.m == 0) throw std::invalid_argument("empty value universe");
  if (spec.m > model.value_limit())
    throw std::invalid_argument("m exceeds 2^{w-1}");
  std::mt19937_64 eng(spec.seed);
  std::vector<Word> vals;
  vals.reserve(spec.n);

  switch (spec.dist) {
    case Distribution::uniform:
      for (std::uint64_t k = 0; k < spec.n; ++k) vals.push_back(eng() % spec.m);
      break;
    case Distribution::exponential: {
      // truncated geometric-style decay over [0, m) with mean m/8
      const double mu = static_cast<double>(spec.m) / 8.0;
      for (std::uint64_t k = 0; k < spec.n; ++k) {
        for (;;) {
          const auto v = static_cast<Word>(-std::log(detail::unit_open(eng)) * mu);
          if (v < spec.m) {
            vals.push_back(v);
            break;
          }
        }
      }
      break;
    }
    case Distribution::adversarial: {
      Word v = 0;
      while (vals.size() < spec.n) {
        const std::uint64_t region_len = spec.n - vals.size();
        vals.push_back(v);
        if (region_len <= 2) break;  // the driver direct-sorts such tails
        const std::uint64_t eps = effective_epsilon(region_len, model);
        const Word next = v + static_cast<Word>(region_len - eps);
        if (next >= spec.m) break;  // no room for another window
        v = next;
      }
      while (vals.size() < spec.n) vals.push_back(v);
      std::shuffle(vals.begin(), vals.end(), eng);
      break;
    }
    case Distribution::bestcase: {
      // all but one value in the lower half of the first interval
      const Word upper = std::min<Word>(spec.m, std::max<Word>(spec.n / 2, 1));
      for (std::uint64_t k = 0; k + 1 < spec.n; ++k)
        vals.push_back(eng() % upper);
      if (spec.n > 0) vals.push_back(spec.m - 1);
      std::shuffle(vals.begin(), vals.end(), eng);
      break;
    }
    case Distribution::all_equal: {
      const Word v = eng() % spec.m;
      vals.assign(spec.n, v);
      break;
    }
    case Distribution::sorted_asc:
      for (std::uint64_t k = 0; k < spec.n; ++k)
        vals.push_back(static_cast<Word>(
            (static_cast<unsigned __int128>(k) * spec.m) / spec.n));
      break;
    case Distribution::reverse:
      for (std::uint64_t k = spec.n; k-- > 0;)
        vals.push_back(static_cast<Word>(
            (static_cast<unsigned __int128>(k) * spec.m) / spec.n));
      break;
  }
  return vals;
}

/// Frequency-counting value sort: O(n+m) time, m auxiliary words.
inline std::vector<Word> baseline_counting_sort(
    std::span<const Word> values, Word m,
    std::size_t memory_cap = std::size_t{1} << 28) {
  if (m > memory_cap)
    throw std::invalid_argument("counting sort: range exceeds the memory cap");
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(m), 0);
  for (const Word v : values) {
    if (v >= m) throw std::invalid_argument("counting sort: value >= m");
    ++counts[static_cast<std::size_t>(v)];
  }
  std::vector<Word> out;
  out.reserve(values.size());
  for (std::size_t v = 0; v < counts.size(); ++v)
    out.insert(out.end(), counts[v], static_cast<Word>(v));
  return out;
}

/// Byte-wise LSD radix sort: O(n) time, n auxiliary words.
inline std::vector<Word> baseline_radix_sort(std::span<const Word> values) {
  std::vector<Word> a(values.begin(), values.end());
  std::vector<Word> tmp(a.size());
  for (unsigned pass = 0; pass < 8; ++pass) {
    const unsigned shift = pass * 8;
    std::size_t hist[256] = {};
    for (const Word v : a) ++hist[(v >> shift) & 0xff];
    std::size_t offs[256];
    std::size_t sum = 0;
    for (unsigned b = 0; b < 256; ++b) {
      offs[b] = sum;
      sum += hist[b];
    }
    for (const Word v : a) tmp[offs[(v >> shift) & 0xff]++] = v;
    a.swap(tmp);
  }
  return a;
}

struct BenchmarkRow {
  std::string algorithm;
  std::uint64_t n = 0;
  Word m = 0;
  double beta = 0.0;
  std::string dist;
  std::uint64_t seed = 0;
  std::uint64_t passes = 0;
  std::uint64_t scanned_words = 0;
  std::uint64_t wall_nanos = 0;
  bool verified = false;
};

inline const std::vector<std::string>& registered_algorithms() {
  static const std::vector<std::string> algos = {
      "sequential", "recursive", "exact-epsilon", "counting", "radix", "std"};
  return algos;
}

namespace detail {

inline SortReport run_algorithm(const std::string& algo, std::vector<Word>& buf,
                                Word m, const WordModel& model) {
  SortOptions opts;
  opts.full_range = false;
  if (algo == "sequential") {
    opts.variant = Variant::sequential;
    return sort_sequential(std::span<Word>(buf), {0, buf.size()}, model, opts);
  }
  if (algo == "recursive") {
    opts.variant = Variant::recursive;
    return sort_recursive(std::span<Word>(buf), {0, buf.size()}, model, opts);
  }
  if (algo == "exact-epsilon") {
    opts.variant = Variant::exact_epsilon;
    return sort_exact_epsilon(std::span<Word>(buf), {0, buf.size()}, model,
                              opts);
  }
  if (algo == "counting") {
    buf = baseline_counting_sort(buf, m);
    return {};
  }
  if (algo == "radix") {
    buf = baseline_radix_sort(buf);
    return {};
  }
  if (algo == "std") {
    std::sort(buf.begin(), buf.end());
    return {};
  }
  throw std::invalid_argument("unknown algorithm: " + algo);
}

}  // namespace detail

/// Runs every (spec, algorithm) cell: generate, sort, verify against the
/// oracle, time over `repetitions` runs and keep the median. A verification
/// failure aborts the whole run; no row is ever reported unverified.
inline std::vector<BenchmarkRow> run_benchmark(
    std::span<const GeneratorSpec> specs,
    std::span<const std::string> algorithms, unsigned repetitions,
    const WordModel& model) {
  if (repetitions == 0) repetitions = 1;
  std::vector<BenchmarkRow> rows;
  for (const GeneratorSpec& spec : specs) {
    const std::vector<Word> input = generate(spec, model);
    const std::vector<Word> expected = oracle_sort(input);
    for (const std::string& algo : algorithms) {
      std::vector<std::uint64_t> times;
      times.reserve(repetitions);
      SortReport report;
      for (unsigned rep = 0; rep < repetitions; ++rep) {
        std::vector<Word> buf = input;
        const auto t0 = std::chrono::steady_clock::now();
        report = detail::run_algorithm(algo, buf, spec.m, model);
        const auto t1 = std::chrono::steady_clock::now();
        times.push_back(static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0)
                .count()));
        if (buf != expected)
          throw std::runtime_error(
              "verification failed: algorithm=" + algo +
              " dist=" + std::string(to_string(spec.dist)) +
              " n=" + std::to_string(spec.n) + " m=" + std::to_string(spec.m) +
              " seed=" + std::to_string(spec.seed));
      }
      std::sort(times.begin(), times.end());
      BenchmarkRow row;
      row.algorithm = algo;
      row.n = spec.n;
      row.m = spec.m;
      row.beta = spec.n == 0 ? 0.0
                             : static_cast<double>(spec.m) /
                                   static_cast<double>(spec.n);
      row.dist = std::string(to_string(spec.dist));
      row.seed = spec.seed;
      row.passes = report.passes;
      row.scanned_words = report.scanned_words;
      row.wall_nanos = times[times.size() / 2];
      row.verified = true;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

inline void write_csv_header(std::ostream& os) {
  os << "algorithm,n,m,beta,dist,seed,passes,scanned_words,wall_nanos,"
        "verified\n";
}

inline void write_csv_row(std::ostream& os, const BenchmarkRow& r) {
  os << r.algorithm << ',' << r.n << ',' << r.m << ',' << r.beta << ','
     << r.dist << ',' << r.seed << ',' << r.passes << ',' << r.scanned_words
     << ',' << r.wall_nanos << ',' << (r.verified ? "true" : "false") << '\n';
}

inline void write_row_jsonl(std::ostream& os, const BenchmarkRow& r) {
  os << "{\"algorithm\":\"" << r.algorithm << "\",\"n\":" << r.n
     << ",\"m\":" << r.m << ",\"beta\":" << r.beta << ",\"dist\":\"" << r.dist
     << "\",\"seed\":" << r.seed << ",\"passes\":" << r.passes
     << ",\"scanned_words\":" << r.scanned_words
     << ",\"wall_nanos\":" << r.wall_nanos
     << ",\"verified\":" << (r.verified ? "true" : "false") << "}\n";
}

/// One per-pass trace record, as a JSON line.
inline void write_trace_line(std::ostream& os, std::uint64_t pass,
                             const PassStats& s) {
  os << "{\"pass\":" << pass << ",\"delta\":" << s.delta
     << ",\"epsilon\":" << s.epsilon << ",\"n_d\":" << s.n_d
     << ",\"n_c\":" << s.n_c << ",\"n_d_prime\":" << s.n_d_prime
     << ",\"epsilon_prime\":" << s.epsilon_prime << "}\n";
}

}  // namespace assort
