#pragma once
// Top-level sorting entry points composing the phases.
//
// sort_sequential  - per pass: practice, store, partition, retrieve, then
//                    shrink to the unsorted tail. On-line: after each pass
//                    another sorted run sits at the front.
// sort_recursive   - practice + store, recurse on the tail (no partition
//                    needed; idles left there are overwritten later), then
//                    retrieve this level's run just before the deeper one.
// sort_exact_epsilon - practice the full interval with no reserved prefix,
//                    count the exact number of heavy nodes, open the
//                    recovery area by shifting, then proceed as sequential.
// sort_full_range  - lifts the tag-bit bound over the whole w-bit universe
//                    by partition-and-shift around 2^{w-1}.
// sort             - dispatch: degenerate sizes by direct comparison, then
//                    the selected variant, full-range wrapped by default.
//
// The entry points allocate nothing; per-pass statistics stream through an
// optional callback instead of being collected.

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>

#include "phases.hpp"

namespace assort {

enum class Variant { sequential, recursive, exact_epsilon };
enum class Tagging { msb, sign };

struct SortOptions {
  Variant variant = Variant::sequential;
  Tagging tagging = Tagging::msb;
  bool full_range = true;     // partition-and-shift around the tag bit
  bool skip_min_max = false;  // start at delta = 0; practicing finds delta'
};

struct SortReport {
  std::uint64_t passes = 0;         // iterations or recursion depth
  std::uint64_t scanned_words = 0;  // sum of region lengths over all passes
};

namespace detail {

struct NoopPassSink {
  void operator()(const PassStats&) const noexcept {}
};

inline std::pair<Word, Word> min_max_scan(std::span<const Word> r) {
  Word lo = r[0], hi = r[0];
  for (const Word v : r) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

inline Word max_scan(std::span<const Word> r) {
  Word hi = r[0];
  for (const Word v : r) hi = std::max(hi, v);
  return hi;
}

/// Direct comparison for regions the interval machinery cannot cover
/// (n <= 2). Values below `delta` are stale idles of an enclosing pass;
/// they sort to the front and are excluded from the live count.
inline PassStats sort_tiny(std::span<Word> r, Word delta,
                           std::uint64_t& live_out) {
  PassStats s;
  s.delta = delta;
  s.delta_prime = delta;
  if (r.empty()) {
    live_out = 0;
    return s;
  }
  if (r.size() == 2 && r[0] > r[1]) std::swap(r[0], r[1]);
  std::uint64_t live = 0;
  for (const Word v : r)
    if (v >= delta) ++live;
  if (live > 0) {
    const std::size_t first = r.size() - live;
    s.delta = r[first];
    s.n_d = (live == 2 && r[0] == r[1]) ? 1 : live;
    s.n_c = live - s.n_d;
  }
  live_out = live;
  return s;
}

template <class Tag, class OnPass>
SortReport sort_sequential_impl(std::span<Word> buffer, Region region,
                                const WordModel& model,
                                const SortOptions& opts, OnPass& on_pass) {
  SortReport report;
  Region cur = region;
  Word delta = 0;
  Word delta_prime_init = model.word_mask();

  if (!opts.skip_min_max && cur.length() > 2) {
    const auto [lo, hi] = min_max_scan(slice(buffer, cur));
    if (hi >= model.value_limit())
      throw std::invalid_argument(
          "value uses the tag bit; sort through the full-range wrapper");
    delta = lo;
    delta_prime_init = hi;
  }

  for (;;) {
    const std::uint64_t n = cur.length();
    if (n <= 2) {
      std::uint64_t live = 0;
      const PassStats s = sort_tiny(slice(buffer, cur), delta, live);
      ++report.passes;
      report.scanned_words += n;
      on_pass(s);
      break;
    }
    const IntervalParams params = IntervalParams::standard(model, n, delta);
    PassStats stats =
        practice<Tag>(buffer, cur, params, model, delta_prime_init);
    store<Tag>(buffer, cur, stats, params, model);
    const Region zone{cur.lo + stats.n_d + stats.epsilon_prime, cur.hi};
    partition_idle(buffer, zone, params);
    retrieve<Tag>(buffer, cur, stats, params, model);
    ++report.passes;
    report.scanned_words += n;
    on_pass(stats);
    if (stats.n_d_prime == 0) break;
    cur.lo += stats.n_d + stats.n_c;
    delta = stats.delta_prime;
    delta_prime_init = opts.skip_min_max ? model.word_mask()
                                         : max_scan(slice(buffer, cur));
  }
  return report;
}

template <class Tag, class OnPass>
std::uint64_t sort_recursive_level(std::span<Word> buffer, Region region,
                                   Word delta, Word delta_prime_init,
                                   const WordModel& model,
                                   const SortOptions& opts, SortReport& report,
                                   std::uint64_t depth, OnPass& on_pass) {
  const std::uint64_t n = region.length();
  report.passes = std::max(report.passes, depth);
  report.scanned_words += n;
  if (n <= 2) {
    std::uint64_t live = 0;
    const PassStats s = sort_tiny(slice(buffer, region), delta, live);
    on_pass(s);
    return live;
  }
  const IntervalParams params = IntervalParams::standard(model, n, delta);
  PassStats stats = practice<Tag>(buffer, region, params, model,
                                  delta_prime_init);
  store<Tag>(buffer, region, stats, params, model);
  on_pass(stats);
  std::uint64_t deeper = 0;
  if (stats.n_d_prime > 0) {
    const Region child{region.lo + stats.n_d + stats.epsilon_prime, region.hi};
    const Word child_init = opts.skip_min_max
                                ? model.word_mask()
                                : max_scan(slice(buffer, child));
    deeper = sort_recursive_level<Tag>(buffer, child, stats.delta_prime,
                                       child_init, model, opts, report,
                                       depth + 1, on_pass);
  }
  // This level's run ends right where the deeper runs begin.
  const std::int64_t write_last =
      static_cast<std::int64_t>(n) - static_cast<std::int64_t>(deeper) - 1;
  retrieve<Tag>(buffer, region, stats, params, model, write_last);
  return deeper + stats.n_d + stats.n_c;
}

template <class Tag, class OnPass>
SortReport sort_recursive_impl(std::span<Word> buffer, Region region,
                               const WordModel& model, const SortOptions& opts,
                               OnPass& on_pass) {
  SortReport report;
  Word delta = 0;
  Word delta_prime_init = model.word_mask();
  if (!opts.skip_min_max && region.length() > 2) {
    const auto [lo, hi] = min_max_scan(slice(buffer, region));
    if (hi >= model.value_limit())
      throw std::invalid_argument(
          "value uses the tag bit; sort through the full-range wrapper");
    delta = lo;
    delta_prime_init = hi;
  }
  const std::uint64_t sorted = sort_recursive_level<Tag>(
      buffer, region, delta, delta_prime_init, model, opts, report, 1, on_pass);
  if (sorted != region.length())
    throw corruption_error("recursive sort lost track of its integers");
  return report;
}

template <class Tag, class OnPass>
SortReport sort_exact_epsilon_impl(std::span<Word> buffer, Region region,
                                   const WordModel& model,
                                   const SortOptions& opts, OnPass& on_pass) {
  SortReport report;
  Region cur = region;
  Word delta = 0;
  Word delta_prime_init = model.word_mask();

  if (!opts.skip_min_max && cur.length() > 2) {
    const auto [lo, hi] = min_max_scan(slice(buffer, cur));
    if (hi >= model.value_limit())
      throw std::invalid_argument(
          "value uses the tag bit; sort through the full-range wrapper");
    delta = lo;
    delta_prime_init = hi;
  }

  for (;;) {
    const std::uint64_t n = cur.length();
    if (n <= 2) {
      std::uint64_t live = 0;
      const PassStats s = sort_tiny(slice(buffer, cur), delta, live);
      ++report.passes;
      report.scanned_words += n;
      on_pass(s);
      break;
    }
    IntervalParams params = IntervalParams::full_width(model, n, delta);
    PassStats stats =
        practice<Tag>(buffer, cur, params, model, delta_prime_init);
    retrieve_tail_and_shift<Tag>(buffer, cur, stats, params, model);
    store<Tag>(buffer, cur, stats, params, model);
    const Region zone{cur.lo + stats.n_d + stats.epsilon_prime, cur.hi};
    partition_idle(buffer, zone, params);
    retrieve<Tag>(buffer, cur, stats, params, model);
    ++report.passes;
    report.scanned_words += n;
    on_pass(stats);
    if (stats.n_d_prime == 0) break;
    cur.lo += stats.n_d + stats.n_c;
    delta = stats.delta_prime;
    delta_prime_init = opts.skip_min_max ? model.word_mask()
                                         : max_scan(slice(buffer, cur));
  }
  return report;
}

template <class Tag, class OnPass>
SortReport sort_variant_dispatch(std::span<Word> buffer, Region region,
                                 const WordModel& model,
                                 const SortOptions& opts, OnPass& on_pass) {
  switch (opts.variant) {
    case Variant::recursive:
      return sort_recursive_impl<Tag>(buffer, region, model, opts, on_pass);
    case Variant::exact_epsilon:
      return sort_exact_epsilon_impl<Tag>(buffer, region, model, opts, on_pass);
    case Variant::sequential:
    default:
      return sort_sequential_impl<Tag>(buffer, region, model, opts, on_pass);
  }
}

template <class Tag, class OnPass>
SortReport sort_full_range_impl(std::span<Word> buffer, Region region,
                                const WordModel& model,
                                const SortOptions& opts, OnPass& on_pass) {
  auto r = slice(buffer, region);
  const Word limit = model.value_limit();
  for (const Word v : r)
    if (v > model.word_mask())
      throw std::invalid_argument("value outside the w-bit universe");

  // Unstable partition: words below 2^{w-1} first, the rest shifted down
  // into the sortable range and lifted back afterwards.
  std::size_t lo = 0;
  std::size_t hi = r.size();
  while (lo < hi) {
    if (r[lo] < limit) {
      ++lo;
    } else if (r[hi - 1] >= limit) {
      --hi;
    } else {
      std::swap(r[lo], r[hi - 1]);
      ++lo;
      --hi;
    }
  }
  for (std::size_t k = lo; k < r.size(); ++k) r[k] -= limit;

  SortReport report;
  report.scanned_words = r.size();
  const auto run_half = [&](Region half) {
    if (half.length() == 0) return;
    SortReport part;
    if (half.length() <= 2) {
      std::uint64_t live = 0;
      const PassStats s = sort_tiny(slice(buffer, half), 0, live);
      part.passes = 1;
      part.scanned_words = half.length();
      on_pass(s);
    } else {
      part = sort_variant_dispatch<Tag>(buffer, half, model, opts, on_pass);
    }
    report.passes += part.passes;
    report.scanned_words += part.scanned_words;
  };
  run_half({region.lo, region.lo + lo});
  run_half({region.lo + lo, region.hi});

  for (std::size_t k = lo; k < r.size(); ++k) r[k] += limit;
  return report;
}

}  // namespace detail

/// Sequential driver. Values must be untagged (below 2^{w-1}).
template <class OnPass = detail::NoopPassSink>
SortReport sort_sequential(std::span<Word> buffer, Region region,
                           const WordModel& model, const SortOptions& opts = {},
                           OnPass on_pass = {}) {
  if (opts.tagging == Tagging::sign)
    return detail::sort_sequential_impl<SignTagging>(buffer, region, model,
                                                     opts, on_pass);
  return detail::sort_sequential_impl<MsbTagging>(buffer, region, model, opts,
                                                  on_pass);
}

/// Recursive driver; depth is bounded by the sequential pass count.
template <class OnPass = detail::NoopPassSink>
SortReport sort_recursive(std::span<Word> buffer, Region region,
                          const WordModel& model, const SortOptions& opts = {},
                          OnPass on_pass = {}) {
  if (opts.tagging == Tagging::sign)
    return detail::sort_recursive_impl<SignTagging>(buffer, region, model,
                                                    opts, on_pass);
  return detail::sort_recursive_impl<MsbTagging>(buffer, region, model, opts,
                                                 on_pass);
}

/// Exact recovery-area driver.
template <class OnPass = detail::NoopPassSink>
SortReport sort_exact_epsilon(std::span<Word> buffer, Region region,
                              const WordModel& model,
                              const SortOptions& opts = {},
                              OnPass on_pass = {}) {
  if (opts.tagging == Tagging::sign)
    return detail::sort_exact_epsilon_impl<SignTagging>(buffer, region, model,
                                                        opts, on_pass);
  return detail::sort_exact_epsilon_impl<MsbTagging>(buffer, region, model,
                                                     opts, on_pass);
}

/// Sorts over the full w-bit universe: partitions around 2^{w-1}, shifts
/// the upper part down, sorts both parts (sequentially unless the options
/// select another variant), and shifts back.
template <class OnPass = detail::NoopPassSink>
SortReport sort_full_range(std::span<Word> buffer, const WordModel& model,
                           const SortOptions& opts = {}, OnPass on_pass = {}) {
  const Region all{0, buffer.size()};
  if (buffer.size() <= 2) {
    std::uint64_t live = 0;
    const PassStats s = detail::sort_tiny(buffer, 0, live);
    on_pass(s);
    return {1, buffer.size()};
  }
  if (opts.tagging == Tagging::sign)
    return detail::sort_full_range_impl<SignTagging>(buffer, all, model, opts,
                                                     on_pass);
  return detail::sort_full_range_impl<MsbTagging>(buffer, all, model, opts,
                                                  on_pass);
}

/// Main entry point. Degenerate sizes go straight to direct comparison;
/// everything else to the selected variant, wrapped for the full universe
/// unless the options say otherwise.
template <class OnPass = detail::NoopPassSink>
SortReport sort(std::span<Word> buffer, const WordModel& model,
                const SortOptions& opts = {}, OnPass on_pass = {}) {
  if (buffer.size() <= 2) {
    std::uint64_t live = 0;
    const PassStats s = detail::sort_tiny(buffer, 0, live);
    on_pass(s);
    return {1, buffer.size()};
  }
  if (opts.full_range) return sort_full_range(buffer, model, opts, on_pass);
  const Region all{0, buffer.size()};
  if (opts.tagging == Tagging::sign)
    return detail::sort_variant_dispatch<SignTagging>(buffer, all, model, opts,
                                                      on_pass);
  return detail::sort_variant_dispatch<MsbTagging>(buffer, all, model, opts,
                                                   on_pass);
}

}  // namespace assort
