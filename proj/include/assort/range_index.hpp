#pragma once
// Associative range queries over a practiced interval.
//
// Only the distinct values of the interval are practiced, into the upper
// half of the region; each node's record links to the next node created,
// so one chain walk enumerates the distinct values in encounter order.
// With counts enabled, every further occurrence is practiced into the
// lower half as a counting node at the matching offset, making occurrence
// queries a two-word probe. Tearing the index down recalls every node to
// its value, restoring the original multiset so another interval can be
// queried next.

#include <cstdint>
#include <span>

#include "phases.hpp"
#include "word_model.hpp"

namespace assort {

struct RangeIndex {
  static constexpr std::uint64_t npos = ~std::uint64_t{0};

  Region region;                   // buffer slice holding both subspaces
  Word delta = 0;                  // interval base
  std::uint64_t interval_len = 0;  // values covered: [delta, delta+interval_len)
  std::uint64_t primary_base = 0;  // first position of the distinct subspace
  std::uint64_t head = npos;       // first created node, npos when empty
  std::uint64_t n_d = 0;
  bool has_counts = false;
};

/// Counts buffer words read by a query; used to pin the O(1) probe bound.
struct ProbeCounter {
  std::uint64_t reads = 0;
};

inline RangeIndex build_range_index(std::span<Word> buffer, Region region,
                                    Word delta, std::uint64_t interval_len,
                                    bool with_counts, const WordModel& model) {
  using Tag = MsbTagging;
  auto r = detail::slice(buffer, region);
  const std::uint64_t n = r.size();
  if (n > model.value_limit())
    throw std::invalid_argument("region longer than 2^{w-1}");
  const std::uint64_t half = n / 2;
  if (interval_len > half)
    throw std::invalid_argument(
        "interval too long: the subspaces would overlap");

  RangeIndex idx;
  idx.region = region;
  idx.delta = delta;
  idx.interval_len = interval_len;
  idx.primary_base = half;
  idx.has_counts = with_counts;

  std::uint64_t prev = RangeIndex::npos;
  std::uint64_t i = 0;
  while (i < n) {
    const Word x = r[i];
    if (Tag::is_node(x, model)) {
      ++i;
      continue;
    }
    if (x < delta || x - delta >= interval_len) {
      ++i;
      continue;
    }
    const std::uint64_t off = x - delta;
    const std::uint64_t j = half + off;
    if (!Tag::is_node(r[j], model)) {
      // First occurrence: new chain node, linked from the previous one.
      const Word displaced = r[j];
      r[i] = displaced;
      r[j] = Tag::tag_payload(j, model);  // self-link until a successor exists
      if (prev == RangeIndex::npos)
        idx.head = j;
      else
        r[prev] = Tag::tag_payload(j, model);
      prev = j;
      ++idx.n_d;
      if (j <= i) ++i;
    } else if (with_counts) {
      const std::uint64_t jj = off;
      if (!Tag::is_node(r[jj], model)) {
        const Word displaced = r[jj];
        r[i] = displaced;
        r[jj] = Tag::tag_payload(1, model);
        if (jj <= i) ++i;
      } else {
        r[jj] = Tag::bump(r[jj], model);
        ++i;
      }
    } else {
      ++i;  // idle occurrence, left in place
    }
  }
  return idx;
}

namespace detail {
inline void check_query_value(const RangeIndex& idx, Word value) {
  if (value < idx.delta || value - idx.delta >= idx.interval_len)
    throw std::invalid_argument("value outside the indexed interval");
}
inline Word probe(std::span<const Word> r, std::uint64_t pos,
                  ProbeCounter* probes) {
  if (probes) ++probes->reads;
  return r[pos];
}
}  // namespace detail

inline bool query_contains(const RangeIndex& idx, std::span<const Word> buffer,
                           Word value, const WordModel& model,
                           ProbeCounter* probes = nullptr) {
  detail::check_query_value(idx, value);
  auto r = buffer.subspan(idx.region.lo, idx.region.length());
  const std::uint64_t pos = idx.primary_base + (value - idx.delta);
  return MsbTagging::is_node(detail::probe(r, pos, probes), model);
}

/// Total occurrences of `value`, in O(1): one probe into the distinct
/// subspace and, when a node is there, one into the counting subspace.
inline std::uint64_t query_count(const RangeIndex& idx,
                                 std::span<const Word> buffer, Word value,
                                 const WordModel& model,
                                 ProbeCounter* probes = nullptr) {
  if (!idx.has_counts)
    throw std::logic_error("index built without the counting subspace");
  detail::check_query_value(idx, value);
  auto r = buffer.subspan(idx.region.lo, idx.region.length());
  const std::uint64_t off = value - idx.delta;
  const Word node = detail::probe(r, idx.primary_base + off, probes);
  if (!MsbTagging::is_node(node, model)) return 0;
  const Word counter = detail::probe(r, off, probes);
  if (!MsbTagging::is_node(counter, model)) return 1;
  return 1 + MsbTagging::payload(counter, model);
}

/// Walks the node chain, yielding the distinct values in creation order.
template <class OutFn>
void enumerate_chain(const RangeIndex& idx, std::span<const Word> buffer,
                     const WordModel& model, OutFn&& out) {
  if (idx.head == RangeIndex::npos) return;
  auto r = buffer.subspan(idx.region.lo, idx.region.length());
  std::uint64_t q = idx.head;
  for (std::uint64_t steps = 0;; ++steps) {
    if (steps >= idx.n_d)
      throw corruption_error("range index: chain longer than its node count");
    out(static_cast<Word>(idx.delta + (q - idx.primary_base)));
    const std::uint64_t next = MsbTagging::payload(r[q], model);
    if (next == q) break;
    if (next < idx.primary_base || next >= idx.primary_base + idx.interval_len)
      throw corruption_error("range index: chain link left the subspace");
    q = next;
  }
}

/// Scans the distinct subspace in position order, yielding the distinct
/// values ascending.
template <class OutFn>
void enumerate_sorted(const RangeIndex& idx, std::span<const Word> buffer,
                      const WordModel& model, OutFn&& out) {
  auto r = buffer.subspan(idx.region.lo, idx.region.length());
  for (std::uint64_t pos = idx.primary_base;
       pos < idx.primary_base + idx.interval_len; ++pos) {
    if (MsbTagging::is_node(r[pos], model))
      out(static_cast<Word>(idx.delta + (pos - idx.primary_base)));
  }
}

/// Recalls every node back to its value. Counting nodes stand for the one
/// occurrence whose word they replaced, so after teardown the buffer is a
/// permutation of the original input.
inline void teardown(RangeIndex& idx, std::span<Word> buffer,
                     const WordModel& model) {
  auto r = detail::slice(buffer, idx.region);
  if (idx.has_counts) {
    for (std::uint64_t jj = 0; jj < idx.interval_len; ++jj) {
      if (MsbTagging::is_node(r[jj], model))
        r[jj] = idx.delta + jj;
    }
  }
  if (idx.head != RangeIndex::npos) {
    std::uint64_t q = idx.head;
    for (std::uint64_t steps = 0;; ++steps) {
      if (steps >= idx.n_d)
        throw corruption_error("range index: chain longer than its node count");
      const std::uint64_t next = MsbTagging::payload(r[q], model);
      r[q] = idx.delta + (q - idx.primary_base);
      if (next == q) break;
      if (next < idx.primary_base ||
          next >= idx.primary_base + idx.interval_len)
        throw corruption_error("range index: chain link left the subspace");
      q = next;
    }
  }
  idx.head = RangeIndex::npos;
  idx.n_d = 0;
  idx.has_counts = false;
}

}  // namespace assort
