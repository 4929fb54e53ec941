#pragma once
// The three in-place passes of the associative sort: practicing maps each
// distinct value of the interval to a node of the imaginary subspace and
// counts its other occurrences; storing compacts the nodes into the
// short-term memory at the front of the region; retrieval expands the
// records right-to-left into the sorted run. Every pass touches only the
// caller's region plus a handful of counters.

#include <algorithm>
#include <cstdint>
#include <span>

#include "word_model.hpp"

namespace assort {

/// Half-open index range into a caller-owned buffer.
struct Region {
  std::size_t lo = 0;
  std::size_t hi = 0;
  std::size_t length() const noexcept { return hi - lo; }
};

/// Counters produced by one practicing pass and consumed by the later
/// phases and the drivers.
struct PassStats {
  Word delta = 0;                    // interval base of this pass
  Word delta_prime = 0;              // running min of out-of-interval values
  std::uint64_t epsilon = 0;         // recovery-area size used by the hash
  std::uint64_t epsilon_prime = 0;   // nodes that needed a companion word
  std::uint64_t n_d = 0;             // distinct practiced values (nodes)
  std::uint64_t n_c = 0;             // idle words counted into nodes
  std::uint64_t n_d_prime = 0;       // values left out of the interval
};

namespace detail {

inline std::span<Word> slice(std::span<Word> buffer, Region r) {
  if (r.lo > r.hi || r.hi > buffer.size())
    throw std::invalid_argument("region out of bounds");
  return buffer.subspan(r.lo, r.length());
}

inline void check_region(const IntervalParams& params, std::size_t len) {
  if (params.n != len)
    throw std::invalid_argument("interval parameters sized for another region");
}

}  // namespace detail

/// Practicing pass. Walks the region once; each in-interval value either
/// creates the node at its hash position (swapping the displaced word back
/// under the cursor) or bumps the count of an existing node and stays put
/// as an idle word. Values below delta are idles left over from an earlier
/// pass and are skipped; values past the interval top are tallied into
/// n_d' together with their running minimum delta'.
template <class Tag = MsbTagging>
PassStats practice(std::span<Word> buffer, Region region,
                   const IntervalParams& params, const WordModel& model,
                   Word delta_prime_init) {
  auto r = detail::slice(buffer, region);
  detail::check_region(params, r.size());
  const std::uint64_t n = params.n;

  PassStats stats;
  stats.delta = params.delta;
  stats.delta_prime = delta_prime_init;
  stats.epsilon = params.epsilon;

  std::uint64_t i = 0;
  while (i < n) {
    const Word x = r[i];
    if (Tag::is_node(x, model)) {
      if (i < params.epsilon)
        throw corruption_error("practice: node inside the recovery area");
      ++i;
      continue;
    }
    if (x < params.delta) {  // stale idle of an already-sorted interval
      ++i;
      continue;
    }
    const std::uint64_t j = x - params.delta + params.epsilon;
    if (j >= n) {
      ++stats.n_d_prime;
      stats.delta_prime = std::min(stats.delta_prime, x);
      ++i;
      continue;
    }
    const Word occupant = r[j];
    if (!Tag::is_node(occupant, model)) {
      // First occurrence: the hash slot becomes this value's node. The
      // displaced word lands under the cursor; it still needs processing
      // unless it came from a slot the scan already passed.
      r[i] = occupant;
      r[j] = Tag::tag_payload(0, model);
      ++stats.n_d;
      if (j <= i) ++i;
    } else {
      const Word bumped = Tag::bump(occupant, model);
      r[j] = bumped;
      ++stats.n_c;
      if (Tag::payload(bumped, model) == params.threshold)
        ++stats.epsilon_prime;  // this node will need a companion
      ++i;
    }
  }
  return stats;
}

/// Practicing over the machine's signed integer notation: a node counting
/// k idles is the word -(k+1). Same scan, same stats, same final layout of
/// the untagged words.
inline PassStats practice_signed(std::span<Word> buffer, Region region,
                                 const IntervalParams& params,
                                 const WordModel& model,
                                 Word delta_prime_init) {
  return practice<SignTagging>(buffer, region, params, model, delta_prime_init);
}

/// Storing pass. Scans the node zone left to right and compacts the n_d
/// nodes, order preserved, into the short-term memory at the region front.
/// A node whose occurrence count fits next to its position becomes one
/// packed record; a heavier node is written count-only and followed by an
/// untagged companion word holding its position, with the word displaced
/// from the companion slot relocated into the nearest idle slot found by a
/// monotone forward search. Sets stats.epsilon_prime to the number of
/// companions used.
template <class Tag = MsbTagging>
void store(std::span<Word> buffer, Region region, PassStats& stats,
           const IntervalParams& params, const WordModel& model) {
  auto r = detail::slice(buffer, region);
  detail::check_region(params, r.size());
  const std::uint64_t n = params.n;

  std::uint64_t i = params.epsilon;
  std::uint64_t j = 0;
  std::uint64_t remaining = stats.n_d;
  std::uint64_t companions = 0;
  std::uint64_t search = 0;
  bool searched = false;

  while (remaining > 0) {
    if (i >= n) throw corruption_error("store: scan ran past the region");
    const Word x = r[i];
    if (!Tag::is_node(x, model)) {
      ++i;
      continue;
    }
    if (j > i) throw corruption_error("store: record cursor passed the scan");
    const Word count = Tag::payload(x, model);
    if (count + 1 <= params.threshold) {
      const Word rec = pack_record<Tag>(i, count, params, model);
      r[i] = r[j];  // displaced short-term occupant fills the vacated slot
      r[j] = rec;
      ++i;
      ++j;
      --remaining;
    } else {
      // Heavy node: count-only record plus a companion with the position.
      std::swap(r[i], r[j]);
      if (j + 1 > i)
        throw corruption_error("store: companion slot reached the node zone");
      // Resume the idle search from the previous hit, but never inside the
      // already-written records where companions would look like idles.
      std::uint64_t p = searched ? std::max(search, j + 1) : j + 1;
      for (;; ++p) {
        if (p >= n)
          throw corruption_error("store: no idle word for a companion");
        const Word cand = r[p];
        if (!Tag::is_node(cand, model) && cand >= params.delta &&
            cand - params.delta + params.epsilon < n)
          break;  // a true idle of this interval; out-of-interval words stay
      }
      search = p;
      searched = true;
      const Word displaced = r[j + 1];
      if (Tag::is_node(displaced, model))
        throw corruption_error("store: displaced companion word is tagged");
      r[p] = displaced;
      r[j + 1] = static_cast<Word>(i);
      ++companions;
      if (companions > params.epsilon)
        throw corruption_error("store: companions exceeded the recovery area");
      ++i;
      j += 2;
      --remaining;
    }
  }
  stats.epsilon_prime = companions;
}

/// Retrieval pass. Processes the n_d + epsilon' records of the short-term
/// memory right to left; an untagged word there is a companion carrying the
/// position of the count-only record before it. Each record expands into
/// count+1 copies of its value at the right end of the unwritten prefix.
/// `write_last` is the region-relative index the rightmost value lands on;
/// by default the run ends at n_d + n_c - 1. Returns the words written.
template <class Tag = MsbTagging>
std::uint64_t retrieve(std::span<Word> buffer, Region region,
                       const PassStats& stats, const IntervalParams& params,
                       const WordModel& model, std::int64_t write_last = -1) {
  auto r = detail::slice(buffer, region);
  detail::check_region(params, r.size());
  if (stats.n_d == 0) return 0;

  const std::int64_t total =
      static_cast<std::int64_t>(stats.n_d + stats.n_c);
  std::int64_t i = static_cast<std::int64_t>(stats.n_d + stats.epsilon_prime) - 1;
  std::int64_t p = write_last >= 0 ? write_last : total - 1;
  if (i >= static_cast<std::int64_t>(r.size()) || p >= static_cast<std::int64_t>(r.size()))
    throw std::invalid_argument("retrieve: records outside the region");
  const std::int64_t p_floor = p - total;

  while (i >= 0) {
    const Word x = r[static_cast<std::size_t>(i)];
    std::uint64_t position;
    Word count;
    if (Tag::is_node(x, model)) {
      const auto [pos, cnt] = unpack_record<Tag>(x, params, model);
      position = pos;
      count = cnt;
      i -= 1;
    } else {
      position = static_cast<std::uint64_t>(x);
      if (i == 0 || !Tag::is_node(r[static_cast<std::size_t>(i - 1)], model))
        throw corruption_error("retrieve: companion without a record");
      count = Tag::payload(r[static_cast<std::size_t>(i - 1)], model);
      i -= 2;
    }
    const Word value = inverse_hash(position, params);
    if (p - static_cast<std::int64_t>(count) <= i)
      throw corruption_error("retrieve: write cursor crossed the records");
    for (Word t = 0; t <= count; ++t)
      r[static_cast<std::size_t>(p) - static_cast<std::size_t>(t)] = value;
    p -= static_cast<std::int64_t>(count) + 1;
  }
  if (p != p_floor)
    throw corruption_error("retrieve: records disagree with the pass stats");
  return static_cast<std::uint64_t>(total);
}

/// Unstable two-cursor partition of the zone left after storing: idle words
/// of the practiced interval move to the front, out-of-interval words to
/// the back. Returns the split index, relative to the zone.
inline std::uint64_t partition_idle(std::span<Word> buffer, Region zone,
                                    const IntervalParams& params) {
  auto r = detail::slice(buffer, zone);
  const auto in_interval = [&](Word v) {
    return v >= params.delta && v - params.delta + params.epsilon < params.n;
  };
  std::size_t lo = 0;
  std::size_t hi = r.size();
  while (lo < hi) {
    if (in_interval(r[lo])) {
      ++lo;
    } else if (!in_interval(r[hi - 1])) {
      --hi;
    } else {
      std::swap(r[lo], r[hi - 1]);
      ++lo;
      --hi;
    }
  }
  return lo;
}

/// Follow-up to a full-width practice pass (epsilon = 0) that counted the
/// exact number of heavy nodes in stats.epsilon_prime. Converts the nodes
/// in the tail epsilon' positions back to plain values - after the shift
/// those values fall out of the interval, so each folds into n_d' together
/// with its counted idles - then slides every remaining node right by
/// epsilon', opening the recovery area at the front. The hash offset in
/// `params` moves with the subspace.
template <class Tag = MsbTagging>
void retrieve_tail_and_shift(std::span<Word> buffer, Region region,
                             PassStats& stats, IntervalParams& params,
                             const WordModel& model) {
  if (params.epsilon != 0)
    throw std::invalid_argument("tail shift requires a full-width practice");
  auto r = detail::slice(buffer, region);
  detail::check_region(params, r.size());
  const std::uint64_t n = params.n;
  const std::uint64_t shift = stats.epsilon_prime;
  if (shift == 0) return;

  for (std::uint64_t q = n - shift; q < n; ++q) {
    const Word x = r[q];
    if (!Tag::is_node(x, model)) continue;
    const Word count = Tag::payload(x, model);
    const Word value = params.delta + q;  // inverse hash before the shift
    r[q] = value;
    stats.n_d -= 1;
    stats.n_c -= count;
    stats.n_d_prime += count + 1;
    stats.delta_prime = std::min(stats.delta_prime, value);
  }
  for (std::uint64_t q = n - shift; q-- > 0;) {
    if (!Tag::is_node(r[q], model)) continue;
    if (Tag::is_node(r[q + shift], model))
      throw corruption_error("tail shift: destination is tagged");
    std::swap(r[q], r[q + shift]);
  }
  params.epsilon = shift;
  stats.epsilon = shift;
}

/// Special case for a region holding exactly the n distinct values
/// {delta, ..., delta+n-1}: in-situ cycle-leader permutation against the
/// plain hash j = value - delta, no tagging needed. Returns the number of
/// array writes performed (at most 2(n-1)).
inline std::uint64_t sort_distinct_cycle_leader(std::span<Word> buffer,
                                                Region region, Word delta) {
  auto r = detail::slice(buffer, region);
  const std::uint64_t n = r.size();
  std::uint64_t writes = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    for (;;) {
      const Word v = r[i];
      if (v < delta || v - delta >= n)
        throw std::invalid_argument(
            "cycle leader: value outside [delta, delta+n)");
      const std::uint64_t j = v - delta;
      if (j == i) break;
      if (r[j] == v)
        throw std::invalid_argument("cycle leader: duplicate value");
      std::swap(r[i], r[j]);
      writes += 2;
    }
  }
  return writes;
}

}  // namespace assort
