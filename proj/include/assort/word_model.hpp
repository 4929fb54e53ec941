#pragma once
// Simulated word layout for the in-place associative sorting routines.
//
// A sortable value occupies the low w-1 bits of a w-bit word; the most
// significant bit of the word tags it as a node of the imaginary linear
// subspace. All arithmetic runs in 64-bit carriers regardless of w, so
// narrow widths (8, 16) make every code path reachable in tests while
// w = 64 is the production layout. Carrier bits at or above w stay zero.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>

namespace assort {

using Word = std::uint64_t;

/// Violation of an invariant the phases rely on (the pigeonhole guarantees,
/// cursor ordering, record consistency). Always a bug or caller misuse,
/// never a data-dependent condition; raised instead of silently repairing.
class corruption_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

constexpr unsigned ceil_log2(Word n) noexcept {
  return n <= 1 ? 0u : static_cast<unsigned>(std::bit_width(n - 1));
}

class WordModel {
 public:
  explicit WordModel(unsigned width) : w_(width) {
    if (width < 4 || width > 64)
      throw std::invalid_argument("word width must be in [4, 64]");
  }

  unsigned width() const noexcept { return w_; }

  /// Bit that tags a word as a node: bit w-1 of the carrier.
  Word tag_mask() const noexcept { return Word{1} << (w_ - 1); }

  /// Exclusive upper bound on sortable values, 2^{w-1}.
  Word value_limit() const noexcept { return tag_mask(); }

  /// Low w-1 bits, the record of a node.
  Word payload_mask() const noexcept { return tag_mask() - 1; }

  /// All w bits set; the largest word the universe can hold.
  Word word_mask() const noexcept {
    return w_ == 64 ? ~Word{0} : (Word{1} << w_) - 1;
  }

  bool operator==(const WordModel&) const = default;

 private:
  unsigned w_;
};

/// Recovery-area size for a region of n words, ceil((n/2) / T) with
/// T = 2^{w-1-ceil(log2 n)}: the published sizing of the slack reserved in
/// front of the subspace so companion insertion cannot collide. Grows to
/// n/2 when n reaches 2^{w-1}.
inline std::uint64_t compute_epsilon(std::uint64_t n, const WordModel& model) {
  if (n < 2) throw std::invalid_argument("epsilon undefined for n < 2");
  if (n > model.value_limit())
    throw std::invalid_argument("region longer than 2^{w-1}");
  const unsigned logn = ceil_log2(n);
  const Word threshold = Word{1} << (model.width() - 1 - logn);
  return (n + 2 * threshold - 1) / (2 * threshold);
}

/// Recovery area the drivers actually reserve. A node needs a companion
/// only when its value occurs more than T times, so at most
/// floor(n / (T+1)) companions can exist; for mid-range T that exact
/// pigeonhole count exceeds ceil((n/2)/T), and a region whose heavy values
/// cluster at the bottom of the interval would overrun the reserved slots.
/// Taking the maximum of the two keeps the published size in the T = 1 and
/// huge-T regimes and stays provably sufficient in between. Never exceeds
/// ceil(n/2), so the practiced interval keeps at least half the region.
inline std::uint64_t effective_epsilon(std::uint64_t n,
                                       const WordModel& model) {
  const std::uint64_t published = compute_epsilon(n, model);
  const unsigned logn = ceil_log2(n);
  const Word threshold = Word{1} << (model.width() - 1 - logn);
  return std::max<std::uint64_t>(published, n / (threshold + 1));
}

/// Parameters of one practiced interval [delta, delta+n-epsilon-1] mapped
/// onto subspace positions [epsilon, n).
struct IntervalParams {
  Word delta = 0;
  std::uint64_t epsilon = 0;
  std::uint64_t n = 0;
  unsigned logn_bits = 0;
  std::uint64_t threshold = 0;  // occurrence cap for a packed record

  /// Standard layout: recovery area from the pigeonhole bounds.
  static IntervalParams standard(const WordModel& model, std::uint64_t n,
                                 Word delta) {
    IntervalParams p = full_width(model, n, delta);
    p.epsilon = effective_epsilon(n, model);
    return p;
  }

  /// Full-width layout: no reserved prefix; the exact recovery area is
  /// counted while practicing and opened afterwards by shifting.
  static IntervalParams full_width(const WordModel& model, std::uint64_t n,
                                   Word delta) {
    if (n < 2) throw std::invalid_argument("interval undefined for n < 2");
    if (n > model.value_limit())
      throw std::invalid_argument("region longer than 2^{w-1}");
    IntervalParams p;
    p.delta = delta;
    p.epsilon = 0;
    p.n = n;
    p.logn_bits = ceil_log2(n);
    p.threshold = Word{1} << (model.width() - 1 - p.logn_bits);
    return p;
  }
};

/// Monotone bijective hash from the practiced interval to subspace
/// positions. Partial: values past the interval top yield no position.
/// The caller must have screened out values below delta.
inline std::optional<std::uint64_t> hash(Word value, const IntervalParams& p) {
  const std::uint64_t j = value - p.delta + p.epsilon;
  if (j >= p.n) return std::nullopt;
  return j;
}

/// Recalls the value a subspace position stands for.
inline Word inverse_hash(std::uint64_t position, const IntervalParams& p) {
  if (position < p.epsilon || position >= p.n)
    throw std::invalid_argument("position outside the subspace");
  return p.delta + (position - p.epsilon);
}

// --- node encodings ---------------------------------------------------------
//
// MsbTagging clears a practiced word and sets its top bit; the idle count
// lives in the low payload bits and is advanced by incrementing the word.
// SignTagging realises the same records through w-bit two's complement:
// a node counting k idles is stored as -(k+1), so the sign bit doubles as
// the tag and the count is advanced by plain decrement. Untagged words are
// identical under both schemes, and so is the tag test itself.

struct MsbTagging {
  static bool is_node(Word x, const WordModel& m) noexcept {
    return (x & m.tag_mask()) != 0;
  }
  static Word tag_payload(Word payload, const WordModel& m) noexcept {
    return m.tag_mask() | payload;
  }
  static Word payload(Word node, const WordModel& m) noexcept {
    return node & m.payload_mask();
  }
  static Word bump(Word node, const WordModel&) noexcept { return node + 1; }
};

struct SignTagging {
  static bool is_node(Word x, const WordModel& m) noexcept {
    return (x & m.tag_mask()) != 0;
  }
  static Word tag_payload(Word payload, const WordModel& m) noexcept {
    return ~payload & m.word_mask();
  }
  static Word payload(Word node, const WordModel& m) noexcept {
    return ~node & m.word_mask();
  }
  static Word bump(Word node, const WordModel& m) noexcept {
    return (node - 1) & m.word_mask();
  }
};

/// Packs a node's position and idle count into one tagged record: position
/// in the high ceil(log2 n) payload bits, count below it, so counting never
/// disturbs the position. Requires count+1 <= threshold.
template <class Tag = MsbTagging>
Word pack_record(std::uint64_t position, Word count, const IntervalParams& p,
                 const WordModel& model) {
  if (count + 1 > p.threshold)
    throw std::invalid_argument("count too large for a packed record");
  if (position >= p.n) throw std::invalid_argument("position outside region");
  const unsigned count_bits = model.width() - 1 - p.logn_bits;
  return Tag::tag_payload((Word{position} << count_bits) | count, model);
}

template <class Tag = MsbTagging>
std::pair<std::uint64_t, Word> unpack_record(Word record,
                                             const IntervalParams& p,
                                             const WordModel& model) {
  if (!Tag::is_node(record, model))
    throw std::invalid_argument("unpack of an untagged word");
  const unsigned count_bits = model.width() - 1 - p.logn_bits;
  const Word payload = Tag::payload(record, model);
  const Word count_mask = count_bits == 0 ? 0 : (Word{1} << count_bits) - 1;
  return {static_cast<std::uint64_t>(payload >> count_bits),
          payload & count_mask};
}

}  // namespace assort
