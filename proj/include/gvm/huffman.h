/*
 * Copyright 2026 The jpeg-gvm Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GVM_HUFFMAN_H_
#define GVM_HUFFMAN_H_

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gvm {

constexpr int kMaxCodeLength = 16;

// Run/size value: run of zero AC coefficients in the high nibble and the
// VLI length of the next coefficient in the low nibble. For DC tables the
// byte is just the size category.
struct Rsv {
  uint8_t value = 0;

  constexpr int run() const { return value >> 4; }
  constexpr int size() const { return value & 0x0F; }
  constexpr bool is_eob() const { return value == 0x00; }
  constexpr bool is_zrl() const { return value == 0xF0; }

  constexpr auto operator<=>(const Rsv&) const = default;
};

constexpr Rsv MakeRsv(int run, int size) {
  return Rsv{static_cast<uint8_t>((run << 4) | size)};
}

struct CodeWord {
  uint16_t bits = 0;   // right-aligned
  uint8_t length = 0;  // 1..16

  std::string ToString() const;
  constexpr bool operator==(const CodeWord&) const = default;
};

struct Slot {
  Rsv rsv;
  CodeWord code;
};

// L1..L16 from a DHT table.
using LengthCounts = std::array<uint8_t, kMaxCodeLength>;

// A Huffman table viewed as an ordered list of slots. Slot i carries the
// i-th canonical code generated from the length counts and the i-th value
// of the DHT value list. Code lengths never decrease with slot index.
//
// Reordering, shifting and mapping only permute or overwrite slot values;
// the counts (and therefore the code of every slot) never change. An RSV may
// occupy several slots after mapping; its occurrences are addressed by a
// selector that counts slots holding it in slot-index order.
class Assignment {
 public:
  Assignment() = default;

  const LengthCounts& counts() const { return counts_; }
  std::span<const Slot> slots() const { return slots_; }
  const Slot& slot(size_t i) const { return slots_[i]; }
  size_t size() const { return slots_.size(); }

  std::vector<uint8_t> values() const;

  // Code lengths by slot index.
  std::vector<int> lengths() const;

  // Slots holding `rsv`, ascending.
  std::span<const uint16_t> SlotsOf(Rsv rsv) const {
    return slots_by_rsv_[rsv.value];
  }
  int Multiplicity(Rsv rsv) const {
    return static_cast<int>(slots_by_rsv_[rsv.value].size());
  }
  bool HasDuplicates() const;

  // Selector of `slot` among the slots that carry the same RSV.
  int SelectorOf(size_t slot) const { return selector_of_[slot]; }

  // Same counts, new value list. Throws kInvalidCounts on length mismatch.
  Assignment WithValues(std::span<const uint8_t> values) const;

  // Canonical decode driven by a bit callback returning 0/1, or -1 when the
  // source is exhausted. Returns the slot index, or nullopt if the bits
  // match no code within 16 bits or the source runs dry.
  template <typename ReadBit>
  std::optional<int> DecodeSlot(ReadBit&& read_bit) const {
    int code = 0;
    for (int len = 1; len <= kMaxCodeLength; ++len) {
      const int bit = read_bit();
      if (bit < 0) return std::nullopt;
      code = (code << 1) | bit;
      const int offset = code - first_code_[len];
      if (offset >= 0 && offset < counts_[len - 1]) {
        return first_slot_[len] + offset;
      }
    }
    return std::nullopt;
  }

  bool operator==(const Assignment& other) const {
    return counts_ == other.counts_ && values() == other.values();
  }

 private:
  friend Assignment BuildCanonical(const LengthCounts& counts,
                                   std::span<const uint8_t> values);

  LengthCounts counts_{};
  std::vector<Slot> slots_;
  std::array<int, kMaxCodeLength + 1> first_code_{};
  std::array<int, kMaxCodeLength + 1> first_slot_{};
  std::array<std::vector<uint16_t>, 256> slots_by_rsv_;
  std::vector<int> selector_of_;
};

// Generates canonical codes for `values` in slot order. Throws
// kInvalidCounts when sum(counts) != values.size() or the counts overflow the
// code space at some length.
Assignment BuildCanonical(const LengthCounts& counts,
                          std::span<const uint8_t> values);

// Code of the selector-th slot (in slot order) holding `rsv`. Throws
// kMissingCode if there is no such slot.
const CodeWord& CodeForRsv(const Assignment& assignment, Rsv rsv,
                           int selector = 0);

}  // namespace gvm

#endif  // GVM_HUFFMAN_H_
