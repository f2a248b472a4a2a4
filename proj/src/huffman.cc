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

#include "gvm/huffman.h"

#include <numeric>

#include "gvm/error.h"

namespace gvm {

namespace {

std::string HexByte(uint8_t v) {
  static const char* hex = "0123456789ABCDEF";
  return std::string{hex[v >> 4], hex[v & 15]};
}

}  // namespace

std::string CodeWord::ToString() const {
  std::string out;
  for (int i = length - 1; i >= 0; --i) out.push_back((bits >> i) & 1 ? '1' : '0');
  return out;
}

Assignment BuildCanonical(const LengthCounts& counts,
                          std::span<const uint8_t> values) {
  const size_t total = std::accumulate(counts.begin(), counts.end(), size_t{0});
  if (total != values.size()) {
    throw Error(ErrorCode::kInvalidCounts,
                "counts sum to " + std::to_string(total) + " but " +
                    std::to_string(values.size()) + " values given");
  }
  if (total > 256) {
    throw Error(ErrorCode::kInvalidCounts, "more than 256 codes");
  }

  Assignment a;
  a.counts_ = counts;
  a.slots_.reserve(total);
  a.selector_of_.reserve(total);
  int code = 0;
  int slot = 0;
  for (int len = 1; len <= kMaxCodeLength; ++len) {
    a.first_code_[len] = code;
    a.first_slot_[len] = slot;
    for (int j = 0; j < counts[len - 1]; ++j, ++slot, ++code) {
      const uint8_t value = values[slot];
      a.slots_.push_back(Slot{Rsv{value},
                              CodeWord{static_cast<uint16_t>(code),
                                       static_cast<uint8_t>(len)}});
      auto& group = a.slots_by_rsv_[value];
      a.selector_of_.push_back(static_cast<int>(group.size()));
      group.push_back(static_cast<uint16_t>(slot));
    }
    if (code > (1 << len)) {
      throw Error(ErrorCode::kInvalidCounts,
                  "code space overflow at length " + std::to_string(len));
    }
    code <<= 1;
  }
  return a;
}

std::vector<uint8_t> Assignment::values() const {
  std::vector<uint8_t> out;
  out.reserve(slots_.size());
  for (const Slot& s : slots_) out.push_back(s.rsv.value);
  return out;
}

std::vector<int> Assignment::lengths() const {
  std::vector<int> out;
  out.reserve(slots_.size());
  for (const Slot& s : slots_) out.push_back(s.code.length);
  return out;
}

bool Assignment::HasDuplicates() const {
  for (const auto& group : slots_by_rsv_) {
    if (group.size() > 1) return true;
  }
  return false;
}

Assignment Assignment::WithValues(std::span<const uint8_t> values) const {
  return BuildCanonical(counts_, values);
}

const CodeWord& CodeForRsv(const Assignment& assignment, Rsv rsv,
                           int selector) {
  const auto slots = assignment.SlotsOf(rsv);
  if (selector < 0 || static_cast<size_t>(selector) >= slots.size()) {
    throw Error(ErrorCode::kMissingCode,
                "no slot #" + std::to_string(selector) + " for RSV 0x" +
                    HexByte(rsv.value));
  }
  return assignment.slot(slots[selector]).code;
}

}  // namespace gvm
