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

#ifndef GVM_CODEC_H_
#define GVM_CODEC_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gvm/default_tables.h"
#include "gvm/huffman.h"
#include "gvm/jpeg_file.h"
#include "gvm/metrics.h"
#include "gvm/optimizer.h"
#include "gvm/solution.h"

namespace gvm {

// Slots sharing one RSV. Any of them decodes to that RSV, so choosing among
// them carries log2(size) bits. The leader is the lowest slot.
struct MappingSet {
  int leader_slot = 0;
  std::vector<int> member_slots;  // ascending, all above leader_slot

  int size() const { return static_cast<int>(member_slots.size()) + 1; }
  int bits_per_occurrence() const;
  bool operator==(const MappingSet&) const = default;
};

struct GvmMapping {
  std::vector<MappingSet> sets;  // ordered by leader slot
  Assignment final_assignment;
};

// Rewrites a duplicate-free, frequency-ordered assignment for `s`.
// Histogram shifting moves every value at or after the first peak right by
// the zero bins allocated before it and duplicates each peak value into the
// slots that follow it; the last total_zero_bins() values fall off the end.
// Direct mapping overwrites unused slots starting at `first_unused` in
// place. Length counts are unchanged.
GvmMapping BuildGvm(const Assignment& reordered, const Solution& s,
                    Manner manner = Manner::kHistogramShifting,
                    int first_unused = -1);

// Recovers the sets from a marked table: every RSV held by more than one slot
// forms a set. Throws kMalformedMapping if a group size is not a power of two
// or exceeds 64.
GvmMapping DetectMapping(const Assignment& table);

// Same-length mapping on the table as is: each used code may be joined by
// unused codes of its own length, so the scan size cannot change. Picks the
// allocation with the highest capacity. `freqs` are per slot of `table`.
GvmMapping PlanEqualLength(const Assignment& table,
                           std::span<const int64_t> freqs);

enum class Strategy { kHistogramShifting, kDirectMapping, kEqualLength };

std::string_view StrategyName(Strategy strategy);
std::optional<Strategy> ParseStrategy(std::string_view name);

struct EmbedOptions {
  Strategy strategy = Strategy::kHistogramShifting;
  int max_peaks = kDefaultMaxPeaks;
  int ac_table = 0;
  DhtTables default_tables = StandardTables();
  // Use this (p^s, m, a) instead of searching. Ignored by kEqualLength.
  std::optional<Solution> forced_solution;
};

struct EmbedReport {
  Strategy strategy = Strategy::kHistogramShifting;
  std::optional<Solution> solution;  // empty for kEqualLength
  std::vector<MappingSet> sets;
  int64_t capacity_bits = 0;  // includes the 32-bit length header
  int64_t payload_bits = 0;   // includes the 32-bit length header
  int64_t coding_redundancy_bits = 0;
  int64_t gfi_bits = 0;
  int64_t pfi_bits = 0;
  int64_t simulated_si_bits = 0;
  SizeReport sizes;
};

std::string FormatEmbedReport(const EmbedReport& report);

// Bits of the self-describing length prefix placed before the payload.
constexpr int kLengthHeaderBits = 32;

struct EmbedResult {
  JpegFile marked;
  EmbedReport report;
};

// Throws kUnsupportedFormat (no such AC table, non-default table, or
// non-standard padding), kDuplicateRsvInput, or kInsufficientCapacity.
EmbedResult Embed(const JpegFile& file, std::span<const uint8_t> payload,
                  const EmbedOptions& options = {});

// Largest number of bits (header included) `options` could carry in `file`.
int64_t MaxCapacity(const JpegFile& file, const EmbedOptions& options = {});

// The file with only the frequency reordering applied to the target table.
JpegFile ReorderOnly(const JpegFile& file, int ac_table = 0);

struct ExtractResult {
  std::vector<uint8_t> payload;
  JpegFile original;
};

// Throws kMalformedMapping, kHeaderOverrun, kMissingCode or
// kUnsupportedFormat.
ExtractResult ExtractAndRestore(const JpegFile& marked,
                                const DhtTables& default_tables = StandardTables(),
                                int ac_table = 0);

}  // namespace gvm

#endif  // GVM_CODEC_H_
