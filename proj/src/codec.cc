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

#include "gvm/codec.h"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include "gvm/error.h"
#include "gvm/histogram.h"

namespace gvm {

namespace {

const DhtTable& TargetTable(const JpegFile& file, int ac_table) {
  const DhtTable* table =
      ac_table >= 0 && ac_table <= 3 ? file.FindTable(TableClass::kAc, ac_table) : nullptr;
  if (table == nullptr) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "AC table " + std::to_string(ac_table) + " is not defined");
  }
  return *table;
}

JpegFile WithTableValues(const JpegFile& file, int ac_table,
                         std::vector<uint8_t> values) {
  JpegFile out = file;
  out.FindTable(TableClass::kAc, ac_table)->values = std::move(values);
  return out;
}

Manner MannerOf(Strategy strategy) {
  return strategy == Strategy::kDirectMapping ? Manner::kDirectMapping
                                              : Manner::kHistogramShifting;
}

// [32-bit big-endian payload bit count][payload bytes], MSB first; zeros
// once exhausted.
class EmbeddedBits {
 public:
  explicit EmbeddedBits(std::span<const uint8_t> payload) : payload_(payload) {}

  int64_t size() const { return kLengthHeaderBits + 8 * static_cast<int64_t>(payload_.size()); }

  uint32_t Take(int count) {
    uint32_t v = 0;
    for (int i = 0; i < count; ++i) v = (v << 1) | Bit(pos_++);
    return v;
  }

 private:
  uint32_t Bit(int64_t i) const {
    if (i < kLengthHeaderBits) {
      const uint32_t header = static_cast<uint32_t>(8 * payload_.size());
      return (header >> (kLengthHeaderBits - 1 - i)) & 1;
    }
    i -= kLengthHeaderBits;
    if (i >= 8 * static_cast<int64_t>(payload_.size())) return 0;
    return (payload_[i / 8] >> (7 - i % 8)) & 1;
  }

  std::span<const uint8_t> payload_;
  int64_t pos_ = 0;
};

struct Plan {
  GvmMapping mapping;
  std::optional<Solution> solution;
  Assignment reordered;
  int64_t capacity = 0;
  int64_t simulated_si = 0;
  int64_t coding_redundancy = 0;
};

void CheckForcedSolution(const Solution& s, const RsvHistogram& hist) {
  bool ok = s.m() >= 1 && s.p_start >= 0 && s.p_start + s.m() <= hist.n_nonzero &&
            s.total_zero_bins() <= hist.n_zero;
  for (int k = 0; ok && k < s.m(); ++k) {
    ok = std::find(kZeroBinChoices.begin(), kZeroBinChoices.end(), s.a[k]) !=
             kZeroBinChoices.end() &&
         (k == 0 || s.a[k] <= s.a[k - 1]);
  }
  if (!ok) {
    throw std::invalid_argument("solution " + s.ToString() +
                                " violates the peak/zero-bin constraints");
  }
}

int64_t SetCapacity(std::span<const MappingSet> sets, std::span<const int64_t> freqs) {
  int64_t bits = 0;
  for (const MappingSet& set : sets) {
    int64_t occurrences = freqs[set.leader_slot];
    for (int m : set.member_slots) occurrences += freqs[m];
    bits += occurrences * set.bits_per_occurrence();
  }
  return bits;
}

// `payload_bits` < 0 plans for the largest capacity instead.
std::optional<Plan> MakePlan(const RsvHistogram& hist, const Assignment& original,
                             int64_t payload_bits, const EmbedOptions& options) {
  Plan plan;
  if (options.strategy == Strategy::kEqualLength) {
    plan.mapping = PlanEqualLength(original, hist.original_freqs);
    plan.reordered = original;
    plan.capacity = SetCapacity(plan.mapping.sets, hist.original_freqs);
    return plan;
  }

  const Manner manner = MannerOf(options.strategy);
  plan.reordered = ReorderDescending(hist, original);
  plan.coding_redundancy = CodingRedundancy(hist);
  const auto& h = hist.reordered_freqs;
  const auto& lengths = hist.lengths;
  std::optional<Selection> selection;
  if (options.forced_solution) {
    CheckForcedSolution(*options.forced_solution, hist);
    selection = Selection{*options.forced_solution,
                          SimulateSolution(h, lengths, *options.forced_solution, manner)};
  } else if (payload_bits < 0) {
    selection = MaxCapacitySolution(h, lengths, options.max_peaks, manner);
  } else {
    selection = SelectOptimal(h, lengths, payload_bits, options.max_peaks, manner);
  }
  if (!selection) return std::nullopt;
  plan.solution = selection->solution;
  plan.simulated_si = selection->simulation.si_total;
  plan.capacity = Capacity(h, selection->solution);
  plan.mapping = BuildGvm(plan.reordered, selection->solution, manner, hist.n_nonzero);
  return plan;
}

void CheckInput(const JpegFile& file, const DhtTable& table,
                const Assignment& assignment, const EmbedOptions& options) {
  if (assignment.HasDuplicates()) {
    throw Error(ErrorCode::kDuplicateRsvInput,
                "AC table " + std::to_string(options.ac_table) +
                    " already maps several codes to one RSV");
  }
  const DhtTable* reference = options.default_tables.Find(TableClass::kAc, options.ac_table);
  if (reference == nullptr || reference->counts != table.counts ||
      reference->values != table.values) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "AC table " + std::to_string(options.ac_table) +
                    " differs from the default table; the original could not be restored");
  }
  if (!file.HasStandardPadding()) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "scan padding is not all 1-bits; the original could not be restored");
  }
}

}  // namespace

std::string_view StrategyName(Strategy strategy) {
  switch (strategy) {
    case Strategy::kHistogramShifting: return "hs";
    case Strategy::kDirectMapping: return "dm";
    case Strategy::kEqualLength: return "equal";
  }
  return "?";
}

std::optional<Strategy> ParseStrategy(std::string_view name) {
  if (name == "hs") return Strategy::kHistogramShifting;
  if (name == "dm") return Strategy::kDirectMapping;
  if (name == "equal") return Strategy::kEqualLength;
  return std::nullopt;
}

JpegFile ReorderOnly(const JpegFile& file, int ac_table) {
  const Assignment original = TargetTable(file, ac_table).ToAssignment();
  const RsvHistogram hist = CountFrequencies(file.scan, original, ac_table);
  return WithTableValues(file, ac_table, ReorderDescending(hist, original).values());
}

int64_t MaxCapacity(const JpegFile& file, const EmbedOptions& options) {
  const Assignment original = TargetTable(file, options.ac_table).ToAssignment();
  const RsvHistogram hist = CountFrequencies(file.scan, original, options.ac_table);
  const auto plan = MakePlan(hist, original, -1, options);
  return plan ? plan->capacity : 0;
}

EmbedResult Embed(const JpegFile& file, std::span<const uint8_t> payload,
                  const EmbedOptions& options) {
  const DhtTable& table = TargetTable(file, options.ac_table);
  const Assignment original = table.ToAssignment();
  CheckInput(file, table, original, options);
  const RsvHistogram hist = CountFrequencies(file.scan, original, options.ac_table);

  EmbeddedBits bits(payload);
  std::optional<Plan> plan;
  try {
    plan = MakePlan(hist, original, bits.size(), options);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInsufficientCapacity) throw;
  }
  if (!plan || plan->capacity < bits.size()) {
    int64_t available = plan ? plan->capacity : 0;
    if (!plan) {
      const auto widest = MakePlan(hist, original, -1, options);
      if (widest) available = widest->capacity;
    }
    throw Error(ErrorCode::kInsufficientCapacity,
                "required " + std::to_string(bits.size()) + " bits, available " +
                    std::to_string(available) + " bits");
  }

  const Assignment& marked_table = plan->mapping.final_assignment;
  EmbedResult result{WithTableValues(file, options.ac_table, marked_table.values()), {}};
  for (Token& t : result.marked.scan.tokens) {
    if (t.kind != TokenKind::kAc || t.table_id != options.ac_table) continue;
    const int k = marked_table.Multiplicity(t.rsv);
    t.selector = k > 1 ? static_cast<uint8_t>(bits.Take(std::bit_width(unsigned(k)) - 1)) : 0;
  }

  EmbedReport& r = result.report;
  r.strategy = options.strategy;
  r.solution = plan->solution;
  r.sets = plan->mapping.sets;
  r.capacity_bits = plan->capacity;
  r.payload_bits = bits.size();
  r.simulated_si_bits = plan->simulated_si;
  const auto original_bits = static_cast<int64_t>(MeasureScan(file).data_bits());
  const int64_t reordered_bits =
      options.strategy == Strategy::kEqualLength
          ? original_bits
          : static_cast<int64_t>(
                MeasureScan(WithTableValues(file, options.ac_table, plan->reordered.values()))
                    .data_bits());
  r.sizes = MakeSizeReport(original_bits, reordered_bits,
                           static_cast<int64_t>(MeasureScan(result.marked).data_bits()));
  r.coding_redundancy_bits = r.sizes.c_bits;
  r.gfi_bits = r.sizes.gfi_bits;
  r.pfi_bits = r.sizes.pfi_bits;
  return result;
}

ExtractResult ExtractAndRestore(const JpegFile& marked,
                                const DhtTables& default_tables, int ac_table) {
  const DhtTable& table = TargetTable(marked, ac_table);
  const Assignment marked_table = table.ToAssignment();
  const GvmMapping mapping = DetectMapping(marked_table);
  if (mapping.sets.empty()) {
    throw Error(ErrorCode::kMalformedMapping, "marked table has no mapping sets");
  }
  const DhtTable* reference = default_tables.Find(TableClass::kAc, ac_table);
  if (reference == nullptr) {
    throw Error(ErrorCode::kMissingCode,
                "no default AC table " + std::to_string(ac_table));
  }
  if (reference->counts != table.counts) {
    throw Error(ErrorCode::kMalformedMapping,
                "default table length counts differ from the marked table");
  }
  const Assignment restored_table = reference->ToAssignment();

  ExtractResult result;
  result.original = WithTableValues(marked, ac_table, reference->values);
  std::vector<uint8_t> carried;  // one bit per element
  for (Token& t : result.original.scan.tokens) {
    if (t.kind != TokenKind::kAc || t.table_id != ac_table) continue;
    const int k = marked_table.Multiplicity(t.rsv);
    if (k > 1) {
      const int width = std::bit_width(unsigned(k)) - 1;
      for (int i = width - 1; i >= 0; --i) carried.push_back((t.selector >> i) & 1);
    }
    if (restored_table.Multiplicity(t.rsv) == 0) {
      throw Error(ErrorCode::kMissingCode, "RSV " + std::to_string(t.rsv.value) +
                                               " has no code in the default table");
    }
    t.selector = 0;
  }

  if (carried.size() < static_cast<size_t>(kLengthHeaderBits)) {
    throw Error(ErrorCode::kHeaderOverrun, "scan ends inside the length header");
  }
  uint64_t length = 0;
  for (int i = 0; i < kLengthHeaderBits; ++i) length = (length << 1) | carried[i];
  if (carried.size() - kLengthHeaderBits < length) {
    throw Error(ErrorCode::kHeaderOverrun,
                "header announces " + std::to_string(length) + " bits, scan carries " +
                    std::to_string(carried.size() - kLengthHeaderBits));
  }
  result.payload.assign((length + 7) / 8, 0);
  for (uint64_t i = 0; i < length; ++i) {
    result.payload[i / 8] |= static_cast<uint8_t>(carried[kLengthHeaderBits + i] << (7 - i % 8));
  }
  return result;
}

std::string FormatEmbedReport(const EmbedReport& r) {
  std::ostringstream out;
  out << "strategy=" << StrategyName(r.strategy) << "\n"
      << "solution=" << (r.solution ? r.solution->ToString() : "-") << "\n"
      << "mapping_sets=" << r.sets.size() << "\n"
      << "capacity_bits=" << r.capacity_bits << "\n"
      << "payload_bits=" << r.payload_bits << "\n"
      << "simulated_si_bits=" << r.simulated_si_bits << "\n"
      << FormatSizeReport(r.sizes);
  return out.str();
}

}  // namespace gvm
