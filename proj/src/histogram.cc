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

#include "gvm/histogram.h"

#include <algorithm>
#include <numeric>

namespace gvm {

RsvHistogram CountFrequencies(const TokenSequence& tokens,
                              const Assignment& table, int table_id) {
  RsvHistogram h;
  h.original_freqs.assign(table.size(), 0);
  h.lengths = table.lengths();
  for (const Token& t : tokens.tokens) {
    if (t.kind != TokenKind::kAc || t.table_id != table_id) continue;
    // Throws kMissingCode for unknown RSVs or selectors.
    (void)CodeForRsv(table, t.rsv, t.selector);
    ++h.original_freqs[table.SlotsOf(t.rsv)[t.selector]];
  }

  h.perm.resize(table.size());
  std::iota(h.perm.begin(), h.perm.end(), 0);
  std::stable_sort(h.perm.begin(), h.perm.end(), [&](int a, int b) {
    return h.original_freqs[a] > h.original_freqs[b];
  });
  h.reordered_freqs.reserve(table.size());
  for (int slot : h.perm) h.reordered_freqs.push_back(h.original_freqs[slot]);
  h.n_nonzero = static_cast<int>(
      std::count_if(h.original_freqs.begin(), h.original_freqs.end(),
                    [](int64_t f) { return f > 0; }));
  h.n_zero = static_cast<int>(table.size()) - h.n_nonzero;
  return h;
}

Assignment ReorderDescending(const RsvHistogram& h, const Assignment& table) {
  std::vector<uint8_t> values;
  values.reserve(h.perm.size());
  for (int slot : h.perm) values.push_back(table.slot(slot).rsv.value);
  return table.WithValues(values);
}

int64_t WeightedBits(const std::vector<int64_t>& freqs,
                     const std::vector<int>& lengths) {
  int64_t bits = 0;
  for (size_t i = 0; i < freqs.size(); ++i) bits += freqs[i] * lengths[i];
  return bits;
}

int64_t CodingRedundancy(const RsvHistogram& h) {
  return WeightedBits(h.original_freqs, h.lengths) -
         WeightedBits(h.reordered_freqs, h.lengths);
}

}  // namespace gvm
