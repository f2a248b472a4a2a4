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

#ifndef GVM_HISTOGRAM_H_
#define GVM_HISTOGRAM_H_

#include <cstdint>
#include <vector>

#include "gvm/huffman.h"
#include "gvm/jpeg_file.h"

namespace gvm {

// Frequencies of the codes of one Huffman table over a scan.
struct RsvHistogram {
  std::vector<int64_t> original_freqs;   // by slot index of the source table
  std::vector<int64_t> reordered_freqs;  // non-increasing
  std::vector<int> perm;                 // reordered index -> original slot
  std::vector<int> lengths;              // code length by slot index
  int n_nonzero = 0;
  int n_zero = 0;

  size_t size() const { return original_freqs.size(); }
};

// Counts, per slot, the AC tokens of table `table_id` decoded at that slot
// (RSV plus selector). DC tokens are ignored. Throws kMissingCode if a token
// has no slot in `table`.
RsvHistogram CountFrequencies(const TokenSequence& tokens,
                              const Assignment& table, int table_id);

// Same counts, values permuted so that slot i holds the rank-i RSV. Ties keep
// the original slot order.
Assignment ReorderDescending(const RsvHistogram& h, const Assignment& table);

// VLC bits of the scan under the original order minus VLC bits under the
// descending order. Never negative.
int64_t CodingRedundancy(const RsvHistogram& h);

// sum_i freqs[i] * lengths[i]
int64_t WeightedBits(const std::vector<int64_t>& freqs,
                     const std::vector<int>& lengths);

}  // namespace gvm

#endif  // GVM_HISTOGRAM_H_
