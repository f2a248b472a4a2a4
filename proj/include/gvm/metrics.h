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

#ifndef GVM_METRICS_H_
#define GVM_METRICS_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gvm/jpeg_file.h"
#include "gvm/solution.h"

namespace gvm {

// Payload bits carried by `s`: sum_k hist[p_k] * log2(a_k + 1).
int64_t Capacity(std::span<const int64_t> hist, const Solution& s);

// Scan-section sizes of the original, the reorder-only and the marked
// serializations of one image, in bits before padding.
struct SizeReport {
  int64_t original_scan_bits = 0;
  int64_t reordered_scan_bits = 0;
  int64_t marked_scan_bits = 0;
  int64_t c_bits = 0;    // original - reordered
  int64_t gfi_bits = 0;  // marked - reordered
  int64_t pfi_bits = 0;  // marked - original
};

SizeReport MakeSizeReport(int64_t original_scan_bits,
                          int64_t reordered_scan_bits,
                          int64_t marked_scan_bits);

// Parses the three files and compares their scan bit counts.
SizeReport MeasureIncrements(std::span<const uint8_t> original,
                             std::span<const uint8_t> reordered,
                             std::span<const uint8_t> marked);

// Quantized coefficients of one block: [0] is the DC difference, [1..63]
// the AC values in zigzag order.
using CoefficientBlock = std::array<int16_t, 64>;

std::vector<CoefficientBlock> ExpandCoefficients(const TokenSequence& scan);

// True iff both scans expand to identical coefficient blocks.
bool VerifyLossless(const JpegFile& original, const JpegFile& marked);

// Key=value lines.
std::string FormatSizeReport(const SizeReport& report);

}  // namespace gvm

#endif  // GVM_METRICS_H_
