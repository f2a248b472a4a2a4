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

#include "gvm/metrics.h"

#include <bit>
#include <sstream>

namespace gvm {

namespace {

int DecodeVli(uint16_t bits, int size) {
  if (size == 0) return 0;
  if (bits < (1u << (size - 1))) return static_cast<int>(bits) - (1 << size) + 1;
  return bits;
}

}  // namespace

int64_t Capacity(std::span<const int64_t> hist, const Solution& s) {
  int64_t bits = 0;
  for (int k = 0; k < s.m(); ++k) {
    const int per = std::bit_width(static_cast<unsigned>(s.a[k] + 1)) - 1;
    bits += hist[s.peak(k)] * per;
  }
  return bits;
}

SizeReport MakeSizeReport(int64_t original_scan_bits,
                          int64_t reordered_scan_bits,
                          int64_t marked_scan_bits) {
  SizeReport r;
  r.original_scan_bits = original_scan_bits;
  r.reordered_scan_bits = reordered_scan_bits;
  r.marked_scan_bits = marked_scan_bits;
  r.c_bits = original_scan_bits - reordered_scan_bits;
  r.gfi_bits = marked_scan_bits - reordered_scan_bits;
  r.pfi_bits = marked_scan_bits - original_scan_bits;
  return r;
}

SizeReport MeasureIncrements(std::span<const uint8_t> original,
                             std::span<const uint8_t> reordered,
                             std::span<const uint8_t> marked) {
  auto bits = [](std::span<const uint8_t> bytes) {
    return static_cast<int64_t>(MeasureScan(ParseJpeg(bytes)).data_bits());
  };
  return MakeSizeReport(bits(original), bits(reordered), bits(marked));
}

std::vector<CoefficientBlock> ExpandCoefficients(const TokenSequence& scan) {
  std::vector<CoefficientBlock> blocks;
  int k = 64;
  for (const Token& t : scan.tokens) {
    switch (t.kind) {
      case TokenKind::kRestart:
        break;
      case TokenKind::kDc:
        blocks.emplace_back();
        blocks.back().fill(0);
        blocks.back()[0] = static_cast<int16_t>(DecodeVli(t.appended, t.rsv.value));
        k = 1;
        break;
      case TokenKind::kAc:
        if (blocks.empty()) break;
        if (t.rsv.size() == 0) {
          k = t.rsv.is_zrl() ? k + 16 : 64;
          break;
        }
        k += t.rsv.run();
        if (k < 64) {
          blocks.back()[k] = static_cast<int16_t>(DecodeVli(t.appended, t.rsv.size()));
        }
        ++k;
        break;
    }
  }
  return blocks;
}

bool VerifyLossless(const JpegFile& original, const JpegFile& marked) {
  return ExpandCoefficients(original.scan) == ExpandCoefficients(marked.scan);
}

std::string FormatSizeReport(const SizeReport& r) {
  std::ostringstream out;
  out << "original_scan_bits=" << r.original_scan_bits << "\n"
      << "reordered_scan_bits=" << r.reordered_scan_bits << "\n"
      << "marked_scan_bits=" << r.marked_scan_bits << "\n"
      << "c_bits=" << r.c_bits << "\n"
      << "gfi_bits=" << r.gfi_bits << "\n"
      << "pfi_bits=" << r.pfi_bits << "\n";
  return out.str();
}

}  // namespace gvm
