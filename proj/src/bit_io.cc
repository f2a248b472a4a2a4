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

#include "gvm/bit_io.h"

#include <cassert>

namespace gvm {

void ScanBitWriter::EmitByte(uint8_t b) {
  out_->push_back(b);
  if (b == 0xFF) {
    out_->push_back(0x00);
    ++stuffed_;
  }
}

void ScanBitWriter::WriteBits(uint32_t value, int count) {
  assert(count >= 0 && count <= 16);
  data_bits_ += static_cast<uint64_t>(count);
  for (int i = count - 1; i >= 0; --i) {
    acc_ = (acc_ << 1) | ((value >> i) & 1);
    if (++acc_bits_ == 8) {
      EmitByte(static_cast<uint8_t>(acc_));
      acc_ = 0;
      acc_bits_ = 0;
    }
  }
}

void ScanBitWriter::PadToByte(std::optional<PadBits> recorded) {
  if (acc_bits_ == 0) return;
  const int needed = 8 - acc_bits_;
  uint32_t pad = (1u << needed) - 1;
  if (recorded && recorded->count == needed) pad = recorded->value;
  EmitByte(static_cast<uint8_t>((acc_ << needed) | pad));
  acc_ = 0;
  acc_bits_ = 0;
}

void ScanBitWriter::WriteMarker(uint8_t code) {
  assert(acc_bits_ == 0);
  out_->push_back(0xFF);
  out_->push_back(code);
}

}  // namespace gvm
