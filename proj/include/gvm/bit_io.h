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

#ifndef GVM_BIT_IO_H_
#define GVM_BIT_IO_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace gvm {

// Bits that filled out a byte before a restart marker or the end of a scan.
struct PadBits {
  uint8_t count = 0;  // 0..7
  uint8_t value = 0;  // right-aligned

  bool all_ones() const { return value == (1u << count) - 1; }
  bool operator==(const PadBits&) const = default;
};

// MSB-first reader over entropy-coded bytes. A 0xFF 0x00 pair yields one
// 0xFF data byte; any other 0xFF xx pair is a marker and ends the data.
class ScanBitReader {
 public:
  ScanBitReader(std::span<const uint8_t> data, size_t pos)
      : data_(data), pos_(pos) {}

  // 0 or 1, or -1 once a marker or the end of input is reached.
  int ReadBit() {
    if (bits_left_ == 0 && !FetchByte()) return -1;
    --bits_left_;
    return (current_ >> bits_left_) & 1;
  }

  // n <= 16. nullopt if the data ends first.
  std::optional<uint16_t> ReadBits(int n) {
    uint32_t v = 0;
    for (int i = 0; i < n; ++i) {
      const int bit = ReadBit();
      if (bit < 0) return std::nullopt;
      v = (v << 1) | static_cast<uint32_t>(bit);
    }
    return static_cast<uint16_t>(v);
  }

  // Drops the unread remainder of the current byte.
  PadBits AlignToByte() {
    PadBits pad{static_cast<uint8_t>(bits_left_),
                static_cast<uint8_t>(current_ & ((1u << bits_left_) - 1))};
    bits_left_ = 0;
    return pad;
  }

  // Offset of the first byte not yet consumed.
  size_t position() const { return pos_; }

 private:
  bool FetchByte() {
    if (pos_ >= data_.size()) return false;
    const uint8_t b = data_[pos_];
    if (b == 0xFF) {
      if (pos_ + 1 >= data_.size() || data_[pos_ + 1] != 0x00) return false;
      pos_ += 2;
    } else {
      pos_ += 1;
    }
    current_ = b;
    bits_left_ = 8;
    return true;
  }

  std::span<const uint8_t> data_;
  size_t pos_;
  uint8_t current_ = 0;
  int bits_left_ = 0;
};

// MSB-first writer that byte-stuffs every emitted 0xFF.
class ScanBitWriter {
 public:
  explicit ScanBitWriter(std::vector<uint8_t>* out) : out_(out) {}

  void WriteBits(uint32_t value, int count);

  // Completes the current byte. Uses `recorded` when it has exactly the
  // number of bits needed, otherwise pads with 1-bits.
  void PadToByte(std::optional<PadBits> recorded = std::nullopt);

  // Raw bytes, e.g. restart markers. Requires byte alignment.
  void WriteMarker(uint8_t code);

  // Data bits written so far, excluding padding and stuffing.
  uint64_t data_bits() const { return data_bits_; }
  uint64_t stuffed_bytes() const { return stuffed_; }

 private:
  void EmitByte(uint8_t b);

  std::vector<uint8_t>* out_;
  uint32_t acc_ = 0;
  int acc_bits_ = 0;
  uint64_t data_bits_ = 0;
  uint64_t stuffed_ = 0;
};

}  // namespace gvm

#endif  // GVM_BIT_IO_H_
