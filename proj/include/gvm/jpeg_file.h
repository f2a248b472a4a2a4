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

#ifndef GVM_JPEG_FILE_H_
#define GVM_JPEG_FILE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gvm/bit_io.h"
#include "gvm/huffman.h"

namespace gvm {

namespace marker {
constexpr uint8_t kSof0 = 0xC0;
constexpr uint8_t kSof1 = 0xC1;
constexpr uint8_t kDht = 0xC4;
constexpr uint8_t kRst0 = 0xD0;
constexpr uint8_t kSoi = 0xD8;
constexpr uint8_t kEoi = 0xD9;
constexpr uint8_t kSos = 0xDA;
constexpr uint8_t kDri = 0xDD;
constexpr uint8_t kTem = 0x01;
}  // namespace marker

enum class TableClass : uint8_t { kDc = 0, kAc = 1 };

struct DhtTable {
  TableClass table_class = TableClass::kAc;
  uint8_t id = 0;
  LengthCounts counts{};
  std::vector<uint8_t> values;

  Assignment ToAssignment() const { return BuildCanonical(counts, values); }
  bool operator==(const DhtTable&) const = default;
};

// All tables defined by one DHT segment, in segment order.
struct DhtTables {
  std::vector<DhtTable> tables;

  const DhtTable* Find(TableClass table_class, int id) const;
  bool operator==(const DhtTables&) const = default;
};

// Throws kMalformedStream on truncation, trailing bytes or invalid counts.
DhtTables ParseDhtPayload(std::span<const uint8_t> payload);
std::vector<uint8_t> SerializeDhtPayload(const DhtTables& tables);

// Parses a file made of one or more complete DHT marker segments.
DhtTables ParseDhtSegments(std::span<const uint8_t> bytes);
std::vector<uint8_t> SerializeDhtSegments(const DhtTables& tables);

struct Segment {
  uint8_t marker = 0;
  uint8_t fill_bytes = 0;        // extra 0xFF bytes before the marker
  std::vector<uint8_t> payload;  // excludes the length field
  std::optional<DhtTables> dht;  // set for DHT segments; replaces payload

  bool standalone() const;
};

enum class TokenKind : uint8_t { kDc, kAc, kRestart };

// One entropy-coded symbol plus its appended bits, or a restart marker.
struct Token {
  TokenKind kind = TokenKind::kAc;
  uint8_t table_id = 0;
  Rsv rsv;               // DC size category, AC run/size, or RSTn index
  uint8_t selector = 0;  // which slot of a duplicated RSV codes this token
  uint16_t appended = 0;
  PadBits pad;           // restart only: bits that preceded the marker

  int appended_length() const {
    switch (kind) {
      case TokenKind::kDc: return rsv.value;
      case TokenKind::kAc: return rsv.size();
      case TokenKind::kRestart: return 0;
    }
    return 0;
  }
  bool operator==(const Token&) const = default;
};

struct TokenSequence {
  std::vector<Token> tokens;
  PadBits final_pad;

  bool operator==(const TokenSequence&) const = default;
};

// A baseline sequential JPEG with exactly one scan. Segments appear in file
// order; the entropy-coded data follows segments[scan_segment] (the SOS).
struct JpegFile {
  std::vector<Segment> segments;
  size_t scan_segment = 0;
  TokenSequence scan;
  std::vector<uint8_t> trailing_bytes;

  // The definition in effect for the scan (last one before SOS), or null.
  const DhtTable* FindTable(TableClass table_class, int id) const;
  DhtTable* FindTable(TableClass table_class, int id);

  // True when all padding in the scan consists of 1-bits.
  bool HasStandardPadding() const;
};

JpegFile ParseJpeg(std::span<const uint8_t> bytes);

struct ScanStats {
  uint64_t vlc_bits = 0;
  uint64_t appended_bits = 0;
  uint64_t stuffed_bytes = 0;
  uint64_t scan_bytes = 0;  // entropy-coded bytes incl. stuffing and RSTn

  uint64_t data_bits() const { return vlc_bits + appended_bits; }
};

// Re-emits the file using its own DHT tables for both the header and the
// scan codes. Throws kMissingCode if a token has no code.
std::vector<uint8_t> SerializeJpeg(const JpegFile& file,
                                   ScanStats* stats = nullptr);

// Bit counts of the scan under the file's tables, without serializing.
ScanStats MeasureScan(const JpegFile& file);

}  // namespace gvm

#endif  // GVM_JPEG_FILE_H_
