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

#include <array>
#include <optional>

#include "gvm/error.h"
#include "gvm/jpeg_file.h"

namespace gvm {

namespace {

class ScanEncoder {
 public:
  explicit ScanEncoder(const JpegFile& file) : file_(file) {}

  ScanStats Encode(std::vector<uint8_t>* out) {
    const size_t start = out->size();
    ScanBitWriter writer(out);
    ScanStats stats;
    for (const Token& t : file_.scan.tokens) {
      if (t.kind == TokenKind::kRestart) {
        writer.PadToByte(t.pad);
        writer.WriteMarker(static_cast<uint8_t>(marker::kRst0 + t.rsv.value));
        continue;
      }
      const CodeWord& code = CodeForRsv(Table(t), t.rsv, t.selector);
      writer.WriteBits(code.bits, code.length);
      writer.WriteBits(t.appended, t.appended_length());
      stats.vlc_bits += code.length;
      stats.appended_bits += static_cast<uint64_t>(t.appended_length());
    }
    writer.PadToByte(file_.scan.final_pad);
    stats.stuffed_bytes = writer.stuffed_bytes();
    stats.scan_bytes = out->size() - start;
    return stats;
  }

 private:
  const Assignment& Table(const Token& t) {
    const bool dc = t.kind == TokenKind::kDc;
    auto& cache = dc ? dc_ : ac_;
    if (t.table_id > 3) throw Error(ErrorCode::kMissingCode, "bad table id");
    auto& slot = cache[t.table_id];
    if (!slot) {
      const DhtTable* table =
          file_.FindTable(dc ? TableClass::kDc : TableClass::kAc, t.table_id);
      if (table == nullptr) {
        throw Error(ErrorCode::kMissingCode,
                    std::string(dc ? "DC" : "AC") + " table " +
                        std::to_string(t.table_id) + " is not defined");
      }
      slot = table->ToAssignment();
    }
    return *slot;
  }

  const JpegFile& file_;
  std::array<std::optional<Assignment>, 4> dc_;
  std::array<std::optional<Assignment>, 4> ac_;
};

}  // namespace

std::vector<uint8_t> SerializeJpeg(const JpegFile& file, ScanStats* stats) {
  std::vector<uint8_t> out;
  for (size_t i = 0; i < file.segments.size(); ++i) {
    const Segment& seg = file.segments[i];
    out.insert(out.end(), seg.fill_bytes + 1u, 0xFF);
    out.push_back(seg.marker);
    if (!seg.standalone()) {
      const std::vector<uint8_t> payload =
          seg.dht ? SerializeDhtPayload(*seg.dht) : seg.payload;
      const size_t len = payload.size() + 2;
      if (len > 0xFFFF) throw Error(ErrorCode::kMalformedStream, "segment too long");
      out.push_back(static_cast<uint8_t>(len >> 8));
      out.push_back(static_cast<uint8_t>(len & 0xFF));
      out.insert(out.end(), payload.begin(), payload.end());
    }
    if (i == file.scan_segment) {
      const ScanStats s = ScanEncoder(file).Encode(&out);
      if (stats != nullptr) *stats = s;
    }
  }
  out.insert(out.end(), file.trailing_bytes.begin(), file.trailing_bytes.end());
  return out;
}

ScanStats MeasureScan(const JpegFile& file) {
  std::vector<uint8_t> scratch;
  return ScanEncoder(file).Encode(&scratch);
}

}  // namespace gvm
