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

#include <algorithm>
#include <array>
#include <string>

#include "gvm/error.h"
#include "gvm/jpeg_file.h"

namespace gvm {

namespace {

[[noreturn]] void Malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedStream, what);
}

[[noreturn]] void Unsupported(const std::string& what) {
  throw Error(ErrorCode::kUnsupportedFormat, what);
}

int ReadU16(std::span<const uint8_t> data, size_t pos) {
  return (data[pos] << 8) | data[pos + 1];
}

const DhtTable* FindTableIn(std::span<const Segment> segments,
                            TableClass table_class, int id) {
  const DhtTable* found = nullptr;
  for (const Segment& seg : segments) {
    if (!seg.dht) continue;
    if (const DhtTable* t = seg.dht->Find(table_class, id)) found = t;
  }
  return found;
}

struct FrameComponent {
  int id = 0;
  int h = 1;
  int v = 1;
};

struct Frame {
  int width = 0;
  int height = 0;
  std::vector<FrameComponent> components;
  int h_max = 1;
  int v_max = 1;
};

Frame ParseFrame(const Segment& seg) {
  const auto& p = seg.payload;
  if (p.size() < 6) Malformed("short SOF segment");
  Frame frame;
  const int precision = p[0];
  frame.height = ReadU16(p, 1);
  frame.width = ReadU16(p, 3);
  const int n = p[5];
  if (precision != 8) Unsupported("sample precision " + std::to_string(precision));
  if (frame.height == 0) Unsupported("height defined by DNL");
  if (frame.width == 0 || n == 0 || n > 4) Malformed("bad frame dimensions");
  if (p.size() != 6 + 3 * static_cast<size_t>(n)) Malformed("bad SOF length");
  for (int i = 0; i < n; ++i) {
    FrameComponent c;
    c.id = p[6 + 3 * i];
    c.h = p[7 + 3 * i] >> 4;
    c.v = p[7 + 3 * i] & 15;
    if (c.h < 1 || c.h > 4 || c.v < 1 || c.v > 4) Malformed("bad sampling factor");
    frame.h_max = std::max(frame.h_max, c.h);
    frame.v_max = std::max(frame.v_max, c.v);
    frame.components.push_back(c);
  }
  return frame;
}

struct ScanComponent {
  int h_blocks = 1;  // blocks per MCU horizontally
  int v_blocks = 1;
  int dc_table = 0;
  int ac_table = 0;
};

struct ScanHeader {
  std::vector<ScanComponent> components;
  int mcus = 0;
};

int CeilDiv(int a, int b) { return (a + b - 1) / b; }

ScanHeader ParseScanHeader(const Segment& seg, const Frame& frame) {
  const auto& p = seg.payload;
  if (p.empty()) Malformed("empty SOS segment");
  const int n = p[0];
  if (n < 1 || n > 4 || p.size() != 4 + 2 * static_cast<size_t>(n)) {
    Malformed("bad SOS length");
  }
  const int ss = p[1 + 2 * n];
  const int se = p[2 + 2 * n];
  const int ahal = p[3 + 2 * n];
  if (ss != 0 || se != 63 || ahal != 0) {
    Unsupported("scan is not a full sequential scan");
  }
  ScanHeader scan;
  for (int i = 0; i < n; ++i) {
    const int id = p[1 + 2 * i];
    const auto it = std::find_if(frame.components.begin(), frame.components.end(),
                                 [&](const FrameComponent& c) { return c.id == id; });
    if (it == frame.components.end()) Malformed("scan references unknown component");
    ScanComponent sc;
    sc.dc_table = p[2 + 2 * i] >> 4;
    sc.ac_table = p[2 + 2 * i] & 15;
    if (sc.dc_table > 3 || sc.ac_table > 3) Malformed("bad table selector");
    if (n > 1) {
      sc.h_blocks = it->h;
      sc.v_blocks = it->v;
    }
    scan.components.push_back(sc);
  }
  if (n == 1) {
    const auto& c = *std::find_if(
        frame.components.begin(), frame.components.end(),
        [&](const FrameComponent& fc) { return fc.id == p[1]; });
    const int w = CeilDiv(frame.width * c.h, frame.h_max);
    const int h = CeilDiv(frame.height * c.v, frame.v_max);
    scan.mcus = CeilDiv(w, 8) * CeilDiv(h, 8);
  } else {
    scan.mcus = CeilDiv(frame.width, 8 * frame.h_max) *
                CeilDiv(frame.height, 8 * frame.v_max);
  }
  return scan;
}

class ScanTokenizer {
 public:
  ScanTokenizer(std::span<const uint8_t> data, size_t pos,
                std::span<const Segment> header, const ScanHeader& scan,
                int restart_interval)
      : data_(data), reader_(data, pos), scan_(scan),
        restart_interval_(restart_interval) {
    for (const ScanComponent& c : scan.components) {
      LoadTable(header, TableClass::kDc, c.dc_table, dc_);
      LoadTable(header, TableClass::kAc, c.ac_table, ac_);
    }
  }

  // Returns the offset just past the entropy-coded data.
  size_t Run(TokenSequence* out) {
    out_ = out;
    for (int mcu = 0; mcu < scan_.mcus; ++mcu) {
      if (restart_interval_ > 0 && mcu > 0 && mcu % restart_interval_ == 0) {
        ReadRestart();
      }
      for (const ScanComponent& c : scan_.components) {
        for (int b = 0; b < c.h_blocks * c.v_blocks; ++b) DecodeBlock(c);
      }
    }
    out_->final_pad = reader_.AlignToByte();
    return reader_.position();
  }

 private:
  static void LoadTable(std::span<const Segment> header, TableClass cls, int id,
                        std::array<std::optional<Assignment>, 4>& slots) {
    if (slots[id]) return;
    const DhtTable* t = FindTableIn(header, cls, id);
    if (t == nullptr) {
      Malformed(std::string(cls == TableClass::kDc ? "DC" : "AC") + " table " +
                std::to_string(id) + " used but not defined");
    }
    slots[id] = t->ToAssignment();
  }

  void ReadRestart() {
    const PadBits pad = reader_.AlignToByte();
    const size_t p = reader_.position();
    if (p + 1 >= data_.size() || data_[p] != 0xFF || data_[p + 1] < 0xD0 ||
        data_[p + 1] > 0xD7) {
      Malformed("expected restart marker at offset " + std::to_string(p));
    }
    Token t;
    t.kind = TokenKind::kRestart;
    t.rsv = Rsv{static_cast<uint8_t>(data_[p + 1] - 0xD0)};
    t.pad = pad;
    out_->tokens.push_back(t);
    reader_ = ScanBitReader(data_, p + 2);
  }

  Token DecodeSymbol(TokenKind kind, int table_id, const Assignment& table) {
    const auto slot = table.DecodeSlot([this] { return reader_.ReadBit(); });
    if (!slot) {
      Malformed("undecodable code near offset " + std::to_string(reader_.position()));
    }
    Token t;
    t.kind = kind;
    t.table_id = static_cast<uint8_t>(table_id);
    t.rsv = table.slot(*slot).rsv;
    t.selector = static_cast<uint8_t>(table.SelectorOf(*slot));
    if (kind == TokenKind::kDc && t.rsv.value > 15) Malformed("DC size above 15");
    const auto bits = reader_.ReadBits(t.appended_length());
    if (!bits) Malformed("appended bits exhausted");
    t.appended = *bits;
    return t;
  }

  void DecodeBlock(const ScanComponent& c) {
    out_->tokens.push_back(DecodeSymbol(TokenKind::kDc, c.dc_table, *dc_[c.dc_table]));
    const Assignment& ac = *ac_[c.ac_table];
    int k = 1;
    while (k < 64) {
      const Token t = DecodeSymbol(TokenKind::kAc, c.ac_table, ac);
      out_->tokens.push_back(t);
      if (t.rsv.size() == 0) {
        if (t.rsv.run() != 15) break;
        k += 16;
        if (k > 64) Malformed("zero run past end of block");
      } else {
        k += t.rsv.run();
        if (k > 63) Malformed("coefficient index past 63");
        ++k;
      }
    }
  }

  std::span<const uint8_t> data_;
  ScanBitReader reader_;
  const ScanHeader& scan_;
  int restart_interval_;
  std::array<std::optional<Assignment>, 4> dc_;
  std::array<std::optional<Assignment>, 4> ac_;
  TokenSequence* out_ = nullptr;
};

bool IsStandalone(uint8_t m) {
  return m == marker::kSoi || m == marker::kEoi || m == marker::kTem ||
         (m >= marker::kRst0 && m <= marker::kRst0 + 7);
}

}  // namespace

bool Segment::standalone() const { return IsStandalone(marker); }

const DhtTable* DhtTables::Find(TableClass table_class, int id) const {
  const DhtTable* found = nullptr;
  for (const DhtTable& t : tables) {
    if (t.table_class == table_class && t.id == id) found = &t;
  }
  return found;
}

DhtTables ParseDhtPayload(std::span<const uint8_t> payload) {
  DhtTables out;
  size_t pos = 0;
  while (pos < payload.size()) {
    if (pos + 17 > payload.size()) Malformed("truncated DHT table header");
    DhtTable t;
    const int tc = payload[pos] >> 4;
    t.id = payload[pos] & 15;
    if (tc > 1 || t.id > 3) Malformed("bad DHT class/id");
    t.table_class = tc == 0 ? TableClass::kDc : TableClass::kAc;
    size_t total = 0;
    for (int i = 0; i < kMaxCodeLength; ++i) {
      t.counts[i] = payload[pos + 1 + i];
      total += t.counts[i];
    }
    pos += 17;
    if (pos + total > payload.size()) Malformed("truncated DHT values");
    t.values.assign(payload.begin() + pos, payload.begin() + pos + total);
    pos += total;
    try {
      (void)BuildCanonical(t.counts, t.values);
    } catch (const Error& e) {
      Malformed(std::string("invalid DHT table: ") + e.what());
    }
    out.tables.push_back(std::move(t));
  }
  return out;
}

std::vector<uint8_t> SerializeDhtPayload(const DhtTables& tables) {
  std::vector<uint8_t> out;
  for (const DhtTable& t : tables.tables) {
    out.push_back(static_cast<uint8_t>((static_cast<int>(t.table_class) << 4) | t.id));
    out.insert(out.end(), t.counts.begin(), t.counts.end());
    out.insert(out.end(), t.values.begin(), t.values.end());
  }
  return out;
}

DhtTables ParseDhtSegments(std::span<const uint8_t> bytes) {
  DhtTables out;
  size_t pos = 0;
  while (pos < bytes.size()) {
    if (pos + 4 > bytes.size() || bytes[pos] != 0xFF || bytes[pos + 1] != marker::kDht) {
      Malformed("expected DHT segment at offset " + std::to_string(pos));
    }
    const int len = ReadU16(bytes, pos + 2);
    if (len < 2 || pos + 2 + len > bytes.size()) Malformed("bad DHT length");
    DhtTables seg = ParseDhtPayload(bytes.subspan(pos + 4, len - 2));
    for (auto& t : seg.tables) out.tables.push_back(std::move(t));
    pos += 2 + len;
  }
  return out;
}

std::vector<uint8_t> SerializeDhtSegments(const DhtTables& tables) {
  std::vector<uint8_t> out;
  for (const DhtTable& t : tables.tables) {
    const auto payload = SerializeDhtPayload(DhtTables{{t}});
    const size_t len = payload.size() + 2;
    out.insert(out.end(), {0xFF, marker::kDht, static_cast<uint8_t>(len >> 8),
                           static_cast<uint8_t>(len & 0xFF)});
    out.insert(out.end(), payload.begin(), payload.end());
  }
  return out;
}

const DhtTable* JpegFile::FindTable(TableClass table_class, int id) const {
  const size_t limit = std::min(scan_segment, segments.size());
  return FindTableIn(std::span(segments).first(limit), table_class, id);
}

DhtTable* JpegFile::FindTable(TableClass table_class, int id) {
  return const_cast<DhtTable*>(std::as_const(*this).FindTable(table_class, id));
}

bool JpegFile::HasStandardPadding() const {
  if (!scan.final_pad.all_ones()) return false;
  return std::all_of(scan.tokens.begin(), scan.tokens.end(), [](const Token& t) {
    return t.kind != TokenKind::kRestart || t.pad.all_ones();
  });
}

JpegFile ParseJpeg(std::span<const uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 0xFF || bytes[1] != marker::kSoi) {
    Malformed("missing SOI marker");
  }
  JpegFile file;
  std::optional<Frame> frame;
  int restart_interval = 0;
  bool have_scan = false;
  size_t pos = 0;
  for (;;) {
    if (pos >= bytes.size()) Malformed("unexpected end of data before EOI");
    if (bytes[pos] != 0xFF) Malformed("marker expected at offset " + std::to_string(pos));
    ++pos;
    Segment seg;
    while (pos < bytes.size() && bytes[pos] == 0xFF) {
      if (seg.fill_bytes == 255) Malformed("too many fill bytes");
      ++seg.fill_bytes;
      ++pos;
    }
    if (pos >= bytes.size()) Malformed("truncated marker");
    seg.marker = bytes[pos++];
    if (seg.marker == 0x00) Malformed("stray 0xFF00 outside scan");
    if (!seg.standalone()) {
      if (pos + 2 > bytes.size()) Malformed("truncated segment length");
      const int len = ReadU16(bytes, pos);
      if (len < 2 || pos + len > bytes.size()) Malformed("bad segment length");
      seg.payload.assign(bytes.begin() + pos + 2, bytes.begin() + pos + len);
      pos += len;
    }

    const uint8_t m = seg.marker;
    if (file.segments.empty() != (m == marker::kSoi)) {
      Malformed("SOI must appear exactly once, first");
    }
    if (m == marker::kSof0 || m == marker::kSof1) {
      if (frame) Malformed("duplicate SOF");
      frame = ParseFrame(seg);
    } else if (m >= 0xC2 && m <= 0xCF && m != marker::kDht) {
      Unsupported("frame marker " + std::to_string(m) +
                  " (progressive, lossless, hierarchical or arithmetic)");
    } else if (m == marker::kDht) {
      seg.dht = ParseDhtPayload(seg.payload);
      seg.payload.clear();
    } else if (m == marker::kDri) {
      if (seg.payload.size() != 2) Malformed("bad DRI length");
      restart_interval = ReadU16(seg.payload, 0);
    } else if (m >= marker::kRst0 && m <= marker::kRst0 + 7) {
      Malformed("restart marker outside scan");
    }

    if (m == marker::kSos) {
      if (have_scan) Unsupported("more than one scan");
      if (!frame) Malformed("SOS before SOF");
      const ScanHeader header = ParseScanHeader(seg, *frame);
      file.segments.push_back(std::move(seg));
      file.scan_segment = file.segments.size() - 1;
      ScanTokenizer tokenizer(bytes, pos, file.segments, header,
                              restart_interval);
      pos = tokenizer.Run(&file.scan);
      have_scan = true;
      continue;
    }
    file.segments.push_back(std::move(seg));
    if (m == marker::kEoi) {
      if (!have_scan) Malformed("no scan before EOI");
      file.trailing_bytes.assign(bytes.begin() + pos, bytes.end());
      return file;
    }
  }
}

}  // namespace gvm
