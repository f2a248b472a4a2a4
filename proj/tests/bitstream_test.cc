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

#include <random>

#include <gtest/gtest.h>

#include "gvm/bit_io.h"
#include "gvm/default_tables.h"
#include "gvm/error.h"
#include "gvm/jpeg_file.h"
#include "gvm/metrics.h"
#include "support/errors.h"
#include "support/fixtures.h"

namespace gvm {
namespace {

using testing::ErrorCodeOf;

std::vector<uint8_t> Encode(int kind, int w, int h, int comps,
                            testing::EncodeOptions opts = {}) {
  return testing::EncodeJpeg(testing::SyntheticImage(kind, w, h, comps), opts);
}

TEST(ScanBitWriter, StuffsFF) {
  std::vector<uint8_t> out;
  ScanBitWriter w(&out);
  w.WriteBits(0xFF, 8);
  w.WriteBits(0x1, 1);
  w.PadToByte();
  EXPECT_EQ(out, (std::vector<uint8_t>{0xFF, 0x00, 0xFF, 0x00}));
  EXPECT_EQ(w.data_bits(), 9u);
  EXPECT_EQ(w.stuffed_bytes(), 2u);
}

TEST(ScanBitWriter, PadsWithOnesUnlessRecorded) {
  std::vector<uint8_t> out;
  ScanBitWriter w(&out);
  w.WriteBits(0b00000, 5);
  w.PadToByte();
  w.WriteBits(0b00000, 5);
  w.PadToByte(PadBits{3, 0b010});
  w.WriteBits(0b00000, 5);
  w.PadToByte(PadBits{2, 0b00});  // wrong width: falls back to 1-bits
  EXPECT_EQ(out, (std::vector<uint8_t>{0x07, 0x02, 0x07}));
}

TEST(ScanBitReader, UnstuffsAndStopsAtMarker) {
  const std::vector<uint8_t> data = {0xFF, 0x00, 0xA5, 0xFF, 0xD0};
  ScanBitReader r(data, 0);
  EXPECT_EQ(r.ReadBits(8), 0xFF);
  EXPECT_EQ(r.ReadBits(4), 0xA);
  EXPECT_EQ(r.AlignToByte(), (PadBits{4, 0x5}));
  EXPECT_EQ(r.ReadBit(), -1);
  EXPECT_EQ(r.position(), 3u);
}

TEST(ParseJpeg, CorpusRoundTripsByteExact) {
  for (const auto& f : testing::Corpus()) {
    const JpegFile file = ParseJpeg(f.bytes);
    EXPECT_EQ(SerializeJpeg(file), f.bytes) << f.name;
    EXPECT_TRUE(file.HasStandardPadding()) << f.name;
  }
}

TEST(ParseJpeg, ColorRestartAndSamplingVariantsRoundTrip) {
  for (bool subsample : {true, false}) {
    for (int restart : {0, 1, 3, 7}) {
      testing::EncodeOptions opts;
      opts.subsample_chroma = subsample;
      opts.restart_interval = restart;
      opts.quality = 60;
      // Odd dimensions exercise partial MCUs.
      const auto bytes = Encode(5, 83, 61, 3, opts);
      const JpegFile file = ParseJpeg(bytes);
      EXPECT_EQ(SerializeJpeg(file), bytes) << subsample << " " << restart;
    }
  }
  testing::EncodeOptions opts;
  opts.restart_interval = 5;
  const auto gray = Encode(1, 77, 45, 1, opts);
  EXPECT_EQ(SerializeJpeg(ParseJpeg(gray)), gray);
}

TEST(ParseJpeg, UniformBlockIsDcZeroThenEob) {
  const auto bytes = testing::EncodeJpeg(testing::UniformImage(8, 8, 128), {});
  const JpegFile file = ParseJpeg(bytes);
  ASSERT_EQ(file.scan.tokens.size(), 2u);
  EXPECT_EQ(file.scan.tokens[0].kind, TokenKind::kDc);
  EXPECT_EQ(file.scan.tokens[0].rsv.value, 0);
  EXPECT_EQ(file.scan.tokens[1].kind, TokenKind::kAc);
  EXPECT_TRUE(file.scan.tokens[1].rsv.is_eob());
}

TEST(ParseJpeg, Errors) {
  auto bytes = Encode(0, 16, 16, 1);
  std::vector<uint8_t> no_soi(bytes.begin() + 2, bytes.end());
  EXPECT_EQ(ErrorCodeOf([&] { ParseJpeg(no_soi); }), ErrorCode::kMalformedStream);

  std::vector<uint8_t> truncated(bytes.begin(), bytes.begin() + bytes.size() / 2);
  EXPECT_EQ(ErrorCodeOf([&] { ParseJpeg(truncated); }), ErrorCode::kMalformedStream);

  testing::EncodeOptions prog;
  prog.progressive = true;
  const auto progressive = Encode(0, 32, 32, 1, prog);
  EXPECT_EQ(ErrorCodeOf([&] { ParseJpeg(progressive); }), ErrorCode::kUnsupportedFormat);
}

TEST(SerializeJpeg, MissingCodeForToken) {
  JpegFile file = ParseJpeg(testing::Corpus()[0].bytes);
  DhtTable* ac = file.FindTable(TableClass::kAc, 0);
  // Replace the EOB value with an RSV that never occurs; EOB becomes uncodable.
  for (auto& v : ac->values) {
    if (v == 0x00) v = 0xF5;
  }
  EXPECT_EQ(ErrorCodeOf([&] { SerializeJpeg(file); }), ErrorCode::kMissingCode);
}

TEST(SerializeJpeg, PermutedTableKeepsTokens) {
  std::mt19937 rng(11);
  for (size_t i = 0; i < testing::Corpus().size(); i += 5) {
    const JpegFile original = ParseJpeg(testing::Corpus()[i].bytes);
    JpegFile file = original;
    DhtTable* ac = file.FindTable(TableClass::kAc, 0);
    std::shuffle(ac->values.begin(), ac->values.end(), rng);
    const JpegFile again = ParseJpeg(SerializeJpeg(file));
    EXPECT_EQ(again.scan.tokens, original.scan.tokens);
    EXPECT_TRUE(again.HasStandardPadding());
    EXPECT_EQ(*again.FindTable(TableClass::kAc, 0), *ac);
  }
}

TEST(MeasureScan, DataBitsEqualCodeAndAppendedLengths) {
  for (const auto& f : testing::Corpus()) {
    const JpegFile file = ParseJpeg(f.bytes);
    const Assignment dc = file.FindTable(TableClass::kDc, 0)->ToAssignment();
    const Assignment ac = file.FindTable(TableClass::kAc, 0)->ToAssignment();
    uint64_t expected = 0;
    for (const Token& t : file.scan.tokens) {
      if (t.kind == TokenKind::kRestart) continue;
      const Assignment& table = t.kind == TokenKind::kDc ? dc : ac;
      expected += CodeForRsv(table, t.rsv, t.selector).length + t.appended_length();
    }
    const ScanStats stats = MeasureScan(file);
    EXPECT_EQ(stats.data_bits(), expected) << f.name;
    // Scan bytes: data rounded up to whole bytes plus stuffing.
    EXPECT_EQ(stats.scan_bytes, (expected + 7) / 8 + stats.stuffed_bytes) << f.name;
  }
}

// Coefficients from our tokenizer versus libjpeg's decoder.
void ExpectCoefficientsMatch(const std::vector<uint8_t>& bytes) {
  const auto reference = testing::ReferenceCoefficients(bytes);
  ASSERT_EQ(reference.size(), 1u);
  const auto blocks = ExpandCoefficients(ParseJpeg(bytes).scan);
  ASSERT_EQ(blocks.size(), reference[0].size());
  int dc = 0;
  for (size_t b = 0; b < blocks.size(); ++b) {
    dc += blocks[b][0];
    ASSERT_EQ(dc, reference[0][b][0]) << "block " << b;
    for (int z = 1; z < 64; ++z) {
      ASSERT_EQ(blocks[b][z], reference[0][b][testing::kZigzagToNatural[z]])
          << "block " << b << " zigzag " << z;
    }
  }
}

TEST(ParseJpeg, CoefficientsMatchReferenceDecoder) {
  for (size_t i = 0; i < testing::Corpus().size(); i += 3) {
    SCOPED_TRACE(testing::Corpus()[i].name);
    ExpectCoefficientsMatch(testing::Corpus()[i].bytes);
  }
}

TEST(ParseJpeg, OptimizedTablesAreParsed) {
  testing::EncodeOptions opts;
  opts.optimize_huffman = true;
  const auto bytes = Encode(4, 64, 48, 1, opts);
  EXPECT_EQ(SerializeJpeg(ParseJpeg(bytes)), bytes);
  ExpectCoefficientsMatch(bytes);
}

}  // namespace
}  // namespace gvm
