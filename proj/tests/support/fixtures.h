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

#ifndef GVM_TESTS_SUPPORT_FIXTURES_H_
#define GVM_TESTS_SUPPORT_FIXTURES_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gvm::testing {

struct Image {
  int width = 0;
  int height = 0;
  int components = 1;
  std::vector<uint8_t> pixels;  // interleaved
};

// Deterministic test content. Kinds: 0 smooth gradient, 1 white noise,
// 2 blobs with grain, 3 hard edges, 4 multi-octave value noise, 5 mixed.
Image SyntheticImage(int kind, int width, int height, int components = 1);
Image UniformImage(int width, int height, uint8_t value);

struct EncodeOptions {
  int quality = 75;
  int restart_interval = 0;  // in MCUs
  bool optimize_huffman = false;
  bool subsample_chroma = true;
  bool progressive = false;
};

// Baseline JPEG via libjpeg. Without optimize_huffman the standard tables
// are written.
std::vector<uint8_t> EncodeJpeg(const Image& image, const EncodeOptions& options);

// Quantized coefficients from libjpeg: per component, blocks in raster order
// (padded block grid), 64 values each in natural order.
std::vector<std::vector<std::array<int16_t, 64>>> ReferenceCoefficients(
    std::span<const uint8_t> jpeg);

// Zigzag index -> natural index.
extern const int kZigzagToNatural[64];

struct Fixture {
  std::string name;
  int quality = 0;
  std::vector<uint8_t> bytes;
};

// Six textures at QF 30, 50, 70 and 90: 24 grayscale 256x256 fixtures.
const std::vector<Fixture>& Corpus();

std::vector<uint8_t> ReadFileBytes(const std::string& path);
void WriteFileBytes(const std::string& path, std::span<const uint8_t> bytes);

}  // namespace gvm::testing

#endif  // GVM_TESTS_SUPPORT_FIXTURES_H_
