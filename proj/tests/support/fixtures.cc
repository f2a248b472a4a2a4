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

#include "support/fixtures.h"

#include <array>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <random>
#include <stdexcept>

#include <jpeglib.h>

namespace gvm::testing {

const int kZigzagToNatural[64] = {
    0,  1,  8,  16, 9,  2,  3,  10, 17, 24, 32, 25, 18, 11, 4,  5,
    12, 19, 26, 33, 40, 48, 41, 34, 27, 20, 13, 6,  7,  14, 21, 28,
    35, 42, 49, 56, 57, 50, 43, 36, 29, 22, 15, 23, 30, 37, 44, 51,
    58, 59, 52, 45, 38, 31, 39, 46, 53, 60, 61, 54, 47, 55, 62, 63};

namespace {

uint8_t Clamp(double v) {
  return static_cast<uint8_t>(std::lround(std::fmin(255.0, std::fmax(0.0, v))));
}

// Hash-based lattice noise; independent of <random> distribution details.
double Lattice(uint32_t x, uint32_t y, uint32_t seed) {
  uint32_t h = x * 374761393u + y * 668265263u + seed * 2246822519u;
  h = (h ^ (h >> 13)) * 1274126177u;
  h ^= h >> 16;
  return (h & 0xFFFF) / 65535.0;
}

double ValueNoise(double x, double y, uint32_t seed) {
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const double fx = x - x0;
  const double fy = y - y0;
  const double sx = fx * fx * (3 - 2 * fx);
  const double sy = fy * fy * (3 - 2 * fy);
  auto at = [&](int dx, int dy) { return Lattice(x0 + dx, y0 + dy, seed); };
  const double top = at(0, 0) + sx * (at(1, 0) - at(0, 0));
  const double bottom = at(0, 1) + sx * (at(1, 1) - at(0, 1));
  return top + sy * (bottom - top);
}

double Sample(int kind, int x, int y, int c, std::mt19937& rng) {
  const double noise = static_cast<double>(rng() % 1000) / 1000.0 - 0.5;
  switch (kind) {
    case 0:
      return 40 + 0.5 * x + 0.3 * y + 20 * std::sin(x * 0.05 + c) * std::cos(y * 0.07);
    case 1:
      return 128 + 240 * noise;
    case 2: {
      double v = 90 + 60 * ValueNoise(x / 40.0, y / 40.0, 7 + c);
      return v + 30 * noise;
    }
    case 3: {
      const bool band = ((x / 24) + (y / 16)) % 2 == 0;
      const bool stripe = (x + 2 * y) % 37 < 5;
      return (band ? 200 : 50) - (stripe ? 80 : 0) + 6 * noise;
    }
    case 4: {
      double v = 0;
      double amp = 110;
      double freq = 1 / 64.0;
      for (int o = 0; o < 5; ++o, amp *= 0.5, freq *= 2) {
        v += amp * ValueNoise(x * freq, y * freq, 31 + o + 5 * c);
      }
      return v + 20;
    }
    default: {
      const double base = 60 + 0.4 * x + 40 * ValueNoise(x / 25.0, y / 25.0, 99 + c);
      return (x > y) ? base + 90 * noise : base;
    }
  }
}

}  // namespace

Image SyntheticImage(int kind, int width, int height, int components) {
  Image img{width, height, components, {}};
  img.pixels.resize(static_cast<size_t>(width) * height * components);
  std::mt19937 rng(1234 + kind);
  size_t i = 0;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < components; ++c) img.pixels[i++] = Clamp(Sample(kind, x, y, c, rng));
    }
  }
  return img;
}

Image UniformImage(int width, int height, uint8_t value) {
  Image img{width, height, 1, {}};
  img.pixels.assign(static_cast<size_t>(width) * height, value);
  return img;
}

std::vector<uint8_t> EncodeJpeg(const Image& image, const EncodeOptions& options) {
  jpeg_compress_struct cinfo;
  jpeg_error_mgr jerr;
  cinfo.err = jpeg_std_error(&jerr);
  jpeg_create_compress(&cinfo);
  unsigned char* buffer = nullptr;
  unsigned long size = 0;
  jpeg_mem_dest(&cinfo, &buffer, &size);
  cinfo.image_width = image.width;
  cinfo.image_height = image.height;
  cinfo.input_components = image.components;
  cinfo.in_color_space = image.components == 3 ? JCS_RGB : JCS_GRAYSCALE;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, options.quality, TRUE);
  cinfo.optimize_coding = options.optimize_huffman ? TRUE : FALSE;
  cinfo.restart_interval = options.restart_interval;
  if (image.components == 3 && !options.subsample_chroma) {
    for (int c = 0; c < 3; ++c) {
      cinfo.comp_info[c].h_samp_factor = 1;
      cinfo.comp_info[c].v_samp_factor = 1;
    }
  }
  if (options.progressive) jpeg_simple_progression(&cinfo);
  jpeg_start_compress(&cinfo, TRUE);
  const size_t stride = static_cast<size_t>(image.width) * image.components;
  while (cinfo.next_scanline < cinfo.image_height) {
    JSAMPROW row = const_cast<JSAMPROW>(image.pixels.data() + cinfo.next_scanline * stride);
    jpeg_write_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_compress(&cinfo);
  jpeg_destroy_compress(&cinfo);
  std::vector<uint8_t> out(buffer, buffer + size);
  free(buffer);
  return out;
}

namespace {

struct ErrorManager {
  jpeg_error_mgr pub;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void OnError(j_common_ptr info) {
  auto* err = reinterpret_cast<ErrorManager*>(info->err);
  (*info->err->format_message)(info, err->message);
  std::longjmp(err->jump, 1);
}

}  // namespace

std::vector<std::vector<std::array<int16_t, 64>>> ReferenceCoefficients(
    std::span<const uint8_t> jpeg) {
  jpeg_decompress_struct cinfo;
  ErrorManager err;
  cinfo.err = jpeg_std_error(&err.pub);
  err.pub.error_exit = OnError;
  std::vector<std::vector<std::array<int16_t, 64>>> out;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw std::runtime_error(std::string("libjpeg: ") + err.message);
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, jpeg.data(), jpeg.size());
  jpeg_read_header(&cinfo, TRUE);
  jvirt_barray_ptr* arrays = jpeg_read_coefficients(&cinfo);
  for (int c = 0; c < cinfo.num_components; ++c) {
    const jpeg_component_info& comp = cinfo.comp_info[c];
    out.emplace_back();
    for (JDIMENSION row = 0; row < comp.height_in_blocks; ++row) {
      JBLOCKARRAY rows = (*cinfo.mem->access_virt_barray)(
          reinterpret_cast<j_common_ptr>(&cinfo), arrays[c], row, 1, FALSE);
      for (JDIMENSION col = 0; col < comp.width_in_blocks; ++col) {
        std::array<int16_t, 64> b;
        for (int k = 0; k < 64; ++k) b[k] = rows[0][col][k];
        out.back().push_back(b);
      }
    }
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return out;
}

const std::vector<Fixture>& Corpus() {
  static const std::vector<Fixture> corpus = [] {
    static const char* kNames[] = {"gradient", "noise", "blobs", "edges", "octaves", "mixed"};
    std::vector<Fixture> out;
    for (int kind = 0; kind < 6; ++kind) {
      const Image img = SyntheticImage(kind, 256, 256);
      for (int q : {30, 50, 70, 90}) {
        EncodeOptions opts;
        opts.quality = q;
        out.push_back(Fixture{std::string(kNames[kind]) + "_q" + std::to_string(q), q,
                              EncodeJpeg(img, opts)});
      }
    }
    return out;
  }();
  return corpus;
}

std::vector<uint8_t> ReadFileBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteFileBytes(const std::string& path, std::span<const uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("cannot write " + path);
}

}  // namespace gvm::testing
