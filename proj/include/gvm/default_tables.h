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

#ifndef GVM_DEFAULT_TABLES_H_
#define GVM_DEFAULT_TABLES_H_

#include <optional>

#include "gvm/jpeg_file.h"

namespace gvm {

// The typical Huffman tables of ITU-T T.81 Annex K.3: DC 0 / AC 0 for
// luminance, DC 1 / AC 1 for chrominance. These are what IJG-style encoders
// write when Huffman optimization is off.
const DhtTables& StandardTables();

// Quality factor an IJG encoder would have used for the file's first
// quantization table, or nullopt when no quality reproduces it.
std::optional<int> EstimateIjgQuality(const JpegFile& file);

}  // namespace gvm

#endif  // GVM_DEFAULT_TABLES_H_
