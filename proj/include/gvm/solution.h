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

#ifndef GVM_SOLUTION_H_
#define GVM_SOLUTION_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace gvm {

// Allowed numbers of zero bins per selected peak: set sizes 2..64.
constexpr std::array<int, 6> kZeroBinChoices = {1, 3, 7, 15, 31, 63};

// How carrier slots are obtained for the selected peaks.
enum class Manner {
  kHistogramShifting,  // shift bins right to free slots next to each peak
  kDirectMapping,      // take unused slots from the tail in place
};

// A candidate parameter set: m consecutive peak bins of the reordered
// histogram starting at p_start, with a[k] zero bins assigned to peak k.
struct Solution {
  int p_start = 0;     // 0-based
  std::vector<int> a;  // non-increasing, each in kZeroBinChoices

  int m() const { return static_cast<int>(a.size()); }
  int total_zero_bins() const {
    int total = 0;
    for (int v : a) total += v;
    return total;
  }
  int peak(int n) const { return p_start + n; }

  // 1-based "(p^s,m,{a_1,...,a_m})".
  std::string ToString() const;

  bool operator==(const Solution&) const = default;
};

struct SimulationResult {
  std::vector<int64_t> shifted_hist;   // after simulated shifting
  std::vector<int64_t> embedded_hist;  // after simulated embedding
  int64_t si_shift = 0;
  int64_t si_embed = 0;
  int64_t si_total = 0;
  std::vector<int> shifted_peaks;  // leader slot of each set
};

inline std::string Solution::ToString() const {
  std::string out = "(" + std::to_string(p_start + 1) + "," +
                    std::to_string(m()) + ",{";
  for (size_t k = 0; k < a.size(); ++k) {
    if (k > 0) out += ",";
    out += std::to_string(a[k]);
  }
  return out + "})";
}

}  // namespace gvm

#endif  // GVM_SOLUTION_H_
