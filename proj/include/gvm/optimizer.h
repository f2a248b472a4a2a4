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

#ifndef GVM_OPTIMIZER_H_
#define GVM_OPTIMIZER_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gvm/solution.h"

namespace gvm {

constexpr int kDefaultMaxPeaks = 5;

// Index of the smallest bin that alone holds `payload_bits` (the rightmost
// such bin of a non-increasing histogram). nullopt when no bin is large
// enough.
std::optional<int> ExtremePeak(std::span<const int64_t> hist,
                               int64_t payload_bits);

// Every solution satisfying the peak-range, peak-count, zero-bin and
// capacity constraints for a non-increasing histogram. Throws
// kInsufficientCapacity when there is none (including max_peaks < 1).
std::vector<Solution> EnumerateSolutions(std::span<const int64_t> hist,
                                         int64_t payload_bits, int max_peaks);

// Simulated shifting and embedding of `s`, with per-bin histograms.
SimulationResult SimulateSolution(std::span<const int64_t> hist,
                                  std::span<const int> lengths,
                                  const Solution& s,
                                  Manner manner = Manner::kHistogramShifting);

struct Selection {
  Solution solution;
  SimulationResult simulation;
};

// The enumerated solution with the smallest simulated size increment. Ties
// go to fewer zero bins, then an earlier start, then the lexicographically
// smaller allocation.
Selection SelectOptimal(std::span<const int64_t> hist,
                        std::span<const int> lengths, int64_t payload_bits,
                        int max_peaks,
                        Manner manner = Manner::kHistogramShifting);

// Largest capacity reachable with at most `max_peaks` peaks, with the
// smallest increment among the solutions that reach it. nullopt if the
// histogram has no nonzero bin or no zero bin.
std::optional<Selection> MaxCapacitySolution(
    std::span<const int64_t> hist, std::span<const int> lengths,
    int max_peaks, Manner manner = Manner::kHistogramShifting);

}  // namespace gvm

#endif  // GVM_OPTIMIZER_H_
