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

#include "gvm/optimizer.h"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "gvm/error.h"
#include "gvm/metrics.h"

namespace gvm {

namespace {

int BitsPerOccurrence(int a) {
  return std::bit_width(static_cast<unsigned>(a + 1)) - 1;
}

struct Shape {
  int n = 0;
  int nonzero = 0;
  int zero = 0;
};

Shape Inspect(std::span<const int64_t> hist) {
  Shape s;
  s.n = static_cast<int>(hist.size());
  for (size_t i = 0; i < hist.size(); ++i) {
    if (hist[i] < 0 || (i > 0 && hist[i] > hist[i - 1])) {
      throw std::invalid_argument("histogram must be non-negative and non-increasing");
    }
    if (hist[i] > 0) ++s.nonzero;
  }
  s.zero = s.n - s.nonzero;
  return s;
}

// Calls fn(p_start, a, capacity) for every allocation that reaches
// `payload_bits` with p_start in [first_start, nonzero).
template <typename Fn>
void ForEachSolution(std::span<const int64_t> hist, const Shape& shape,
                     int64_t payload_bits, int max_peaks, int first_start,
                     Fn&& fn) {
  std::vector<int> a;
  a.reserve(max_peaks);
  for (int ps = first_start; ps < shape.nonzero; ++ps) {
    const size_t m_max = static_cast<size_t>(std::min(shape.nonzero - ps, max_peaks));
    auto extend = [&](auto& self, int used, int64_t capacity, size_t max_choice) -> void {
      for (size_t c = 0; c <= max_choice; ++c) {
        const int v = kZeroBinChoices[c];
        if (used + v > shape.zero) break;
        const int64_t cap =
            capacity + hist[ps + a.size()] * BitsPerOccurrence(v);
        a.push_back(v);
        if (cap >= payload_bits) fn(ps, std::span<const int>(a), cap);
        if (a.size() < m_max) self(self, used + v, cap, c);
        a.pop_back();
      }
    };
    extend(extend, 0, 0, kZeroBinChoices.size() - 1);
  }
}

// O(m) size-increment evaluation via prefix sums. Agrees with
// SimulateSolution's si_total.
class IncrementModel {
 public:
  IncrementModel(std::span<const int64_t> hist, std::span<const int> lengths,
                 const Shape& shape, Manner manner)
      : hist_(hist), lengths_(lengths), shape_(shape), manner_(manner) {
    if (lengths.size() != hist.size()) {
      throw std::invalid_argument("lengths and histogram differ in size");
    }
    length_prefix_.assign(hist.size() + 1, 0);
    for (size_t i = 0; i < hist.size(); ++i) {
      length_prefix_[i + 1] = length_prefix_[i] + lengths[i];
    }
    if (manner == Manner::kHistogramShifting) {
      // tail_[s][j] = sum over j' in [j, nonzero) of hist[j'] * len[j' + s]
      tail_.assign(shape.zero + 1, std::vector<int64_t>(shape.nonzero + 1, 0));
      for (int s = 0; s <= shape.zero; ++s) {
        for (int j = shape.nonzero - 1; j >= 0; --j) {
          tail_[s][j] = tail_[s][j + 1] + hist[j] * lengths[j + s];
        }
      }
    }
  }

  int64_t Score(int ps, std::span<const int> a) const {
    int64_t si = 0;
    int shift = 0;
    for (size_t n = 0; n < a.size(); ++n) {
      const int p = ps + static_cast<int>(n);
      const int64_t freq = hist_[p];
      const int64_t share = freq / (a[n] + 1);
      const int leader = manner_ == Manner::kHistogramShifting ? p + shift : p;
      const int first_member = manner_ == Manner::kHistogramShifting
                                   ? leader + 1
                                   : shape_.nonzero + shift;
      si += (freq - a[n] * share) * lengths_[leader] - freq * lengths_[p];
      si += share * (length_prefix_[first_member + a[n]] - length_prefix_[first_member]);
      shift += a[n];
    }
    if (manner_ == Manner::kHistogramShifting) {
      const int rest = ps + static_cast<int>(a.size());
      si += tail_[shift][rest] - tail_[0][rest];
    }
    return si;
  }

 private:
  std::span<const int64_t> hist_;
  std::span<const int> lengths_;
  Shape shape_;
  Manner manner_;
  std::vector<int64_t> length_prefix_;
  std::vector<std::vector<int64_t>> tail_;
};

struct Candidate {
  int64_t si = 0;
  int zero_bins = 0;
  int p_start = 0;
  std::vector<int> a;
};

// Selection order: smaller increment, fewer zero bins, earlier start, then
// lexicographically smaller allocation.
bool Precedes(int64_t si, int zero_bins, int p_start, std::span<const int> a,
              const Candidate& other) {
  if (si != other.si) return si < other.si;
  if (zero_bins != other.zero_bins) return zero_bins < other.zero_bins;
  if (p_start != other.p_start) return p_start < other.p_start;
  return std::lexicographical_compare(a.begin(), a.end(), other.a.begin(),
                                      other.a.end());
}

int Sum(std::span<const int> a) {
  int total = 0;
  for (int v : a) total += v;
  return total;
}

}  // namespace

std::optional<int> ExtremePeak(std::span<const int64_t> hist,
                               int64_t payload_bits) {
  std::optional<int> best;
  for (int i = 0; i < static_cast<int>(hist.size()); ++i) {
    if (hist[i] < payload_bits) continue;
    if (!best || hist[i] <= hist[*best]) best = i;
  }
  return best;
}

std::vector<Solution> EnumerateSolutions(std::span<const int64_t> hist,
                                         int64_t payload_bits, int max_peaks) {
  const Shape shape = Inspect(hist);
  std::vector<Solution> out;
  if (max_peaks >= 1) {
    const int first = ExtremePeak(hist, payload_bits).value_or(0);
    ForEachSolution(hist, shape, payload_bits, max_peaks, first,
                    [&](int ps, std::span<const int> a, int64_t) {
                      out.push_back(Solution{ps, {a.begin(), a.end()}});
                    });
  }
  if (out.empty()) {
    throw Error(ErrorCode::kInsufficientCapacity,
                "no solution carries " + std::to_string(payload_bits) + " bits");
  }
  return out;
}

SimulationResult SimulateSolution(std::span<const int64_t> hist,
                                  std::span<const int> lengths,
                                  const Solution& s, Manner manner) {
  const Shape shape = Inspect(hist);
  const int total = s.total_zero_bins();
  if (s.m() < 1 || s.p_start < 0 || s.p_start + s.m() > shape.nonzero ||
      total > shape.zero || lengths.size() != hist.size()) {
    throw std::invalid_argument("infeasible solution " + s.ToString());
  }

  SimulationResult r;
  const size_t n = hist.size();
  if (manner == Manner::kHistogramShifting) {
    r.shifted_hist.assign(n, 0);
    for (int i = 0; i < s.p_start; ++i) r.shifted_hist[i] = hist[i];
    int shift = 0;
    for (int k = 0; k < s.m(); ++k) {
      r.shifted_peaks.push_back(s.peak(k) + shift);
      r.shifted_hist[s.peak(k) + shift] = hist[s.peak(k)];
      shift += s.a[k];
    }
    for (int j = s.p_start + s.m(); j < shape.nonzero; ++j) {
      r.shifted_hist[j + total] = hist[j];
    }
  } else {
    r.shifted_hist.assign(hist.begin(), hist.end());
    for (int k = 0; k < s.m(); ++k) r.shifted_peaks.push_back(s.peak(k));
  }

  r.embedded_hist = r.shifted_hist;
  int tail = shape.nonzero;
  for (int k = 0; k < s.m(); ++k) {
    const int leader = r.shifted_peaks[k];
    const int64_t freq = r.shifted_hist[leader];
    const int64_t share = freq / (s.a[k] + 1);
    r.embedded_hist[leader] = freq - s.a[k] * share;
    const int first_member = manner == Manner::kHistogramShifting ? leader + 1 : tail;
    for (int t = 0; t < s.a[k]; ++t) r.embedded_hist[first_member + t] = share;
    tail += s.a[k];
  }

  for (size_t i = 0; i < n; ++i) {
    r.si_shift += (r.shifted_hist[i] - hist[i]) * lengths[i];
    r.si_embed += (r.embedded_hist[i] - r.shifted_hist[i]) * lengths[i];
  }
  r.si_total = r.si_shift + r.si_embed;
  return r;
}

Selection SelectOptimal(std::span<const int64_t> hist,
                        std::span<const int> lengths, int64_t payload_bits,
                        int max_peaks, Manner manner) {
  const Shape shape = Inspect(hist);
  const IncrementModel model(hist, lengths, shape, manner);
  std::optional<Candidate> best;
  if (max_peaks >= 1) {
    const int first = ExtremePeak(hist, payload_bits).value_or(0);
    ForEachSolution(hist, shape, payload_bits, max_peaks, first,
                    [&](int ps, std::span<const int> a, int64_t) {
                      const int64_t si = model.Score(ps, a);
                      const int zero_bins = Sum(a);
                      if (best && !Precedes(si, zero_bins, ps, a, *best)) return;
                      best = Candidate{si, zero_bins, ps, {a.begin(), a.end()}};
                    });
  }
  if (!best) {
    throw Error(ErrorCode::kInsufficientCapacity,
                "no solution carries " + std::to_string(payload_bits) + " bits");
  }
  Solution s{best->p_start, best->a};
  SimulationResult sim = SimulateSolution(hist, lengths, s, manner);
  return Selection{std::move(s), std::move(sim)};
}

std::optional<Selection> MaxCapacitySolution(std::span<const int64_t> hist,
                                             std::span<const int> lengths,
                                             int max_peaks, Manner manner) {
  const Shape shape = Inspect(hist);
  if (shape.nonzero == 0 || shape.zero == 0 || max_peaks < 1) return std::nullopt;
  const IncrementModel model(hist, lengths, shape, manner);
  std::optional<std::pair<int64_t, Candidate>> best;
  ForEachSolution(hist, shape, 1, max_peaks, 0,
                  [&](int ps, std::span<const int> a, int64_t cap) {
                    const int64_t si = model.Score(ps, a);
                    const int zero_bins = Sum(a);
                    if (best && (cap < best->first ||
                                 (cap == best->first &&
                                  !Precedes(si, zero_bins, ps, a, best->second)))) {
                      return;
                    }
                    best.emplace(cap, Candidate{si, zero_bins, ps, {a.begin(), a.end()}});
                  });
  if (!best) return std::nullopt;
  Solution s{best->second.p_start, best->second.a};
  SimulationResult sim = SimulateSolution(hist, lengths, s, manner);
  return Selection{std::move(s), std::move(sim)};
}

}  // namespace gvm
