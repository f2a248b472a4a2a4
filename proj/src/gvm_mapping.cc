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
#include <bit>
#include <stdexcept>

#include "gvm/codec.h"
#include "gvm/error.h"

namespace gvm {

namespace {

MappingSet MakeSet(std::vector<int> slots) {
  std::sort(slots.begin(), slots.end());
  MappingSet set;
  set.leader_slot = slots.front();
  set.member_slots.assign(slots.begin() + 1, slots.end());
  return set;
}

void SortSets(std::vector<MappingSet>* sets) {
  std::sort(sets->begin(), sets->end(), [](const MappingSet& a, const MappingSet& b) {
    return a.leader_slot < b.leader_slot;
  });
}

}  // namespace

int MappingSet::bits_per_occurrence() const {
  return std::bit_width(static_cast<unsigned>(size())) - 1;
}

GvmMapping BuildGvm(const Assignment& reordered, const Solution& s,
                    Manner manner, int first_unused) {
  const std::vector<uint8_t> values = reordered.values();
  const int n = static_cast<int>(values.size());
  const int total = s.total_zero_bins();
  std::vector<uint8_t> out = values;
  GvmMapping mapping;

  if (manner == Manner::kHistogramShifting) {
    if (s.p_start < 0 || s.p_start + s.m() + total > n) {
      throw std::invalid_argument("solution does not fit the table");
    }
    int shift = 0;
    for (int k = 0; k < s.m(); ++k) {
      const int leader = s.peak(k) + shift;
      MappingSet set{leader, {}};
      for (int t = 0; t <= s.a[k]; ++t) out[leader + t] = values[s.peak(k)];
      for (int t = 1; t <= s.a[k]; ++t) set.member_slots.push_back(leader + t);
      mapping.sets.push_back(std::move(set));
      shift += s.a[k];
    }
    for (int i = s.p_start + s.m() + total; i < n; ++i) out[i] = values[i - total];
  } else {
    if (first_unused < s.p_start + s.m() || first_unused + total > n) {
      throw std::invalid_argument("direct mapping needs unused tail slots");
    }
    int next = first_unused;
    for (int k = 0; k < s.m(); ++k) {
      MappingSet set{s.peak(k), {}};
      for (int t = 0; t < s.a[k]; ++t, ++next) {
        out[next] = values[s.peak(k)];
        set.member_slots.push_back(next);
      }
      mapping.sets.push_back(std::move(set));
    }
  }
  mapping.final_assignment = reordered.WithValues(out);
  return mapping;
}

GvmMapping DetectMapping(const Assignment& table) {
  GvmMapping mapping;
  for (int v = 0; v < 256; ++v) {
    const auto slots = table.SlotsOf(Rsv{static_cast<uint8_t>(v)});
    if (slots.size() <= 1) continue;
    if (!std::has_single_bit(slots.size()) || slots.size() > 64) {
      throw Error(ErrorCode::kMalformedMapping,
                  "RSV " + std::to_string(v) + " occupies " +
                      std::to_string(slots.size()) + " slots");
    }
    mapping.sets.push_back(MakeSet({slots.begin(), slots.end()}));
  }
  SortSets(&mapping.sets);
  mapping.final_assignment = table;
  return mapping;
}

GvmMapping PlanEqualLength(const Assignment& table,
                           std::span<const int64_t> freqs) {
  std::vector<uint8_t> values = table.values();
  std::vector<MappingSet> sets;
  for (int len = 1; len <= kMaxCodeLength; ++len) {
    std::vector<int> leaders;
    std::vector<int> pool;
    for (int i = 0; i < static_cast<int>(table.size()); ++i) {
      if (table.slot(i).code.length != len) continue;
      (freqs[i] > 0 ? leaders : pool).push_back(i);
    }
    if (leaders.empty() || pool.empty()) continue;
    std::stable_sort(leaders.begin(), leaders.end(),
                     [&](int a, int b) { return freqs[a] > freqs[b]; });

    // best[i][z]: capacity of leaders[i..] given z pool slots.
    const size_t k = leaders.size();
    const size_t z_max = pool.size();
    std::vector<std::vector<int64_t>> best(k + 1, std::vector<int64_t>(z_max + 1, 0));
    std::vector<std::vector<int>> choice(k + 1, std::vector<int>(z_max + 1, 0));
    for (size_t i = k; i-- > 0;) {
      for (size_t z = 0; z <= z_max; ++z) {
        best[i][z] = best[i + 1][z];
        for (int a : kZeroBinChoices) {
          if (static_cast<size_t>(a) > z) break;
          const int64_t cand = freqs[leaders[i]] * (std::bit_width(unsigned(a + 1)) - 1) +
                               best[i + 1][z - a];
          if (cand > best[i][z]) {
            best[i][z] = cand;
            choice[i][z] = a;
          }
        }
      }
    }
    size_t z = z_max;
    size_t next = 0;
    for (size_t i = 0; i < k; ++i) {
      const int a = choice[i][z];
      if (a == 0) continue;
      std::vector<int> slots{leaders[i]};
      for (int t = 0; t < a; ++t) {
        values[pool[next]] = values[leaders[i]];
        slots.push_back(pool[next++]);
      }
      sets.push_back(MakeSet(std::move(slots)));
      z -= a;
    }
  }
  SortSets(&sets);
  return GvmMapping{std::move(sets), table.WithValues(values)};
}

}  // namespace gvm
