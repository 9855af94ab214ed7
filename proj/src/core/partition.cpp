/*
 * Copyright 2026 The odelump Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "odelump/partition.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "odelump/errors.hpp"

namespace odelump {

namespace {
constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();
}

Partition::Partition(std::size_t n, std::vector<std::vector<std::size_t>> blocks)
    : blocks_(std::move(blocks)), block_of_(n, kUnassigned) {
  for (auto& b : blocks_) {
    if (b.empty()) throw ModelError("partition contains an empty block");
    std::sort(b.begin(), b.end());
  }
  std::sort(blocks_.begin(), blocks_.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  for (std::size_t id = 0; id < blocks_.size(); ++id) {
    for (std::size_t v : blocks_[id]) {
      if (v >= n) throw ModelError("partition refers to index " + std::to_string(v) + " >= " + std::to_string(n));
      if (block_of_[v] != kUnassigned) throw ModelError("index " + std::to_string(v) + " appears in two blocks");
      block_of_[v] = id;
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (block_of_[v] == kUnassigned) throw ModelError("index " + std::to_string(v) + " is not covered by the partition");
  }
}

Partition Partition::trivial(std::size_t n) {
  if (n == 0) return Partition(0, {});
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  return Partition(n, {std::move(all)});
}

Partition Partition::discrete(std::size_t n) {
  std::vector<std::vector<std::size_t>> blocks(n);
  for (std::size_t i = 0; i < n; ++i) blocks[i] = {i};
  return Partition(n, std::move(blocks));
}

Partition Partition::from_labels(std::span<const std::size_t> labels) {
  std::unordered_map<std::size_t, std::size_t> slot;
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = slot.try_emplace(labels[i], blocks.size());
    if (inserted) blocks.emplace_back();
    blocks[it->second].push_back(i);
  }
  return Partition(labels.size(), std::move(blocks));
}

bool Partition::refines(const Partition& coarser) const {
  if (coarser.size() != size()) return false;
  for (const auto& b : blocks_) {
    std::size_t target = coarser.block_of(b.front());
    for (std::size_t v : b) {
      if (coarser.block_of(v) != target) return false;
    }
  }
  return true;
}

std::string Partition::to_string(std::span<const std::string> names) const {
  std::string out;
  for (const auto& b : blocks_) {
    if (!out.empty()) out += ' ';
    out += '{';
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i > 0) out += ", ";
      out += b[i] < names.size() ? names[b[i]] : std::to_string(b[i]);
    }
    out += '}';
  }
  return out;
}

}  // namespace odelump
