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

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace odelump {

/// Partition of the variable indices {0..n-1}. Blocks are kept sorted
/// internally and ordered by their lowest member, which is also the block's
/// representative; two partitions are equal iff their block lists are equal.
class Partition {
 public:
  Partition() = default;
  /// Throws ModelError unless `blocks` are non-empty, disjoint and cover 0..n-1.
  Partition(std::size_t n, std::vector<std::vector<std::size_t>> blocks);

  static Partition trivial(std::size_t n);
  static Partition discrete(std::size_t n);
  /// Groups indices carrying the same label.
  static Partition from_labels(std::span<const std::size_t> labels);

  std::size_t size() const { return block_of_.size(); }
  std::size_t block_count() const { return blocks_.size(); }
  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
  const std::vector<std::size_t>& block(std::size_t b) const { return blocks_[b]; }
  std::size_t block_of(std::size_t variable) const { return block_of_[variable]; }
  std::size_t representative(std::size_t b) const { return blocks_[b].front(); }
  std::size_t representative_of(std::size_t variable) const { return representative(block_of(variable)); }
  std::span<const std::size_t> labels() const { return block_of_; }

  bool is_discrete() const { return blocks_.size() == block_of_.size(); }
  /// Every block of *this is contained in some block of `coarser`.
  bool refines(const Partition& coarser) const;

  std::string to_string(std::span<const std::string> names = {}) const;

  friend bool operator==(const Partition& a, const Partition& b) { return a.blocks_ == b.blocks_; }

 private:
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::size_t> block_of_;
};

}  // namespace odelump
