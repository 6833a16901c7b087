// Copyright 2026 The dioph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <memory>
#include <shared_mutex>
#include <span>
#include <vector>

namespace dioph {

/// Largest limit sieve_primes accepts: a byte per odd number below this fits in 512 MiB.
inline constexpr std::uint64_t kMaxSieveLimit = std::uint64_t{1} << 30;

/// All primes <= limit, ascending. Throws ResourceError above kMaxSieveLimit and
/// DomainError for limit < 2.
std::vector<std::uint64_t> sieve_primes(std::uint64_t limit);

/// Process-wide cache of small primes; grows on demand, safe for concurrent readers.
class PrimeCache {
 public:
  static PrimeCache& instance();

  /// Primes <= limit. The returned handle keeps the underlying table alive.
  std::shared_ptr<const std::vector<std::uint64_t>> up_to(std::uint64_t limit);

 private:
  std::shared_mutex mutex_;
  std::shared_ptr<const std::vector<std::uint64_t>> table_;
  std::uint64_t limit_ = 0;
};

/// Ascending enumeration of primes in [lo, hi] via a segmented sieve.
class PrimeIterator {
 public:
  PrimeIterator(std::uint64_t lo, std::uint64_t hi, std::uint64_t segment = 1 << 18);

  /// Next prime, or 0 when the range is exhausted.
  std::uint64_t next();

 private:
  void fill();

  std::uint64_t lo_;
  std::uint64_t hi_;
  std::uint64_t segment_;
  std::uint64_t seg_lo_;
  std::shared_ptr<const std::vector<std::uint64_t>> base_;
  std::vector<std::uint64_t> buffer_;
  std::size_t pos_ = 0;
};

}  // namespace dioph
