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

#include "dioph/primes.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "dioph/errors.hpp"

namespace dioph {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

std::vector<std::uint64_t> sieve_primes(std::uint64_t limit) {
  if (limit < 2) throw DomainError("sieve_primes: limit must be >= 2");
  if (limit > kMaxSieveLimit) {
    throw ResourceError("sieve_primes: limit " + std::to_string(limit) + " exceeds memory budget " +
                        std::to_string(kMaxSieveLimit));
  }
  // composite[i] describes 2i+1
  const std::uint64_t half = (limit - 1) / 2 + 1;
  std::vector<char> composite(half, 0);
  std::vector<std::uint64_t> primes{2};
  const std::uint64_t root = isqrt(limit);
  for (std::uint64_t i = 1; i < half; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    primes.push_back(p);
    if (p <= root) {
      for (std::uint64_t j = (p * p) / 2; j < half; j += p) composite[j] = 1;
    }
  }
  return primes;
}

PrimeCache& PrimeCache::instance() {
  static PrimeCache cache;
  return cache;
}

std::shared_ptr<const std::vector<std::uint64_t>> PrimeCache::up_to(std::uint64_t limit) {
  limit = std::max<std::uint64_t>(limit, 2);
  {
    std::shared_lock lock(mutex_);
    if (table_ && limit_ >= limit) return table_;
  }
  std::unique_lock lock(mutex_);
  if (!table_ || limit_ < limit) {
    const std::uint64_t grown = std::max(limit, limit_ * 2);
    table_ = std::make_shared<const std::vector<std::uint64_t>>(sieve_primes(std::min(grown, kMaxSieveLimit)));
    limit_ = std::min(grown, kMaxSieveLimit);
  }
  return table_;
}

PrimeIterator::PrimeIterator(std::uint64_t lo, std::uint64_t hi, std::uint64_t segment)
    : lo_(std::max<std::uint64_t>(lo, 2)), hi_(hi), segment_(segment), seg_lo_(lo_) {
  if (hi_ >= lo_) base_ = PrimeCache::instance().up_to(isqrt(hi_) + 1);
}

void PrimeIterator::fill() {
  buffer_.clear();
  pos_ = 0;
  while (buffer_.empty() && seg_lo_ <= hi_) {
    const std::uint64_t seg_hi = std::min(hi_, seg_lo_ + segment_ - 1);
    std::vector<char> composite(seg_hi - seg_lo_ + 1, 0);
    for (std::uint64_t p : *base_) {
      if (p * p > seg_hi) break;
      std::uint64_t start = std::max(p * p, (seg_lo_ + p - 1) / p * p);
      for (std::uint64_t x = start; x <= seg_hi; x += p) composite[x - seg_lo_] = 1;
    }
    for (std::uint64_t x = seg_lo_; x <= seg_hi; ++x) {
      if (!composite[x - seg_lo_]) buffer_.push_back(x);
    }
    seg_lo_ = seg_hi + 1;
    if (seg_hi == hi_) seg_lo_ = hi_ + 1;
  }
}

std::uint64_t PrimeIterator::next() {
  if (hi_ < lo_) return 0;
  if (pos_ >= buffer_.size()) fill();
  if (pos_ >= buffer_.size()) return 0;
  return buffer_[pos_++];
}

}  // namespace dioph
