// Copyright 2026 The rffkd Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RFFKD_RNG_H_
#define RFFKD_RNG_H_

#include <array>
#include <cstdint>

namespace rffkd {

// Philox4x32-10 counter-based block cipher (Salmon et al., SC'11). Maps a
// 128-bit counter and 64-bit key to 128 pseudorandom bits with no state.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// SplitMix64 finalizer, used to derive independent keys from a master seed.
std::uint64_t splitmix64(std::uint64_t x);

// A keyed family of random variates addressed by (row, col). Values depend
// only on (seed, stream, row, col), never on generation order, so matrices
// can be filled in any order or in parallel and still be bit-identical.
class CounterStream {
 public:
  explicit CounterStream(std::uint64_t seed, std::uint64_t stream = 0);

  // Independent child stream; `child(a).child(b)` differs from `child(b)`.
  CounterStream child(std::uint64_t id) const;

  std::array<std::uint64_t, 2> bits(std::uint64_t row, std::uint64_t col) const;

  // Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform_open(std::uint64_t row, std::uint64_t col) const;
  // Uniform on (0, 1].
  double uniform_left_open(std::uint64_t row, std::uint64_t col) const;
  // Standard normal via Box-Muller on one Philox block.
  double normal(std::uint64_t row, std::uint64_t col) const;

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
};

}  // namespace rffkd

#endif  // RFFKD_RNG_H_
