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

#include "rffkd/rng.h"

#include <cmath>
#include <numbers>

namespace rffkd {
namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;
constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kPhiloxW0;
      key[1] += kPhiloxW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
    mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

CounterStream::CounterStream(std::uint64_t seed, std::uint64_t stream)
    : key_(splitmix64(splitmix64(seed) ^ splitmix64(~stream))) {}

CounterStream CounterStream::child(std::uint64_t id) const {
  CounterStream out(0);
  out.key_ = splitmix64(key_ ^ splitmix64(id + 0x632BE59BD9B4E019ull));
  return out;
}

std::array<std::uint64_t, 2> CounterStream::bits(std::uint64_t row,
                                                 std::uint64_t col) const {
  const auto r = philox4x32(
      {static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(row >> 32),
       static_cast<std::uint32_t>(col), static_cast<std::uint32_t>(col >> 32)},
      {static_cast<std::uint32_t>(key_), static_cast<std::uint32_t>(key_ >> 32)});
  return {(static_cast<std::uint64_t>(r[1]) << 32) | r[0],
          (static_cast<std::uint64_t>(r[3]) << 32) | r[2]};
}

double CounterStream::uniform_open(std::uint64_t row, std::uint64_t col) const {
  return (static_cast<double>(bits(row, col)[0] >> 11) + 0.5) * kTwoPow53Inv;
}

double CounterStream::uniform_left_open(std::uint64_t row,
                                        std::uint64_t col) const {
  return (static_cast<double>(bits(row, col)[0] >> 11) + 1.0) * kTwoPow53Inv;
}

double CounterStream::normal(std::uint64_t row, std::uint64_t col) const {
  const auto b = bits(row, col);
  const double u1 = (static_cast<double>(b[0] >> 11) + 0.5) * kTwoPow53Inv;
  const double u2 = static_cast<double>(b[1] >> 11) * kTwoPow53Inv;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace rffkd
