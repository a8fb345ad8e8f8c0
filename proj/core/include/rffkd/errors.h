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

#ifndef RFFKD_ERRORS_H_
#define RFFKD_ERRORS_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rffkd {

// Violated precondition on caller-supplied values (shapes, ranges, sizes).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed or truncated matrix file. `offset()` is the byte position at
// which parsing stopped.
class IoError : public std::runtime_error {
 public:
  IoError(const std::string& what, std::uint64_t offset)
      : std::runtime_error(what + " (at byte offset " +
                           std::to_string(offset) + ")"),
        offset_(offset) {}

  std::uint64_t offset() const noexcept { return offset_; }

 private:
  std::uint64_t offset_;
};

}  // namespace rffkd

#endif  // RFFKD_ERRORS_H_
