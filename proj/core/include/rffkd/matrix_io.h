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

#ifndef RFFKD_MATRIX_IO_H_
#define RFFKD_MATRIX_IO_H_

// Matrix files.
//
// csv: one row per line, comma-separated, '.' decimal point, optional single
//      header line. Written with 17 significant digits, so doubles
//      round-trip exactly.
// raw: "RFFM" | u32 LE rows | u32 LE cols | rows*cols f64 LE, row-major.

#include <iosfwd>
#include <string>
#include <string_view>

#include "rffkd/types.h"

namespace rffkd {

enum class MatrixFormat { kCsv, kRaw };

// "csv" or "raw" (alias "raw-f64").
MatrixFormat parse_matrix_format(std::string_view name);

Matrix read_csv(std::istream& in, bool header = false);
void write_csv(std::ostream& out, const Matrix& m,
               const std::string& header_line = {});

Matrix read_raw(std::istream& in);
void write_raw(std::ostream& out, const Matrix& m);

Matrix read_matrix(const std::string& path, MatrixFormat format,
                   bool header = false);
void write_matrix(const std::string& path, const Matrix& m, MatrixFormat format,
                  const std::string& header_line = {});

}  // namespace rffkd

#endif  // RFFKD_MATRIX_IO_H_
