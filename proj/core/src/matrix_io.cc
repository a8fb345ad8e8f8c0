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

#include "rffkd/matrix_io.h"

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "rffkd/errors.h"

namespace rffkd {
namespace {

constexpr std::array<char, 4> kRawMagic = {'R', 'F', 'F', 'M'};

std::uint32_t load_u32_le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void store_u32_le(unsigned char* p, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) p[i] = static_cast<unsigned char>(v >> (8 * i));
}

std::uint64_t load_u64_le(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

void store_u64_le(unsigned char* p, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) p[i] = static_cast<unsigned char>(v >> (8 * i));
}

std::size_t read_fully(std::istream& in, unsigned char* dst, std::size_t n) {
  in.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(n));
  return static_cast<std::size_t>(in.gcount());
}

}  // namespace

MatrixFormat parse_matrix_format(std::string_view name) {
  if (name == "csv") return MatrixFormat::kCsv;
  if (name == "raw" || name == "raw-f64") return MatrixFormat::kRaw;
  throw InputError("unknown matrix format '" + std::string(name) +
                   "' (expected csv or raw)");
}

Matrix read_csv(std::istream& in, bool header) {
  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::uint64_t offset = 0;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    const std::uint64_t line_start = offset;
    offset += line.size() + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first && header) {
      first = false;
      continue;
    }
    first = false;
    if (line.empty()) continue;

    std::size_t fields = 0;
    const char* const begin = line.data();
    const char* const end = begin + line.size();
    const char* p = begin;
    while (true) {
      while (p < end && (*p == ' ' || *p == '\t')) ++p;
      double v = 0.0;
      const auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc()) {
        throw IoError("malformed number in CSV row " + std::to_string(rows + 1),
                      line_start + static_cast<std::uint64_t>(p - begin));
      }
      values.push_back(v);
      ++fields;
      p = next;
      while (p < end && (*p == ' ' || *p == '\t')) ++p;
      if (p == end) break;
      if (*p != ',') {
        throw IoError("expected ',' in CSV row " + std::to_string(rows + 1),
                      line_start + static_cast<std::uint64_t>(p - begin));
      }
      ++p;
    }
    if (rows == 0) {
      cols = fields;
    } else if (fields != cols) {
      throw IoError("CSV row " + std::to_string(rows + 1) + " has " +
                        std::to_string(fields) + " fields, expected " +
                        std::to_string(cols),
                    line_start);
    }
    ++rows;
  }
  if (rows == 0) throw IoError("CSV contains no data rows", offset);
  Matrix m(rows, cols);
  std::copy(values.begin(), values.end(), m.data());
  return m;
}

void write_csv(std::ostream& out, const Matrix& m,
               const std::string& header_line) {
  if (!header_line.empty()) out << header_line << '\n';
  char buf[32];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
      out << buf;
    }
    out << '\n';
  }
}

Matrix read_raw(std::istream& in) {
  unsigned char head[12];
  const std::size_t got = read_fully(in, head, sizeof(head));
  if (got < 4 || !std::equal(kRawMagic.begin(), kRawMagic.end(), head)) {
    throw IoError("missing RFFM magic", 0);
  }
  if (got < sizeof(head)) throw IoError("truncated RFFM header", got);
  const std::uint32_t rows = load_u32_le(head + 4);
  const std::uint32_t cols = load_u32_le(head + 8);
  if (rows == 0) throw IoError("RFFM row count is zero", 4);
  if (cols == 0) throw IoError("RFFM column count is zero", 8);

  const std::uint64_t count = static_cast<std::uint64_t>(rows) * cols;
  Matrix m(rows, cols);
  std::vector<unsigned char> body(count * 8);
  const std::size_t body_got = read_fully(in, body.data(), body.size());
  if (body_got != body.size()) {
    throw IoError("truncated RFFM payload: expected " +
                      std::to_string(body.size()) + " bytes",
                  sizeof(head) + body_got);
  }
  for (std::uint64_t k = 0; k < count; ++k) {
    m.data()[k] = std::bit_cast<double>(load_u64_le(body.data() + 8 * k));
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw IoError("trailing bytes after RFFM payload", sizeof(head) + body.size());
  }
  return m;
}

void write_raw(std::ostream& out, const Matrix& m) {
  if (m.rows() > 0xFFFFFFFFll || m.cols() > 0xFFFFFFFFll) {
    throw InputError("matrix too large for the RFFM format");
  }
  unsigned char head[12];
  std::copy(kRawMagic.begin(), kRawMagic.end(), head);
  store_u32_le(head + 4, static_cast<std::uint32_t>(m.rows()));
  store_u32_le(head + 8, static_cast<std::uint32_t>(m.cols()));
  out.write(reinterpret_cast<const char*>(head), sizeof(head));
  std::vector<unsigned char> body(static_cast<std::size_t>(m.size()) * 8);
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    store_u64_le(body.data() + 8 * k, std::bit_cast<std::uint64_t>(m.data()[k]));
  }
  out.write(reinterpret_cast<const char*>(body.data()),
            static_cast<std::streamsize>(body.size()));
}

Matrix read_matrix(const std::string& path, MatrixFormat format, bool header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading", 0);
  return format == MatrixFormat::kCsv ? read_csv(in, header) : read_raw(in);
}

void write_matrix(const std::string& path, const Matrix& m, MatrixFormat format,
                  const std::string& header_line) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing", 0);
  if (format == MatrixFormat::kCsv) {
    write_csv(out, m, header_line);
  } else {
    write_raw(out, m);
  }
  if (!out) throw IoError("write to '" + path + "' failed", 0);
}

}  // namespace rffkd
