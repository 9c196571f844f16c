// Copyright 2026 The decept-cue Authors.
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

// Minimal RFC-4180 reader/writer. Lines starting with '#' before the header
// are provenance comments and are skipped.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "decept/common.hpp"

namespace decept::csv {

struct Record {
  std::size_t line = 0;  // 1-based line where the record starts
  std::vector<std::string> fields;
};

inline std::vector<Record> parse(std::string_view text) {
  std::vector<Record> out;
  std::size_t i = 0, line = 1;
  const std::size_t n = text.size();
  bool header_seen = false;
  while (i < n) {
    if (!header_seen && text[i] == '#') {
      while (i < n && text[i] != '\n') ++i;
      if (i < n) ++i;
      ++line;
      continue;
    }
    Record rec;
    rec.line = line;
    std::string field;
    bool in_quotes = false, field_quoted = false, done = false;
    while (!done) {
      if (i >= n) {
        if (in_quotes) throw Error(Errc::parse, "unterminated quoted field at line " + std::to_string(rec.line));
        rec.fields.push_back(std::move(field));
        break;
      }
      const char c = text[i];
      if (in_quotes) {
        if (c == '"') {
          if (i + 1 < n && text[i + 1] == '"') {
            field.push_back('"');
            i += 2;
          } else {
            in_quotes = false;
            ++i;
          }
        } else {
          if (c == '\n') ++line;
          field.push_back(c);
          ++i;
        }
        continue;
      }
      if (c == '"') {
        if (!field.empty() || field_quoted)
          throw Error(Errc::parse, "stray quote at line " + std::to_string(line));
        in_quotes = field_quoted = true;
        ++i;
      } else if (c == ',') {
        rec.fields.push_back(std::move(field));
        field.clear();
        field_quoted = false;
        ++i;
      } else if (c == '\r' && i + 1 < n && text[i + 1] == '\n') {
        i += 2;
        ++line;
        rec.fields.push_back(std::move(field));
        done = true;
      } else if (c == '\n') {
        ++i;
        ++line;
        rec.fields.push_back(std::move(field));
        done = true;
      } else {
        if (field_quoted) throw Error(Errc::parse, "text after closing quote at line " + std::to_string(line));
        field.push_back(c);
        ++i;
      }
    }
    // A trailing blank line is not a record.
    if (rec.fields.size() == 1 && rec.fields[0].empty() && !field_quoted) continue;
    header_seen = true;
    out.push_back(std::move(rec));
  }
  return out;
}

inline std::string quote(std::string_view field) {
  const bool needs = field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += '"';
  return out;
}

inline std::string row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += quote(fields[i]);
  }
  out += '\n';
  return out;
}

/// Header-to-index lookup; throws SchemaError naming the missing column.
inline std::size_t column_index(const Record& header, std::string_view name) {
  for (std::size_t i = 0; i < header.fields.size(); ++i)
    if (header.fields[i] == name) return i;
  throw Error(Errc::schema, "missing column '" + std::string(name) + "' in header");
}

}  // namespace decept::csv
