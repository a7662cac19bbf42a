// Copyright 2026 The asrscale Authors. All Rights Reserved.
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

// Minimal RFC 4180 reading and writing.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace asrscale::csv {

struct Row {
  std::vector<std::string> fields;
  /// 1-based line on which the record starts.
  std::size_t line = 0;
};

/// Splits `text` into records. Quoted fields may contain commas, doubled
/// quotes and line breaks; CRLF and LF endings are accepted. Blank lines are
/// skipped. Throws ParseError on an unterminated quote.
std::vector<Row> parse(std::string_view text);

/// Quotes a field when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

std::string join(const std::vector<std::string>& fields);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_number(double value);

}  // namespace asrscale::csv
