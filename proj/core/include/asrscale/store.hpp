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

// Append-only run store: one JSON object per line.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "asrscale/runs.hpp"

namespace asrscale {

struct RunFilter {
  std::optional<std::string> strategy_id;
  std::optional<std::string> encoder_tag;
  std::optional<RunSource> source;

  bool matches(const RunRecord& run) const;
};

std::string to_json_line(const RunRecord& run);
/// Throws ParseError if `line` is not a valid record.
RunRecord run_from_json(std::string_view line);

/// Writers take an exclusive flock on the log file; readers a shared one and
/// see a prefix of complete lines. A trailing line without a newline is an
/// interrupted append and is ignored.
class RunStore {
 public:
  explicit RunStore(std::filesystem::path path);

  const std::filesystem::path& path() const { return path_; }

  /// Throws ConflictError if the run id is already stored.
  void put(const RunRecord& run);
  std::vector<RunRecord> list(const RunFilter& filter = {}) const;
  std::optional<RunRecord> get(const std::string& run_id) const;

  /// Every complete record in file order; throws CorruptStoreError naming the
  /// byte offset of the first bad line.
  std::vector<RunRecord> load() const;

 private:
  std::filesystem::path path_;
};

}  // namespace asrscale
