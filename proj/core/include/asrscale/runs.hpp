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

// Run records, the bulk-ingestion CSV schema and the bundled result tables.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "asrscale/analysis.hpp"
#include "asrscale/metrics.hpp"

namespace asrscale {

/// Where a record came from: a bundled table (1-4) or user ingestion.
struct RunSource {
  int fixture_table = 0;

  static RunSource ingested() { return {}; }
  static RunSource fixture(int table) { return {table}; }

  bool is_fixture() const { return fixture_table != 0; }
  bool operator==(const RunSource&) const = default;
};

/// "fixture:tableN" or "ingested".
std::string to_string(const RunSource& source);
RunSource run_source_from_string(std::string_view text);

struct RunRecord {
  std::string run_id;
  std::string strategy_id;
  std::string encoder_tag;
  double data_hours = 0.0;
  std::vector<TestSetScore> scores;
  /// Units of 1e15 FLOPs.
  double total_flops = 0.0;
  std::optional<CheckpointCurve> curve;
  RunSource source;

  bool operator==(const RunRecord&) const = default;
};

/// Throws InvalidArgument when a record breaks its invariants.
void validate_run(const RunRecord& run);

/// Averages the record's test-set CERs (unrounded).
StrategyOutcome to_outcome(const RunRecord& run);
std::vector<StrategyOutcome> to_outcomes(const std::vector<RunRecord>& runs);

/// `run_id,strategy_id,encoder_tag,data_hours,test_set,cer,total_flops`
inline constexpr std::string_view kRunsCsvHeader =
    "run_id,strategy_id,encoder_tag,data_hours,test_set,cer,total_flops";

/// Parses the runs CSV; one row per (run, test set), rows of a run merge in
/// order of appearance. An empty document yields no records. Errors carry the
/// 1-based line.
std::vector<RunRecord> parse_runs_csv(std::string_view text,
                                      RunSource source = RunSource::ingested());

/// Inverse of parse_runs_csv, numbers at round-trip precision. Curves are not
/// part of the CSV schema and are dropped.
std::string write_runs_csv(const std::vector<RunRecord>& runs);

/// Transcription of result table 1-4; throws InvalidArgument for other ids.
std::vector<RunRecord> load_fixtures(int table);

}  // namespace asrscale
