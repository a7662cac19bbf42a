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

// Character error rate and related metrics.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace asrscale {

struct NormalizeOptions {
  bool strip_whitespace = true;
  bool strip_punctuation = false;
};

/// NFKC-normalizes UTF-8 text and returns its code points, with whitespace (and
/// optionally punctuation) removed. Throws ParseError on invalid UTF-8.
std::u32string normalize_text(std::string_view utf8, const NormalizeOptions& options = {});

/// Unit-cost Levenshtein distance.
std::size_t edit_distance(std::u32string_view reference, std::u32string_view hypothesis);

struct UtterancePair {
  std::u32string reference;
  std::u32string hypothesis;
};

UtterancePair make_utterance_pair(std::string_view reference_utf8, std::string_view hypothesis_utf8,
                        const NormalizeOptions& options = {});

struct CorpusErrors {
  std::size_t edits = 0;
  std::size_t reference_chars = 0;
};

CorpusErrors corpus_errors(const std::vector<UtterancePair>& pairs);

/// Total edits over total reference characters, as a fraction. Throws
/// DomainError when the corpus has no reference characters.
double corpus_cer(const std::vector<UtterancePair>& pairs);

struct TestSetScore {
  std::string set_name;
  /// Percent; may exceed 100.
  double cer = 0.0;

  bool operator==(const TestSetScore&) const = default;
};

/// Unrounded mean of the scores' CERs. Throws InvalidArgument when empty.
double average_cer(const std::vector<TestSetScore>& scores);

/// Half-up rounding at `decimals` places, tolerant of binary representation
/// error (8.225 rounds to 8.23).
double round_half_up(double value, int decimals = 2);

/// (baseline - improved) / baseline. Throws InvalidArgument if baseline <= 0.
double relative_reduction(double baseline, double improved);

}  // namespace asrscale
