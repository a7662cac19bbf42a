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

#include "asrscale/metrics.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "asrscale/error.hpp"

namespace asrscale {

std::u32string normalize_text(std::string_view utf8, const NormalizeOptions& options) {
  // Reject malformed input instead of letting ICU substitute U+FFFD.
  for (std::int32_t i = 0; i < static_cast<std::int32_t>(utf8.size());) {
    UChar32 c;
    U8_NEXT(utf8.data(), i, static_cast<std::int32_t>(utf8.size()), c);
    if (c < 0) throw ParseError("invalid UTF-8 at byte " + std::to_string(i - 1), 0);
  }

  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfkc = icu::Normalizer2::getNFKCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFKC normalizer unavailable");
  const icu::UnicodeString source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<std::int32_t>(utf8.size())));
  const icu::UnicodeString normalized = nfkc->normalize(source, status);
  if (U_FAILURE(status)) throw Error(std::string("NFKC normalization failed: ") + u_errorName(status));

  std::u32string out;
  out.reserve(static_cast<std::size_t>(normalized.countChar32()));
  for (std::int32_t i = 0; i < normalized.length(); i = normalized.moveIndex32(i, 1)) {
    const UChar32 c = normalized.char32At(i);
    if (options.strip_whitespace && u_isUWhiteSpace(c)) continue;
    if (options.strip_punctuation && u_ispunct(c)) continue;
    out.push_back(static_cast<char32_t>(c));
  }
  return out;
}

std::size_t edit_distance(std::u32string_view reference, std::u32string_view hypothesis) {
  // Keep the shorter sequence along the row.
  if (reference.size() < hypothesis.size()) std::swap(reference, hypothesis);
  std::vector<std::size_t> row(hypothesis.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= reference.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= hypothesis.size(); ++j) {
      const std::size_t up = row[j];
      const std::size_t cost = reference[i - 1] == hypothesis[j - 1] ? 0 : 1;
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + cost});
      diag = up;
    }
  }
  return row.back();
}

UtterancePair make_utterance_pair(std::string_view reference_utf8, std::string_view hypothesis_utf8,
                        const NormalizeOptions& options) {
  return {normalize_text(reference_utf8, options), normalize_text(hypothesis_utf8, options)};
}

CorpusErrors corpus_errors(const std::vector<UtterancePair>& pairs) {
  CorpusErrors totals;
  for (const UtterancePair& p : pairs) {
    totals.edits += edit_distance(p.reference, p.hypothesis);
    totals.reference_chars += p.reference.size();
  }
  return totals;
}

double corpus_cer(const std::vector<UtterancePair>& pairs) {
  const CorpusErrors totals = corpus_errors(pairs);
  if (totals.reference_chars == 0) {
    throw DomainError("CER is undefined: total reference length is 0");
  }
  return static_cast<double>(totals.edits) / static_cast<double>(totals.reference_chars);
}

double average_cer(const std::vector<TestSetScore>& scores) {
  if (scores.empty()) throw InvalidArgument("average_cer needs at least one score");
  double sum = 0.0;
  for (const TestSetScore& s : scores) sum += s.cer;
  return sum / static_cast<double>(scores.size());
}

double round_half_up(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const double scaled = value * scale;
  // Absorb representation error of a few ulps, e.g. 822.4999999999999.
  const double nudge = 1e-9 * std::max(1.0, std::abs(scaled));
  return std::floor(scaled + 0.5 + nudge) / scale;
}

double relative_reduction(double baseline, double improved) {
  if (!(baseline > 0.0)) throw InvalidArgument("relative_reduction needs baseline > 0");
  return (baseline - improved) / baseline;
}

}  // namespace asrscale
