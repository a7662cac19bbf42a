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

#include "asrscale/store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <utility>

#include "asrscale/error.hpp"
#include "json.hpp"

namespace asrscale {
namespace {

using nlohmann::ordered_json;

// Owning file descriptor holding a flock for its lifetime.
class LockedFile {
 public:
  LockedFile(const std::filesystem::path& path, int flags, int lock_op) {
    fd_ = ::open(path.c_str(), flags | O_CLOEXEC, 0644);
    if (fd_ < 0) {
      if (errno == ENOENT && !(flags & O_CREAT)) return;
      throw Error("cannot open store '" + path.string() + "': " + std::strerror(errno));
    }
    while (::flock(fd_, lock_op) != 0) {
      if (errno != EINTR) {
        const int err = errno;
        ::close(fd_);
        throw Error("cannot lock store '" + path.string() + "': " + std::strerror(err));
      }
    }
  }
  LockedFile(const LockedFile&) = delete;
  LockedFile& operator=(const LockedFile&) = delete;
  ~LockedFile() {
    if (fd_ >= 0) ::close(fd_);  // releases the lock
  }

  bool is_open() const { return fd_ >= 0; }
  int fd() const { return fd_; }

  std::string read_all() const {
    std::string data;
    if (::lseek(fd_, 0, SEEK_SET) < 0) throw Error(std::string("store seek: ") + std::strerror(errno));
    char buf[1 << 16];
    for (;;) {
      const ssize_t n = ::read(fd_, buf, sizeof(buf));
      if (n < 0) {
        if (errno == EINTR) continue;
        throw Error(std::string("store read: ") + std::strerror(errno));
      }
      if (n == 0) break;
      data.append(buf, static_cast<std::size_t>(n));
    }
    return data;
  }

 private:
  int fd_ = -1;
};

std::vector<RunRecord> parse_log(const std::string& data) {
  std::vector<RunRecord> runs;
  std::size_t offset = 0;
  while (offset < data.size()) {
    const std::size_t nl = data.find('\n', offset);
    if (nl == std::string::npos) break;  // interrupted append
    const std::string_view line(data.data() + offset, nl - offset);
    if (!line.empty()) {
      try {
        runs.push_back(run_from_json(line));
      } catch (const Error& e) {
        throw CorruptStoreError(e.what(), offset);
      }
    }
    offset = nl + 1;
  }
  return runs;
}

template <typename T>
T field(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("record is missing '") + key + "'", 0);
  return doc.at(key).get<T>();
}

}  // namespace

bool RunFilter::matches(const RunRecord& run) const {
  return (!strategy_id || run.strategy_id == *strategy_id) &&
         (!encoder_tag || run.encoder_tag == *encoder_tag) && (!source || run.source == *source);
}

std::string to_json_line(const RunRecord& run) {
  ordered_json doc;
  doc["run_id"] = run.run_id;
  doc["strategy_id"] = run.strategy_id;
  doc["encoder_tag"] = run.encoder_tag;
  doc["data_hours"] = run.data_hours;
  ordered_json scores = ordered_json::array();
  for (const TestSetScore& s : run.scores) {
    scores.push_back({{"set_name", s.set_name}, {"cer", s.cer}});
  }
  doc["scores"] = std::move(scores);
  doc["total_flops"] = run.total_flops;
  if (run.curve) {
    ordered_json curve = ordered_json::array();
    for (const Checkpoint& c : run.curve->points) {
      curve.push_back({{"cumulative_flops", c.cumulative_flops},
                       {"avg_cer", c.avg_cer},
                       {"stage_kind", std::string(to_string(c.stage_kind))}});
    }
    doc["curve"] = std::move(curve);
  } else {
    doc["curve"] = nullptr;
  }
  doc["source"] = to_string(run.source);
  return doc.dump();
}

RunRecord run_from_json(std::string_view line) {
  RunRecord run;
  try {
    const nlohmann::json doc = nlohmann::json::parse(line);
    if (!doc.is_object()) throw ParseError("record must be a JSON object", 0);
    run.run_id = field<std::string>(doc, "run_id");
    run.strategy_id = field<std::string>(doc, "strategy_id");
    run.encoder_tag = field<std::string>(doc, "encoder_tag");
    run.data_hours = field<double>(doc, "data_hours");
    for (const auto& s : doc.at("scores")) {
      run.scores.push_back({field<std::string>(s, "set_name"), field<double>(s, "cer")});
    }
    run.total_flops = field<double>(doc, "total_flops");
    if (doc.contains("curve") && !doc.at("curve").is_null()) {
      CheckpointCurve curve;
      for (const auto& c : doc.at("curve")) {
        curve.points.push_back({field<double>(c, "cumulative_flops"), field<double>(c, "avg_cer"),
                                stage_kind_from_string(field<std::string>(c, "stage_kind"))});
      }
      run.curve = std::move(curve);
    }
    run.source = run_source_from_string(field<std::string>(doc, "source"));
    validate_run(run);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what(), 0);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), 0);
  }
  return run;
}

RunStore::RunStore(std::filesystem::path path) : path_(std::move(path)) {}

void RunStore::put(const RunRecord& run) {
  validate_run(run);
  LockedFile file(path_, O_RDWR | O_CREAT, LOCK_EX);
  std::string data = file.read_all();

  // Drop the fragment of an interrupted append so the new line starts clean.
  const std::size_t complete = data.empty() || data.back() == '\n' ? data.size()
                               : data.rfind('\n') == std::string::npos ? 0
                                                                       : data.rfind('\n') + 1;
  if (complete != data.size()) {
    if (::ftruncate(file.fd(), static_cast<off_t>(complete)) != 0) {
      throw Error(std::string("store truncate: ") + std::strerror(errno));
    }
    data.resize(complete);
  }

  for (const RunRecord& existing : parse_log(data)) {
    if (existing.run_id == run.run_id) {
      throw ConflictError("run '" + run.run_id + "' is already in the store");
    }
  }

  const std::string line = to_json_line(run) + "\n";
  if (::lseek(file.fd(), 0, SEEK_END) < 0) throw Error(std::string("store seek: ") + std::strerror(errno));
  std::size_t written = 0;
  while (written < line.size()) {
    const ssize_t n = ::write(file.fd(), line.data() + written, line.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error(std::string("store write: ") + std::strerror(errno));
    }
    written += static_cast<std::size_t>(n);
  }
  ::fdatasync(file.fd());
}

std::vector<RunRecord> RunStore::load() const {
  LockedFile file(path_, O_RDONLY, LOCK_SH);
  if (!file.is_open()) return {};
  return parse_log(file.read_all());
}

std::vector<RunRecord> RunStore::list(const RunFilter& filter) const {
  std::vector<RunRecord> out;
  for (RunRecord& run : load()) {
    if (filter.matches(run)) out.push_back(std::move(run));
  }
  return out;
}

std::optional<RunRecord> RunStore::get(const std::string& run_id) const {
  for (RunRecord& run : load()) {
    if (run.run_id == run_id) return std::move(run);
  }
  return std::nullopt;
}

}  // namespace asrscale
