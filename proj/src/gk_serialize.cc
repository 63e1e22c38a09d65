//
// Copyright 2026 The dpq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "dpq/gk_serialize.h"

#include <bit>
#include <cstring>
#include <stdexcept>

#include "json.hpp"

namespace dpq {

namespace {

constexpr uint8_t kMagic[4] = {'D', 'P', 'Q', 'G'};
constexpr size_t kHeaderSize = 32;
constexpr size_t kRecordSize = 24;

void PutU64(std::vector<uint8_t>& out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void PutU32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

uint64_t GetU64(const uint8_t* p) {
  uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

uint32_t GetU32(const uint8_t* p) {
  uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

}  // namespace

std::vector<uint8_t> SerializeSnapshot(const GkSummary& summary) {
  std::vector<uint8_t> out;
  out.reserve(kHeaderSize + kRecordSize * summary.size());
  for (uint8_t b : kMagic) out.push_back(b);
  PutU32(out, kSnapshotVersion);
  PutU64(out, std::bit_cast<uint64_t>(summary.alpha()));
  PutU64(out, static_cast<uint64_t>(summary.count()));
  PutU64(out, static_cast<uint64_t>(summary.size()));
  for (const SketchTuple& t : summary.tuples()) {
    PutU64(out, static_cast<uint64_t>(t.value.index));
    PutU64(out, static_cast<uint64_t>(t.g));
    PutU64(out, static_cast<uint64_t>(t.delta));
  }
  return out;
}

GkSummary DeserializeSnapshot(const std::vector<uint8_t>& bytes) {
  if (bytes.size() < kHeaderSize) {
    throw std::invalid_argument("snapshot truncated: header incomplete");
  }
  if (std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw std::invalid_argument("snapshot has bad magic");
  }
  const uint32_t version = GetU32(bytes.data() + 4);
  if (version != kSnapshotVersion) {
    throw std::invalid_argument("unsupported snapshot version " +
                                std::to_string(version));
  }
  const double alpha = std::bit_cast<double>(GetU64(bytes.data() + 8));
  const auto n = static_cast<int64_t>(GetU64(bytes.data() + 16));
  const uint64_t count = GetU64(bytes.data() + 24);
  if (count > (bytes.size() - kHeaderSize) / kRecordSize ||
      bytes.size() != kHeaderSize + count * kRecordSize) {
    throw std::invalid_argument("snapshot size does not match tuple count");
  }
  std::vector<SketchTuple> tuples(count);
  const uint8_t* p = bytes.data() + kHeaderSize;
  for (SketchTuple& t : tuples) {
    t.value.index = static_cast<int64_t>(GetU64(p));
    t.g = static_cast<int64_t>(GetU64(p + 8));
    t.delta = static_cast<int64_t>(GetU64(p + 16));
    p += kRecordSize;
  }
  return GkSummary::FromParts(alpha, n, std::move(tuples));
}

std::string SnapshotToJson(const GkSummary& summary) {
  nlohmann::json tuples = nlohmann::json::array();
  for (const SketchTuple& t : summary.tuples()) {
    tuples.push_back({t.value.index, t.g, t.delta});
  }
  nlohmann::json j = {{"version", kSnapshotVersion},
                      {"alpha", summary.alpha()},
                      {"n", summary.count()},
                      {"tuples", std::move(tuples)}};
  return j.dump();
}

GkSummary SnapshotFromJson(const std::string& json) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json);
    if (j.at("version").get<uint32_t>() != kSnapshotVersion) {
      throw std::invalid_argument("unsupported snapshot version");
    }
    std::vector<SketchTuple> tuples;
    for (const auto& row : j.at("tuples")) {
      tuples.push_back(SketchTuple{Element{row.at(0).get<int64_t>()},
                                   row.at(1).get<int64_t>(),
                                   row.at(2).get<int64_t>()});
    }
    return GkSummary::FromParts(j.at("alpha").get<double>(),
                                j.at("n").get<int64_t>(), std::move(tuples));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed snapshot json: ") +
                                e.what());
  }
}

}  // namespace dpq
