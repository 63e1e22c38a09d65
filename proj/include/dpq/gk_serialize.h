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

#ifndef DPQ_GK_SERIALIZE_H_
#define DPQ_GK_SERIALIZE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "dpq/gk_sketch.h"

namespace dpq {

// Binary snapshot layout, all fields little-endian:
//
//   offset  size  field
//   0       4     magic "DPQG"
//   4       4     u32 format version (kSnapshotVersion)
//   8       8     f64 alpha (IEEE-754 bits)
//   16      8     u64 n
//   24      8     u64 tuple count s
//   32      24*s  s records of (i64 value index, i64 g, i64 delta)
inline constexpr uint32_t kSnapshotVersion = 1;

std::vector<uint8_t> SerializeSnapshot(const GkSummary& summary);

// Throws std::invalid_argument on bad magic, unknown version, truncated
// input or a payload that violates the summary invariants.
GkSummary DeserializeSnapshot(const std::vector<uint8_t>& bytes);

// Debug form: {"version":1,"alpha":..,"n":..,"tuples":[[v,g,delta],...]}.
std::string SnapshotToJson(const GkSummary& summary);
GkSummary SnapshotFromJson(const std::string& json);

}  // namespace dpq

#endif  // DPQ_GK_SERIALIZE_H_
