// Copyright 2026 The Oneshot Authors
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

#ifndef ONESHOT_IO_HPP_
#define ONESHOT_IO_HPP_

#include <cstdint>
#include <string>

// Single-header nlohmann/json from vendor/.
#include "json.hpp"

#include "oneshot/lipschitz.hpp"
#include "oneshot/metric.hpp"

namespace oneshot {

// Metric JSON: {"kind":"matrix","dist":[[...]]} or
// {"kind":"line","coords":[...]} or
// {"kind":"points","dim":d,"coords":[[...]]}. All loaders normalize the
// diameter to 1 and record the scale factor.
MetricSpace load_metric_json(const nlohmann::json& j);

// Function JSON: {"values":[...]}.
DiscreteFunction load_function_json(const nlohmann::json& j);

// Distribution JSON: {"p":[...]}.
SamplingDistribution load_distribution_json(const nlohmann::json& j);

nlohmann::json metric_to_json(const MetricSpace& space);
nlohmann::json function_to_json(const DiscreteFunction& f);
nlohmann::json distribution_to_json(const SamplingDistribution& p);

// Reads a whole file (or stdin when path == "-"); throws BadInput on
// unreadable paths or malformed JSON.
nlohmann::json read_json_file(const std::string& path);

// FNV-1a 64-bit content digest, used for run manifests.
std::uint64_t content_digest(const std::string& bytes);
std::string digest_hex(std::uint64_t digest);

}  // namespace oneshot

#endif  // ONESHOT_IO_HPP_
