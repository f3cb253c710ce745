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

#include "oneshot/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "oneshot/error.hpp"

namespace oneshot {

using nlohmann::json;

namespace {

std::vector<std::string> optional_labels(const json& j) {
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    for (const auto& label : j.at("labels")) {
      labels.push_back(label.get<std::string>());
    }
  }
  return labels;
}

}  // namespace

MetricSpace load_metric_json(const json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "matrix") {
      const auto dist = j.at("dist").get<std::vector<std::vector<double>>>();
      return normalize_diameter(validate_metric(dist, optional_labels(j)));
    }
    if (kind == "line") {
      const auto coords = j.at("coords").get<std::vector<double>>();
      return to_space(make_line(coords), optional_labels(j));
    }
    if (kind == "points") {
      const auto coords =
          j.at("coords").get<std::vector<std::vector<double>>>();
      if (j.contains("dim")) {
        const auto dim = j.at("dim").get<std::size_t>();
        for (const auto& point : coords) {
          if (point.size() != dim) {
            throw Error(Errc::kBadInput, "point dimension mismatch");
          }
        }
      }
      return normalize_diameter(points_space(coords, optional_labels(j)));
    }
    throw Error(Errc::kBadInput, "unknown metric kind: " + kind);
  } catch (const json::exception& e) {
    throw Error(Errc::kBadInput, std::string("bad metric JSON: ") + e.what());
  }
}

DiscreteFunction load_function_json(const json& j) {
  try {
    return DiscreteFunction{j.at("values").get<std::vector<double>>()};
  } catch (const json::exception& e) {
    throw Error(Errc::kBadInput,
                std::string("bad function JSON: ") + e.what());
  }
}

SamplingDistribution load_distribution_json(const json& j) {
  try {
    return make_distribution(j.at("p").get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw Error(Errc::kBadInput,
                std::string("bad distribution JSON: ") + e.what());
  }
}

json metric_to_json(const MetricSpace& space) {
  json j;
  if (space.kind == MetricKind::kLine) {
    j["kind"] = "line";
    j["coords"] = space.coords;
  } else {
    j["kind"] = "matrix";
    std::vector<std::vector<double>> dist(space.n,
                                          std::vector<double>(space.n));
    for (int i = 0; i < space.n; ++i) {
      for (int k = 0; k < space.n; ++k) dist[i][k] = space.d(i, k);
    }
    j["dist"] = dist;
  }
  j["labels"] = space.labels;
  j["scale"] = space.scale;
  return j;
}

json function_to_json(const DiscreteFunction& f) {
  return json{{"values", f.values}};
}

json distribution_to_json(const SamplingDistribution& p) {
  return json{{"p", p.p}};
}

json read_json_file(const std::string& path) {
  std::string bytes;
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    bytes = buffer.str();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::kBadInput, "cannot read " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    bytes = buffer.str();
  }
  try {
    return json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw Error(Errc::kBadInput,
                "malformed JSON in " + path + ": " + e.what());
  }
}

std::uint64_t content_digest(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string digest_hex(std::uint64_t digest) {
  std::ostringstream os;
  os << std::hex << digest;
  return os.str();
}

}  // namespace oneshot
