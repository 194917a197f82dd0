// Copyright 2026 The fiberjac Authors
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

#pragma once

// JSON schemas for fiber, fibration and model files and for every report the
// command-line tool prints. Field order in emitted objects is fixed so output
// is byte-stable. See docs/schemas.md.

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "fiberjac/curve_model.hpp"
#include "fiberjac/ingest.hpp"
#include "fiberjac/jacobian.hpp"
#include "fiberjac/stability.hpp"

namespace fiberjac::io {

using Json = nlohmann::ordered_json;

struct FiberSpec {
  KodairaType kodaira = KodairaType::smooth();
  std::optional<Polarization> polarization;
};

// Readers throw ParseError (with line and field) on malformed input.
FiberSpec parse_fiber(std::string_view text);
FibrationDescription parse_fibration(std::string_view text);
WeierstrassModel parse_model(std::string_view text);

Json to_json(const FiberGraph& g);
Json to_json(const StabilityVerdict& v);
Json to_json(const GradedObject& gr);
Json to_json(const StratificationReport& r);
Json to_json(const ModuliClassification& c);
Json to_json(const FiberGraph& g, const PhiMap& phi);
Json to_json(const FibrationDescription& f);
Json to_json(const FibrationReport& r);
/// Fibration file plus the invariants and per-point valuations.
Json to_json(const ScanResult& s);

std::string rational_string(const Rational& q);

// Human-readable renderings for --format table.
std::string table(const FiberGraph& g);
std::string table(const StratificationReport& r);
std::string table(const FibrationReport& r);

}  // namespace fiberjac::io
