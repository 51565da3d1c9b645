// Copyright 2026 The qtmhalt Authors
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

// JSON and CSV renderings. Exact values appear as {"exact": <amplitude
// grammar string>, "float": <double>}; object keys are sorted.

#pragma once

#include <string>

#include "json.hpp"
#include "qtmhalt/branch_compiler.hpp"
#include "qtmhalt/dense_oracle.hpp"
#include "qtmhalt/dynamics.hpp"
#include "qtmhalt/halting.hpp"
#include "qtmhalt/machine.hpp"

namespace qtmhalt {

using Json = nlohmann::json;

Json exact_json(const RealValue &v);
Json exact_json(const Amplitude &v);

Json to_json(const HaltingProfile &p);
Json to_json(const Classification &c);
Json to_json(const Trajectory &t);
Json to_json(const OutcomeDistribution &d);
Json to_json(const ProtocolComparison &c);
Json to_json(const RuntimeComparison &c);
Json to_json(const SemiDecision &d);
Json to_json(const Qtm &m, const WellformedReport &r);
Json to_json(const Qtm &m, const ReversibleReport &r);
Json to_json(const Qtm &m, const StationaryReport &r);
Json to_json(const TrajectoryStationarity &r);
Json to_json(const MatrixReport &r);
/// Configurations in canonical order with their amplitudes.
Json to_json(const Qtm &m, const Superposition &psi);

/// Header row "t,p_exact,p_float", one line per step.
std::string to_csv(const HaltingProfile &p);

Json error_json(const std::string &kind, const std::string &message);

}  // namespace qtmhalt
