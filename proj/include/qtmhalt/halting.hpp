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

// Halting protocol: after every step the halting flag (the projector onto
// the halting-state set) is measured. On outcome 1 the data region is read
// and the run stops; on outcome 0 the run continues from the projected
// state. Step t counts applications of the evolution, and the measurement
// follows each application (evolve, then measure).

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qtmhalt/amplitude.hpp"
#include "qtmhalt/dynamics.hpp"
#include "qtmhalt/machine.hpp"

namespace qtmhalt {

struct HaltingProfile {
    std::uint64_t budget = 0;
    /// p[t-1] is the probability that the first halt is observed at step t.
    std::vector<RealValue> p;
    /// Squared norm of the never-halted state after the last step.
    RealValue residual;

    const RealValue &at(std::uint64_t t) const { return p.at(t - 1); }
};

HaltingProfile halt_distribution(const Qtm &m, std::string_view input, std::uint64_t budget,
                                 const SimOptions &opts = {});

enum class Verdict { non_probabilistic_halt, no_halt_within_budget, probabilistic };

const char *verdict_label(Verdict v);

/// Bounded classification. non_probabilistic_halt and probabilistic are
/// definitive; no_halt_within_budget only says nothing halted up to the
/// budget, since no procedure can decide the unbounded case.
struct Classification {
    Verdict verdict = Verdict::no_halt_within_budget;
    /// t0 for non_probabilistic_halt, the budget for no_halt_within_budget,
    /// the witness step for probabilistic.
    std::uint64_t step = 0;
    /// Halting probability at `step` conditioned on not having halted before
    /// (probabilistic only).
    std::optional<RealValue> conditional_p;

    bool operator==(const Classification &) const = default;
};

/// Stops at the first step with nonzero halting probability.
Classification classify(const Qtm &m, std::string_view input, std::uint64_t budget, const SimOptions &opts = {});

Classification classify_profile(const HaltingProfile &profile);

struct Trajectory {
    std::optional<std::uint64_t> halt_step;
    /// Data string read at the halt; empty when the run did not halt.
    std::string data;
    /// Halting-flag outcome for each step performed.
    std::vector<bool> outcomes;
};

/// One run of the protocol with outcomes drawn from the exact probabilities
/// by a generator seeded with `seed`.
Trajectory monitored_sample(const Qtm &m, std::string_view input, std::uint64_t budget, std::uint64_t seed,
                            const SimOptions &opts = {});

struct OutcomeDistribution {
    /// (step, data string) -> probability.
    std::map<std::pair<std::uint64_t, std::string>, RealValue> halted;
    RealValue not_halted;

    RealValue total() const;
};

struct ProtocolComparison {
    /// First-halt step and data string under per-step measurement.
    OutcomeDistribution monitored;
    /// Flag and data string measured once, at the budget, without earlier
    /// measurements. Keys carry the budget as step.
    OutcomeDistribution unmonitored;
    /// Total variation between the two by-budget outcome laws.
    RealValue tv_distance;
    /// tv_by_budget[t-1] is the same distance for budget t.
    std::vector<RealValue> tv_by_budget;
};

ProtocolComparison outcome_distributions(const Qtm &m, std::string_view input, std::uint64_t budget,
                                         const SimOptions &opts = {});

struct TrajectoryStationarity {
    bool ok = true;
    std::optional<std::uint64_t> step;
    std::string message;
};

/// Checks, along the unmeasured evolution for `budget` steps, that every
/// reachable halting configuration maps only to halting configurations and
/// leaves the data region (cells >= 0) unchanged.
TrajectoryStationarity check_stationary_along(const Qtm &m, std::string_view input, std::uint64_t budget,
                                              const SimOptions &opts = {});

}  // namespace qtmhalt
