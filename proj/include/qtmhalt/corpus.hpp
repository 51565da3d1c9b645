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

// Built-in machines used by tests, the acceptance suite and the CLI.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qtmhalt/machine.hpp"

namespace qtmhalt {

/// (q0, s) -> (qf, s, R); halts at step 1 on cell 1.
Qtm immediate_halt_tm();
/// k states in a right-moving cycle closed by qf; halts at step k on cell k.
Qtm chain_tm(std::size_t k, std::string name = "");
/// Scans right over 0/1 and halts one cell past the first blank.
Qtm scan_right_tm();
/// As scan_right_tm, complementing every bit it passes.
Qtm flip_scan_tm();
/// k moves right then k moves left; halts at step 2k on cell 0.
Qtm bounce_tm(std::size_t k);
/// Single right-moving state, no halting states.
Qtm right_mover_tm();

struct ReversibleCase {
    Qtm machine;
    std::string input;
    /// Known halting step, or empty for machines that never halt.
    std::optional<std::uint64_t> halt_time;
    std::int64_t halt_head = 0;
};

/// Reversible machines with halting times known in closed form.
std::vector<ReversibleCase> reversible_corpus();

/// Two branches that both halt at step 2.
Qtm split_same_qtm();

/// Two branches: one halts at step 2 and leaves the halting set, the other
/// reaches the same configuration later and interferes with it, so per-step
/// monitoring changes the outcome law.
Qtm myers_interference_qtm();

struct RandomMachineOptions {
    std::size_t min_states = 2;
    std::size_t max_states = 4;
    /// Number of disjoint row pairs replaced by (r1 + r2)/sqrt2, (r1 - r2)/sqrt2.
    std::size_t mix_pairs = 1;
    /// Multiply rows and target slots by random powers of i.
    bool phases = true;
    std::size_t max_halting = 1;
};

/// Random well-formed machine over {B, 0, 1}. Each state is entered from a
/// single direction, so separability holds by construction.
Qtm random_wellformed_qtm(std::uint64_t seed, const RandomMachineOptions &opts = {});

/// A copy of a well-formed machine with one random defect (a scaled entry, a
/// duplicated target, a sign flip inside a mixed pair, or a reversed move).
/// The result always fails check_wellformed.
Qtm mutate_ill_formed(const Qtm &m, std::uint64_t seed);

/// Hand-written machines that fail check_wellformed.
std::vector<Qtm> ill_formed_corpus();

}  // namespace qtmhalt
