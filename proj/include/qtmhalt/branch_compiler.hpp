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

// Two-branch machines built from a pair of reversible machines.
//
// The compiled machine starts in start.1 with the head on cell -1:
//
//   1. split: write the marker '#' on cell -1, move right, and enter
//      1/sqrt2 (q0.1 + q0.2);
//   2. branch j runs the rows of source machine j on states "<name>.j";
//   3. when branch j reaches its halting state it marks the scanned cell
//      (B -> B', 0 -> 0', 1 -> 1') and moves left into rewind.j, which moves
//      left over unmarked symbols until it scans '#'; there it writes the
//      branch tag ('0' for branch 1, '1' for branch 2), moves left and
//      enters halt.1, the only halting state. halt.1 keeps moving left over
//      the blank working cells.
//
// A branch whose source machine halts after t steps with its head on cell h
// is observed halting at step t + h + 3. The mark on the halting cell is what
// keeps the rewind injective: without it the head position would be erased.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qtmhalt/dynamics.hpp"
#include "qtmhalt/machine.hpp"

namespace qtmhalt {

enum class StateRole { start, branch, rewind, halt };

struct StateOrigin {
    StateRole role;
    /// 1 or 2.
    int branch;
    /// Source state name for StateRole::branch; empty otherwise.
    std::string source_state;
};

struct BranchQtm {
    Qtm machine;
    /// Indexed by compiled StateId.
    std::vector<StateOrigin> origin;
    std::string source1;
    std::string source2;
};

/// Throws ValidationError when a source is not reversible, uses symbols
/// outside {B, 0, 1}, does not have exactly one halting state, starts off
/// cell 0, or has its initial state entered by a left move. Sources must
/// also never move onto negative cells; that is a dynamic contract.
BranchQtm compile_branch_qtm(const Qtm &t1, const Qtm &t2);

/// Branch index (1 or 2) of a configuration of a compiled machine, or 0 for
/// the pre-split configuration. Halted configurations are attributed by the
/// tag on cell -1.
int branch_of(const BranchQtm &q, const Configuration &c);

/// Observed halting step of the compiled branch for a source run that halted.
std::uint64_t compiled_halt_time(const ClassicalRun &run);

/// Right-moving machine whose halting state is unreachable.
Qtm never_halt_tm();

enum class RuntimeVerdict { same, different, unknown };
enum class CompareMode { quantum, oracle };

const char *runtime_verdict_label(RuntimeVerdict v);

struct RuntimeComparison {
    RuntimeVerdict verdict = RuntimeVerdict::unknown;
    CompareMode mode = CompareMode::oracle;
    std::uint64_t budget = 0;
    /// Source running times (oracle mode); empty when not halted in budget.
    std::optional<std::uint64_t> time1;
    std::optional<std::uint64_t> time2;
    /// Observed halting steps of the compiled branches; empty when not
    /// halted in budget. Quantum mode compares these, oracle mode compares
    /// time1/time2 and reports these alongside.
    std::optional<std::uint64_t> compiled_time1;
    std::optional<std::uint64_t> compiled_time2;
};

/// quantum: classify the compiled two-branch machine (budget in compiled
/// steps). oracle: run both sources classically (budget in source steps).
RuntimeComparison compare_runtimes(const Qtm &t1, const Qtm &t2, std::string_view input, std::uint64_t budget,
                                   CompareMode mode, const SimOptions &opts = {});

struct SemiDecision {
    bool halts = false;
    /// Observed halting step of the compiled machine when `halts`.
    std::uint64_t step = 0;
};

/// Compares t1 against never_halt_tm() in quantum mode. Different means t1
/// halts; unknown means it did not halt within the budget. A general decider
/// of this kind cannot exist, so the budget is essential.
SemiDecision halting_semidecider(const Qtm &t1, std::string_view input, std::uint64_t budget,
                                 const SimOptions &opts = {});

}  // namespace qtmhalt
