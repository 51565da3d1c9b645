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

#include "qtmhalt/branch_compiler.hpp"

#include <algorithm>
#include <stdexcept>

#include "qtmhalt/halting.hpp"

namespace qtmhalt {

namespace {

const std::vector<std::string> kSourceSymbols{"B", "0", "1"};
const std::vector<std::string> kCompiledSymbols{"B", "0", "1", "#", "B'", "0'", "1'"};
constexpr SymbolId kMarker = 3;
constexpr SymbolId kMarkedOffset = 4;

void check_source(const Qtm &t, int j) {
    const std::string who = "branch " + std::to_string(j) + " source " + t.name;
    ReversibleReport rev = check_reversible(t);
    if (!rev.ok) {
        throw ValidationError(who + " is not reversible: " + rev.message);
    }
    for (const std::string &s : t.symbols) {
        if (std::find(kSourceSymbols.begin(), kSourceSymbols.end(), s) == kSourceSymbols.end()) {
            throw ValidationError(who + " uses symbol '" + s + "' outside {B, 0, 1}");
        }
    }
    if (t.halting.size() != 1) {
        throw ValidationError(who + " must have exactly one halting state");
    }
    if (t.start_head != 0) {
        throw ValidationError(who + " must start on cell 0");
    }
    for (StateId p = 0; p < t.num_states(); ++p) {
        for (SymbolId s = 0; s < t.num_symbols(); ++s) {
            const Transition &tr = t.row(p, s).front();
            if (tr.state == t.initial && tr.dir == Direction::L && !t.is_halting(p)) {
                throw ValidationError(who + ": initial state " + t.states[t.initial] +
                                      " is entered by a left move from (" + t.states[p] + ", " + t.symbols[s] + ")");
            }
        }
    }
}

std::string branch_state_name(const Qtm &t, StateId q, int j) {
    std::string n = t.states[q];
    if (n == "start" || n == "rewind" || n == "halt") {
        n = "src_" + n;
    }
    return n + "." + std::to_string(j);
}

SymbolId compiled_symbol(const Qtm &t, SymbolId s) {
    const std::string &n = t.symbols[s];
    return static_cast<SymbolId>(std::find(kCompiledSymbols.begin(), kCompiledSymbols.end(), n) -
                                 kCompiledSymbols.begin());
}

}  // namespace

BranchQtm compile_branch_qtm(const Qtm &t1, const Qtm &t2) {
    check_source(t1, 1);
    check_source(t2, 2);
    const Qtm *src[2] = {&t1, &t2};

    BranchQtm out;
    out.source1 = t1.name;
    out.source2 = t2.name;
    Qtm &m = out.machine;
    m.kind = MachineKind::qtm;
    m.name = "Q(" + t1.name + "," + t2.name + ")";
    m.symbols = kCompiledSymbols;
    m.start_head = -1;
    m.working_symbols = {kMarker};

    auto add_state = [&](std::string name, StateOrigin o) {
        m.states.push_back(std::move(name));
        out.origin.push_back(std::move(o));
        return static_cast<StateId>(m.states.size() - 1);
    };
    StateId start[2], rewind[2], halt[2];
    std::vector<StateId> base(2);
    for (int j = 0; j < 2; ++j) {
        start[j] = add_state("start." + std::to_string(j + 1), {StateRole::start, j + 1, ""});
    }
    for (int j = 0; j < 2; ++j) {
        base[j] = static_cast<StateId>(m.states.size());
        for (StateId q = 0; q < src[j]->num_states(); ++q) {
            add_state(branch_state_name(*src[j], q, j + 1), {StateRole::branch, j + 1, src[j]->states[q]});
        }
    }
    for (int j = 0; j < 2; ++j) {
        rewind[j] = add_state("rewind." + std::to_string(j + 1), {StateRole::rewind, j + 1, ""});
    }
    for (int j = 0; j < 2; ++j) {
        halt[j] = add_state("halt." + std::to_string(j + 1), {StateRole::halt, j + 1, ""});
    }
    m.initial = start[0];
    m.halting = {halt[0]};
    m.delta = TransitionTable(m.num_states(), m.num_symbols());

    // Step 1: the split, and its orthogonal partner on the unused start.2.
    const StateId q0[2] = {base[0] + t1.initial, base[1] + t2.initial};
    const Amplitude h = Amplitude::inv_sqrt2();
    m.delta.set_row(start[0], kBlank, Row{{h, q0[0], kMarker, Direction::R}, {h, q0[1], kMarker, Direction::R}});
    m.delta.set_row(start[1], kBlank, Row{{h, q0[0], kMarker, Direction::R}, {-h, q0[1], kMarker, Direction::R}});

    for (int j = 0; j < 2; ++j) {
        const Qtm &t = *src[j];
        const StateId qf = t.halting.front();
        // Step 2: embedded source rows.
        for (StateId p = 0; p < t.num_states(); ++p) {
            if (p == qf) {
                continue;
            }
            for (SymbolId s = 0; s < t.num_symbols(); ++s) {
                const Transition &tr = t.row(p, s).front();
                m.delta.set_row(base[j] + p, compiled_symbol(t, s),
                                Row{{Amplitude(1), base[j] + tr.state, compiled_symbol(t, tr.symbol), tr.dir}});
            }
        }
        // Step 3: mark, rewind to the marker, tag, halt.
        for (SymbolId s = 0; s < kMarker; ++s) {
            m.delta.set_row(base[j] + qf, s,
                            Row{{Amplitude(1), rewind[j], static_cast<SymbolId>(kMarkedOffset + s), Direction::L}});
            m.delta.set_row(rewind[j], s, Row{{Amplitude(1), rewind[j], s, Direction::L}});
        }
        const SymbolId tag = j == 0 ? 1 : 2;
        m.delta.set_row(rewind[j], kMarker, Row{{Amplitude(1), halt[0], tag, Direction::L}});
    }
    m.delta.set_row(halt[0], kBlank, Row{{Amplitude(1), halt[0], kBlank, Direction::L}});

    complete_table(m);

    m.notes.push_back("compiled-from: t1=" + t1.name + " t2=" + t2.name);
    for (StateId q = 0; q < m.num_states(); ++q) {
        const StateOrigin &o = out.origin[q];
        if (o.role == StateRole::branch) {
            m.notes.push_back("state " + m.states[q] + " <- t" + std::to_string(o.branch) + ":" + o.source_state);
        }
    }

    WellformedReport rep = check_wellformed(m);
    if (!rep.ok) {
        throw std::logic_error("compiled machine is not well-formed: " + rep.message);
    }
    return out;
}

int branch_of(const BranchQtm &q, const Configuration &c) {
    const StateOrigin &o = q.origin.at(c.state);
    switch (o.role) {
        case StateRole::start:
            return o.branch == 1 && c.read(-1) == kBlank ? 0 : o.branch;
        case StateRole::branch:
        case StateRole::rewind:
            return o.branch;
        case StateRole::halt: {
            SymbolId tag = c.read(-1);
            return tag == 1 ? 1 : tag == 2 ? 2 : o.branch;
        }
    }
    return 0;
}

std::uint64_t compiled_halt_time(const ClassicalRun &run) {
    if (!run.halted) {
        throw std::invalid_argument("compiled_halt_time: run did not halt");
    }
    return run.steps + static_cast<std::uint64_t>(run.final.head) + 3;
}

Qtm never_halt_tm() {
    Qtm m = make_machine("never-halt", {"B", "0", "1"}, {"q", "h"}, "q", {"h"}, MachineKind::rtm);
    for (const char *s : {"B", "0", "1"}) {
        add_rule(m, "q", s, "q", s, Direction::R);
        add_rule(m, "h", s, "h", s, Direction::R);
    }
    return m;
}

const char *runtime_verdict_label(RuntimeVerdict v) {
    switch (v) {
        case RuntimeVerdict::same:
            return "same";
        case RuntimeVerdict::different:
            return "different";
        case RuntimeVerdict::unknown:
            return "unknown";
    }
    return "?";
}

namespace {

struct BranchHalts {
    std::optional<std::uint64_t> time[3];
};

BranchHalts branch_halt_times(const BranchQtm &q, std::string_view input, std::uint64_t budget,
                              const SimOptions &opts) {
    BranchHalts out;
    const Qtm &m = q.machine;
    Superposition survivor(initial_config(m, input));
    for (std::uint64_t t = 1; t <= budget && !survivor.empty(); ++t) {
        Superposition next = step(m, survivor, opts);
        Superposition running;
        for (const auto &[c, a] : next.entries()) {
            if (m.is_halting(c.state)) {
                int b = branch_of(q, c);
                if (!out.time[b]) {
                    out.time[b] = t;
                }
            } else {
                running.add(c, a);
            }
        }
        survivor = std::move(running);
    }
    return out;
}

}  // namespace

RuntimeComparison compare_runtimes(const Qtm &t1, const Qtm &t2, std::string_view input, std::uint64_t budget,
                                   CompareMode mode, const SimOptions &opts) {
    RuntimeComparison cmp;
    cmp.mode = mode;
    cmp.budget = budget;
    if (mode == CompareMode::oracle) {
        const ClassicalRun r1 = run_classical(t1, input, budget);
        const ClassicalRun r2 = run_classical(t2, input, budget);
        for (const ClassicalRun *r : {&r1, &r2}) {
            if (r->min_head < 0) {
                throw std::invalid_argument("source machine moved onto a negative cell");
            }
        }
        if (r1.halted) {
            cmp.time1 = r1.steps;
            cmp.compiled_time1 = compiled_halt_time(r1);
        }
        if (r2.halted) {
            cmp.time2 = r2.steps;
            cmp.compiled_time2 = compiled_halt_time(r2);
        }
        if (r1.halted && r2.halted) {
            cmp.verdict = r1.steps == r2.steps ? RuntimeVerdict::same : RuntimeVerdict::different;
        } else if (r1.halted || r2.halted) {
            cmp.verdict = RuntimeVerdict::different;
        }
        return cmp;
    }

    const BranchQtm q = compile_branch_qtm(t1, t2);
    const Classification cls = classify(q.machine, input, budget, opts);
    if (cls.verdict == Verdict::no_halt_within_budget) {
        return cmp;
    }
    const BranchHalts halts = branch_halt_times(q, input, budget, opts);
    cmp.compiled_time1 = halts.time[1];
    cmp.compiled_time2 = halts.time[2];
    cmp.verdict = cls.verdict == Verdict::non_probabilistic_halt ? RuntimeVerdict::same : RuntimeVerdict::different;
    return cmp;
}

SemiDecision halting_semidecider(const Qtm &t1, std::string_view input, std::uint64_t budget,
                                 const SimOptions &opts) {
    RuntimeComparison cmp = compare_runtimes(t1, never_halt_tm(), input, budget, CompareMode::quantum, opts);
    switch (cmp.verdict) {
        case RuntimeVerdict::same:
            throw std::logic_error("semidecider: a never-halting branch compared equal; compiler bug");
        case RuntimeVerdict::different:
            if (!cmp.compiled_time1) {
                throw std::logic_error("semidecider: halting branch not attributed to t1");
            }
            return {true, *cmp.compiled_time1};
        case RuntimeVerdict::unknown:
            break;
    }
    return {};
}

}  // namespace qtmhalt
