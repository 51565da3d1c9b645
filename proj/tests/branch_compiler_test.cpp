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

#include "gtest/gtest.h"
#include "qtmhalt/corpus.hpp"
#include "qtmhalt/halting.hpp"
#include "test_util.hpp"

using namespace qtmhalt;

namespace {

const RealValue kHalf(Rational(1, 2));

std::vector<ReversibleCase> halting_cases() {
    std::vector<ReversibleCase> out;
    for (ReversibleCase &c : reversible_corpus()) {
        if (c.halt_time) {
            out.push_back(std::move(c));
        }
    }
    return out;
}

bool has_note(const Qtm &m, const std::string &note) {
    return std::find(m.notes.begin(), m.notes.end(), note) != m.notes.end();
}

}  // namespace

TEST(CompileBranchQtm, output_is_wellformed) {
    for (const ReversibleCase &a : reversible_corpus()) {
        for (const Qtm &b : {never_halt_tm(), immediate_halt_tm(), bounce_tm(3)}) {
            const BranchQtm q = compile_branch_qtm(a.machine, b);
            const WellformedReport r = check_wellformed(q.machine);
            EXPECT_TRUE(r.ok) << q.machine.name << ": " << r.message;
            EXPECT_EQ(q.machine.states[q.machine.initial], "start.1");
            ASSERT_EQ(q.machine.halting.size(), 1u);
            EXPECT_EQ(q.machine.states[q.machine.halting[0]], "halt.1");
            EXPECT_EQ(q.machine.start_head, -1);
            EXPECT_EQ(q.origin.size(), q.machine.num_states());
        }
    }
}

TEST(CompileBranchQtm, provenance) {
    const BranchQtm q = compile_branch_qtm(scan_right_tm(), never_halt_tm());
    EXPECT_EQ(q.machine.notes.front(), "compiled-from: t1=scan-right t2=never-halt");
    EXPECT_TRUE(has_note(q.machine, "state q0.1 <- t1:q0"));
    EXPECT_TRUE(has_note(q.machine, "state h.2 <- t2:h"));
    EXPECT_EQ(q.source1, "scan-right");
    EXPECT_EQ(q.source2, "never-halt");
}

TEST(CompileBranchQtm, rejects_bad_sources) {
    EXPECT_THROW(compile_branch_qtm(split_same_qtm(), never_halt_tm()), ValidationError);
    EXPECT_THROW(compile_branch_qtm(never_halt_tm(), right_mover_tm()), ValidationError);

    Qtm wide = right_mover_tm();
    wide.symbols = {"B", "0", "x"};
    wide.halting = {};
    EXPECT_THROW(compile_branch_qtm(wide, never_halt_tm()), ValidationError);

    Qtm shifted = immediate_halt_tm();
    shifted.start_head = 2;
    EXPECT_THROW(compile_branch_qtm(shifted, never_halt_tm()), ValidationError);

    // bounce-2 started in s3, which is entered by a left move from s2.
    Qtm left = bounce_tm(2);
    left.initial = *left.state_id("s3");
    EXPECT_THROW(compile_branch_qtm(left, never_halt_tm()), ValidationError);
}

TEST(CompileBranchQtm, split_is_exact) {
    for (const ReversibleCase &c : reversible_corpus()) {
        const BranchQtm q = compile_branch_qtm(c.machine, never_halt_tm());
        const Superposition one = evolve(q.machine, c.input, 1);
        ASSERT_EQ(one.size(), 2u);
        int branches = 0;
        for (const auto &[cfg, a] : one.entries()) {
            EXPECT_EQ(norm_sq(a), kHalf);
            EXPECT_EQ(a, Amplitude::inv_sqrt2());
            const StateOrigin &o = q.origin[cfg.state];
            EXPECT_EQ(o.role, StateRole::branch);
            branches |= 1 << o.branch;
        }
        EXPECT_EQ(branches, 6);
    }
}

TEST(CompileBranchQtm, branches_reproduce_sources) {
    const std::vector<std::pair<Qtm, std::string>> pairs = {
        {scan_right_tm(), "0110"}, {flip_scan_tm(), "101"}, {bounce_tm(3), "1"}};
    for (const auto &[t1, input] : pairs) {
        const Qtm t2 = flip_scan_tm();
        const BranchQtm q = compile_branch_qtm(t1, t2);
        const ClassicalRun r1 = run_classical(t1, input, 100);
        ASSERT_TRUE(r1.halted);
        Superposition psi = evolve(q.machine, input, 1);
        Configuration ref1 = initial_config(t1, input), ref2 = initial_config(t2, input);
        for (std::uint64_t t = 0; t < r1.steps; ++t) {
            for (const auto &[c, a] : psi.entries()) {
                const StateOrigin &o = q.origin[c.state];
                if (o.role != StateRole::branch) {
                    continue;
                }
                const Configuration &ref = o.branch == 1 ? ref1 : ref2;
                const Qtm &src = o.branch == 1 ? t1 : t2;
                EXPECT_EQ(o.source_state, src.states[ref.state]);
                EXPECT_EQ(c.head, ref.head);
                for (std::int64_t x = 0; x < 12; ++x) {
                    EXPECT_EQ(q.machine.symbols[c.read(x)], src.symbols[ref.read(x)]);
                }
            }
            psi = step(q.machine, psi);
            ref1 = step(t1, Superposition(ref1)).entries().begin()->first;
            ref2 = step(t2, Superposition(ref2)).entries().begin()->first;
        }
    }
}

TEST(CompileBranchQtm, compiled_halt_time_formula) {
    for (const ReversibleCase &c : halting_cases()) {
        const ClassicalRun r = run_classical(c.machine, c.input, 1000);
        ASSERT_TRUE(r.halted);
        EXPECT_EQ(r.steps, *c.halt_time);
        EXPECT_EQ(r.final.head, c.halt_head);
        const std::uint64_t t_star = compiled_halt_time(r);
        EXPECT_EQ(t_star, *c.halt_time + static_cast<std::uint64_t>(c.halt_head) + 3);
        const HaltingProfile p =
            halt_distribution(compile_branch_qtm(c.machine, never_halt_tm()).machine, c.input, t_star + 5);
        for (std::uint64_t t = 1; t <= p.budget; ++t) {
            EXPECT_EQ(p.at(t), t == t_star ? kHalf : RealValue()) << c.machine.name << " t=" << t;
        }
        EXPECT_EQ(p.residual, kHalf);
    }
}

TEST(CompileBranchQtm, formula_matches_dense_evolution) {
    const std::vector<std::pair<Qtm, Qtm>> pairs = {{immediate_halt_tm(), immediate_halt_tm()},
                                                    {immediate_halt_tm(), bounce_tm(1)},
                                                    {bounce_tm(1), bounce_tm(1)}};
    for (const auto &[a, b] : pairs) {
        const BranchQtm q = compile_branch_qtm(a, b);
        const std::uint64_t ta = compiled_halt_time(run_classical(a, "", 10));
        const std::uint64_t tb = compiled_halt_time(run_classical(b, "", 10));
        const std::vector<RealValue> p = qtmhalt::testing::dense_halt_profile(q.machine, "", {-2, 1}, 5);
        for (std::uint64_t t = 1; t <= 5; ++t) {
            RealValue expected;
            if (t == ta) {
                expected += kHalf;
            }
            if (t == tb) {
                expected += kHalf;
            }
            EXPECT_EQ(p[t - 1], expected) << q.machine.name << " t=" << t;
        }
    }
}

TEST(CompileBranchQtm, branch_isolation) {
    // Each branch evolved alone from its post-split configuration; the
    // combined run must be their sum with disjoint supports.
    const std::vector<std::pair<Qtm, Qtm>> pairs = {{chain_tm(3), never_halt_tm()},
                                                    {scan_right_tm(), flip_scan_tm()},
                                                    {bounce_tm(3), chain_tm(6)}};
    for (const auto &[a, b] : pairs) {
        const BranchQtm q = compile_branch_qtm(a, b);
        Superposition psi = evolve(q.machine, "01", 1);
        Superposition parts[3];
        for (const auto &[c, amp] : psi.entries()) {
            parts[branch_of(q, c)].add(c, amp);
        }
        ASSERT_TRUE(parts[0].empty());
        for (int t = 2; t <= 40; ++t) {
            psi = step(q.machine, psi);
            parts[1] = step(q.machine, parts[1]);
            parts[2] = step(q.machine, parts[2]);
            for (const auto &[c, amp] : parts[1].entries()) {
                EXPECT_EQ(branch_of(q, c), 1);
                EXPECT_TRUE(parts[2].amplitude(c).is_zero());
            }
            for (const auto &[c, amp] : parts[2].entries()) {
                EXPECT_EQ(branch_of(q, c), 2);
            }
            EXPECT_EQ(psi, parts[1] + parts[2]) << q.machine.name << " t=" << t;
        }
    }
}

TEST(CompileBranchQtm, self_compiled_never_halt_does_not_halt) {
    const BranchQtm q = compile_branch_qtm(never_halt_tm(), never_halt_tm());
    EXPECT_EQ(classify(q.machine, "01", 200).verdict, Verdict::no_halt_within_budget);
}

TEST(CompileBranchQtm, stationary_along_trajectories) {
    for (const ReversibleCase &c : halting_cases()) {
        const BranchQtm q = compile_branch_qtm(c.machine, never_halt_tm());
        EXPECT_TRUE(check_stationary_along(q.machine, c.input, 120).ok) << c.machine.name;
        EXPECT_FALSE(check_stationary(q.machine, StationaryMode::strict).ok);
    }
}

TEST(NeverHaltTm, properties) {
    const Qtm nh = never_halt_tm();
    EXPECT_TRUE(check_reversible(nh).ok);
    EXPECT_EQ(nh.halting.size(), 1u);
    EXPECT_EQ(classify(nh, "0110", 100).verdict, Verdict::no_halt_within_budget);
}

TEST(CompareRuntimes, examples) {
    const Qtm imm = immediate_halt_tm(), nh = never_halt_tm();
    EXPECT_EQ(compare_runtimes(imm, imm, "", 100, CompareMode::oracle).verdict, RuntimeVerdict::same);
    const RuntimeComparison q = compare_runtimes(imm, imm, "", 100, CompareMode::quantum);
    EXPECT_EQ(q.verdict, RuntimeVerdict::same);
    EXPECT_EQ(q.compiled_time1, 5u);
    EXPECT_EQ(q.compiled_time2, 5u);

    const RuntimeComparison o3 = compare_runtimes(chain_tm(3), nh, "", 100, CompareMode::oracle);
    EXPECT_EQ(o3.verdict, RuntimeVerdict::different);
    EXPECT_EQ(o3.time1, 3u);
    EXPECT_FALSE(o3.time2);
    const RuntimeComparison q3 = compare_runtimes(chain_tm(3), nh, "", 100, CompareMode::quantum);
    EXPECT_EQ(q3.verdict, RuntimeVerdict::different);
    EXPECT_EQ(q3.compiled_time1, 9u);
    EXPECT_FALSE(q3.compiled_time2);

    EXPECT_EQ(compare_runtimes(nh, nh, "", 100, CompareMode::oracle).verdict, RuntimeVerdict::unknown);
    EXPECT_EQ(compare_runtimes(nh, nh, "", 100, CompareMode::quantum).verdict, RuntimeVerdict::unknown);
}

TEST(CompareRuntimes, compiled_times_can_tie_when_source_times_differ) {
    // immediate-halt: t=1 on cell 1; bounce-1: t=2 on cell 0. Both compile to 5.
    const Qtm a = immediate_halt_tm(), b = bounce_tm(1);
    EXPECT_EQ(compare_runtimes(a, b, "", 50, CompareMode::oracle).verdict, RuntimeVerdict::different);
    EXPECT_EQ(compare_runtimes(a, b, "", 50, CompareMode::quantum).verdict, RuntimeVerdict::same);
}

TEST(CompareRuntimes, quantum_agrees_with_oracle_on_compiled_times) {
    const std::vector<ReversibleCase> cases = reversible_corpus();
    std::size_t resolved = 0;
    for (const ReversibleCase &x : cases) {
        for (const ReversibleCase &y : cases) {
            if (x.input != y.input) {
                continue;
            }
            const RuntimeComparison o = compare_runtimes(x.machine, y.machine, x.input, 200, CompareMode::oracle);
            const RuntimeComparison q = compare_runtimes(x.machine, y.machine, x.input, 200, CompareMode::quantum);
            EXPECT_EQ(q.compiled_time1, o.compiled_time1) << x.machine.name << " " << y.machine.name;
            EXPECT_EQ(q.compiled_time2, o.compiled_time2) << x.machine.name << " " << y.machine.name;
            if (o.compiled_time1 && o.compiled_time2) {
                const RuntimeVerdict expected =
                    *o.compiled_time1 == *o.compiled_time2 ? RuntimeVerdict::same : RuntimeVerdict::different;
                EXPECT_EQ(q.verdict, expected) << x.machine.name << " " << y.machine.name;
                ++resolved;
            }
        }
    }
    EXPECT_GE(resolved, 20u);
}

TEST(HaltingSemidecider, examples) {
    const SemiDecision imm = halting_semidecider(immediate_halt_tm(), "", 50);
    EXPECT_TRUE(imm.halts);
    EXPECT_EQ(imm.step, 5u);
    EXPECT_FALSE(halting_semidecider(never_halt_tm(), "01", 50).halts);
    const Qtm counter = chain_tm(40, "counter-40");
    EXPECT_FALSE(halting_semidecider(counter, "", 10).halts);
    const SemiDecision c100 = halting_semidecider(counter, "", 100);
    EXPECT_TRUE(c100.halts);
    EXPECT_EQ(c100.step, 83u);
}

TEST(HaltingSemidecider, matches_classical_simulation) {
    for (const ReversibleCase &c : reversible_corpus()) {
        for (std::uint64_t budget : {10, 100, 1000}) {
            const SemiDecision d = halting_semidecider(c.machine, c.input, budget);
            const ClassicalRun r = run_classical(c.machine, c.input, budget);
            const bool within = r.halted && compiled_halt_time(r) <= budget;
            EXPECT_EQ(d.halts, within) << c.machine.name << " budget " << budget;
            if (d.halts) {
                EXPECT_EQ(d.step, compiled_halt_time(r));
            }
        }
    }
}
