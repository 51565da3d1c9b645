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

#include "qtmhalt/halting.hpp"

#include <cmath>

#include "gtest/gtest.h"
#include "qtmhalt/branch_compiler.hpp"
#include "qtmhalt/corpus.hpp"

using namespace qtmhalt;

namespace {

const RealValue kHalf(Rational(1, 2));

struct Case {
    Qtm machine;
    std::string input;
};

std::vector<Case> corpus() {
    std::vector<Case> out = {{right_mover_tm(), ""}, {split_same_qtm(), "1"}, {myers_interference_qtm(), ""}};
    for (const ReversibleCase &c : reversible_corpus()) {
        out.push_back({c.machine, c.input});
    }
    out.push_back({compile_branch_qtm(immediate_halt_tm(), never_halt_tm()).machine, ""});
    out.push_back({compile_branch_qtm(chain_tm(3), scan_right_tm()).machine, "01"});
    // Random machines whose support stays small over the test horizon.
    std::size_t added = 0;
    for (std::uint64_t seed = 0; added < 8; ++seed) {
        Qtm m = random_wellformed_qtm(seed, {2, 4, 1, true, 2});
        try {
            evolve(m, "0", 50, SimOptions{500});
        } catch (const ResourceLimitError &) {
            continue;
        }
        out.push_back({std::move(m), "0"});
        ++added;
    }
    return out;
}

RealValue profile_total(const HaltingProfile &p) {
    RealValue sum = p.residual;
    for (const RealValue &x : p.p) {
        sum += x;
    }
    return sum;
}

}  // namespace

TEST(HaltDistribution, examples) {
    const HaltingProfile imm = halt_distribution(immediate_halt_tm(), "", 10);
    EXPECT_EQ(imm.at(1), RealValue(1));
    EXPECT_TRUE(imm.residual.is_zero());
    for (std::uint64_t t = 2; t <= 10; ++t) {
        EXPECT_TRUE(imm.at(t).is_zero());
    }

    const HaltingProfile rm = halt_distribution(right_mover_tm(), "", 25);
    for (const RealValue &p : rm.p) {
        EXPECT_TRUE(p.is_zero());
    }
    EXPECT_EQ(rm.residual, RealValue(1));

    // Branch 1 halts at step 1 + 3 + head (3) + 2 = 9.
    const HaltingProfile q = halt_distribution(compile_branch_qtm(chain_tm(3), never_halt_tm()).machine, "", 30);
    EXPECT_EQ(q.at(9), kHalf);
    EXPECT_EQ(q.residual, kHalf);
    for (std::uint64_t t = 1; t <= 30; ++t) {
        if (t != 9) {
            EXPECT_TRUE(q.at(t).is_zero()) << t;
        }
    }
}

TEST(HaltDistribution, total_mass_is_one) {
    for (const Case &c : corpus()) {
        for (std::uint64_t T : {1, 7, 40}) {
            const HaltingProfile p = halt_distribution(c.machine, c.input, T);
            EXPECT_EQ(p.p.size(), T);
            EXPECT_EQ(profile_total(p), RealValue(1)) << c.machine.name;
            for (const RealValue &x : p.p) {
                EXPECT_GE(x.sign(), 0);
                EXPECT_LE(x, RealValue(1));
            }
        }
    }
}

TEST(Classify, examples) {
    EXPECT_EQ(classify(immediate_halt_tm(), "", 10), (Classification{Verdict::non_probabilistic_halt, 1, {}}));
    EXPECT_EQ(classify(right_mover_tm(), "", 10), (Classification{Verdict::no_halt_within_budget, 10, {}}));
    EXPECT_EQ(classify(right_mover_tm(), "", 500).verdict, Verdict::no_halt_within_budget);
    const Qtm q = compile_branch_qtm(immediate_halt_tm(), never_halt_tm()).machine;
    EXPECT_EQ(classify(q, "", 5), (Classification{Verdict::probabilistic, 5, kHalf}));
    EXPECT_EQ(classify(q, "", 4).verdict, Verdict::no_halt_within_budget);
    EXPECT_EQ(classify(split_same_qtm(), "", 10), (Classification{Verdict::non_probabilistic_halt, 2, {}}));
    EXPECT_EQ(classify(myers_interference_qtm(), "", 10), (Classification{Verdict::probabilistic, 2, kHalf}));
}

TEST(Classify, agrees_with_profile) {
    for (const Case &c : corpus()) {
        EXPECT_EQ(classify(c.machine, c.input, 30), classify_profile(halt_distribution(c.machine, c.input, 30)))
            << c.machine.name;
    }
}

TEST(Classify, budget_monotone) {
    for (const Case &c : corpus()) {
        Classification prev = classify(c.machine, c.input, 1);
        for (std::uint64_t T = 2; T <= 45; ++T) {
            const Classification cur = classify(c.machine, c.input, T);
            if (prev.verdict != Verdict::no_halt_within_budget) {
                EXPECT_EQ(cur, prev) << c.machine.name << " T=" << T;
            }
            prev = cur;
        }
    }
}

TEST(Classify, reversible_machines_are_never_probabilistic) {
    for (const ReversibleCase &c : reversible_corpus()) {
        const Classification r = classify(c.machine, c.input, 100);
        EXPECT_NE(r.verdict, Verdict::probabilistic) << c.machine.name;
        if (c.halt_time) {
            EXPECT_EQ(r, (Classification{Verdict::non_probabilistic_halt, *c.halt_time, {}}));
        }
    }
}

TEST(MonitoredSample, examples) {
    for (std::uint64_t seed : {0, 1, 99}) {
        const Trajectory imm = monitored_sample(immediate_halt_tm(), "01", 10, seed);
        EXPECT_EQ(imm.halt_step, 1u);
        EXPECT_EQ(imm.data, "01");
        EXPECT_EQ(imm.outcomes, std::vector<bool>{true});
        const Trajectory rm = monitored_sample(right_mover_tm(), "", 10, seed);
        EXPECT_FALSE(rm.halt_step);
        EXPECT_EQ(rm.outcomes.size(), 10u);
    }
}

TEST(MonitoredSample, deterministic_per_seed) {
    const Qtm m = myers_interference_qtm();
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Trajectory a = monitored_sample(m, "", 10, seed), b = monitored_sample(m, "", 10, seed);
        EXPECT_EQ(a.halt_step, b.halt_step);
        EXPECT_EQ(a.data, b.data);
        EXPECT_EQ(a.outcomes, b.outcomes);
    }
}

TEST(MonitoredSample, halt_frequency_within_five_standard_errors) {
    const Qtm q = compile_branch_qtm(immediate_halt_tm(), never_halt_tm()).machine;
    const double p = halt_distribution(q, "", 20).at(5).to_double();
    const int n = 1000;
    int halts = 0;
    for (std::uint64_t seed = 0; seed < n; ++seed) {
        const Trajectory t = monitored_sample(q, "", 20, seed);
        if (t.halt_step) {
            EXPECT_EQ(*t.halt_step, 5u);
            EXPECT_EQ(t.data, "BB'");
            ++halts;
        }
    }
    const double se = std::sqrt(p * (1 - p) / n);
    EXPECT_LE(std::abs(halts / static_cast<double>(n) - p), 5 * se) << halts;
}

TEST(MonitoredSample, chi_squared_against_profile) {
    // Categories: halt at 2, halt at 5, no halt by 10.
    const Qtm m = myers_interference_qtm();
    const HaltingProfile prof = halt_distribution(m, "", 10);
    const double expected_p[3] = {prof.at(2).to_double(), prof.at(5).to_double(), prof.residual.to_double()};
    int counts[3] = {0, 0, 0};
    const int n = 1000;
    for (std::uint64_t seed = 0; seed < n; ++seed) {
        const Trajectory t = monitored_sample(m, "", 10, seed);
        if (!t.halt_step) {
            ++counts[2];
        } else if (*t.halt_step == 2) {
            EXPECT_EQ(t.data, "");
            ++counts[0];
        } else {
            EXPECT_EQ(*t.halt_step, 5u);
            EXPECT_EQ(t.data, "BBBB1");
            ++counts[1];
        }
    }
    double chi2 = 0;
    for (int k = 0; k < 3; ++k) {
        const double e = expected_p[k] * n;
        chi2 += (counts[k] - e) * (counts[k] - e) / e;
    }
    // 99.9% quantile of chi-squared with 2 degrees of freedom.
    EXPECT_LT(chi2, 13.82);
}

TEST(OutcomeDistributions, right_mover_never_halts) {
    const ProtocolComparison c = outcome_distributions(right_mover_tm(), "", 20);
    EXPECT_TRUE(c.monitored.halted.empty());
    EXPECT_TRUE(c.unmonitored.halted.empty());
    EXPECT_EQ(c.monitored.not_halted, RealValue(1));
    EXPECT_EQ(c.unmonitored.not_halted, RealValue(1));
    EXPECT_TRUE(c.tv_distance.is_zero());
}

TEST(OutcomeDistributions, myers_interference_differs) {
    const ProtocolComparison c = outcome_distributions(myers_interference_qtm(), "", 12);
    const RealValue quarter(Rational(1, 4));
    EXPECT_EQ(c.monitored.halted.at({2, ""}), kHalf);
    EXPECT_EQ(c.monitored.halted.at({5, "BBBB1"}), quarter);
    EXPECT_EQ(c.monitored.not_halted, quarter);
    EXPECT_EQ(c.unmonitored.halted.at({12, "BBBB1"}), RealValue(1));
    EXPECT_TRUE(c.unmonitored.not_halted.is_zero());
    EXPECT_EQ(c.tv_distance, RealValue(Rational(3, 4)));
    EXPECT_EQ(c.tv_by_budget[1], RealValue(0));
    EXPECT_EQ(c.tv_by_budget[2], kHalf);
}

TEST(OutcomeDistributions, totals_are_one) {
    for (const Case &c : corpus()) {
        const ProtocolComparison p = outcome_distributions(c.machine, c.input, 15);
        EXPECT_EQ(p.monitored.total(), RealValue(1)) << c.machine.name;
        EXPECT_EQ(p.unmonitored.total(), RealValue(1)) << c.machine.name;
        EXPECT_EQ(p.tv_by_budget.size(), 15u);
    }
}

TEST(OutcomeDistributions, stationary_machines_agree) {
    std::vector<Case> cases = {{never_halt_tm(), "01"}, {right_mover_tm(), "1"}, {split_same_qtm(), ""}};
    for (const ReversibleCase &c : reversible_corpus()) {
        if (c.halt_time) {
            cases.push_back({compile_branch_qtm(c.machine, never_halt_tm()).machine, c.input});
            cases.push_back({compile_branch_qtm(c.machine, c.machine).machine, c.input});
        }
    }
    std::size_t checked = 0;
    for (const Case &c : cases) {
        const bool strict = check_stationary(c.machine, StationaryMode::strict).ok;
        const bool along = check_stationary_along(c.machine, c.input, 60).ok;
        ASSERT_TRUE(strict || along) << c.machine.name;
        const ProtocolComparison p = outcome_distributions(c.machine, c.input, 60);
        for (const RealValue &tv : p.tv_by_budget) {
            EXPECT_TRUE(tv.is_zero()) << c.machine.name;
        }
        ++checked;
    }
    EXPECT_GE(checked, 20u);
}

TEST(CheckStationaryAlong, detects_leaving_the_halting_set) {
    const TrajectoryStationarity r = check_stationary_along(myers_interference_qtm(), "", 10);
    EXPECT_FALSE(r.ok);
    EXPECT_EQ(r.step, 2u);
    EXPECT_TRUE(check_stationary_along(split_same_qtm(), "", 30).ok);
    EXPECT_FALSE(check_stationary_along(immediate_halt_tm(), "", 5).ok);
}
