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

#include <random>

namespace qtmhalt {

namespace {

// Splits psi into its halting-set projection and the remainder.
std::pair<Superposition, Superposition> project_halting(const Qtm &m, const Superposition &psi) {
    Superposition halted, running;
    for (const auto &[c, a] : psi.entries()) {
        (m.is_halting(c.state) ? halted : running).add(c, a);
    }
    return {std::move(halted), std::move(running)};
}

std::map<std::string, RealValue> mass_by_data(const Qtm &m, const Superposition &halted) {
    std::map<std::string, RealValue> out;
    for (const auto &[c, a] : halted.entries()) {
        out[data_string(m, c)] += norm_sq(a);
    }
    return out;
}

const RealValue kHalf(Rational(1, 2));

}  // namespace

HaltingProfile halt_distribution(const Qtm &m, std::string_view input, std::uint64_t budget,
                                 const SimOptions &opts) {
    HaltingProfile prof;
    prof.budget = budget;
    prof.p.reserve(budget);
    Superposition survivor(initial_config(m, input));
    for (std::uint64_t t = 1; t <= budget; ++t) {
        if (survivor.empty()) {
            prof.p.emplace_back();
            continue;
        }
        auto [halted, running] = project_halting(m, step(m, survivor, opts));
        prof.p.push_back(halted.norm_sq());
        survivor = std::move(running);
    }
    prof.residual = survivor.norm_sq();
    return prof;
}

const char *verdict_label(Verdict v) {
    switch (v) {
        case Verdict::non_probabilistic_halt:
            return "non_probabilistic_halt";
        case Verdict::no_halt_within_budget:
            return "no_halt_within_budget";
        case Verdict::probabilistic:
            return "probabilistic";
    }
    return "?";
}

namespace {

// Before the first nonzero halting probability the surviving norm is still
// one, so the first nonzero p(t) alone decides the verdict.
Classification verdict_at(std::uint64_t t, const RealValue &p, const RealValue &surviving) {
    if (p == surviving) {
        return {Verdict::non_probabilistic_halt, t, std::nullopt};
    }
    return {Verdict::probabilistic, t, p / surviving};
}

}  // namespace

Classification classify(const Qtm &m, std::string_view input, std::uint64_t budget, const SimOptions &opts) {
    Superposition survivor(initial_config(m, input));
    for (std::uint64_t t = 1; t <= budget; ++t) {
        RealValue before = survivor.norm_sq();
        auto [halted, running] = project_halting(m, step(m, survivor, opts));
        RealValue p = halted.norm_sq();
        if (!p.is_zero()) {
            return verdict_at(t, p, before);
        }
        survivor = std::move(running);
    }
    return {Verdict::no_halt_within_budget, budget, std::nullopt};
}

Classification classify_profile(const HaltingProfile &profile) {
    RealValue surviving(1);
    for (std::uint64_t t = 1; t <= profile.budget; ++t) {
        const RealValue &p = profile.at(t);
        if (!p.is_zero()) {
            return verdict_at(t, p, surviving);
        }
    }
    return {Verdict::no_halt_within_budget, profile.budget, std::nullopt};
}

Trajectory monitored_sample(const Qtm &m, std::string_view input, std::uint64_t budget, std::uint64_t seed,
                            const SimOptions &opts) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    Trajectory traj;
    Superposition survivor(initial_config(m, input));
    for (std::uint64_t t = 1; t <= budget; ++t) {
        RealValue before = survivor.norm_sq();
        auto [halted, running] = project_halting(m, step(m, survivor, opts));
        RealValue p = halted.norm_sq();
        double conditional = p.is_zero() ? 0.0 : (p / before).to_double();
        double u = uniform(rng);
        if (u < conditional) {
            traj.outcomes.push_back(true);
            traj.halt_step = t;
            // Read the data region: draw a data string from the halted branch.
            auto masses = mass_by_data(m, halted);
            double target = uniform(rng) * p.to_double();
            double acc = 0.0;
            for (const auto &[data, mass] : masses) {
                acc += mass.to_double();
                traj.data = data;
                if (target < acc) {
                    break;
                }
            }
            return traj;
        }
        traj.outcomes.push_back(false);
        survivor = std::move(running);
    }
    return traj;
}

RealValue OutcomeDistribution::total() const {
    RealValue sum = not_halted;
    for (const auto &[key, p] : halted) {
        sum += p;
    }
    return sum;
}

ProtocolComparison outcome_distributions(const Qtm &m, std::string_view input, std::uint64_t budget,
                                         const SimOptions &opts) {
    ProtocolComparison out;
    Configuration start = initial_config(m, input);
    Superposition survivor(start);
    Superposition unmeasured(start);
    // Cumulative monitored mass by data string.
    std::map<std::string, RealValue> cumulative;
    RealValue halted_total;
    for (std::uint64_t t = 1; t <= budget; ++t) {
        if (!survivor.empty()) {
            auto [halted, running] = project_halting(m, step(m, survivor, opts));
            for (const auto &[data, mass] : mass_by_data(m, halted)) {
                out.monitored.halted[{t, data}] += mass;
                cumulative[data] += mass;
                halted_total += mass;
            }
            survivor = std::move(running);
        }

        unmeasured = step(m, unmeasured, opts);
        auto [flagged, rest] = project_halting(m, unmeasured);
        std::map<std::string, RealValue> snapshot = mass_by_data(m, flagged);
        RealValue flagged_total = flagged.norm_sq();

        RealValue diff;
        for (const auto &[data, mass] : cumulative) {
            auto it = snapshot.find(data);
            diff += (it == snapshot.end() ? mass : mass - it->second).abs();
        }
        for (const auto &[data, mass] : snapshot) {
            if (!cumulative.count(data)) {
                diff += mass;
            }
        }
        diff += ((RealValue(1) - halted_total) - (RealValue(1) - flagged_total)).abs();
        out.tv_by_budget.push_back(diff * kHalf);

        if (t == budget) {
            for (const auto &[data, mass] : snapshot) {
                out.unmonitored.halted[{t, data}] = mass;
            }
            out.unmonitored.not_halted = rest.norm_sq();
        }
    }
    out.monitored.not_halted = survivor.norm_sq();
    if (budget == 0) {
        out.unmonitored.not_halted = RealValue(1);
    } else {
        out.tv_distance = out.tv_by_budget.back();
    }
    return out;
}

TrajectoryStationarity check_stationary_along(const Qtm &m, std::string_view input, std::uint64_t budget,
                                              const SimOptions &opts) {
    TrajectoryStationarity rep;
    Superposition psi(initial_config(m, input));
    for (std::uint64_t t = 0; t < budget; ++t) {
        for (const auto &[c, a] : psi.sorted()) {
            if (!m.is_halting(c.state)) {
                continue;
            }
            SymbolId scanned = c.read(c.head);
            for (const Transition &tr : m.row(c.state, scanned)) {
                bool flag_kept = m.is_halting(tr.state);
                bool data_kept = c.head < 0 || tr.symbol == scanned;
                if (!flag_kept || !data_kept) {
                    rep.ok = false;
                    rep.step = t;
                    rep.message = "halting configuration " + serialize_config(m, c) + " at step " +
                                  std::to_string(t) + (flag_kept ? " rewrites a data cell" : " leaves the halting set");
                    return rep;
                }
            }
        }
        psi = step(m, psi, opts);
    }
    return rep;
}

}  // namespace qtmhalt
