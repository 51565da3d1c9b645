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

#include "qtmhalt/corpus.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "qtmhalt/branch_compiler.hpp"

namespace qtmhalt {

namespace {

const std::vector<std::string> kBits{"B", "0", "1"};

std::string indexed(const char *prefix, std::size_t i) { return prefix + std::to_string(i); }

}  // namespace

Qtm immediate_halt_tm() {
    Qtm m = make_machine("immediate-halt", kBits, {"q0", "qf"}, "q0", {"qf"}, MachineKind::rtm);
    for (const std::string &s : kBits) {
        add_rule(m, "q0", s, "qf", s, Direction::R);
        add_rule(m, "qf", s, "q0", s, Direction::R);
    }
    return m;
}

Qtm chain_tm(std::size_t k, std::string name) {
    if (k == 0) {
        throw std::invalid_argument("chain_tm: k must be positive");
    }
    std::vector<std::string> states;
    for (std::size_t i = 0; i < k; ++i) {
        states.push_back(indexed("q", i));
    }
    states.push_back("qf");
    Qtm m = make_machine(name.empty() ? "chain-" + std::to_string(k) : std::move(name), kBits, states, "q0", {"qf"},
                         MachineKind::rtm);
    for (std::size_t i = 0; i <= k; ++i) {
        const std::string &next = states[(i + 1) % (k + 1)];
        for (const std::string &s : kBits) {
            add_rule(m, states[i], s, next, s, Direction::R);
        }
    }
    return m;
}

namespace {

Qtm scanner(std::string name, bool flip) {
    Qtm m = make_machine(std::move(name), kBits, {"q0", "qf"}, "q0", {"qf"}, MachineKind::rtm);
    add_rule(m, "q0", "0", "q0", flip ? "1" : "0", Direction::R);
    add_rule(m, "q0", "1", "q0", flip ? "0" : "1", Direction::R);
    add_rule(m, "q0", "B", "qf", "B", Direction::R);
    add_rule(m, "qf", "B", "q0", "B", Direction::R);
    add_rule(m, "qf", "0", "qf", "0", Direction::R);
    add_rule(m, "qf", "1", "qf", "1", Direction::R);
    return m;
}

}  // namespace

Qtm scan_right_tm() { return scanner("scan-right", false); }

Qtm flip_scan_tm() { return scanner("flip-scan", true); }

Qtm bounce_tm(std::size_t k) {
    if (k == 0) {
        throw std::invalid_argument("bounce_tm: k must be positive");
    }
    std::vector<std::string> states;
    for (std::size_t i = 0; i < 2 * k; ++i) {
        states.push_back(indexed("s", i));
    }
    states.push_back("qf");
    Qtm m = make_machine("bounce-" + std::to_string(k), kBits, states, "s0", {"qf"}, MachineKind::rtm);
    for (std::size_t i = 0; i <= 2 * k; ++i) {
        const std::string &next = states[(i + 1) % (2 * k + 1)];
        const Direction d = i < k || i == 2 * k ? Direction::R : Direction::L;
        for (const std::string &s : kBits) {
            add_rule(m, states[i], s, next, s, d);
        }
    }
    return m;
}

Qtm right_mover_tm() {
    Qtm m = make_machine("right-mover", kBits, {"q"}, "q", {}, MachineKind::rtm);
    for (const std::string &s : kBits) {
        add_rule(m, "q", s, "q", s, Direction::R);
    }
    return m;
}

std::vector<ReversibleCase> reversible_corpus() {
    std::vector<ReversibleCase> out;
    out.push_back({immediate_halt_tm(), "", 1, 1});
    out.push_back({chain_tm(2), "", 2, 2});
    out.push_back({chain_tm(3), "01", 3, 3});
    out.push_back({chain_tm(7), "", 7, 7});
    out.push_back({chain_tm(40, "counter-40"), "", 40, 40});
    out.push_back({scan_right_tm(), "0110", 5, 5});
    out.push_back({scan_right_tm(), "", 1, 1});
    out.push_back({flip_scan_tm(), "101", 4, 4});
    out.push_back({bounce_tm(1), "", 2, 0});
    out.push_back({bounce_tm(3), "", 6, 0});
    out.push_back({bounce_tm(10), "1", 20, 0});
    out.push_back({never_halt_tm(), "", std::nullopt, 0});
    out.push_back({never_halt_tm(), "01", std::nullopt, 0});
    return out;
}

Qtm split_same_qtm() {
    Qtm m = make_machine("split-same", kBits, {"s", "s2", "a", "b", "f"}, "s", {"f"});
    const Amplitude h = Amplitude::inv_sqrt2();
    add_entry(m, "s", "B", h, "a", "B", Direction::R);
    add_entry(m, "s", "B", h, "b", "B", Direction::R);
    add_entry(m, "s2", "B", h, "a", "B", Direction::R);
    add_entry(m, "s2", "B", -h, "b", "B", Direction::R);
    add_rule(m, "a", "B", "f", "0", Direction::R);
    add_rule(m, "b", "B", "f", "1", Direction::R);
    add_rule(m, "f", "B", "f", "B", Direction::R);
    complete_table(m);
    validate(m);
    return m;
}

Qtm myers_interference_qtm() {
    Qtm m = make_machine("myers-interference", kBits, {"s", "s2", "a", "b", "f", "c", "g", "g2", "x", "y", "w", "h"},
                         "s", {"f", "h"});
    const Amplitude h = Amplitude::inv_sqrt2();
    const Direction R = Direction::R;
    add_entry(m, "s", "B", h, "a", "B", R);
    add_entry(m, "s", "B", h, "b", "B", R);
    add_entry(m, "s2", "B", h, "a", "B", R);
    add_entry(m, "s2", "B", -h, "b", "B", R);
    add_rule(m, "a", "B", "f", "B", R);
    add_rule(m, "b", "B", "c", "B", R);
    add_rule(m, "f", "B", "g", "B", R);
    add_rule(m, "c", "B", "g2", "B", R);
    add_entry(m, "g", "B", h, "x", "B", R);
    add_entry(m, "g", "B", h, "y", "B", R);
    add_entry(m, "g2", "B", h, "x", "B", R);
    add_entry(m, "g2", "B", -h, "y", "B", R);
    add_rule(m, "x", "B", "h", "1", R);
    add_rule(m, "y", "B", "w", "0", R);
    add_rule(m, "w", "B", "w", "B", R);
    add_rule(m, "h", "B", "h", "B", R);
    complete_table(m);
    validate(m);
    return m;
}

namespace {

struct Slot {
    StateId state;
    SymbolId symbol;
};

Amplitude power_of_i(unsigned k) {
    static const Amplitude kPowers[4] = {Amplitude(1), Amplitude::imag_unit(), Amplitude(-1),
                                         -Amplitude::imag_unit()};
    return kPowers[k % 4];
}

}  // namespace

Qtm random_wellformed_qtm(std::uint64_t seed, const RandomMachineOptions &opts) {
    if (opts.min_states == 0 || opts.min_states > opts.max_states) {
        throw std::invalid_argument("random_wellformed_qtm: bad state range");
    }
    std::mt19937_64 rng(seed);
    auto uniform = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    const std::size_t k = uniform(opts.min_states, opts.max_states);
    const std::size_t n = kBits.size();

    std::vector<std::string> states;
    for (std::size_t i = 0; i < k; ++i) {
        states.push_back(indexed("q", i));
    }
    std::vector<std::string> halting;
    std::vector<std::size_t> candidates;
    for (std::size_t i = 1; i < k; ++i) {
        candidates.push_back(i);
    }
    std::shuffle(candidates.begin(), candidates.end(), rng);
    const std::size_t num_halting = std::min(candidates.size(), uniform(0, opts.max_halting));
    for (std::size_t i = 0; i < num_halting; ++i) {
        halting.push_back(states[candidates[i]]);
    }
    Qtm m = make_machine("random-" + std::to_string(seed), kBits, states, "q0", halting);

    std::vector<Direction> entry_dir(k);
    for (Direction &d : entry_dir) {
        d = uniform(0, 1) ? Direction::R : Direction::L;
    }
    std::vector<Slot> slots;
    for (StateId q = 0; q < k; ++q) {
        for (SymbolId s = 0; s < n; ++s) {
            slots.push_back({q, s});
        }
    }
    std::shuffle(slots.begin(), slots.end(), rng);
    std::vector<Amplitude> slot_phase(slots.size());
    std::vector<Amplitude> row_phase(slots.size());
    for (std::size_t r = 0; r < slots.size(); ++r) {
        slot_phase[r] = opts.phases ? power_of_i(static_cast<unsigned>(uniform(0, 3))) : Amplitude(1);
        row_phase[r] = opts.phases ? power_of_i(static_cast<unsigned>(uniform(0, 3))) : Amplitude(1);
    }
    auto entry = [&](std::size_t slot, const Amplitude &coef) {
        const Slot &s = slots[slot];
        return Transition{coef * slot_phase[slot], s.state, s.symbol, entry_dir[s.state]};
    };

    // Row r (state r / n, symbol r % n) starts on slot r.
    std::vector<Row> rows(slots.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        rows[r] = {entry(r, Amplitude(1))};
    }
    std::vector<std::size_t> order(rows.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
        order[r] = r;
    }
    std::shuffle(order.begin(), order.end(), rng);
    const Amplitude h = Amplitude::inv_sqrt2();
    for (std::size_t p = 0; p < opts.mix_pairs && 2 * p + 1 < order.size(); ++p) {
        const std::size_t r1 = order[2 * p], r2 = order[2 * p + 1];
        rows[r1] = {entry(r1, h), entry(r2, h)};
        rows[r2] = {entry(r1, h), entry(r2, -h)};
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (Transition &t : rows[r]) {
            t.amplitude *= row_phase[r];
        }
        m.delta.set_row(static_cast<StateId>(r / n), static_cast<SymbolId>(r % n), rows[r]);
    }
    validate(m);
    return m;
}

Qtm mutate_ill_formed(const Qtm &source, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<RowKey> keys;
    std::vector<RowKey> mixed;
    for (StateId p = 0; p < source.num_states(); ++p) {
        for (SymbolId s = 0; s < source.num_symbols(); ++s) {
            keys.push_back({p, s});
            if (source.row(p, s).size() > 1) {
                mixed.push_back({p, s});
            }
        }
    }
    auto pick = [&](const std::vector<RowKey> &v) { return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)]; };
    const unsigned first = std::uniform_int_distribution<unsigned>(0, 3)(rng);
    for (unsigned attempt = 0; attempt < 16; ++attempt) {
        Qtm m = source;
        m.kind = MachineKind::qtm;
        const RowKey key = pick(keys);
        Row row = m.row(key.state, key.symbol);
        switch ((first + attempt) % 4) {
            case 0:
                m.name = source.name + "-scaled";
                row.front().amplitude *= Amplitude(2);
                break;
            case 1: {
                const RowKey other = pick(keys);
                if (other == key) {
                    continue;
                }
                m.name = source.name + "-duplicate";
                const Transition &t = m.row(other.state, other.symbol).front();
                row = {Transition{Amplitude(1), t.state, t.symbol, t.dir}};
                break;
            }
            case 2: {
                if (mixed.empty()) {
                    continue;
                }
                const RowKey mk = pick(mixed);
                m.name = source.name + "-signflip";
                row = m.row(mk.state, mk.symbol);
                row.back().amplitude = -row.back().amplitude;
                m.delta.set_row(mk.state, mk.symbol, row);
                if (!check_wellformed(m).ok) {
                    return m;
                }
                continue;
            }
            case 3:
                m.name = source.name + "-reversed";
                for (Transition &t : row) {
                    t.dir = t.dir == Direction::L ? Direction::R : Direction::L;
                }
                break;
        }
        m.delta.set_row(key.state, key.symbol, row);
        if (!check_wellformed(m).ok) {
            return m;
        }
    }
    throw std::logic_error("mutate_ill_formed: no defect found for " + source.name);
}

std::vector<Qtm> ill_formed_corpus() {
    std::vector<Qtm> out;
    const Amplitude h = Amplitude::inv_sqrt2();
    const Direction L = Direction::L, R = Direction::R;

    auto one_state = [&](const std::string &name) {
        Qtm m = make_machine(name, kBits, {"q"}, "q", {});
        for (const std::string &s : kBits) {
            add_rule(m, "q", s, "q", s, R);
        }
        return m;
    };
    {
        Qtm m = one_state("norm-two");
        m.delta.set_row(0, 0, Row{{Amplitude(2), 0, 0, R}});
        out.push_back(std::move(m));
    }
    {
        Qtm m = one_state("half-norm");
        m.delta.set_row(0, 0, Row{{h, 0, 0, R}});
        out.push_back(std::move(m));
    }
    {
        Qtm m = one_state("non-injective");
        m.delta.set_row(0, 1, Row{{Amplitude(1), 0, 2, R}});
        out.push_back(std::move(m));
    }
    {
        Qtm m = make_machine("two-sided", kBits, {"a", "b"}, "a", {});
        for (const std::string &s : kBits) {
            add_rule(m, "a", s, "b", s, R);
        }
        add_rule(m, "b", "B", "a", "B", R);
        add_rule(m, "b", "0", "a", "0", L);
        add_rule(m, "b", "1", "a", "1", R);
        out.push_back(std::move(m));
    }
    for (const bool phase : {false, true}) {
        Qtm m = make_machine(phase ? "phase-mismatch" : "non-orthogonal", kBits, {"s", "a", "b"}, "s", {});
        add_entry(m, "s", "B", h, "a", "B", R);
        add_entry(m, "s", "B", h, "b", "B", R);
        add_entry(m, "s", "0", h, "a", "B", R);
        add_entry(m, "s", "0", phase ? h * Amplitude::imag_unit() : h, "b", "B", R);
        add_rule(m, "s", "1", "s", "1", R);
        add_rule(m, "a", "B", "s", "B", R);
        add_rule(m, "a", "0", "a", "0", R);
        add_rule(m, "a", "1", "a", "1", R);
        add_rule(m, "b", "B", "s", "0", R);
        add_rule(m, "b", "0", "b", "0", R);
        add_rule(m, "b", "1", "b", "1", R);
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace qtmhalt
