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

#include "qtmhalt/machine.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace qtmhalt {

bool TransitionTable::total() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const auto &r) { return r.has_value(); });
}

const Row &TransitionTable::row(StateId p, SymbolId s) const {
    const auto &r = rows_.at(index(p, s));
    if (!r) {
        throw std::out_of_range("undefined transition row");
    }
    return *r;
}

bool TransitionTable::operator==(const TransitionTable &o) const {
    if (num_states_ != o.num_states_ || num_symbols_ != o.num_symbols_) {
        return false;
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const auto &a = rows_[i];
        const auto &b = o.rows_[i];
        if (a.has_value() != b.has_value()) {
            return false;
        }
        if (!a) {
            continue;
        }
        if (a->size() != b->size()) {
            return false;
        }
        // Entry order is irrelevant.
        for (const Transition &t : *a) {
            auto it = std::find_if(b->begin(), b->end(), [&](const Transition &u) { return u.same_target(t); });
            if (it == b->end() || it->amplitude != t.amplitude) {
                return false;
            }
        }
    }
    return true;
}

bool Qtm::is_halting(StateId q) const { return std::find(halting.begin(), halting.end(), q) != halting.end(); }

std::optional<SymbolId> Qtm::symbol_id(std::string_view n) const {
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (symbols[i] == n) {
            return static_cast<SymbolId>(i);
        }
    }
    return std::nullopt;
}

std::optional<StateId> Qtm::state_id(std::string_view n) const {
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (states[i] == n) {
            return static_cast<StateId>(i);
        }
    }
    return std::nullopt;
}

Qtm make_machine(std::string name, std::vector<std::string> symbols, std::vector<std::string> states,
                 std::string_view initial, std::vector<std::string> halting, MachineKind kind) {
    Qtm m;
    m.kind = kind;
    m.name = std::move(name);
    m.symbols = std::move(symbols);
    m.states = std::move(states);
    if (m.symbols.empty() || m.symbols[0] != "B") {
        throw ValidationError("alphabet must start with the blank B");
    }
    auto init = m.state_id(initial);
    if (!init) {
        throw ValidationError("unknown initial state " + std::string(initial));
    }
    m.initial = *init;
    for (const auto &h : halting) {
        auto id = m.state_id(h);
        if (!id) {
            throw ValidationError("unknown halting state " + h);
        }
        m.halting.push_back(*id);
    }
    std::sort(m.halting.begin(), m.halting.end());
    m.delta = TransitionTable(m.states.size(), m.symbols.size());
    return m;
}

namespace {

StateId require_state(const Qtm &m, std::string_view n) {
    auto id = m.state_id(n);
    if (!id) {
        throw ValidationError("unknown state " + std::string(n));
    }
    return *id;
}

SymbolId require_symbol(const Qtm &m, std::string_view n) {
    auto id = m.symbol_id(n);
    if (!id) {
        throw ValidationError("unknown symbol " + std::string(n));
    }
    return *id;
}

std::string row_name(const Qtm &m, RowKey k) { return "(" + m.states[k.state] + ", " + m.symbols[k.symbol] + ")"; }

WellformedReport fail(WellformedCondition c, std::optional<RowKey> r1, std::optional<RowKey> r2, std::string msg) {
    WellformedReport rep;
    rep.ok = false;
    rep.condition = c;
    rep.row1 = r1;
    rep.row2 = r2;
    rep.message = std::move(msg);
    return rep;
}

}  // namespace

void add_entry(Qtm &m, std::string_view p, std::string_view s, const Amplitude &amp, std::string_view q,
               std::string_view t, Direction d) {
    StateId pid = require_state(m, p);
    SymbolId sid = require_symbol(m, s);
    Row row = m.delta.defined(pid, sid) ? m.delta.row(pid, sid) : Row{};
    row.push_back({amp, require_state(m, q), require_symbol(m, t), d});
    m.delta.set_row(pid, sid, std::move(row));
}

void add_rule(Qtm &m, std::string_view p, std::string_view s, std::string_view q, std::string_view t, Direction d) {
    add_entry(m, p, s, Amplitude(1), q, t, d);
}

const char *condition_label(WellformedCondition c) {
    switch (c) {
        case WellformedCondition::none:
            return "none";
        case WellformedCondition::structure:
            return "structure";
        case WellformedCondition::unit_row:
            return "(a) unit rows";
        case WellformedCondition::orthogonality:
            return "(b) row orthogonality";
        case WellformedCondition::separability:
            return "(c) separability";
    }
    return "?";
}

WellformedReport check_wellformed(const Qtm &m) {
    const std::size_t nq = m.num_states();
    const std::size_t ns = m.num_symbols();
    if (m.delta.num_states() != nq || m.delta.num_symbols() != ns) {
        return fail(WellformedCondition::structure, {}, {}, "transition table shape does not match machine");
    }
    if (m.initial >= nq) {
        return fail(WellformedCondition::structure, {}, {}, "initial state out of range");
    }
    if (m.is_halting(m.initial)) {
        return fail(WellformedCondition::structure, {}, {}, "initial state is a halting state");
    }

    std::vector<RowKey> keys;
    for (StateId p = 0; p < nq; ++p) {
        for (SymbolId s = 0; s < ns; ++s) {
            RowKey k{p, s};
            if (!m.delta.defined(p, s)) {
                return fail(WellformedCondition::structure, k, {}, "row " + row_name(m, k) + " is undefined");
            }
            const Row &row = m.row(p, s);
            for (std::size_t i = 0; i < row.size(); ++i) {
                const Transition &t = row[i];
                if (t.state >= nq || t.symbol >= ns) {
                    return fail(WellformedCondition::structure, k, {}, "row " + row_name(m, k) + " targets out of range");
                }
                if (t.amplitude.is_zero()) {
                    return fail(WellformedCondition::structure, k, {}, "row " + row_name(m, k) + " has a zero amplitude");
                }
                for (std::size_t j = 0; j < i; ++j) {
                    if (row[j].same_target(t)) {
                        return fail(WellformedCondition::structure, k, {},
                                    "row " + row_name(m, k) + " repeats a target");
                    }
                }
            }
            keys.push_back(k);
        }
    }

    // (a)
    for (const RowKey &k : keys) {
        RealValue total;
        for (const Transition &t : m.row(k.state, k.symbol)) {
            total += norm_sq(t.amplitude);
        }
        if (!(total == RealValue(1))) {
            return fail(WellformedCondition::unit_row, k, {},
                        "row " + row_name(m, k) + " has squared norm " + total.str());
        }
    }

    // (b): only rows sharing a target slot can have a nonzero inner product.
    using Slot = std::tuple<StateId, SymbolId, int>;
    std::map<Slot, std::vector<std::pair<std::size_t, const Amplitude *>>> by_slot;
    for (std::size_t r = 0; r < keys.size(); ++r) {
        for (const Transition &t : m.row(keys[r].state, keys[r].symbol)) {
            by_slot[{t.state, t.symbol, static_cast<int>(t.dir)}].emplace_back(r, &t.amplitude);
        }
    }
    std::map<std::pair<std::size_t, std::size_t>, Amplitude> inner;
    for (const auto &[slot, entries] : by_slot) {
        for (std::size_t i = 0; i < entries.size(); ++i) {
            for (std::size_t j = i + 1; j < entries.size(); ++j) {
                inner[{entries[i].first, entries[j].first}] += entries[i].second->conj() * *entries[j].second;
            }
        }
    }
    for (const auto &[pair, value] : inner) {
        if (!value.is_zero()) {
            return fail(WellformedCondition::orthogonality, keys[pair.first], keys[pair.second],
                        "rows " + row_name(m, keys[pair.first]) + " and " + row_name(m, keys[pair.second]) +
                            " have inner product " + value.str());
        }
    }

    // (c)
    struct Entry {
        std::size_t row;
        SymbolId written;
        const Amplitude *amp;
    };
    std::vector<std::vector<Entry>> left(nq), right(nq);
    for (std::size_t r = 0; r < keys.size(); ++r) {
        for (const Transition &t : m.row(keys[r].state, keys[r].symbol)) {
            (t.dir == Direction::L ? left : right)[t.state].push_back({r, t.symbol, &t.amplitude});
        }
    }
    std::map<std::tuple<std::size_t, SymbolId, std::size_t, SymbolId>, Amplitude> cross;
    for (StateId q = 0; q < nq; ++q) {
        for (const Entry &l : left[q]) {
            for (const Entry &r : right[q]) {
                cross[{l.row, l.written, r.row, r.written}] += l.amp->conj() * *r.amp;
            }
        }
    }
    for (const auto &[key, value] : cross) {
        if (!value.is_zero()) {
            const auto &[r1, t1, r2, t2] = key;
            return fail(WellformedCondition::separability, keys[r1], keys[r2],
                        "rows " + row_name(m, keys[r1]) + " (writing " + m.symbols[t1] + ", L) and " +
                            row_name(m, keys[r2]) + " (writing " + m.symbols[t2] + ", R) overlap: " + value.str());
        }
    }
    return {};
}

ReversibleReport check_reversible(const Qtm &m) {
    ReversibleReport rep;
    for (StateId p = 0; p < m.num_states(); ++p) {
        for (SymbolId s = 0; s < m.num_symbols(); ++s) {
            if (!m.delta.defined(p, s)) {
                continue;
            }
            const Row &row = m.row(p, s);
            RowKey k{p, s};
            for (const Transition &t : row) {
                if (!t.amplitude.is_one()) {
                    rep.ok = false;
                    rep.failure = ReversibleFailure::non_classical_amplitude;
                    rep.row = k;
                    rep.message = "non-classical amplitude " + t.amplitude.str() + " in row " + row_name(m, k);
                    return rep;
                }
            }
            if (row.size() != 1) {
                rep.ok = false;
                rep.failure = ReversibleFailure::multi_target_row;
                rep.row = k;
                rep.message = "row " + row_name(m, k) + " does not have exactly one target";
                return rep;
            }
        }
    }
    rep.wellformed = check_wellformed(m);
    if (!rep.wellformed.ok) {
        rep.ok = false;
        rep.failure = ReversibleFailure::wellformedness;
        rep.row = rep.wellformed.row1;
        rep.message = rep.wellformed.message;
    }
    return rep;
}

StationaryReport check_stationary(const Qtm &m, StationaryMode mode) {
    StationaryReport rep;
    rep.conservative = mode == StationaryMode::data_only;
    for (StateId q : m.halting) {
        for (SymbolId s = 0; s < m.num_symbols(); ++s) {
            bool working = mode == StationaryMode::data_only &&
                           std::find(m.working_symbols.begin(), m.working_symbols.end(), s) != m.working_symbols.end();
            for (const Transition &t : m.row(q, s)) {
                bool flag_kept = m.is_halting(t.state);
                bool tape_kept = t.symbol == s || working;
                if (!flag_kept || !tape_kept) {
                    rep.ok = false;
                    rep.row = RowKey{q, s};
                    rep.target = t;
                    rep.message = "halting row " + row_name(m, {q, s}) + " -> (" + m.states[t.state] + ", " +
                                  m.symbols[t.symbol] + ", " + direction_char(t.dir) + ")" +
                                  (flag_kept ? " changes the tape" : " leaves the halting set");
                    return rep;
                }
            }
        }
    }
    return rep;
}

void complete_table(Qtm &m) {
    const std::size_t nq = m.num_states();
    const std::size_t ns = m.num_symbols();
    // 0 = not entered yet, otherwise the Direction value.
    std::vector<int> entered(nq, 0);
    std::set<std::pair<StateId, SymbolId>> used;
    for (StateId p = 0; p < nq; ++p) {
        for (SymbolId s = 0; s < ns; ++s) {
            if (!m.delta.defined(p, s)) {
                continue;
            }
            for (const Transition &t : m.row(p, s)) {
                int d = static_cast<int>(t.dir);
                if (entered[t.state] != 0 && entered[t.state] != d) {
                    throw ValidationError("cannot complete: state " + m.states[t.state] + " is entered from both sides");
                }
                entered[t.state] = d;
                used.insert({t.state, t.symbol});
            }
        }
    }
    std::vector<RowKey> free_rows;
    for (StateId p = 0; p < nq; ++p) {
        for (SymbolId s = 0; s < ns; ++s) {
            if (!m.delta.defined(p, s)) {
                free_rows.push_back({p, s});
            }
        }
    }
    std::vector<std::pair<StateId, SymbolId>> free_slots;
    for (StateId q = 0; q < nq; ++q) {
        for (SymbolId s = 0; s < ns; ++s) {
            if (!used.count({q, s})) {
                free_slots.emplace_back(q, s);
            }
        }
    }
    if (free_rows.size() != free_slots.size()) {
        throw ValidationError("cannot complete: " + std::to_string(free_rows.size()) + " undefined rows but " +
                              std::to_string(free_slots.size()) + " free target slots");
    }
    for (std::size_t i = 0; i < free_rows.size(); ++i) {
        auto [q, s] = free_slots[i];
        Direction d = entered[q] == static_cast<int>(Direction::L) ? Direction::L : Direction::R;
        m.delta.set_row(free_rows[i].state, free_rows[i].symbol, Row{{Amplitude(1), q, s, d}});
    }
}

void validate(const Qtm &m) {
    if (m.kind == MachineKind::rtm) {
        ReversibleReport rep = check_reversible(m);
        if (!rep.ok) {
            throw ValidationError("machine " + m.name + " is not reversible: " + rep.message);
        }
        return;
    }
    WellformedReport rep = check_wellformed(m);
    if (!rep.ok) {
        throw ValidationError("machine " + m.name + " is not well-formed [" + condition_label(rep.condition) +
                              "]: " + rep.message);
    }
}

}  // namespace qtmhalt
