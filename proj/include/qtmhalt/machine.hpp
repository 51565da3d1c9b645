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

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qtmhalt/amplitude.hpp"

namespace qtmhalt {

using SymbolId = std::uint16_t;
using StateId = std::uint32_t;

inline constexpr SymbolId kBlank = 0;

enum class Direction : std::int8_t { L = -1, R = 1 };

inline char direction_char(Direction d) { return d == Direction::L ? 'L' : 'R'; }

/// One weighted entry of a transition row: amplitude * |state, written symbol, move>.
struct Transition {
    Amplitude amplitude;
    StateId state;
    SymbolId symbol;
    Direction dir;

    bool same_target(const Transition &o) const {
        return state == o.state && symbol == o.symbol && dir == o.dir;
    }
};

using Row = std::vector<Transition>;

/// delta(state, scanned symbol) for a fixed state and alphabet size. Rows may
/// be undefined until the table is completed.
class TransitionTable {
   public:
    TransitionTable() = default;
    TransitionTable(std::size_t num_states, std::size_t num_symbols)
        : num_states_(num_states), num_symbols_(num_symbols), rows_(num_states * num_symbols) {}

    std::size_t num_states() const { return num_states_; }
    std::size_t num_symbols() const { return num_symbols_; }

    bool defined(StateId p, SymbolId s) const { return rows_[index(p, s)].has_value(); }
    bool total() const;
    const Row &row(StateId p, SymbolId s) const;
    void set_row(StateId p, SymbolId s, Row row) { rows_[index(p, s)] = std::move(row); }
    void clear_row(StateId p, SymbolId s) { rows_[index(p, s)].reset(); }

    bool operator==(const TransitionTable &o) const;

   private:
    std::size_t index(StateId p, SymbolId s) const { return static_cast<std::size_t>(p) * num_symbols_ + s; }

    std::size_t num_states_ = 0;
    std::size_t num_symbols_ = 0;
    std::vector<std::optional<Row>> rows_;
};

enum class MachineKind { qtm, rtm };

/// A single-tape quantum Turing machine over a finite alphabet with blank at
/// index 0. Cells with index >= 0 are the data region, negative cells are
/// working cells.
struct Qtm {
    MachineKind kind = MachineKind::qtm;
    std::string name;
    std::vector<std::string> symbols{"B", "0", "1"};
    std::vector<std::string> states;
    StateId initial = 0;
    std::vector<StateId> halting;
    std::int64_t start_head = 0;
    /// Symbols that only ever appear in the working region; used by the
    /// data_only stationarity mode.
    std::vector<SymbolId> working_symbols;
    TransitionTable delta;
    /// Free-form comment lines preserved when printing (provenance).
    std::vector<std::string> notes;

    std::size_t num_states() const { return states.size(); }
    std::size_t num_symbols() const { return symbols.size(); }
    bool is_halting(StateId q) const;
    std::optional<SymbolId> symbol_id(std::string_view name) const;
    std::optional<StateId> state_id(std::string_view name) const;
    const Row &row(StateId p, SymbolId s) const { return delta.row(p, s); }
};

/// Builds an empty machine with the given alphabet and state names.
Qtm make_machine(std::string name, std::vector<std::string> symbols, std::vector<std::string> states,
                 std::string_view initial, std::vector<std::string> halting, MachineKind kind = MachineKind::qtm);

/// Adds a classical rule delta(p, s) = 1 |q, t, d> by name.
void add_rule(Qtm &m, std::string_view p, std::string_view s, std::string_view q, std::string_view t, Direction d);

/// Adds a weighted entry to delta(p, s) by name, creating the row if needed.
void add_entry(Qtm &m, std::string_view p, std::string_view s, const Amplitude &amp, std::string_view q,
               std::string_view t, Direction d);

struct RowKey {
    StateId state;
    SymbolId symbol;
    bool operator==(const RowKey &) const = default;
};

enum class WellformedCondition {
    none,
    structure,     // totality, ranges, zero amplitudes, duplicate targets
    unit_row,      // (a)
    orthogonality, // (b)
    separability,  // (c)
};

const char *condition_label(WellformedCondition c);

struct WellformedReport {
    bool ok = true;
    WellformedCondition condition = WellformedCondition::none;
    std::optional<RowKey> row1;
    std::optional<RowKey> row2;
    std::string message;
};

/// Exact local unitarity check for two-way single-tape machines with moves
/// in {L, R}:
///   (a) every row has unit norm;
///   (b) distinct rows are orthogonal;
///   (c) for all rows r1, r2 and written symbols t1, t2,
///       sum_q conj(r1(q, t1, L)) * r2(q, t2, R) = 0.
WellformedReport check_wellformed(const Qtm &m);

enum class ReversibleFailure { none, non_classical_amplitude, multi_target_row, wellformedness };

struct ReversibleReport {
    bool ok = true;
    ReversibleFailure failure = ReversibleFailure::none;
    std::optional<RowKey> row;
    WellformedReport wellformed;
    std::string message;
};

/// Permutation machines: one entry of amplitude 1 per row, and well-formed.
ReversibleReport check_reversible(const Qtm &m);

enum class StationaryMode { strict, data_only };

struct StationaryReport {
    bool ok = true;
    /// data_only results are a static over-approximation.
    bool conservative = false;
    std::optional<RowKey> row;
    std::optional<Transition> target;
    std::string message;
};

/// Static stationarity of halting rows. strict: every entry of a halting
/// row targets a halting state and rewrites the scanned symbol unchanged.
/// data_only: as strict, except rows scanning a declared working-only symbol
/// may rewrite it.
StationaryReport check_stationary(const Qtm &m, StationaryMode mode);

/// Raised when a machine fails validation at load or build time.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fills every undefined row with a classical entry so that the table
/// becomes a permutation on the remaining slots. Each state keeps the move
/// direction of its existing inbound entries (R when it has none); undefined
/// rows, in (state, symbol) order, are paired with free target slots in
/// (state, symbol) order. Throws ValidationError when the defined rows
/// cannot be completed (a state entered from both sides, or a quantum block
/// that does not span its target slots).
void complete_table(Qtm &m);

/// Throws ValidationError unless the machine is well-formed (and, for RTMs,
/// reversible).
void validate(const Qtm &m);

}  // namespace qtmhalt
