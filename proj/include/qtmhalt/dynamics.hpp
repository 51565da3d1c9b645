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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qtmhalt/amplitude.hpp"
#include "qtmhalt/machine.hpp"

namespace qtmhalt {

/// Basis configuration: internal state, head position and the finitely
/// supported tape. The tape holds non-blank cells only, sorted by index.
struct Configuration {
    StateId state = 0;
    std::int64_t head = 0;
    std::vector<std::pair<std::int64_t, SymbolId>> tape;

    SymbolId read(std::int64_t cell) const;
    void write(std::int64_t cell, SymbolId s);

    bool operator==(const Configuration &) const = default;
    auto operator<=>(const Configuration &) const = default;
};

struct ConfigurationHash {
    std::size_t operator()(const Configuration &c) const;
};

/// `state=<name>;head=<int>;tape=<idx>:<sym>,...` with ascending indices.
std::string serialize_config(const Qtm &m, const Configuration &c);

/// Symbols of cells 0..(last non-blank cell >= 0), concatenated by name;
/// empty when the data region is blank.
std::string data_string(const Qtm &m, const Configuration &c);

/// Sparse state vector. Entries with zero amplitude are never stored.
class Superposition {
   public:
    using Map = std::unordered_map<Configuration, Amplitude, ConfigurationHash>;

    Superposition() = default;
    Superposition(const Configuration &c, Amplitude a = Amplitude(1)) { add(c, a); }

    /// Accumulates `a` onto `c`, removing the entry if it cancels to zero.
    void add(const Configuration &c, const Amplitude &a);
    Amplitude amplitude(const Configuration &c) const;

    const Map &entries() const { return map_; }
    std::size_t size() const { return map_.size(); }
    bool empty() const { return map_.empty(); }
    RealValue norm_sq() const;

    Superposition scaled(const Amplitude &a) const;
    Superposition operator+(const Superposition &o) const;

    /// Entries in configuration order (state, head, tape).
    std::vector<std::pair<Configuration, Amplitude>> sorted() const;

    bool operator==(const Superposition &o) const;

   private:
    Map map_;
};

/// Raised when a superposition outgrows the support cap.
struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised for input strings with symbols outside the alphabet.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kDefaultSupportCap = 1'000'000;

/// kDefaultSupportCap, or the value of QTMHALT_SUPPORT_CAP when set.
std::size_t default_support_cap();

struct SimOptions {
    std::size_t support_cap = default_support_cap();
};

/// State m.initial, head m.start_head, input in cells 0..n-1. Each input
/// character names a single-character symbol.
Configuration initial_config(const Qtm &m, std::string_view input);

/// One application of the time evolution operator.
Superposition step(const Qtm &m, const Superposition &psi, const SimOptions &opts = {});

/// `t` steps from the initial configuration, without measurement.
Superposition evolve(const Qtm &m, std::string_view input, std::uint64_t t, const SimOptions &opts = {});

/// Deterministic run of a reversible machine, observing the halting set
/// after every step.
struct ClassicalRun {
    bool halted = false;
    /// Step at which the halting set was first observed, or the budget.
    std::uint64_t steps = 0;
    Configuration final;
    /// Lowest head position visited (the start position included).
    std::int64_t min_head = 0;
};

/// Requires one entry per row. Throws std::invalid_argument otherwise.
ClassicalRun run_classical(const Qtm &m, std::string_view input, std::uint64_t budget);

}  // namespace qtmhalt
