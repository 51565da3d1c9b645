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

// Text format for machine files:
//
//   qtm | rtm
//   name: <token>                 (optional)
//   alphabet: B <sym>...
//   states: <name>...
//   initial: <name>
//   halting: <name>...
//   head: <int>                   (optional start head, default 0)
//   working: <sym>...             (optional working-only symbols)
//   completion: auto              (optional; fill undefined rows)
//   rule <state> <sym> -> <amp> <state> <sym> <L|R> [, <amp> <state> <sym> <L|R>]...
//
// Lines whose first non-blank character is '#' are comments. '#' is also a
// legal symbol name, so comments are whole-line only.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qtmhalt/machine.hpp"

namespace qtmhalt {

struct MachineParseError : std::runtime_error {
    MachineParseError(std::size_t line, std::size_t column, const std::string &msg);
    std::size_t line;
    std::size_t column;
};

struct ParseOptions {
    /// Skip the well-formedness/reversibility gate.
    bool defer_checks = false;
};

/// Parses and (unless deferred) validates a machine. Syntax problems raise
/// MachineParseError; validation failures raise ValidationError naming the
/// violated condition.
Qtm parse_machine_text(std::string_view text, const ParseOptions &opts = {});

Qtm load_machine_file(const std::string &path, const ParseOptions &opts = {});

/// Emits every row explicitly, in (state, symbol) order.
std::string print_machine_text(const Qtm &m);

}  // namespace qtmhalt
