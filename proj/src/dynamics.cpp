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

#include "qtmhalt/dynamics.hpp"

#include <algorithm>
#include <cstdlib>

namespace qtmhalt {

SymbolId Configuration::read(std::int64_t cell) const {
    auto it = std::lower_bound(tape.begin(), tape.end(), cell,
                               [](const auto &entry, std::int64_t c) { return entry.first < c; });
    return it != tape.end() && it->first == cell ? it->second : kBlank;
}

void Configuration::write(std::int64_t cell, SymbolId s) {
    auto it = std::lower_bound(tape.begin(), tape.end(), cell,
                               [](const auto &entry, std::int64_t c) { return entry.first < c; });
    bool present = it != tape.end() && it->first == cell;
    if (s == kBlank) {
        if (present) {
            tape.erase(it);
        }
    } else if (present) {
        it->second = s;
    } else {
        tape.insert(it, {cell, s});
    }
}

std::size_t ConfigurationHash::operator()(const Configuration &c) const {
    std::size_t h = std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(c.state) << 40) ^
                                               static_cast<std::uint64_t>(c.head));
    for (const auto &[cell, sym] : c.tape) {
        h = (h ^ std::hash<std::int64_t>{}(cell * 31 + sym)) * 0x100000001b3ULL;
    }
    return h;
}

std::string serialize_config(const Qtm &m, const Configuration &c) {
    std::string out = "state=" + m.states.at(c.state) + ";head=" + std::to_string(c.head) + ";tape=";
    bool first = true;
    for (const auto &[cell, sym] : c.tape) {
        if (!first) {
            out += ',';
        }
        out += std::to_string(cell) + ":" + m.symbols.at(sym);
        first = false;
    }
    return out;
}

std::string data_string(const Qtm &m, const Configuration &c) {
    std::int64_t last = -1;
    for (const auto &[cell, sym] : c.tape) {
        if (cell >= 0) {
            last = cell;
        }
    }
    std::string out;
    for (std::int64_t cell = 0; cell <= last; ++cell) {
        out += m.symbols.at(c.read(cell));
    }
    return out;
}

void Superposition::add(const Configuration &c, const Amplitude &a) {
    if (a.is_zero()) {
        return;
    }
    auto [it, inserted] = map_.try_emplace(c, a);
    if (!inserted) {
        it->second += a;
        if (it->second.is_zero()) {
            map_.erase(it);
        }
    }
}

Amplitude Superposition::amplitude(const Configuration &c) const {
    auto it = map_.find(c);
    return it == map_.end() ? Amplitude() : it->second;
}

RealValue Superposition::norm_sq() const {
    RealValue total;
    for (const auto &[c, a] : map_) {
        total += qtmhalt::norm_sq(a);
    }
    return total;
}

Superposition Superposition::scaled(const Amplitude &a) const {
    Superposition out;
    for (const auto &[c, v] : map_) {
        out.add(c, v * a);
    }
    return out;
}

Superposition Superposition::operator+(const Superposition &o) const {
    Superposition out = *this;
    for (const auto &[c, v] : o.map_) {
        out.add(c, v);
    }
    return out;
}

std::vector<std::pair<Configuration, Amplitude>> Superposition::sorted() const {
    std::vector<std::pair<Configuration, Amplitude>> out(map_.begin(), map_.end());
    std::sort(out.begin(), out.end(), [](const auto &x, const auto &y) { return x.first < y.first; });
    return out;
}

bool Superposition::operator==(const Superposition &o) const {
    if (map_.size() != o.map_.size()) {
        return false;
    }
    for (const auto &[c, v] : map_) {
        auto it = o.map_.find(c);
        if (it == o.map_.end() || it->second != v) {
            return false;
        }
    }
    return true;
}

std::size_t default_support_cap() {
    if (const char *env = std::getenv("QTMHALT_SUPPORT_CAP")) {
        char *end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<std::size_t>(v);
        }
    }
    return kDefaultSupportCap;
}

Configuration initial_config(const Qtm &m, std::string_view input) {
    Configuration c;
    c.state = m.initial;
    c.head = m.start_head;
    for (std::size_t i = 0; i < input.size(); ++i) {
        auto s = m.symbol_id(std::string_view(&input[i], 1));
        if (!s) {
            throw InputError(std::string("input symbol '") + input[i] + "' is not in the alphabet of " + m.name);
        }
        c.write(static_cast<std::int64_t>(i), *s);
    }
    return c;
}

Superposition step(const Qtm &m, const Superposition &psi, const SimOptions &opts) {
    Superposition out;
    for (const auto &[c, alpha] : psi.entries()) {
        for (const Transition &t : m.row(c.state, c.read(c.head))) {
            Configuration next = c;
            next.write(c.head, t.symbol);
            next.head += static_cast<int>(t.dir);
            next.state = t.state;
            out.add(next, alpha * t.amplitude);
            if (out.size() > opts.support_cap) {
                throw ResourceLimitError("superposition support exceeds cap of " + std::to_string(opts.support_cap));
            }
        }
    }
    return out;
}

Superposition evolve(const Qtm &m, std::string_view input, std::uint64_t t, const SimOptions &opts) {
    Superposition psi(initial_config(m, input));
    for (std::uint64_t i = 0; i < t; ++i) {
        psi = step(m, psi, opts);
    }
    return psi;
}

ClassicalRun run_classical(const Qtm &m, std::string_view input, std::uint64_t budget) {
    ClassicalRun run;
    run.final = initial_config(m, input);
    run.min_head = run.final.head;
    for (std::uint64_t t = 1; t <= budget; ++t) {
        const Row &row = m.row(run.final.state, run.final.read(run.final.head));
        if (row.size() != 1) {
            throw std::invalid_argument("run_classical: machine " + m.name + " is not deterministic");
        }
        const Transition &tr = row.front();
        run.final.write(run.final.head, tr.symbol);
        run.final.head += static_cast<int>(tr.dir);
        run.final.state = tr.state;
        run.min_head = std::min(run.min_head, run.final.head);
        run.steps = t;
        if (m.is_halting(tr.state)) {
            run.halted = true;
            return run;
        }
    }
    return run;
}

}  // namespace qtmhalt
