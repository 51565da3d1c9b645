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

#include "qtmhalt/serialize.hpp"

#include <sstream>

namespace qtmhalt {

namespace {

Json optional_step(const std::optional<std::uint64_t> &v) { return v ? Json(*v) : Json(nullptr); }

Json row_key_json(const Qtm &m, const std::optional<RowKey> &k) {
    if (!k) {
        return nullptr;
    }
    return Json{{"state", m.states.at(k->state)}, {"symbol", m.symbols.at(k->symbol)}};
}

Json distribution_entries(const OutcomeDistribution &d) {
    Json halted = Json::array();
    for (const auto &[key, p] : d.halted) {
        halted.push_back({{"t", key.first}, {"data", key.second}, {"p", exact_json(p)}});
    }
    return halted;
}

}  // namespace

Json exact_json(const RealValue &v) { return {{"exact", v.str()}, {"float", v.to_double()}}; }

Json exact_json(const Amplitude &v) {
    auto [re, im] = amp_to_float(v);
    return {{"exact", amp_print(v)}, {"float", Json::array({re, im})}};
}

Json to_json(const HaltingProfile &p) {
    Json rows = Json::array();
    for (std::uint64_t t = 1; t <= p.budget; ++t) {
        Json row = exact_json(p.at(t));
        row["t"] = t;
        rows.push_back(std::move(row));
    }
    return {{"T", p.budget}, {"p", std::move(rows)}, {"residual", exact_json(p.residual)}};
}

Json to_json(const Classification &c) {
    Json out{{"verdict", verdict_label(c.verdict)}, {"step", c.step}};
    if (c.conditional_p) {
        out["conditional_p"] = exact_json(*c.conditional_p);
    }
    return out;
}

Json to_json(const Trajectory &t) {
    Json out{{"halted", t.halt_step.has_value()}, {"halt_step", optional_step(t.halt_step)}, {"data", t.data}};
    Json outcomes = Json::array();
    for (bool b : t.outcomes) {
        outcomes.push_back(b ? 1 : 0);
    }
    out["outcomes"] = std::move(outcomes);
    return out;
}

Json to_json(const OutcomeDistribution &d) {
    return {{"halted", distribution_entries(d)}, {"not_halted", exact_json(d.not_halted)}};
}

Json to_json(const ProtocolComparison &c) {
    Json by_budget = Json::array();
    for (std::size_t t = 0; t < c.tv_by_budget.size(); ++t) {
        Json row = exact_json(c.tv_by_budget[t]);
        row["t"] = t + 1;
        by_budget.push_back(std::move(row));
    }
    return {{"monitored", to_json(c.monitored)},
            {"unmonitored", to_json(c.unmonitored)},
            {"tv_distance", exact_json(c.tv_distance)},
            {"tv_by_budget", std::move(by_budget)}};
}

Json to_json(const RuntimeComparison &c) {
    return {{"verdict", runtime_verdict_label(c.verdict)},
            {"mode", c.mode == CompareMode::quantum ? "quantum" : "oracle"},
            {"compares", c.mode == CompareMode::quantum ? "compiled_times" : "source_times"},
            {"budget", c.budget},
            {"time1", optional_step(c.time1)},
            {"time2", optional_step(c.time2)},
            {"compiled_time1", optional_step(c.compiled_time1)},
            {"compiled_time2", optional_step(c.compiled_time2)}};
}

Json to_json(const SemiDecision &d) {
    return {{"result", d.halts ? "halts" : "unknown"}, {"step", d.halts ? Json(d.step) : Json(nullptr)}};
}

Json to_json(const Qtm &m, const WellformedReport &r) {
    return {{"ok", r.ok},
            {"condition", condition_label(r.condition)},
            {"row1", row_key_json(m, r.row1)},
            {"row2", row_key_json(m, r.row2)},
            {"message", r.message}};
}

Json to_json(const Qtm &m, const ReversibleReport &r) {
    return {{"ok", r.ok}, {"row", row_key_json(m, r.row)}, {"message", r.message}};
}

Json to_json(const Qtm &m, const StationaryReport &r) {
    return {{"ok", r.ok}, {"conservative", r.conservative}, {"row", row_key_json(m, r.row)}, {"message", r.message}};
}

Json to_json(const TrajectoryStationarity &r) {
    return {{"ok", r.ok}, {"step", optional_step(r.step)}, {"message", r.message}};
}

Json to_json(const MatrixReport &r) {
    Json pair = nullptr;
    if (r.failing_pair) {
        pair = Json::array({r.failing_pair->first, r.failing_pair->second});
    }
    return {{"dimension", r.dimension},
            {"interior_columns", r.interior_columns},
            {"boundary_columns", r.boundary_columns},
            {"isometry", r.isometry},
            {"failing_pair", std::move(pair)},
            {"message", r.message}};
}

Json to_json(const Qtm &m, const Superposition &psi) {
    Json entries = Json::array();
    for (const auto &[c, a] : psi.sorted()) {
        entries.push_back({{"config", serialize_config(m, c)}, {"amplitude", exact_json(a)}});
    }
    return {{"support", psi.size()}, {"norm_sq", exact_json(psi.norm_sq())}, {"entries", std::move(entries)}};
}

std::string to_csv(const HaltingProfile &p) {
    std::ostringstream out;
    out << "t,p_exact,p_float\n";
    for (std::uint64_t t = 1; t <= p.budget; ++t) {
        out << t << ',' << p.at(t).str() << ',' << Json(p.at(t).to_double()).dump() << '\n';
    }
    return out.str();
}

Json error_json(const std::string &kind, const std::string &message) {
    return {{"error", {{"kind", kind}, {"message", message}}}};
}

}  // namespace qtmhalt
