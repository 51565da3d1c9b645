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

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qtmhalt/branch_compiler.hpp"
#include "qtmhalt/dense_oracle.hpp"
#include "qtmhalt/halting.hpp"
#include "qtmhalt/machine_text.hpp"
#include "qtmhalt/serialize.hpp"

namespace {

using namespace qtmhalt;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitResource = 3;

struct Flags {
    std::string machine;
    std::string t1;
    std::string t2;
    std::string input;
    std::uint64_t steps = 100;
    std::string format = "json";
    std::uint64_t seed = 0;
    std::uint64_t samples = 1;
    bool defer_checks = false;
    std::string output;
    std::string mode = "quantum";
    std::int64_t lo = 0;
    std::int64_t hi = 2;
    std::size_t dimension_cap = kDefaultDimensionCap;
};

struct Emitter {
    const Flags &flags;

    // Prints a JSON document, or the text rendering when one is given and
    // the format is text.
    void emit(const Json &j, const std::string &text = "") const {
        if (flags.format == "text" && !text.empty()) {
            std::cout << text;
        } else {
            std::cout << j.dump(2) << '\n';
        }
    }
};

Qtm load(const std::string &path, const Flags &flags) {
    if (path.empty()) {
        throw std::invalid_argument("a machine file is required");
    }
    return load_machine_file(path, ParseOptions{flags.defer_checks});
}

SimOptions sim_options() { return SimOptions{default_support_cap()}; }

std::string opt_str(const std::optional<std::uint64_t> &v) { return v ? std::to_string(*v) : "-"; }

int cmd_check(const Flags &f, const Emitter &out) {
    const Qtm m = load(f.machine, f);
    const WellformedReport wf = check_wellformed(m);
    const StationaryReport strict = check_stationary(m, StationaryMode::strict);
    const StationaryReport data = check_stationary(m, StationaryMode::data_only);
    Json j{{"machine", m.name},
           {"kind", m.kind == MachineKind::rtm ? "rtm" : "qtm"},
           {"wellformed", to_json(m, wf)},
           {"stationary_strict", to_json(m, strict)},
           {"stationary_data_only", to_json(m, data)}};
    bool ok = wf.ok;
    std::ostringstream text;
    text << "wellformed: " << (wf.ok ? "pass" : "fail " + wf.message) << '\n';
    if (m.kind == MachineKind::rtm) {
        const ReversibleReport rev = check_reversible(m);
        j["reversible"] = to_json(m, rev);
        ok = ok && rev.ok;
        text << "reversible: " << (rev.ok ? "pass" : "fail " + rev.message) << '\n';
    }
    text << "stationary (strict): " << (strict.ok ? "pass" : "fail " + strict.message) << '\n';
    text << "stationary (data only): " << (data.ok ? "pass" : "fail " + data.message) << '\n';
    out.emit(j, text.str());
    return ok ? kExitOk : kExitValidation;
}

int cmd_run(const Flags &f, const Emitter &out) {
    const Qtm m = load(f.machine, f);
    const Superposition psi = evolve(m, f.input, f.steps, sim_options());
    std::ostringstream text;
    for (const auto &[c, a] : psi.sorted()) {
        text << amp_print(a) << "  " << serialize_config(m, c) << '\n';
    }
    Json j = to_json(m, psi);
    j["t"] = f.steps;
    out.emit(j, text.str());
    return kExitOk;
}

int cmd_halt_dist(const Flags &f, const Emitter &out) {
    const Qtm m = load(f.machine, f);
    const HaltingProfile prof = halt_distribution(m, f.input, f.steps, sim_options());
    if (f.format == "csv") {
        std::cout << to_csv(prof);
        return kExitOk;
    }
    std::ostringstream text;
    for (std::uint64_t t = 1; t <= prof.budget; ++t) {
        if (!prof.at(t).is_zero()) {
            text << "p(" << t << ") = " << prof.at(t).str() << '\n';
        }
    }
    text << "residual = " << prof.residual.str() << '\n';
    out.emit(to_json(prof), text.str());
    return kExitOk;
}

int cmd_classify(const Flags &f, const Emitter &out) {
    const Qtm m = load(f.machine, f);
    const Classification c = classify(m, f.input, f.steps, sim_options());
    std::string text = std::string(verdict_label(c.verdict)) + " " + std::to_string(c.step);
    if (c.conditional_p) {
        text += " " + c.conditional_p->str();
    }
    out.emit(to_json(c), text + "\n");
    return kExitOk;
}

int cmd_sample(const Flags &f, const Emitter &out) {
    const Qtm m = load(f.machine, f);
    Json runs = Json::array();
    std::ostringstream text;
    for (std::uint64_t i = 0; i < f.samples; ++i) {
        const Trajectory t = monitored_sample(m, f.input, f.steps, f.seed + i, sim_options());
        runs.push_back(to_json(t));
        text << (t.halt_step ? "halt " + std::to_string(*t.halt_step) + " " + t.data : "no halt") << '\n';
    }
    out.emit(Json{{"seed", f.seed}, {"samples", std::move(runs)}}, text.str());
    return kExitOk;
}

int cmd_compare_protocols(const Flags &f, const Emitter &out) {
    const Qtm m = load(f.machine, f);
    const ProtocolComparison c = outcome_distributions(m, f.input, f.steps, sim_options());
    out.emit(to_json(c), "tv_distance = " + c.tv_distance.str() + "\n");
    return kExitOk;
}

int cmd_compile(const Flags &f, const Emitter &) {
    const BranchQtm q = compile_branch_qtm(load(f.t1, f), load(f.t2, f));
    const std::string text = print_machine_text(q.machine);
    if (f.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream file(f.output);
        if (!(file << text)) {
            throw std::runtime_error("cannot write " + f.output);
        }
    }
    return kExitOk;
}

int cmd_compare_runtimes(const Flags &f, const Emitter &out) {
    const CompareMode mode = f.mode == "oracle" ? CompareMode::oracle : CompareMode::quantum;
    const RuntimeComparison c = compare_runtimes(load(f.t1, f), load(f.t2, f), f.input, f.steps, mode, sim_options());
    out.emit(to_json(c), std::string(runtime_verdict_label(c.verdict)) + " compiled " + opt_str(c.compiled_time1) +
                             " " + opt_str(c.compiled_time2) + "\n");
    return kExitOk;
}

int cmd_semidecide(const Flags &f, const Emitter &out) {
    const std::string &path = f.machine.empty() ? f.t1 : f.machine;
    const SemiDecision d = halting_semidecider(load(path, f), f.input, f.steps, sim_options());
    out.emit(to_json(d), d.halts ? "halts " + std::to_string(d.step) + "\n" : "unknown\n");
    return kExitOk;
}

int cmd_oracle_check(const Flags &f, const Emitter &out, bool evolve_requested) {
    const Qtm m = load(f.machine, f);
    const Window w{f.lo, f.hi};
    const DenseMatrix u = build_dense_matrix(m, w, f.dimension_cap);
    const MatrixReport rep = check_isometry(m, u);
    const WellformedReport wf = check_wellformed(m);
    Json j{{"window", {{"lo", w.lo}, {"hi", w.hi}}},
           {"matrix", to_json(rep)},
           {"wellformed", wf.ok},
           {"agree", wf.ok == rep.isometry}};
    std::ostringstream text;
    text << "isometry: " << (rep.isometry ? "pass" : "fail " + rep.message) << "\nwellformed: "
         << (wf.ok ? "pass" : "fail") << '\n';
    bool ok = wf.ok == rep.isometry;
    if (evolve_requested) {
        Json ev{{"t", f.steps}};
        try {
            const DenseState v = dense_evolve(u, initial_config(m, f.input), f.steps);
            const bool equal = to_superposition(u.space, v) == evolve(m, f.input, f.steps, sim_options());
            ev["sparse_equal"] = equal;
            ok = ok && equal;
            text << "sparse/dense at t=" << f.steps << ": " << (equal ? "equal" : "DIFFERENT") << '\n';
        } catch (const BoundaryEscapeError &e) {
            ev["boundary_escape_step"] = e.step;
            text << "boundary escape at step " << e.step << '\n';
        }
        j["evolve"] = std::move(ev);
    }
    out.emit(j, text.str());
    return ok ? kExitOk : kExitValidation;
}

void report_error(const Flags &f, const std::string &kind, const std::string &message) {
    if (f.format == "json") {
        std::cout << error_json(kind, message).dump(2) << '\n';
    }
    std::cerr << "qtmhalt: " << kind << ": " << message << '\n';
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum Turing machine halting toolkit"};
    app.require_subcommand(1);
    Flags f;

    auto add_format = [&](CLI::App *cmd) {
        cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    };
    auto add_machine = [&](CLI::App *cmd) {
        cmd->add_option("--machine,-m", f.machine, "Machine file")->required();
        cmd->add_flag("--defer-checks", f.defer_checks, "Load without the well-formedness gate");
        add_format(cmd);
    };
    auto add_run = [&](CLI::App *cmd) {
        cmd->add_option("--input,-i", f.input, "Input word");
        cmd->add_option("--steps,-T", f.steps, "Step budget")->check(CLI::PositiveNumber);
    };
    auto add_pair = [&](CLI::App *cmd) {
        cmd->add_option("--t1", f.t1, "First reversible machine")->required();
        cmd->add_option("--t2", f.t2, "Second reversible machine")->required();
        add_format(cmd);
    };

    CLI::App *check = app.add_subcommand("check", "Well-formedness, reversibility and stationarity reports");
    add_machine(check);
    CLI::App *run = app.add_subcommand("run", "Unmonitored evolution; prints the state");
    add_machine(run);
    add_run(run);
    CLI::App *dist = app.add_subcommand("halt-dist", "Halting probability per step");
    add_machine(dist);
    add_run(dist);
    CLI::App *cls = app.add_subcommand("classify", "Bounded halting classification");
    add_machine(cls);
    add_run(cls);
    CLI::App *sample = app.add_subcommand("sample", "Monitored runs with sampled outcomes");
    add_machine(sample);
    add_run(sample);
    sample->add_option("--seed", f.seed, "Generator seed");
    sample->add_option("--samples", f.samples, "Number of runs")->check(CLI::PositiveNumber);
    CLI::App *proto = app.add_subcommand("compare-protocols", "Monitored vs unmonitored outcome laws");
    add_machine(proto);
    add_run(proto);
    CLI::App *compile = app.add_subcommand("compile", "Build the two-branch machine");
    add_pair(compile);
    compile->add_option("-o,--output", f.output, "Output file (default stdout)");
    compile->add_flag("--defer-checks", f.defer_checks, "Load without the well-formedness gate");
    CLI::App *cmp = app.add_subcommand("compare-runtimes", "Compare halting times of two reversible machines");
    add_pair(cmp);
    add_run(cmp);
    cmp->add_option("--mode", f.mode, "quantum or oracle")->check(CLI::IsMember({"quantum", "oracle"}));
    CLI::App *semi = app.add_subcommand("semidecide-halt", "Bounded halting semi-decider");
    add_machine(semi);
    add_run(semi);
    CLI::App *oracle = app.add_subcommand("oracle-check", "Dense matrix cross-check on a window");
    add_machine(oracle);
    oracle->add_option("--input,-i", f.input, "Input word");
    CLI::Option *oracle_steps =
        oracle->add_option("--steps,-T", f.steps, "Also compare dense and sparse evolution")->check(CLI::PositiveNumber);
    oracle->add_option("--lo", f.lo, "Window start cell");
    oracle->add_option("--hi", f.hi, "Window end cell");
    oracle->add_option("--dimension-cap", f.dimension_cap, "Window dimension cap")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitValidation;
    }

    const Emitter out{f};
    try {
        if (*check) return cmd_check(f, out);
        if (*run) return cmd_run(f, out);
        if (*dist) return cmd_halt_dist(f, out);
        if (*cls) return cmd_classify(f, out);
        if (*sample) return cmd_sample(f, out);
        if (*proto) return cmd_compare_protocols(f, out);
        if (*compile) return cmd_compile(f, out);
        if (*cmp) return cmd_compare_runtimes(f, out);
        if (*semi) return cmd_semidecide(f, out);
        if (*oracle) return cmd_oracle_check(f, out, oracle_steps->count() > 0);
    } catch (const MachineParseError &e) {
        report_error(f, "parse_error", e.what());
        return kExitValidation;
    } catch (const ValidationError &e) {
        report_error(f, "validation_error", e.what());
        return kExitValidation;
    } catch (const ResourceLimitError &e) {
        report_error(f, "resource_limit", e.what());
        return kExitResource;
    } catch (const std::invalid_argument &e) {
        report_error(f, "invalid_argument", e.what());
        return kExitValidation;
    } catch (const std::exception &e) {
        report_error(f, "error", e.what());
        return 1;
    }
    return kExitOk;
}
