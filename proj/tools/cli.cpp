// Copyright 2026 The qgate Authors
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

#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qgate/algorithms.hpp"
#include "qgate/compiler.hpp"
#include "qgate/errors.hpp"
#include "qgate/executor.hpp"
#include "qgate/io.hpp"

#ifndef QGATE_VERSION
#define QGATE_VERSION "0.0.0"
#endif

namespace qgate::cli {

namespace {

namespace fs = std::filesystem;
using io::format_double;

/// Bad flag combinations detected after CLI11 parsing; exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

io::RunManifest manifest(const std::string &command) {
    io::RunManifest m;
    m.command = command;
    m.tool_version = QGATE_VERSION;
    return m;
}

void write_output(const fs::path &path, const std::string &content, io::RunManifest m) {
    io::atomic_write(path, content);
    m.outputs.push_back(path.string());
    fs::path manifest_path = path;
    manifest_path += ".manifest.json";
    io::atomic_write(manifest_path, io::manifest_to_json(m));
}

template <class T>
std::string join(const std::vector<T> &values) {
    std::string s;
    for (const auto &v : values) {
        if (!s.empty()) {
            s += ',';
        }
        if constexpr (std::is_floating_point_v<T>) {
            s += format_double(v);
        } else {
            s += std::to_string(v);
        }
    }
    return s;
}

SparseHamiltonian as_sparse(const io::HamiltonianInput &in) {
    if (in.sparse) {
        return *in.sparse;
    }
    return SparseHamiltonian::from_dense(in.pauli->to_dense());
}

EvolutionSource as_source(const io::HamiltonianInput &in) {
    return in.sparse ? EvolutionSource(*in.sparse) : EvolutionSource(*in.pauli);
}

CompileMethod parse_method(const std::string &name) {
    return name == "direct" ? CompileMethod::Direct : CompileMethod::Pauli;
}

StateVector initial_state(const std::string &arg, std::size_t n) {
    std::uint64_t index = 0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), index);
    if (ec == std::errc() && ptr == arg.data() + arg.size()) {
        if (n < 64 && index >= (std::uint64_t{1} << n)) {
            throw DomainError("basis index " + arg + " outside " + std::to_string(n) + " qubits");
        }
        return StateVector::basis(n, index);
    }
    std::ifstream in(arg);
    if (!in) {
        throw ParseError("cannot open state file " + arg);
    }
    auto state = io::read_state_csv(in);
    if (state.num_qubits() != n) {
        throw DimensionError("state file has " + std::to_string(state.num_qubits()) + " qubits, expected " +
                             std::to_string(n));
    }
    return state;
}

std::string records_csv(const std::vector<ProgramMeasurement> &records) {
    std::string out = "index,ref,outcome,raw_outcome,probability,effective_angle\n";
    for (std::size_t k = 0; k < records.size(); ++k) {
        const auto &r = records[k];
        out += std::to_string(k) + "," + r.ref.str() + "," + std::to_string(r.outcome) + "," +
               std::to_string(r.raw_outcome) + "," + format_double(r.probability) + "," +
               format_double(r.effective_angle) + "\n";
    }
    return out;
}

std::string state_csv(const StateVector &state) {
    std::ostringstream ss;
    state.write_csv(ss);
    return ss.str();
}

// ---- compile -----------------------------------------------------------------

struct CompileArgs {
    std::string input, method = "pauli", ordering = "given", out;
    int order = 1;
    std::size_t steps = 1;
    double delta = 1.0;
    std::optional<std::uint64_t> seed;
    bool ladder = false, lower_macros = false;
};

int cmd_compile(const CompileArgs &a, std::ostream &out) {
    if (a.ordering == "random" && !a.seed) {
        throw UsageError("--ordering random needs --seed");
    }
    const auto in = io::read_hamiltonian(a.input);
    const auto ordering = a.ordering == "random" ? TermOrdering::Random : TermOrdering::AsGiven;
    const std::uint64_t seed = a.seed.value_or(0);
    QGateProgram program;
    if (a.method == "pauli") {
        PauliTermList terms = in.pauli ? *in.pauli : sparse_to_pauli_terms(*in.sparse);
        terms.ordering = ordering;
        terms.seed = seed;
        program = compile_trotter(terms, a.delta, a.order, a.steps);
    } else {
        program = compile_sparse(as_sparse(in), a.delta, a.order, a.steps, ordering, seed,
                                 DirectOptions{.toffoli_ladder = a.ladder});
    }
    if (a.lower_macros) {
        program = lower(program, a.ladder ? LowerStrategy::ToffoliLadder : LowerStrategy::RotationSets);
    }
    program.name = "compile:" + a.method;
    program.source = a.input;
    const CostReport report = cost(program);

    auto m = manifest("compile");
    m.inputs = {a.input};
    m.seed = a.seed;
    m.parameters = {{"method", a.method},       {"order", std::to_string(a.order)},
                    {"steps", std::to_string(a.steps)}, {"delta", format_double(a.delta)},
                    {"ordering", a.ordering},   {"ladder", a.ladder ? "1" : "0"},
                    {"lower", a.lower_macros ? "1" : "0"}};
    write_output(a.out, io::program_to_json(program), m);
    out << io::cost_to_csv(report);
    return kExitOk;
}

// ---- simulate ----------------------------------------------------------------

struct SimulateArgs {
    std::string program, mode = "postselect", state = "0", out, records, frame = "immediate";
    std::optional<std::uint64_t> seed;
    bool debug_tableau = false;
    double floor = kPostselectionFloor;
};

int cmd_simulate(const SimulateArgs &a, std::ostream &out) {
    if (a.mode == "sample" && !a.seed) {
        throw UsageError("--mode sample needs --seed");
    }
    const QGateProgram program = io::read_program(a.program);
    require_valid(program);
    const StateVector initial = initial_state(a.state, program.n_logical);
    ExecOptions opts;
    opts.seed = a.seed.value_or(0);
    opts.frame = a.frame == "track" ? FramePolicy::TrackToEnd : FramePolicy::ApplyImmediately;
    opts.debug_tableau = a.debug_tableau;
    opts.postselection_floor = a.floor;

    auto m = manifest("simulate");
    m.inputs = {a.program};
    m.seed = a.seed;
    m.parameters = {{"mode", a.mode}, {"state", a.state}, {"frame", a.frame},
                    {"debug_tableau", a.debug_tableau ? "1" : "0"}, {"floor", format_double(a.floor)}};

    ExecutionResult result;
    if (a.mode == "all-branches") {
        const auto branches = execute_all_branches(program, initial, opts);
        const double deviation = max_branch_deviation(branches);
        m.parameters["branches"] = std::to_string(branches.size());
        out << "branches," << branches.size() << "\nmax_branch_deviation," << format_double(deviation) << "\n";
        result = branches.front();
    } else {
        const ExecMode mode = a.mode == "sample" ? ExecMode::Sampled : ExecMode::PostselectZero;
        result = execute(program, initial, mode, opts);
        out << "branch_weight," << format_double(result.branch_weight) << "\n";
    }
    if (a.debug_tableau) {
        out << "tableau_checks," << result.tableau_checks << "\ntableau_failures," << result.tableau_failures.size()
            << "\n";
    }
    write_output(a.out, state_csv(result.final_state), m);
    if (!a.records.empty()) {
        write_output(a.records, records_csv(result.records), m);
    }
    return result.tableau_failures.empty() ? kExitOk : kExitTolerance;
}

// ---- trotter-scan ------------------------------------------------------------

struct ScanArgs {
    std::string input, method = "direct", out;
    std::vector<int> orders{1, 2, 4};
    std::vector<std::size_t> steps{4, 8, 16, 32, 64};
    double delta = 1.0;
};

int cmd_trotter_scan(const ScanArgs &a, std::ostream &out) {
    const auto in = io::read_hamiltonian(a.input);
    const auto rows = trotter_scaling_study(as_sparse(in), a.delta, a.steps, a.orders, parse_method(a.method));
    for (int order : a.orders) {
        std::vector<double> x, y;
        for (const auto &r : rows) {
            if (r.order == order) {
                x.push_back(static_cast<double>(r.steps));
                y.push_back(std::max(r.frobenius, 1e-300));
            }
        }
        if (x.size() >= 2) {
            out << "order," << order << ",slope," << format_double(loglog_slope(x, y)) << "\n";
        }
    }
    auto m = manifest("trotter-scan");
    m.inputs = {a.input};
    m.parameters = {{"method", a.method},
                    {"orders", join(a.orders)},
                    {"steps_list", join(a.steps)},
                    {"delta", format_double(a.delta)}};
    write_output(a.out, io::scaling_csv(rows), m);
    return kExitOk;
}

// ---- qpe ---------------------------------------------------------------------

struct QpeArgs {
    std::string input, path = "native", method = "pauli", out, state;
    std::size_t b = 4, shots = 1024, steps = 10;
    int order = 2;
    double delta = 1.0, scale = 1.0;
    std::optional<std::uint64_t> seed;
    std::vector<double> sweep;
    bool dense_qft = false;
};

int cmd_qpe(const QpeArgs &a, std::ostream &out) {
    if (!a.seed) {
        throw UsageError("qpe samples shots and needs --seed");
    }
    const auto in = io::read_hamiltonian(a.input);
    const EvolutionSource source = as_source(in);
    const EigenPair ground = ground_state(source.dense());
    const StateVector eigenstate = a.state.empty() ? ground.state : initial_state(a.state, source.num_qubits());

    QPEConfig cfg;
    cfg.b_qubits = a.b;
    cfg.shots = a.shots;
    cfg.seed = *a.seed;
    cfg.delta = a.delta;
    cfg.scale = a.scale;
    cfg.path = a.path == "compiled" ? EvolutionPath::Compiled : EvolutionPath::Native;
    cfg.method = parse_method(a.method);
    cfg.order = a.order;
    cfg.steps = a.steps;
    cfg.compiled_qft = !a.dense_qft;

    auto m = manifest("qpe");
    m.inputs = {a.input};
    if (!a.state.empty()) {
        m.inputs.push_back(a.state);
    }
    m.seed = a.seed;
    m.parameters = {{"b", std::to_string(a.b)},         {"shots", std::to_string(a.shots)},
                    {"delta", format_double(a.delta)},  {"scale", format_double(a.scale)},
                    {"path", a.path},                   {"method", a.method},
                    {"order", std::to_string(a.order)}, {"steps", std::to_string(a.steps)},
                    {"qft", a.dense_qft ? "dense" : "compiled"}};

    if (!a.sweep.empty()) {
        m.parameters["sweep"] = join(a.sweep);
        const double energy = a.state.empty() ? ground.energy
                                              : (eigenstate.amplitudes().adjoint() * source.dense() *
                                                 eigenstate.amplitudes())(0, 0)
                                                    .real();
        const auto rows = qpe_phase_sweep(source, eigenstate, energy, cfg, a.sweep);
        write_output(a.out, io::sweep_csv(rows), m);
        out << "rows," << rows.size() << "\n";
        return kExitOk;
    }
    const PhaseEstimate est = qpe(source, eigenstate, cfg);
    out << "mode," << est.mode_bitstring << "\ntheta_hat," << format_double(est.theta_hat) << "\n";
    if (est.energy_hat) {
        out << "energy_hat," << format_double(*est.energy_hat) << "\n";
    }
    out << "ground_energy," << format_double(ground.energy) << "\n";
    write_output(a.out, io::histogram_csv(est), m);
    return kExitOk;
}

// ---- cost / verify -------------------------------------------------------------

struct CostArgs {
    std::string program, format = "json", out;
};

int cmd_cost(const CostArgs &a, std::ostream &out) {
    const CostReport report = cost(io::read_program(a.program));
    const std::string text = a.format == "csv" ? io::cost_to_csv(report) : io::cost_to_json(report);
    if (a.out.empty()) {
        out << text;
        return kExitOk;
    }
    auto m = manifest("cost");
    m.inputs = {a.program};
    m.parameters = {{"format", a.format}};
    write_output(a.out, text, m);
    return kExitOk;
}

struct VerifyArgs {
    std::string program, against = "exact", input;
    double delta = 1.0, tolerance = 1e-9;
};

int cmd_verify(const VerifyArgs &a, std::ostream &out) {
    const QGateProgram program = io::read_program(a.program);
    const std::string hamiltonian = a.input.empty() ? program.source : a.input;
    if (hamiltonian.empty()) {
        throw UsageError("program records no source Hamiltonian; pass --input");
    }
    const auto in = io::read_hamiltonian(hamiltonian);
    const Eigen::MatrixXcd h = in.sparse ? in.sparse->to_dense() : in.pauli->to_dense();
    if (static_cast<std::size_t>(h.rows()) != (std::size_t{1} << program.n_logical)) {
        throw DimensionError("Hamiltonian and program widths differ");
    }
    const Eigen::MatrixXcd u = program_unitary(program);
    const double distance = frobenius_distance(u, hermitian_exponential_oracle(h, a.delta).matrix());
    out << "frobenius," << format_double(distance) << "\ntolerance," << format_double(a.tolerance) << "\n";
    if (distance > a.tolerance) {
        out << "result,fail\n";
        return kExitTolerance;
    }
    out << "result,pass\n";
    return kExitOk;
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"qgate: QGATE compiler and numerical verification engine", "qgate"};
    app.require_subcommand(1);
    app.set_version_flag("--version", QGATE_VERSION);

    CompileArgs ca;
    auto *compile = app.add_subcommand("compile", "Compile exp(-i H delta) to a program JSON");
    compile->add_option("--input", ca.input, "Hamiltonian (.mtx, .json or Pauli text)")->required();
    compile->add_option("--method", ca.method)->check(CLI::IsMember({"pauli", "direct"}));
    compile->add_option("--order", ca.order)->check(CLI::IsMember({1, 2, 4}));
    compile->add_option("--steps", ca.steps)->check(CLI::PositiveNumber);
    compile->add_option("--delta", ca.delta);
    compile->add_option("--ordering", ca.ordering)->check(CLI::IsMember({"given", "random"}));
    compile->add_option("--seed", ca.seed);
    compile->add_flag("--ladder", ca.ladder, "Toffoli ladder for multi-controlled rotations");
    compile->add_flag("--lower", ca.lower_macros, "Lower controlled blocks to QGATE primitives");
    compile->add_option("--out", ca.out)->required();

    SimulateArgs sa;
    auto *simulate = app.add_subcommand("simulate", "Execute a program on a state vector");
    simulate->add_option("program", sa.program)->required();
    simulate->add_option("--mode", sa.mode)->check(CLI::IsMember({"postselect", "sample", "all-branches"}));
    simulate->add_option("--seed", sa.seed);
    simulate->add_option("--state", sa.state, "Basis index or index,re,im CSV");
    simulate->add_option("--frame", sa.frame)->check(CLI::IsMember({"immediate", "track"}));
    simulate->add_flag("--debug-tableau", sa.debug_tableau);
    simulate->add_option("--floor", sa.floor, "Smallest Born probability of a forced branch")
        ->check(CLI::Range(0.0, 1.0));
    simulate->add_option("--records", sa.records, "Measurement record CSV");
    simulate->add_option("--out", sa.out)->required();

    ScanArgs ta;
    auto *scan = app.add_subcommand("trotter-scan", "Frobenius distance against Trotter steps");
    scan->add_option("--input", ta.input)->required();
    scan->add_option("--orders", ta.orders)->delimiter(',');
    scan->add_option("--steps-list", ta.steps)->delimiter(',');
    scan->add_option("--delta", ta.delta);
    scan->add_option("--method", ta.method)->check(CLI::IsMember({"pauli", "direct"}));
    scan->add_option("--out", ta.out)->required();

    QpeArgs qa;
    auto *qpe_cmd = app.add_subcommand("qpe", "Quantum phase estimation");
    qpe_cmd->add_option("--input", qa.input)->required();
    qpe_cmd->add_option("--b", qa.b)->check(CLI::PositiveNumber);
    qpe_cmd->add_option("--shots", qa.shots)->check(CLI::PositiveNumber);
    qpe_cmd->add_option("--seed", qa.seed);
    qpe_cmd->add_option("--delta", qa.delta);
    qpe_cmd->add_option("--scale", qa.scale);
    qpe_cmd->add_option("--path", qa.path)->check(CLI::IsMember({"native", "compiled"}));
    qpe_cmd->add_option("--method", qa.method)->check(CLI::IsMember({"pauli", "direct"}));
    qpe_cmd->add_option("--order", qa.order)->check(CLI::IsMember({1, 2, 4}));
    qpe_cmd->add_option("--steps", qa.steps)->check(CLI::PositiveNumber);
    qpe_cmd->add_option("--state", qa.state, "Eigenstate (default: ground state)");
    qpe_cmd->add_option("--sweep", qa.sweep, "Comma-separated delta values")->delimiter(',');
    qpe_cmd->add_flag("--dense-qft", qa.dense_qft);
    qpe_cmd->add_option("--out", qa.out)->required();

    CostArgs ka;
    auto *cost_cmd = app.add_subcommand("cost", "Resource counts of a program");
    cost_cmd->add_option("program", ka.program)->required();
    cost_cmd->add_option("--format", ka.format)->check(CLI::IsMember({"json", "csv"}));
    cost_cmd->add_option("--out", ka.out);

    VerifyArgs va;
    auto *verify = app.add_subcommand("verify", "Compare a program against exp(-i H delta)");
    verify->add_option("program", va.program)->required();
    verify->add_option("--against", va.against)->check(CLI::IsMember({"exact"}));
    verify->add_option("--input", va.input, "Hamiltonian (default: the program's source)");
    verify->add_option("--delta", va.delta)->required();
    verify->add_option("--tolerance", va.tolerance);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        if (*compile) {
            return cmd_compile(ca, out);
        }
        if (*simulate) {
            return cmd_simulate(sa, out);
        }
        if (*scan) {
            return cmd_trotter_scan(ta, out);
        }
        if (*qpe_cmd) {
            return cmd_qpe(qa, out);
        }
        if (*cost_cmd) {
            return cmd_cost(ka, out);
        }
        return cmd_verify(va, out);
    } catch (const UsageError &e) {
        err << "qgate: " << e.what() << "\n";
        return kExitParse;
    } catch (const ParseError &e) {
        err << "qgate: parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ProgramError &e) {
        err << "qgate: invalid program: " << e.what() << "\n";
        return kExitParse;
    } catch (const UnsupportedError &e) {
        err << "qgate: unsupported: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const PostselectionError &e) {
        err << "qgate: postselection failed: " << e.what() << "\n";
        return kExitPostselection;
    } catch (const std::exception &e) {
        err << "qgate: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace qgate::cli
