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

#include "qgate/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "qgate/errors.hpp"
#include "qgate/stabilizer.hpp"

namespace qgate::io {

namespace {

using nlohmann::json;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::size_t qubits_for_dimension(std::uint64_t dim, std::size_t line) {
    if (dim == 0 || (dim & (dim - 1)) != 0) {
        throw ParseError("dimension " + std::to_string(dim) + " is not a power of two", line);
    }
    return static_cast<std::size_t>(std::countr_zero(dim));
}

void add_entry(SparseHamiltonian &h, std::uint64_t row, std::uint64_t col, std::complex<double> v, std::size_t line) {
    try {
        h.add(row, col, v);
    } catch (const std::exception &e) {
        throw ParseError(e.what(), line);
    }
}

std::string read_all(std::istream &in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::ifstream open_input(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    return in;
}

json body_to_json(const BodyOp &op) {
    return std::visit(overloaded{
                          [](const SingleClifford &c) {
                              return json{{"op", "clifford"}, {"target", c.target.str()}, {"gate", clifford_name(c.gate)}};
                          },
                          [](const Rotation &r) {
                              return json{{"op", "rotation"}, {"pauli", r.pauli.str()}, {"angle", r.angle}};
                          },
                      },
                      op);
}

json instruction_to_json(const Instruction &inst) {
    json j = std::visit(
        overloaded{
            [](const AllocLogical &a) { return json{{"count", a.count}}; },
            [](const AllocAncilla &a) { return json{{"ref", a.ref.str()}}; },
            [](const AllocMagic &a) { return json{{"ref", a.ref.str()}, {"theta", a.theta}}; },
            [](const AllocWork &a) { return json{{"ref", a.ref.str()}}; },
            [](const ReleaseWork &a) { return json{{"ref", a.ref.str()}}; },
            [](const CPauli &c) {
                return json{{"control", c.control.str()},
                            {"target", c.target.str()},
                            {"letter", std::string(1, to_char(c.letter))}};
            },
            [](const AncillaCX &c) { return json{{"control", c.control.str()}, {"target", c.target.str()}}; },
            [](const SingleClifford &c) { return json{{"target", c.target.str()}, {"gate", clifford_name(c.gate)}}; },
            [](const MeasureRotated &m) {
                return json{{"ancilla", m.ancilla.str()}, {"angle", m.angle}, {"byproduct", m.byproduct.str()}};
            },
            [](const MeasureX &m) { return json{{"ancilla", m.ancilla.str()}}; },
            [](const Rotation &r) { return json{{"pauli", r.pauli.str()}, {"angle", r.angle}}; },
            [](const ControlledBlock &b) {
                json controls = json::array();
                for (const auto &c : b.controls) {
                    controls.push_back({{"ref", c.ref.str()}, {"key", c.key ? 1 : 0}});
                }
                json body = json::array();
                for (const auto &op : b.body) {
                    body.push_back(body_to_json(op));
                }
                return json{{"controls", controls}, {"body", body}};
            },
        },
        inst);
    j["op"] = op_name(inst);
    return j;
}

QubitRef ref_field(const json &j, const char *key) {
    return QubitRef::parse(j.at(key).get<std::string>());
}

double angle_field(const json &j, const char *key) {
    const double v = j.at(key).get<double>();
    if (!std::isfinite(v)) {
        throw ParseError(std::string("non-finite ") + key);
    }
    return v;
}

BodyOp body_from_json(const json &j) {
    const auto op = j.at("op").get<std::string>();
    if (op == "clifford") {
        return SingleClifford{ref_field(j, "target"), clifford_from_name(j.at("gate").get<std::string>())};
    }
    if (op == "rotation") {
        return Rotation{PauliString::from_str(j.at("pauli").get<std::string>()), angle_field(j, "angle")};
    }
    throw ParseError("op '" + op + "' is not allowed inside a controlled block");
}

Instruction instruction_from_json(const json &j) {
    const auto op = j.at("op").get<std::string>();
    if (op == "alloc_logical") {
        return AllocLogical{j.at("count").get<std::size_t>()};
    }
    if (op == "alloc_ancilla") {
        return AllocAncilla{ref_field(j, "ref")};
    }
    if (op == "alloc_magic") {
        return AllocMagic{ref_field(j, "ref"), angle_field(j, "theta")};
    }
    if (op == "alloc_work") {
        return AllocWork{ref_field(j, "ref")};
    }
    if (op == "release_work") {
        return ReleaseWork{ref_field(j, "ref")};
    }
    if (op == "cpauli") {
        const auto letter = j.at("letter").get<std::string>();
        if (letter.size() != 1) {
            throw ParseError("bad Pauli letter '" + letter + "'");
        }
        return CPauli{ref_field(j, "control"), ref_field(j, "target"), pauli_letter_from_char(letter[0])};
    }
    if (op == "ancilla_cx") {
        return AncillaCX{ref_field(j, "control"), ref_field(j, "target")};
    }
    if (op == "clifford") {
        return SingleClifford{ref_field(j, "target"), clifford_from_name(j.at("gate").get<std::string>())};
    }
    if (op == "measure_rotated") {
        return MeasureRotated{ref_field(j, "ancilla"), angle_field(j, "angle"),
                              PauliString::from_str(j.at("byproduct").get<std::string>())};
    }
    if (op == "measure_x") {
        return MeasureX{ref_field(j, "ancilla")};
    }
    if (op == "rotation") {
        return Rotation{PauliString::from_str(j.at("pauli").get<std::string>()), angle_field(j, "angle")};
    }
    if (op == "controlled") {
        ControlledBlock block;
        for (const auto &c : j.at("controls")) {
            block.controls.push_back({ref_field(c, "ref"), c.at("key").get<int>() != 0});
        }
        for (const auto &b : j.at("body")) {
            block.body.push_back(body_from_json(b));
        }
        return block;
    }
    throw ParseError("unknown op '" + op + "'");
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

InputFormat detect_format(const std::filesystem::path &path) {
    const auto ext = lower(path.extension().string());
    if (ext == ".mtx" || ext == ".mm") {
        return InputFormat::MatrixMarket;
    }
    if (ext == ".json") {
        return InputFormat::Json;
    }
    return InputFormat::PauliText;
}

SparseHamiltonian read_matrix_market(std::istream &in) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) {
        throw ParseError("empty MatrixMarket input", 1);
    }
    ++lineno;
    std::istringstream banner(lower(line));
    std::string tag, object, layout, field, symmetry;
    banner >> tag >> object >> layout >> field >> symmetry;
    if (tag != "%%matrixmarket" || object != "matrix") {
        throw ParseError("missing %%MatrixMarket matrix banner", lineno);
    }
    if (layout != "coordinate") {
        throw ParseError("only coordinate layout is supported", lineno);
    }
    const bool is_complex = field == "complex";
    if (!is_complex && field != "real" && field != "integer") {
        throw ParseError("unsupported field '" + field + "'", lineno);
    }
    if (symmetry != "general" && symmetry != "symmetric" && symmetry != "hermitian") {
        throw ParseError("unsupported symmetry '" + symmetry + "'", lineno);
    }

    std::uint64_t rows = 0, cols = 0, nnz = 0;
    bool have_size = false;
    std::uint64_t seen = 0;
    SparseHamiltonian h;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '%') {
            continue;
        }
        std::istringstream ls(line);
        if (!have_size) {
            if (!(ls >> rows >> cols >> nnz)) {
                throw ParseError("expected 'rows cols nnz'", lineno);
            }
            if (rows != cols) {
                throw ParseError("matrix is not square", lineno);
            }
            h = SparseHamiltonian(qubits_for_dimension(rows, lineno));
            have_size = true;
            continue;
        }
        std::uint64_t i = 0, j = 0;
        double re = 0.0, im = 0.0;
        if (!(ls >> i >> j >> re) || (is_complex && !(ls >> im))) {
            throw ParseError("malformed entry", lineno);
        }
        std::string extra;
        if (ls >> extra) {
            throw ParseError("trailing text '" + extra + "'", lineno);
        }
        if (i < 1 || j < 1 || i > rows || j > cols) {
            throw ParseError("index out of range", lineno);
        }
        if (!std::isfinite(re) || !std::isfinite(im)) {
            throw ParseError("non-finite value", lineno);
        }
        if (symmetry == "symmetric" && i != j && im != 0.0) {
            throw ParseError("complex symmetric matrix is not Hermitian", lineno);
        }
        if (symmetry != "general" && i < j) {
            throw ParseError("symmetric storage lists the lower triangle only", lineno);
        }
        add_entry(h, i - 1, j - 1, {re, im}, lineno);
        ++seen;
    }
    if (!have_size) {
        throw ParseError("missing size line", lineno);
    }
    if (seen != nnz) {
        throw ParseError("expected " + std::to_string(nnz) + " entries, found " + std::to_string(seen), lineno);
    }
    return h;
}

SparseHamiltonian read_sparse_json(std::istream &in) {
    json j;
    try {
        j = json::parse(read_all(in));
    } catch (const json::parse_error &e) {
        throw ParseError(e.what());
    }
    try {
        const auto dim = j.at("dimension").get<std::uint64_t>();
        SparseHamiltonian h(qubits_for_dimension(dim, 0));
        std::size_t k = 0;
        for (const auto &e : j.at("entries")) {
            ++k;
            if (!e.is_array() || e.size() < 3 || e.size() > 4) {
                throw ParseError("entry " + std::to_string(k) + " must be [row, col, re] or [row, col, re, im]");
            }
            const auto row = e[0].get<std::uint64_t>(), col = e[1].get<std::uint64_t>();
            if (row >= dim || col >= dim) {
                throw ParseError("entry " + std::to_string(k) + " index out of range");
            }
            const std::complex<double> v(e[2].get<double>(), e.size() == 4 ? e[3].get<double>() : 0.0);
            try {
                h.add(row, col, v);
            } catch (const std::exception &ex) {
                throw ParseError("entry " + std::to_string(k) + ": " + ex.what());
            }
        }
        return h;
    } catch (const json::exception &e) {
        throw ParseError(e.what());
    }
}

PauliTermList read_pauli_text(std::istream &in) {
    PauliTermList list;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = line.substr(0, line.find('#'));
        std::istringstream ls(line);
        std::string coeff_text, letters, extra;
        if (!(ls >> coeff_text)) {
            continue;
        }
        if (!(ls >> letters)) {
            throw ParseError("expected 'coeff pauli_string'", lineno);
        }
        if (ls >> extra) {
            throw ParseError("trailing text '" + extra + "'", lineno);
        }
        double c = 0.0;
        const auto [ptr, ec] = std::from_chars(coeff_text.data(), coeff_text.data() + coeff_text.size(), c);
        if (ec != std::errc() || ptr != coeff_text.data() + coeff_text.size() || !std::isfinite(c)) {
            throw ParseError("bad coefficient '" + coeff_text + "'", lineno);
        }
        if (!list.terms.empty() && letters.size() != list.num_qubits()) {
            throw ParseError("string width " + std::to_string(letters.size()) + " differs from " +
                                 std::to_string(list.num_qubits()),
                             lineno);
        }
        PauliString p(letters.size());
        for (std::size_t q = 0; q < letters.size(); ++q) {
            const char ch = static_cast<char>(std::toupper(static_cast<unsigned char>(letters[q])));
            if (ch != 'I' && ch != 'X' && ch != 'Y' && ch != 'Z') {
                throw ParseError(std::string("bad Pauli letter '") + letters[q] + "'", lineno);
            }
            p.set_letter(q, pauli_letter_from_char(ch));
        }
        list.terms.push_back({c, p});
    }
    if (list.terms.empty()) {
        throw ParseError("no Pauli terms", lineno);
    }
    return list;
}

std::size_t HamiltonianInput::num_qubits() const {
    return sparse ? sparse->num_qubits() : pauli->num_qubits();
}

HamiltonianInput read_hamiltonian(const std::filesystem::path &path) {
    auto in = open_input(path);
    HamiltonianInput out;
    out.format = detect_format(path);
    switch (out.format) {
        case InputFormat::MatrixMarket:
            out.sparse = read_matrix_market(in);
            break;
        case InputFormat::Json:
            out.sparse = read_sparse_json(in);
            break;
        case InputFormat::PauliText:
            out.pauli = read_pauli_text(in);
            break;
    }
    return out;
}

std::string program_to_json(const QGateProgram &program) {
    json instructions = json::array();
    for (const auto &inst : program.instructions) {
        instructions.push_back(instruction_to_json(inst));
    }
    const json j{{"format", "qgate-program"},
                 {"version", kProgramSchemaVersion},
                 {"name", program.name},
                 {"source", program.source},
                 {"n_logical", program.n_logical},
                 {"n_work", program.n_work},
                 {"global_phase", program.global_phase},
                 {"instructions", instructions}};
    return j.dump(2) + "\n";
}

QGateProgram program_from_json(std::string_view text) {
    try {
        const json j = json::parse(text);
        if (j.value("format", std::string()) != "qgate-program") {
            throw ParseError("not a qgate program document");
        }
        if (j.at("version").get<int>() != kProgramSchemaVersion) {
            throw ParseError("unsupported program schema version " + j.at("version").dump());
        }
        QGateProgram p;
        p.name = j.value("name", std::string());
        p.source = j.value("source", std::string());
        p.n_logical = j.at("n_logical").get<std::size_t>();
        p.n_work = j.at("n_work").get<std::size_t>();
        p.global_phase = j.at("global_phase").get<double>();
        std::size_t k = 0;
        for (const auto &inst : j.at("instructions")) {
            try {
                p.instructions.push_back(instruction_from_json(inst));
            } catch (const ParseError &) {
                throw;
            } catch (const std::exception &e) {
                throw ParseError("instruction " + std::to_string(k) + ": " + e.what());
            }
            ++k;
        }
        return p;
    } catch (const json::exception &e) {
        throw ParseError(e.what());
    }
}

QGateProgram read_program(const std::filesystem::path &path) {
    auto in = open_input(path);
    return program_from_json(read_all(in));
}

namespace {

const std::vector<std::pair<const char *, std::size_t CostReport::*>> &cost_fields() {
    static const std::vector<std::pair<const char *, std::size_t CostReport::*>> kFields{
        {"gate_ancillas", &CostReport::gate_ancillas},
        {"magic_states", &CostReport::magic_states},
        {"entangling_gates", &CostReport::entangling_gates},
        {"ancilla_ancilla_gates", &CostReport::ancilla_ancilla_gates},
        {"work_qubits", &CostReport::work_qubits},
        {"rotations", &CostReport::rotations},
        {"toffoli_count", &CostReport::toffoli_count},
        {"controlled_blocks", &CostReport::controlled_blocks},
    };
    return kFields;
}

}  // namespace

std::string cost_to_json(const CostReport &report) {
    json j = json::object();
    for (const auto &[name, field] : cost_fields()) {
        j[name] = report.*field;
    }
    return j.dump(2) + "\n";
}

std::string cost_to_csv(const CostReport &report) {
    std::string header, values;
    for (const auto &[name, field] : cost_fields()) {
        header += (header.empty() ? "" : ",") + std::string(name);
        values += (values.empty() ? "" : ",") + std::to_string(report.*field);
    }
    return header + "\n" + values + "\n";
}

std::string scaling_csv(const std::vector<ScalingRow> &rows) {
    std::string out = "tau,order,one_minus_F,frobenius\n";
    for (const auto &r : rows) {
        const double mean =
            r.fidelity.empty() ? 1.0
                               : std::accumulate(r.fidelity.begin(), r.fidelity.end(), 0.0) / double(r.fidelity.size());
        out += std::to_string(r.steps) + "," + std::to_string(r.order) + "," + format_double(1.0 - mean) + "," +
               format_double(r.frobenius) + "\n";
    }
    return out;
}

std::string fidelity_csv(const std::vector<FidelityPoint> &points) {
    std::string out = "tau,order,one_minus_F,frobenius\n";
    for (const auto &p : points) {
        out += std::to_string(p.steps) + "," + std::to_string(p.order) + "," + format_double(p.one_minus_f) + "," +
               format_double(p.frobenius) + "\n";
    }
    return out;
}

std::string histogram_csv(const PhaseEstimate &estimate) {
    std::string out = "bitstring,count\n";
    for (const auto &[bits, count] : estimate.histogram) {
        out += bits + "," + std::to_string(count) + "\n";
    }
    return out;
}

std::string sweep_csv(const std::vector<SweepRow> &rows) {
    std::string out = "delta,theta_hat,theta_exact\n";
    for (const auto &r : rows) {
        out += format_double(r.delta) + "," + format_double(r.theta_hat) + "," + format_double(r.theta_exact) + "\n";
    }
    return out;
}

StateVector read_state_csv(std::istream &in) {
    std::vector<std::pair<std::uint64_t, std::complex<double>>> entries;
    std::string line;
    std::size_t lineno = 0;
    std::uint64_t max_index = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos || (lineno == 1 && line.rfind("index", 0) == 0)) {
            continue;
        }
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        std::uint64_t k = 0;
        double re = 0.0, im = 0.0;
        if (!(ls >> k >> re >> im)) {
            throw ParseError("expected 'index,re,im'", lineno);
        }
        max_index = std::max(max_index, k);
        entries.emplace_back(k, std::complex<double>(re, im));
    }
    if (entries.empty()) {
        throw ParseError("empty state file", lineno);
    }
    std::size_t n = 0;
    while ((std::uint64_t{1} << n) <= max_index) {
        ++n;
    }
    n = std::max<std::size_t>(n, 1);
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
    for (const auto &[k, v] : entries) {
        amps[static_cast<Eigen::Index>(k)] = v;
    }
    const double norm = amps.norm();
    if (norm == 0.0) {
        throw ParseError("state has zero norm");
    }
    return StateVector::from_amplitudes(amps / norm);
}

std::string manifest_to_json(const RunManifest &m) {
    json params = json::object();
    for (const auto &[k, v] : m.parameters) {
        params[k] = v;
    }
    json j{{"command", m.command},
           {"inputs", m.inputs},
           {"tool_version", m.tool_version},
           {"parameters", params},
           {"outputs", m.outputs}};
    j["seed"] = m.seed ? json(*m.seed) : json(nullptr);
    return j.dump(2) + "\n";
}

void atomic_write(const std::filesystem::path &path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace qgate::io
