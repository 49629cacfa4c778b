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

#include "qgate/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "qgate/errors.hpp"
#include "qgate/executor.hpp"

namespace qgate {

namespace {

using std::numbers::pi;

std::string bits(std::uint64_t value, std::size_t width) {
    std::string out(width, '0');
    for (std::size_t k = 0; k < width; ++k) {
        if ((value >> (width - 1 - k)) & 1u) {
            out[k] = '1';
        }
    }
    return out;
}

std::uint64_t reverse_bits(std::uint64_t value, std::size_t width) {
    std::uint64_t out = 0;
    for (std::size_t k = 0; k < width; ++k) {
        out = (out << 1) | ((value >> k) & 1u);
    }
    return out;
}

Eigen::MatrixXcd inverse_fourier_matrix(std::size_t b) {
    const auto dim = Eigen::Index{1} << b;
    Eigen::MatrixXcd f(dim, dim);
    const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
    for (Eigen::Index k = 0; k < dim; ++k) {
        for (Eigen::Index y = 0; y < dim; ++y) {
            const double turns = static_cast<double>((k * y) % dim) / static_cast<double>(dim);
            f(k, y) = std::polar(norm, -2 * pi * turns);
        }
    }
    return f;
}

}  // namespace

PauliTermList H2TwoQubitModel::terms() const {
    PauliTermList list;
    list.terms = {
        {alpha, PauliString::from_str("II")}, {beta, PauliString::from_str("ZI")},
        {gamma, PauliString::from_str("IZ")}, {delta, PauliString::from_str("ZZ")},
        {zeta, PauliString::from_str("XX")},
    };
    return list;
}

Eigen::MatrixXcd H2TwoQubitModel::dense() const {
    return terms().to_dense();
}

StateVector H2TwoQubitModel::initial_state() {
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(4);
    amps[1] = amps[2] = 1.0 / std::sqrt(2.0);
    return StateVector::from_amplitudes(amps);
}

EigenPair ground_state(const Eigen::MatrixXcd &h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success) {
        throw DomainError("eigendecomposition failed");
    }
    Eigen::VectorXcd v = solver.eigenvectors().col(0);
    v.normalize();
    return {solver.eigenvalues()[0], StateVector::from_amplitudes(v)};
}

std::vector<FidelityPoint> h2_fidelity_curve(const H2TwoQubitModel &model, const std::vector<std::size_t> &steps,
                                             int order, double time) {
    if (steps.empty()) {
        throw DomainError("empty Trotter-number list");
    }
    const PauliTermList terms = model.terms();
    const auto exact = hermitian_exponential_oracle(model.dense(), time);
    const StateVector psi = H2TwoQubitModel::initial_state();
    const StateVector target = StateVector::from_amplitudes(exact.matrix() * psi.amplitudes());
    std::vector<FidelityPoint> out;
    for (std::size_t tau : steps) {
        const QGateProgram prog = compile_trotter(terms, time, order, tau);
        const auto result = execute(prog, psi, ExecMode::PostselectZero);
        FidelityPoint point;
        point.steps = tau;
        point.order = order;
        point.one_minus_f = std::max(0.0, 1.0 - fidelity(result.final_state, target));
        point.frobenius = frobenius_distance(program_unitary(prog), exact.matrix());
        out.push_back(point);
    }
    return out;
}

std::vector<ScalingRow> trotter_scaling_study(const SparseHamiltonian &h, double delta,
                                              const std::vector<std::size_t> &steps, const std::vector<int> &orders,
                                              CompileMethod method) {
    if (h.num_qubits() > kScalingMaxQubits) {
        throw ResourceError("scaling study reconstructs full unitaries; limited to " +
                            std::to_string(kScalingMaxQubits) + " qubits");
    }
    const EvolutionSource source(h);
    const Eigen::MatrixXcd exact = hermitian_exponential_oracle(source.dense(), delta).matrix();
    std::vector<ScalingRow> rows;
    for (int order : orders) {
        for (std::size_t tau : steps) {
            const Eigen::MatrixXcd u = program_unitary(source.compile(delta, method, order, tau));
            ScalingRow row;
            row.order = order;
            row.steps = tau;
            row.frobenius = frobenius_distance(u, exact);
            for (Eigen::Index c = 0; c < u.cols(); ++c) {
                row.fidelity.push_back(std::norm(exact.col(c).dot(u.col(c))));
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

double loglog_slope(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw DomainError("slope fit needs two or more matching points");
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto n = static_cast<double>(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k] <= 0 || y[k] <= 0) {
            throw DomainError("log-log fit needs positive values");
        }
        const double lx = std::log(x[k]), ly = std::log(y[k]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

EvolutionSource::EvolutionSource(SparseHamiltonian h)
    : n_(h.num_qubits()), dense_(h.to_dense()), sparse_(std::move(h)) {
}

EvolutionSource::EvolutionSource(PauliTermList h) : n_(h.num_qubits()), dense_(h.to_dense()), pauli_(std::move(h)) {
    if (!pauli_->is_hermitian()) {
        throw DomainError("Pauli Hamiltonian is not Hermitian");
    }
}

QGateProgram EvolutionSource::compile(double time, CompileMethod method, int order, std::size_t steps) const {
    if (method == CompileMethod::Pauli) {
        return compile_trotter(pauli_ ? *pauli_ : sparse_to_pauli_terms(*sparse_), time, order, steps);
    }
    if (sparse_) {
        return compile_sparse(*sparse_, time, order, steps);
    }
    return compile_sparse(SparseHamiltonian::from_dense(dense_), time, order, steps);
}

QGateProgram compile_inverse_qft(std::size_t n, std::size_t b) {
    if (b == 0 || b > n) {
        throw DomainError("inverse QFT register must have 1..n qubits");
    }
    struct Op {
        std::size_t a, c;
        double phi;
        bool hadamard;
    };
    // Forward QFT without swaps, with qubit labels mirrored.
    std::vector<Op> forward;
    for (std::size_t i = 0; i < b; ++i) {
        forward.push_back({b - 1 - i, 0, 0.0, true});
        for (std::size_t j = i + 1; j < b; ++j) {
            forward.push_back({b - 1 - i, b - 1 - j, 2 * pi / std::ldexp(1.0, static_cast<int>(j - i + 1)), false});
        }
    }
    ProgramBuilder builder(n, "inverse_qft");
    for (auto it = forward.rbegin(); it != forward.rend(); ++it) {
        if (it->hadamard) {
            builder.clifford(QubitRef::logical(it->a), CliffordKind::H);
            continue;
        }
        const RotationSet cp = controlled_phase_rotations(n, {{it->c, true}}, {it->a}, -it->phi);
        for (const auto &r : cp.rotations) {
            builder.pauli_rotation(r.string, r.angle);
        }
        builder.add_global_phase(cp.global_phase);
    }
    return std::move(builder).build();
}

PhaseEstimate qpe(const EvolutionSource &source, const StateVector &eigenstate, const QPEConfig &config) {
    const std::size_t n = source.num_qubits();
    const std::size_t b = config.b_qubits;
    if (b == 0 || config.shots == 0) {
        throw DomainError("QPE needs at least one b-register qubit and one shot");
    }
    if (eigenstate.num_qubits() != n) {
        throw DimensionError("eigenstate width does not match the Hamiltonian");
    }
    if (std::abs(eigenstate.norm() - 1.0) > 1e-8) {
        throw DomainError("eigenstate is not normalized");
    }
    if (b + n > kQpeMaxQubits) {
        throw ResourceError("QPE register of " + std::to_string(b + n) + " qubits exceeds the simulator limit");
    }
    const std::size_t total = b + n;
    const double time = config.delta * config.scale;

    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(Eigen::Index{1} << total);
    amps.head(eigenstate.amplitudes().size()) = eigenstate.amplitudes();
    StateVector state = StateVector::from_amplitudes(amps, 1e-8);
    for (std::size_t q = 0; q < b; ++q) {
        state.apply(Gate1::h(), q);
    }

    std::vector<std::size_t> system(n);
    for (std::size_t k = 0; k < n; ++k) {
        system[k] = b + k;
    }
    if (config.path == EvolutionPath::Native) {
        Eigen::MatrixXcd power = hermitian_exponential_oracle(source.dense(), time).matrix();
        for (std::size_t j = 0; j < b; ++j) {
            state.apply_dense(system, power, {{b - 1 - j, true}});
            power = (power * power).eval();
        }
    } else {
        const QGateProgram wide = embed(source.compile(time, config.method, config.order, config.steps), total, b);
        for (std::size_t j = 0; j < b; ++j) {
            const QGateProgram cu = add_control(wide, b - 1 - j);
            for (std::uint64_t r = 0; r < (std::uint64_t{1} << j); ++r) {
                state = execute(cu, state, ExecMode::PostselectZero).final_state;
            }
        }
    }

    std::vector<std::size_t> reg(b);
    for (std::size_t k = 0; k < b; ++k) {
        reg[k] = k;
    }
    if (config.compiled_qft) {
        state = execute(compile_inverse_qft(total, b), state, ExecMode::PostselectZero).final_state;
    } else {
        state.apply_dense(reg, inverse_fourier_matrix(b));
    }

    const std::uint64_t nb = std::uint64_t{1} << b;
    PhaseEstimate est;
    est.probabilities.assign(nb, 0.0);
    const auto &a = state.amplitudes();
    for (Eigen::Index idx = 0; idx < a.size(); ++idx) {
        std::uint64_t y = static_cast<std::uint64_t>(idx) >> n;
        if (config.compiled_qft) {
            y = reverse_bits(y, b);
        }
        est.probabilities[y] += std::norm(a[idx]);
    }
    std::mt19937_64 rng(config.seed);
    std::discrete_distribution<std::uint64_t> dist(est.probabilities.begin(), est.probabilities.end());
    std::vector<std::size_t> counts(nb, 0);
    for (std::size_t s = 0; s < config.shots; ++s) {
        ++counts[dist(rng)];
    }
    std::uint64_t mode = 0;
    for (std::uint64_t k = 0; k < nb; ++k) {
        if (counts[k] > 0) {
            est.histogram[bits(k, b)] = counts[k];
        }
        if (counts[k] > counts[mode]) {
            mode = k;
        }
    }
    est.mode_bitstring = bits(mode, b);
    est.theta_hat = static_cast<double>(mode) / static_cast<double>(nb);
    if (time != 0.0) {
        est.energy_hat = energy_from_phase(est.theta_hat, time);
    }
    return est;
}

double phase_of_energy(double energy, double time) {
    const double turns = -energy * time / (2 * pi);
    return turns - std::floor(turns);
}

double energy_from_phase(double theta_hat, double delta) {
    if (delta == 0.0) {
        throw DomainError("energy mapping needs a nonzero evolution time");
    }
    if (!(theta_hat >= 0.0 && theta_hat < 1.0)) {
        throw DomainError("phase must lie in [0, 1)");
    }
    const double wrapped = theta_hat > 0.5 ? theta_hat - 1.0 : theta_hat;
    return -2 * pi * wrapped / delta;
}

double qpe_drift_bound(std::size_t b, double eps) {
    return std::ldexp(1.0, -static_cast<int>(b)) + std::asin(std::min(1.0, eps / 2)) / pi;
}

std::vector<SweepRow> qpe_phase_sweep(const EvolutionSource &source, const StateVector &eigenstate, double energy,
                                      const QPEConfig &config, const std::vector<double> &deltas) {
    std::vector<SweepRow> rows;
    for (double d : deltas) {
        QPEConfig c = config;
        c.delta = d;
        const PhaseEstimate est = qpe(source, eigenstate, c);
        rows.push_back({d, est.theta_hat, phase_of_energy(energy, d * config.scale)});
    }
    return rows;
}

}  // namespace qgate
