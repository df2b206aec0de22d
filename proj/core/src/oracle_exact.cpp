#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "nanoeit/error.hpp"
#include "nanoeit/modes.hpp"
#include "nanoeit/oracle.hpp"

namespace nanoeit {

namespace {

struct SpinOperators {
    std::size_t dim = 0;
    std::vector<double> sz;  // diagonal of Σ_k s_k^z
    struct Entry {
        std::size_t row;
        std::size_t col;
        double value;
    };
    std::vector<Entry> sx;  // every nonzero of Σ_k s_k^x (symmetric)
};

SpinOperators tensor_product_spins(int n) {
    SpinOperators ops;
    ops.dim = std::size_t{1} << n;
    ops.sz.resize(ops.dim);
    for (std::size_t s = 0; s < ops.dim; ++s) {
        int up = 0;
        for (int k = 0; k < n; ++k) up += static_cast<int>((s >> k) & 1U);
        ops.sz[s] = static_cast<double>(2 * up - n);
        for (int k = 0; k < n; ++k) ops.sx.push_back({s ^ (std::size_t{1} << k), s, 1.0});
    }
    return ops;
}

// |J = N/2, M>, index m = M + J. Σ s^z = 2 J_z and Σ s^x = J+ + J-.
SpinOperators dicke_spins(int n) {
    SpinOperators ops;
    ops.dim = static_cast<std::size_t>(n) + 1;
    const double j = 0.5 * n;
    for (std::size_t m = 0; m < ops.dim; ++m) {
        const double mz = static_cast<double>(m) - j;
        ops.sz.push_back(2.0 * mz);
        if (m + 1 < ops.dim) {
            const double raise = std::sqrt(j * (j + 1.0) - mz * (mz + 1.0));
            ops.sx.push_back({m + 1, m, raise});
            ops.sx.push_back({m, m + 1, raise});
        }
    }
    return ops;
}

void check_model(const ExactModel& model) {
    if (model.n_spins < 1 || model.n_spins > kMaxExactSpins) {
        fail(ErrorKind::InvalidArgument, "exact model supports 1..8 spins");
    }
    if (model.resonator_omega.empty() || model.resonator_omega.size() > 2 ||
        model.couplings.size() != model.resonator_omega.size()) {
        fail(ErrorKind::InvalidArgument, "exact model needs one or two resonators with couplings");
    }
    if (model.boson_cutoff < 1) fail(ErrorKind::InvalidArgument, "boson cutoff must be >= 1");
    if (model.dimension() > kMaxDenseDimension) {
        fail(ErrorKind::Resource, "Hilbert space exceeds the dense-solver budget");
    }
}

}  // namespace

ExactModel ExactModel::from_system(const SystemParams& system, int boson_cutoff, SpinBasis basis) {
    ExactModel m;
    m.n_spins = system.n_spins();
    for (const auto& r : system.resonators()) m.resonator_omega.push_back(r.omega);
    m.couplings.assign(system.couplings().begin(), system.couplings().end());
    m.boson_cutoff = boson_cutoff;
    m.basis = basis;
    return m;
}

std::size_t ExactModel::dimension() const {
    std::size_t spin = basis == SpinBasis::full ? (std::size_t{1} << std::min(n_spins, 62))
                                                : static_cast<std::size_t>(n_spins) + 1;
    std::size_t dim = spin;
    for (std::size_t j = 0; j < resonator_omega.size(); ++j) {
        dim *= static_cast<std::size_t>(boson_cutoff) + 1;
    }
    return dim;
}

std::vector<double> exact_hamiltonian(const ExactModel& model) {
    check_model(model);
    const SpinOperators spins =
        model.basis == SpinBasis::full ? tensor_product_spins(model.n_spins) : dicke_spins(model.n_spins);
    const std::size_t levels = static_cast<std::size_t>(model.boson_cutoff) + 1;
    const std::size_t modes = model.resonator_omega.size();
    const std::size_t dim = model.dimension();
    std::vector<double> h(dim * dim, 0.0);

    // Index = spin + spin_dim * b with boson label b = n1 + levels * n2.
    std::vector<std::size_t> boson_step(modes, 1);
    for (std::size_t j = 1; j < modes; ++j) boson_step[j] = boson_step[j - 1] * levels;
    const std::size_t boson_states = dim / spins.dim;
    for (std::size_t b = 0; b < boson_states; ++b) {
        std::vector<std::size_t> occ(modes);
        std::size_t rest = b;
        for (std::size_t j = 0; j < modes; ++j) {
            occ[j] = rest % levels;
            rest /= levels;
        }
        double boson_energy = 0.0;
        for (std::size_t j = 0; j < modes; ++j) boson_energy += model.resonator_omega[j] * occ[j];

        for (std::size_t s = 0; s < spins.dim; ++s) {
            const std::size_t i = s + spins.dim * b;
            h[i * dim + i] = boson_energy + 0.5 * spins.sz[s];
        }
        for (std::size_t j = 0; j < modes; ++j) {
            if (occ[j] + 1 >= levels) continue;
            const double amp = 0.5 * model.couplings[j] * std::sqrt(static_cast<double>(occ[j] + 1));
            const std::size_t raised = b + boson_step[j];
            for (const auto& e : spins.sx) {
                const std::size_t lo = e.col + spins.dim * b;
                const std::size_t hi = e.row + spins.dim * raised;
                h[hi * dim + lo] += amp * e.value;
                h[lo * dim + hi] += amp * e.value;
            }
        }
    }
    return h;
}

std::vector<double> exact_spectrum(const ExactModel& model) {
    const std::vector<double> h = exact_hamiltonian(model);
    const auto dim = static_cast<Eigen::Index>(model.dimension());
    const Eigen::Map<const Eigen::MatrixXd> matrix(h.data(), dim, dim);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        fail(ErrorKind::Instability, "dense eigensolver did not converge");
    }
    std::vector<double> out(solver.eigenvalues().begin(), solver.eigenvalues().end());
    std::sort(out.begin(), out.end());
    return out;
}

double bosonization_error(const ExactModel& model, int excitation_level) {
    if (excitation_level < 1 || excitation_level > 2) {
        fail(ErrorKind::InvalidArgument, "excitation level must be 1 or 2");
    }
    ExactModel symmetric = model;
    symmetric.basis = SpinBasis::symmetric;
    const std::vector<double> energies = exact_spectrum(symmetric);

    std::vector<OscillatorParams> resonators;
    for (double w : model.resonator_omega) resonators.push_back({w, 0.0});
    const SystemParams bosonized({1.0, 0.0}, resonators, model.couplings, model.n_spins, 0.0);
    const ModeSet modes = eigenfrequencies(bosonized);
    std::vector<double> normal;
    for (double x : modes.squared_frequencies) normal.push_back(std::sqrt(x));

    std::vector<double> single = normal;
    std::vector<double> pairs;
    for (std::size_t a = 0; a < normal.size(); ++a) {
        for (std::size_t b = a; b < normal.size(); ++b) pairs.push_back(normal[a] + normal[b]);
    }
    std::sort(single.begin(), single.end());
    std::sort(pairs.begin(), pairs.end());
    if (pairs.front() <= single.back()) {
        fail(ErrorKind::Precondition, "excitation manifolds overlap at this coupling");
    }

    const std::vector<double>& targets = excitation_level == 1 ? single : pairs;
    const std::size_t offset = excitation_level == 1 ? 1 : 1 + single.size();
    if (energies.size() < offset + targets.size()) {
        fail(ErrorKind::Precondition, "truncated space too small for the requested manifold");
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < targets.size(); ++k) {
        const double gap = energies[offset + k] - energies[0];
        worst = std::max(worst, std::abs(gap - targets[k]) / targets[k]);
    }
    return worst;
}

}  // namespace nanoeit
