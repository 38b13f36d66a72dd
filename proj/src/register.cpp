#include "cdsim/register.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cdsim {

std::string rep_name(Rep rep) { return rep == Rep::c4 ? "c4" : "c4h"; }

Rep rep_from_name(const std::string& name) {
    if (name == "c4") return Rep::c4;
    if (name == "c4h") return Rep::c4h;
    throw std::invalid_argument("unknown state name: " + name);
}

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m.at(0, 1) = 1.0;
    m.at(1, 0) = 1.0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m.at(0, 1) = cplx(0.0, -1.0);
    m.at(1, 0) = cplx(0.0, 1.0);
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m.at(0, 0) = 1.0;
    m.at(1, 1) = -1.0;
    return m;
}

ComplexMatrix gate_h() {
    const double r = 1.0 / std::sqrt(2.0);
    ComplexMatrix m(2, 2);
    m.at(0, 0) = r;
    m.at(0, 1) = r;
    m.at(1, 0) = r;
    m.at(1, 1) = -r;
    return m;
}

ComplexMatrix gate_z(double alpha) {
    ComplexMatrix m(2, 2);
    m.at(0, 0) = 1.0;
    m.at(1, 1) = std::polar(1.0, alpha);
    return m;
}

ComplexMatrix gate_x(double alpha) { return gate_h() * gate_z(alpha) * gate_h(); }

ComplexMatrix gate_cz() {
    ComplexMatrix m = ComplexMatrix::identity(4);
    m.at(3, 3) = -1.0;
    return m;
}

namespace {

// Apply a 2x2 gate to qubit q of an n-qubit statevector (qubit 0 = MSB).
void apply_gate_to_vector(std::vector<cplx>& psi, const ComplexMatrix& g, int q, int n) {
    const int bit = 1 << (n - 1 - q);
    const int dim = 1 << n;
    for (int i = 0; i < dim; ++i) {
        if (i & bit) continue;
        const cplx a0 = psi[i];
        const cplx a1 = psi[i | bit];
        psi[i] = g.at(0, 0) * a0 + g.at(0, 1) * a1;
        psi[i | bit] = g.at(1, 0) * a0 + g.at(1, 1) * a1;
    }
}

}  // namespace

std::vector<cplx> cluster_c4_vector() {
    std::vector<cplx> psi(16, cplx(0.0, 0.0));
    psi[0b0000] = 0.5;
    psi[0b0011] = 0.5;
    psi[0b1100] = 0.5;
    psi[0b1111] = -0.5;
    return psi;
}

std::vector<cplx> cluster_c4h_vector() {
    std::vector<cplx> psi = cluster_c4_vector();
    apply_gate_to_vector(psi, gate_h(), 0, 4);
    apply_gate_to_vector(psi, gate_h(), 3, 4);
    return psi;
}

std::vector<cplx> cluster_by_cz_chain() {
    std::vector<cplx> psi(16, cplx(0.25, 0.0));
    for (int pair = 0; pair < 3; ++pair) {
        const int hi = 1 << (3 - pair);      // qubit `pair`
        const int lo = 1 << (3 - pair - 1);  // qubit `pair + 1`
        for (int i = 0; i < 16; ++i)
            if ((i & hi) && (i & lo)) psi[i] = -psi[i];
    }
    return psi;
}

std::vector<cplx> cluster_vector(Rep rep) {
    return rep == Rep::c4 ? cluster_c4_vector() : cluster_c4h_vector();
}

DensityState cluster_state(Rep rep) { return density_from_statevector(cluster_vector(rep)); }

DensityState apply_single_qubit_gate(const DensityState& state, const ComplexMatrix& gate, int q) {
    if (gate.rows() != 2 || gate.cols() != 2)
        throw std::invalid_argument("single-qubit gate must be 2x2");
    if (q < 0 || q >= state.n_qubits) throw std::invalid_argument("qubit index out of range");
    if (max_abs_diff(dagger(gate) * gate, ComplexMatrix::identity(2)) > 1e-10)
        throw std::invalid_argument("gate is not unitary");

    ComplexMatrix full = ComplexMatrix::identity(1);
    for (int k = 0; k < state.n_qubits; ++k)
        full = kron(full, k == q ? gate : ComplexMatrix::identity(2));
    DensityState out{state.n_qubits, full * state.rho * dagger(full)};
    return out;
}

ComplexMatrix xy_projector(double theta, Outcome outcome) {
    if (!std::isfinite(theta)) throw std::invalid_argument("angle is not finite");
    const double sign = outcome == Outcome::plus_one ? 1.0 : -1.0;
    const cplx amp1 = sign * std::polar(1.0, theta);
    // |v> = (|0> + sign e^{i theta} |1>)/sqrt(2); projector = |v><v|
    ComplexMatrix m(2, 2);
    m.at(0, 0) = 0.5;
    m.at(0, 1) = 0.5 * std::conj(amp1);
    m.at(1, 0) = 0.5 * amp1;
    m.at(1, 1) = 0.5;
    return m;
}

MeasurementResult measure_postselect(const DensityState& state,
                                     const std::vector<MeasurementStep>& steps) {
    const int n = state.n_qubits;
    if (steps.empty()) throw std::invalid_argument("no measurement steps given");
    std::vector<int> measured;
    for (const MeasurementStep& st : steps) {
        if (st.qubit < 0 || st.qubit >= n) throw std::invalid_argument("qubit index out of range");
        if (!std::isfinite(st.theta)) throw std::invalid_argument("angle is not finite");
        if (std::find(measured.begin(), measured.end(), st.qubit) != measured.end())
            throw std::invalid_argument("repeated measurement qubit");
        measured.push_back(st.qubit);
    }

    // Sort measured qubits ascending, carrying their single-qubit eigenvector
    // amplitudes (w0, w1) with them.
    std::vector<std::pair<int, std::array<cplx, 2>>> axes;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (const MeasurementStep& st : steps) {
        const double sign = st.outcome == Outcome::plus_one ? 1.0 : -1.0;
        axes.push_back({st.qubit, {cplx(inv_sqrt2, 0.0), sign * std::polar(inv_sqrt2, st.theta)}});
    }
    std::sort(axes.begin(), axes.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<int> keep;
    for (int q = 0; q < n; ++q)
        if (std::find(measured.begin(), measured.end(), q) == measured.end()) keep.push_back(q);

    const int k = static_cast<int>(axes.size());
    const int m_dim = 1 << k;
    const int kept_dim = 1 << static_cast<int>(keep.size());

    // Product-state amplitudes over the measured subsystem, and the matrix
    // index each measured configuration occupies.
    std::vector<cplx> w(m_dim);
    std::vector<int> m_index(m_dim, 0);
    for (int mu = 0; mu < m_dim; ++mu) {
        cplx amp(1.0, 0.0);
        int idx = 0;
        for (int j = 0; j < k; ++j) {
            const int b = (mu >> (k - 1 - j)) & 1;
            amp *= axes[j].second[b];
            if (b) idx |= 1 << (n - 1 - axes[j].first);
        }
        w[mu] = amp;
        m_index[mu] = idx;
    }
    std::vector<int> k_index(kept_dim, 0);
    for (int s = 0; s < kept_dim; ++s) {
        int idx = 0;
        for (std::size_t j = 0; j < keep.size(); ++j)
            if ((s >> (keep.size() - 1 - j)) & 1) idx |= 1 << (n - 1 - keep[j]);
        k_index[s] = idx;
    }

    // <w| rho |w> contracted over the measured qubits only:
    // rho_kept[s][t] = sum_{mu,nu} conj(w[mu]) w[nu] rho[mu|s][nu|t]
    DensityState out{static_cast<int>(keep.size()), ComplexMatrix(kept_dim, kept_dim)};
    for (int s = 0; s < kept_dim; ++s) {
        for (int t = 0; t < kept_dim; ++t) {
            cplx sum(0.0, 0.0);
            for (int mu = 0; mu < m_dim; ++mu) {
                const cplx wl = std::conj(w[mu]);
                const int row = m_index[mu] | k_index[s];
                for (int nu = 0; nu < m_dim; ++nu)
                    sum += wl * w[nu] * state.rho.at(row, m_index[nu] | k_index[t]);
            }
            out.rho.at(s, t) = sum;
        }
    }

    double prob = 0.0;
    for (int s = 0; s < kept_dim; ++s) prob += out.rho.at(s, s).real();
    if (prob < 1e-12)
        throw std::runtime_error("measurement branch has probability below 1e-12");
    const cplx scale(1.0 / prob, 0.0);
    for (cplx& z : out.rho.data()) z *= scale;
    return MeasurementResult{std::move(out), prob};
}

ComplexMatrix ideal_logical_rotation(double t1, double t2, double t3) {
    return gate_h() * gate_z(t3) * gate_x(t2) * gate_z(t1);
}

}  // namespace cdsim
