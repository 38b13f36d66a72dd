#include "cdsim/density_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cdsim {

namespace {

int qubit_count_for_dim(std::size_t dim) {
    int n = 0;
    while ((std::size_t{1} << n) < dim) ++n;
    if ((std::size_t{1} << n) != dim || dim == 0)
        throw std::invalid_argument("dimension is not a power of two");
    return n;
}

void check_qubits(const DensityState& state, const std::vector<int>& qubits) {
    std::vector<int> seen;
    for (int q : qubits) {
        if (q < 0 || q >= state.n_qubits) throw std::invalid_argument("qubit index out of range");
        if (std::find(seen.begin(), seen.end(), q) != seen.end())
            throw std::invalid_argument("repeated qubit index");
        seen.push_back(q);
    }
}

}  // namespace

DensityState density_from_statevector(const std::vector<cplx>& psi) {
    const int n = qubit_count_for_dim(psi.size());
    const int dim = 1 << n;
    DensityState state{n, ComplexMatrix(dim, dim)};
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) state.rho.at(i, j) = psi[i] * std::conj(psi[j]);
    state.rho.require_finite();
    return state;
}

void validate_density(const DensityState& state, double tol) {
    if (state.rho.rows() != state.dim() || state.rho.cols() != state.dim())
        throw std::invalid_argument("density matrix dimension does not match qubit count");
    state.rho.require_finite();
    if (hermiticity_defect(state.rho) > tol)
        throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(trace(state.rho) - cplx(1.0, 0.0)) > tol)
        throw std::invalid_argument("density matrix trace is not 1");
    const std::vector<double> eigs = hermitian_eigenvalues(state.rho);
    if (eigs.front() < -tol)
        throw std::invalid_argument("density matrix has a significantly negative eigenvalue");
}

ComplexMatrix partial_transpose(const DensityState& state, const std::vector<int>& qubits) {
    check_qubits(state, qubits);
    const int n = state.n_qubits;
    const int dim = state.dim();
    int mask = 0;
    for (int q : qubits) mask |= 1 << (n - 1 - q);

    ComplexMatrix out(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            const int rt = (r & ~mask) | (c & mask);
            const int ct = (c & ~mask) | (r & mask);
            out.at(rt, ct) = state.rho.at(r, c);
        }
    }
    return out;
}

DensityState partial_trace(const DensityState& state, const std::vector<int>& keep) {
    check_qubits(state, keep);
    const int n = state.n_qubits;
    const int k = static_cast<int>(keep.size());
    const int kept_dim = 1 << k;

    std::vector<int> traced;
    for (int q = 0; q < n; ++q)
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) traced.push_back(q);
    const int traced_dim = 1 << static_cast<int>(traced.size());

    // index = kept bits placed at their original positions | traced bits ditto
    auto assemble = [&](int kept_bits, int traced_bits) {
        int idx = 0;
        for (int j = 0; j < k; ++j)
            if ((kept_bits >> (k - 1 - j)) & 1) idx |= 1 << (n - 1 - keep[j]);
        for (std::size_t j = 0; j < traced.size(); ++j)
            if ((traced_bits >> (traced.size() - 1 - j)) & 1) idx |= 1 << (n - 1 - traced[j]);
        return idx;
    };

    DensityState out{k, ComplexMatrix(kept_dim, kept_dim)};
    for (int s = 0; s < kept_dim; ++s)
        for (int t = 0; t < kept_dim; ++t) {
            cplx sum(0.0, 0.0);
            for (int m = 0; m < traced_dim; ++m)
                sum += state.rho.at(assemble(s, m), assemble(t, m));
            out.rho.at(s, t) = sum;
        }
    return out;
}

double purity(const DensityState& state) {
    double s = 0.0;
    const int dim = state.dim();
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            s += (state.rho.at(i, j) * state.rho.at(j, i)).real();
    return s;
}

}  // namespace cdsim
