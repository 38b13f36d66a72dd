#include "cdsim/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cdsim {

PairRoute pair_route(PairSpec pair) {
    std::array<int, 2> kept = {pair.j - 1, pair.k - 1};
    for (PairSpec s : supported_pairs())
        if (s == pair) {
            std::array<int, 2> measured{};
            int idx = 0;
            for (int q = 0; q < 4; ++q)
                if (q != kept[0] && q != kept[1]) measured[idx++] = q;
            return PairRoute{measured, kept, {measured[0] + 1, measured[1] + 1}};
        }
    throw std::invalid_argument("unsupported kept pair (" + std::to_string(pair.j) + "," +
                                std::to_string(pair.k) + ")");
}

const std::vector<PairSpec>& supported_pairs() {
    static const std::vector<PairSpec> pairs = {{3, 4}, {2, 4}, {2, 3}, {1, 4}};
    return pairs;
}

PairSpec pair_from_label(const std::string& label) {
    for (PairSpec s : supported_pairs())
        if (label == pair_label(s)) return s;
    throw std::invalid_argument("unsupported pair label: " + label);
}

std::string pair_label(PairSpec pair) {
    return std::to_string(pair.j) + std::to_string(pair.k);
}

DensityState dephased_cluster(Rep rep, const DephasingProfile& profile, double q) {
    const DensityState initial = q == 1.0 ? cluster_state(rep) : mixed_initial(q, rep);
    return detail::apply_dephasing_masked(initial, profile);
}

DensityState dephased_cluster(Rep rep, double p, double q) {
    return dephased_cluster(rep, DephasingProfile::uniform(p), q);
}

std::vector<MeasurementStep> rotation_steps(double t1, double t2, double t3) {
    return {{0, t1, Outcome::minus_one}, {1, t2, Outcome::minus_one}, {2, t3, Outcome::minus_one}};
}

std::vector<MeasurementStep> pair_steps(PairSpec pair, double ta, double tb) {
    const PairRoute route = pair_route(pair);
    return {{route.measured[0], ta, Outcome::minus_one},
            {route.measured[1], tb, Outcome::minus_one}};
}

DensityState rotation_output(Rep rep, double p, double t1, double t2, double t3, double q) {
    return measure_postselect(dephased_cluster(rep, p, q), rotation_steps(t1, t2, t3)).state;
}

DensityState pair_output(Rep rep, double p, PairSpec pair, double ta, double tb, double q) {
    return measure_postselect(dephased_cluster(rep, p, q), pair_steps(pair, ta, tb)).state;
}

double rotation_fidelity(Rep rep, double p, double t1, double t2, double t3, double q) {
    return state_overlap(rotation_output(rep, p, t1, t2, t3, q),
                         rotation_output(rep, 0.0, t1, t2, t3));
}

double pair_fidelity(Rep rep, double p, PairSpec pair, double ta, double tb, double q) {
    return state_overlap(pair_output(rep, p, pair, ta, tb, q),
                         pair_output(rep, 0.0, pair, ta, tb));
}

double pair_lambda(Rep rep, double p, PairSpec pair, double ta, double tb, double q) {
    return concurrence_lambda(pair_output(rep, p, pair, ta, tb, q));
}

double state_overlap(const DensityState& a, const DensityState& b) {
    if (a.n_qubits != b.n_qubits) throw std::invalid_argument("state size mismatch");
    double s = 0.0;
    const int dim = a.dim();
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) s += (a.rho.at(i, j) * b.rho.at(j, i)).real();
    return s;
}

namespace detail {

std::vector<double> dephasing_xor_factors(const DephasingProfile& profile, int n_qubits) {
    if (static_cast<int>(profile.p.size()) != n_qubits)
        throw std::invalid_argument("profile length does not match qubit count");
    const int dim = 1 << n_qubits;
    std::vector<double> root(n_qubits);
    for (int q = 0; q < n_qubits; ++q) root[q] = std::sqrt(1.0 - profile.p[q]);
    std::vector<double> factor(dim, 1.0);
    for (int mask = 1; mask < dim; ++mask) {
        const int bit = __builtin_ctz(mask);
        factor[mask] = factor[mask & (mask - 1)] * root[n_qubits - 1 - bit];
    }
    return factor;
}

std::vector<double> dephasing_xor_factors(double p, int n_qubits) {
    return dephasing_xor_factors(DephasingProfile::uniform(p, n_qubits), n_qubits);
}

MeasurementKernel::MeasurementKernel(const DensityState& base,
                                     const std::vector<MeasurementStep>& steps)
    : base_(&base) {
    const int n = base.n_qubits;
    std::vector<std::pair<int, std::array<cplx, 2>>> axes;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (const MeasurementStep& st : steps) {
        if (st.qubit < 0 || st.qubit >= n) throw std::invalid_argument("qubit index out of range");
        const double sign = st.outcome == Outcome::plus_one ? 1.0 : -1.0;
        axes.push_back({st.qubit, {cplx(inv_sqrt2, 0.0), sign * std::polar(inv_sqrt2, st.theta)}});
    }
    std::sort(axes.begin(), axes.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < axes.size(); ++i)
        if (axes[i].first == axes[i - 1].first)
            throw std::invalid_argument("repeated measurement qubit");

    std::vector<int> keep;
    for (int q = 0; q < n; ++q) {
        bool measured = false;
        for (const auto& ax : axes) measured |= ax.first == q;
        if (!measured) keep.push_back(q);
    }

    const int k = static_cast<int>(axes.size());
    m_dim_ = 1 << k;
    kept_dim_ = 1 << static_cast<int>(keep.size());

    std::vector<cplx> w(m_dim_);
    m_index_.assign(m_dim_, 0);
    for (int mu = 0; mu < m_dim_; ++mu) {
        cplx amp(1.0, 0.0);
        int idx = 0;
        for (int j = 0; j < k; ++j) {
            const int b = (mu >> (k - 1 - j)) & 1;
            amp *= axes[j].second[b];
            if (b) idx |= 1 << (n - 1 - axes[j].first);
        }
        w[mu] = amp;
        m_index_[mu] = idx;
    }
    w_outer_.assign(static_cast<std::size_t>(m_dim_) * m_dim_, cplx(0.0, 0.0));
    for (int mu = 0; mu < m_dim_; ++mu)
        for (int nu = 0; nu < m_dim_; ++nu)
            w_outer_[static_cast<std::size_t>(mu) * m_dim_ + nu] = std::conj(w[mu]) * w[nu];

    k_index_.assign(kept_dim_, 0);
    for (int s = 0; s < kept_dim_; ++s) {
        int idx = 0;
        for (std::size_t j = 0; j < keep.size(); ++j)
            if ((s >> (keep.size() - 1 - j)) & 1) idx |= 1 << (n - 1 - keep[j]);
        k_index_[s] = idx;
    }
}

double MeasurementKernel::project(const std::vector<double>& xor_factor,
                                  ComplexMatrix& out) const {
    const ComplexMatrix& rho = base_->rho;
    if (out.rows() != kept_dim_ || out.cols() != kept_dim_)
        out = ComplexMatrix(kept_dim_, kept_dim_);
    double prob = 0.0;
    for (int s = 0; s < kept_dim_; ++s) {
        for (int t = 0; t < kept_dim_; ++t) {
            cplx sum(0.0, 0.0);
            for (int mu = 0; mu < m_dim_; ++mu) {
                const int row = m_index_[mu] | k_index_[s];
                const std::size_t wrow = static_cast<std::size_t>(mu) * m_dim_;
                for (int nu = 0; nu < m_dim_; ++nu) {
                    const int col = m_index_[nu] | k_index_[t];
                    sum += w_outer_[wrow + nu] * xor_factor[row ^ col] * rho.at(row, col);
                }
            }
            out.at(s, t) = sum;
        }
        prob += out.at(s, s).real();
    }
    return prob;
}

DensityState MeasurementKernel::output(const std::vector<double>& xor_factor) const {
    int kept_qubits = 0;
    while ((1 << kept_qubits) < kept_dim_) ++kept_qubits;
    DensityState out{kept_qubits, ComplexMatrix(kept_dim_, kept_dim_)};
    const double prob = project(xor_factor, out.rho);
    if (prob < 1e-12)
        throw std::runtime_error("measurement branch has probability below 1e-12");
    const cplx scale(1.0 / prob, 0.0);
    for (cplx& z : out.rho.data()) z *= scale;
    return out;
}

std::array<ComplexMatrix, 5> MeasurementKernel::power_coefficients() const {
    std::array<ComplexMatrix, 5> coeff;
    for (ComplexMatrix& m : coeff) m = ComplexMatrix(kept_dim_, kept_dim_);
    const ComplexMatrix& rho = base_->rho;
    for (int s = 0; s < kept_dim_; ++s)
        for (int t = 0; t < kept_dim_; ++t)
            for (int mu = 0; mu < m_dim_; ++mu) {
                const int row = m_index_[mu] | k_index_[s];
                const std::size_t wrow = static_cast<std::size_t>(mu) * m_dim_;
                for (int nu = 0; nu < m_dim_; ++nu) {
                    const int col = m_index_[nu] | k_index_[t];
                    coeff[__builtin_popcount(row ^ col)].at(s, t) +=
                        w_outer_[wrow + nu] * rho.at(row, col);
                }
            }
    return coeff;
}

double MeasurementKernel::overlap(const std::vector<double>& xor_factor,
                                  const ComplexMatrix& reference) const {
    ComplexMatrix out(kept_dim_, kept_dim_);
    const double prob = project(xor_factor, out);
    if (prob < 1e-12)
        throw std::runtime_error("measurement branch has probability below 1e-12");
    double s = 0.0;
    for (int i = 0; i < kept_dim_; ++i)
        for (int j = 0; j < kept_dim_; ++j) s += (out.at(i, j) * reference.at(j, i)).real();
    return s / prob;
}

}  // namespace detail

}  // namespace cdsim
