#include "cdsim/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cdsim {

ComplexMatrix::ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    data_.assign(static_cast<std::size_t>(rows) * cols, cplx(0.0, 0.0));
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::zero(int rows, int cols) { return ComplexMatrix(rows, cols); }

void ComplexMatrix::require_finite() const {
    for (const cplx& z : data_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("matrix entry is NaN or infinite");
    }
}

static void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix shape mismatch");
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b);
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] = a.data()[i] + b.data()[i];
    return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b);
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] = a.data()[i] - b.data()[i];
    return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
    ComplexMatrix out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const cplx aik = a.at(i, k);
            if (aik == cplx(0.0, 0.0)) continue;
            for (int j = 0; j < b.cols(); ++j) out.at(i, j) += aik * b.at(k, j);
        }
    }
    return out;
}

ComplexMatrix operator*(cplx s, const ComplexMatrix& a) {
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] = s * a.data()[i];
    return out;
}

ComplexMatrix dagger(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.at(j, i) = std::conj(a.at(i, j));
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int ia = 0; ia < a.rows(); ++ia)
        for (int ja = 0; ja < a.cols(); ++ja) {
            const cplx v = a.at(ia, ja);
            if (v == cplx(0.0, 0.0)) continue;
            for (int ib = 0; ib < b.rows(); ++ib)
                for (int jb = 0; jb < b.cols(); ++jb)
                    out.at(ia * b.rows() + ib, ja * b.cols() + jb) = v * b.at(ib, jb);
        }
    return out;
}

cplx trace(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("trace of non-square matrix");
    cplx t(0.0, 0.0);
    for (int i = 0; i < a.rows(); ++i) t += a.at(i, i);
    return t;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

double hermiticity_defect(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("hermiticity of non-square matrix");
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = i; j < a.cols(); ++j)
            m = std::max(m, std::abs(a.at(i, j) - std::conj(a.at(j, i))));
    return m;
}

double offdiag_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a.at(i, j));
    return std::sqrt(s);
}

namespace {

// One cyclic complex Jacobi pass over the strict upper triangle of a working
// copy, accumulating rotations into v when v is non-null.
void jacobi_sweep(ComplexMatrix& a, ComplexMatrix* v) {
    const int n = a.rows();
    for (int p = 0; p < n - 1; ++p) {
        for (int q = p + 1; q < n; ++q) {
            const cplx apq = a.at(p, q);
            const double mag = std::abs(apq);
            if (mag < 1e-300) {
                a.at(p, q) = 0.0;
                a.at(q, p) = 0.0;
                continue;
            }
            const double app = a.at(p, p).real();
            const double aqq = a.at(q, q).real();
            const cplx phase = apq / mag;  // e^{i arg(apq)}
            const double tau = (aqq - app) / (2.0 * mag);
            // smaller-magnitude root of t^2 - 2 tau t - 1 = 0
            double t;
            if (tau >= 0.0)
                t = -1.0 / (tau + std::sqrt(1.0 + tau * tau));
            else
                t = 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
            const double c = 1.0 / std::sqrt(1.0 + t * t);
            const double s = t * c;

            // Rotation R: R_pp = c, R_pq = -s*phase, R_qp = s*conj(phase),
            // R_qq = c; apply a <- R^dagger a R.
            for (int k = 0; k < n; ++k) {
                if (k == p || k == q) continue;
                const cplx akp = a.at(k, p);
                const cplx akq = a.at(k, q);
                a.at(k, p) = c * akp + s * std::conj(phase) * akq;
                a.at(k, q) = -s * phase * akp + c * akq;
                a.at(p, k) = std::conj(a.at(k, p));
                a.at(q, k) = std::conj(a.at(k, q));
            }
            a.at(p, p) = app * c * c + 2.0 * c * s * mag + aqq * s * s;
            a.at(q, q) = app * s * s - 2.0 * c * s * mag + aqq * c * c;
            a.at(p, q) = 0.0;
            a.at(q, p) = 0.0;

            if (v) {
                for (int k = 0; k < n; ++k) {
                    const cplx vkp = v->at(k, p);
                    const cplx vkq = v->at(k, q);
                    v->at(k, p) = c * vkp + s * std::conj(phase) * vkq;
                    v->at(k, q) = -s * phase * vkp + c * vkq;
                }
            }
        }
    }
}

EigenSystem jacobi_diagonalize(const ComplexMatrix& h, bool want_vectors) {
    if (h.rows() != h.cols()) throw std::invalid_argument("eigensystem of non-square matrix");
    h.require_finite();
    if (hermiticity_defect(h) > 1e-10)
        throw std::invalid_argument("eigensystem input is not Hermitian");

    const int n = h.rows();
    // Symmetrize so the iteration sees an exactly Hermitian matrix.
    ComplexMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a.at(i, j) = 0.5 * (h.at(i, j) + std::conj(h.at(j, i)));

    ComplexMatrix v = ComplexMatrix::identity(n);
    const int max_sweeps = 60;
    int sweep = 0;
    while (offdiag_norm(a) >= 1e-13 && sweep < max_sweeps) {
        jacobi_sweep(a, want_vectors ? &v : nullptr);
        ++sweep;
    }
    if (offdiag_norm(a) >= 1e-13)
        throw std::runtime_error("Jacobi iteration failed to converge");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&a](int i, int j) { return a.at(i, i).real() < a.at(j, j).real(); });

    EigenSystem out;
    out.values.resize(n);
    for (int k = 0; k < n; ++k) out.values[k] = a.at(order[k], order[k]).real();
    if (want_vectors) {
        out.vectors = ComplexMatrix(n, n);
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i) out.vectors.at(i, k) = v.at(i, order[k]);
    }
    return out;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
    return jacobi_diagonalize(h, false).values;
}

EigenSystem hermitian_eigensystem(const ComplexMatrix& h) {
    return jacobi_diagonalize(h, true);
}

int eigenvalue_multiplicity(const std::vector<double>& eigs, double value, double tol) {
    int count = 0;
    for (double e : eigs)
        if (std::abs(e - value) <= tol) ++count;
    return count;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& rho) {
    EigenSystem es = hermitian_eigensystem(rho);
    const int n = rho.rows();
    for (double& lam : es.values) {
        if (lam < -1e-10)
            throw std::invalid_argument("psd_sqrt: eigenvalue " + std::to_string(lam) +
                                        " is significantly negative");
        lam = std::max(lam, 0.0);
    }
    ComplexMatrix out(n, n);
    for (int k = 0; k < n; ++k) {
        const double r = std::sqrt(es.values[k]);
        if (r == 0.0) continue;
        for (int i = 0; i < n; ++i) {
            const cplx vik = es.vectors.at(i, k);
            if (vik == cplx(0.0, 0.0)) continue;
            for (int j = 0; j < n; ++j)
                out.at(i, j) += r * vik * std::conj(es.vectors.at(j, k));
        }
    }
    return out;
}

}  // namespace cdsim
