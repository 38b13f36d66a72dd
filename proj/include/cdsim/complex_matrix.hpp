#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace cdsim {

using cplx = std::complex<double>;

// Dense row-major complex matrix.  Sized for register-scale work (n <= 16 or
// so); everything is O(n^3) and unapologetic about it.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols);

    static ComplexMatrix identity(int n);
    static ComplexMatrix zero(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cplx& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    const cplx& at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

    const std::vector<cplx>& data() const { return data_; }
    std::vector<cplx>& data() { return data_; }

    // Throws std::invalid_argument if any entry is NaN or infinite.
    void require_finite() const;

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, const ComplexMatrix& a);

ComplexMatrix dagger(const ComplexMatrix& a);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
cplx trace(const ComplexMatrix& a);

// max_ij |a_ij - b_ij|
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
// max_ij |a_ij - (a^dagger)_ij|
double hermiticity_defect(const ComplexMatrix& a);
// sqrt(sum of |a_ij|^2), i != j
double offdiag_norm(const ComplexMatrix& a);

struct EigenSystem {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // column k pairs with values[k]
};

// Eigenvalues of a Hermitian matrix, ascending, via cyclic complex Jacobi
// rotations.  Input must be Hermitian to within 1e-10 (throws otherwise);
// iteration stops once the off-diagonal Frobenius norm falls below 1e-13.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);
EigenSystem hermitian_eigensystem(const ComplexMatrix& h);

// Number of eigenvalues within tol of value.
int eigenvalue_multiplicity(const std::vector<double>& eigs, double value,
                            double tol = 1e-11);

// Hermitian PSD square root via the eigensystem.  Eigenvalues in
// [-1e-10, 0) are clamped to zero; anything below -1e-10 throws.
ComplexMatrix psd_sqrt(const ComplexMatrix& rho);

}  // namespace cdsim
