#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qest {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major. States, unitaries and estimators are
/// square; isometries V_s are rectangular (dB*dF) x dA.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim) : rows_(dim), cols_(dim), a_(dim * dim) {}
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diag(const std::vector<cplx>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t dim() const {
        require_square("dim");
        return rows_;
    }
    bool square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    cplx* data() { return a_.data(); }
    const cplx* data() const { return a_.data(); }
    std::size_t size() const { return a_.size(); }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;

    cplx trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    bool all_finite() const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

    /// y += a * this, dimension-checked accumulation (quadrature hot path).
    void add_scaled(cplx a, const ComplexMatrix& x);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

private:
    void require_square(const char* what) const {
        if (rows_ != cols_)
            throw std::invalid_argument(std::string(what) + ": matrix is not square");
    }
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

struct HermitianCheckReport {
    double max_asymmetry = 0.0; // ||M - M^dag||_F
    bool is_hermitian = false;
};

HermitianCheckReport check_hermitian(const ComplexMatrix& m, double tol = 1e-10);
void require_hermitian(const ComplexMatrix& m, double tol, const char* what);

/// Kronecker product; the first factor owns the slow index, matching the
/// basis ordering {|0>|0>, |0>|1>, |1>|0>, |1>|1>}.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Keep { B, F };

/// Partial trace of a (dB*dF)-dimensional operator over the factor not kept.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dB, std::size_t dF, Keep keep);

/// a*x + x*a
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& x);

} // namespace qest
