#include "qest/matrix.hpp"

#include <cmath>

#include "qest/kernels.hpp"

namespace qest {

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diag(const std::vector<cplx>& d) {
    ComplexMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = std::conj(a_[i]);
    return r;
}

cplx ComplexMatrix::trace() const {
    require_square("trace");
    cplx t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    return std::sqrt(kernels::active().norm_sq(a_.size(), a_.data()));
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx& v : a_) m = std::max(m, std::abs(v));
    return m;
}

bool ComplexMatrix::all_finite() const {
    for (const cplx& v : a_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("operator+=: shape mismatch");
    kernels::active().axpy(a_.size(), 1.0, o.a_.data(), a_.data());
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("operator-=: shape mismatch");
    kernels::active().axpy(a_.size(), -1.0, o.a_.data(), a_.data());
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    kernels::active().scale(a_.size(), s, a_.data(), a_.data());
    return *this;
}

void ComplexMatrix::add_scaled(cplx a, const ComplexMatrix& x) {
    if (rows_ != x.rows_ || cols_ != x.cols_)
        throw std::invalid_argument("add_scaled: shape mismatch");
    kernels::active().axpy(a_.size(), a, x.a_.data(), a_.data());
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("operator*: shape mismatch");
    ComplexMatrix c(a.rows(), b.cols());
    kernels::active().matmul(a.rows(), a.cols(), b.cols(), a.data(), b.data(), c.data());
    return c;
}

HermitianCheckReport check_hermitian(const ComplexMatrix& m, double tol) {
    HermitianCheckReport rep;
    if (!m.square()) return rep;
    ComplexMatrix d = m - m.adjoint();
    rep.max_asymmetry = d.frobenius_norm();
    rep.is_hermitian = rep.max_asymmetry <= tol;
    return rep;
}

void require_hermitian(const ComplexMatrix& m, double tol, const char* what) {
    if (!m.square())
        throw std::invalid_argument(std::string(what) + ": not square");
    const double scale = std::max(1.0, m.frobenius_norm());
    if (!check_hermitian(m, tol * scale).is_hermitian)
        throw std::invalid_argument(std::string(what) + ": not Hermitian");
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return r;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dB, std::size_t dF, Keep keep) {
    if (!m.square() || m.rows() != dB * dF)
        throw std::invalid_argument("partial_trace: dimension mismatch");
    if (keep == Keep::B) {
        ComplexMatrix r(dB);
        for (std::size_t b = 0; b < dB; ++b)
            for (std::size_t b2 = 0; b2 < dB; ++b2) {
                cplx acc = 0.0;
                for (std::size_t f = 0; f < dF; ++f) acc += m(b * dF + f, b2 * dF + f);
                r(b, b2) = acc;
            }
        return r;
    }
    ComplexMatrix r(dF);
    for (std::size_t f = 0; f < dF; ++f)
        for (std::size_t f2 = 0; f2 < dF; ++f2) {
            cplx acc = 0.0;
            for (std::size_t b = 0; b < dB; ++b) acc += m(b * dF + f, b * dF + f2);
            r(f, f2) = acc;
        }
    return r;
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& x) {
    return a * x + x * a;
}

} // namespace qest
