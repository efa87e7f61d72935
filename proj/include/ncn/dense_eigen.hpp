#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncn {

/// Row-major dense square matrix.
class DenseMatrix {
public:
    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    std::size_t order() const { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    double inf_norm() const;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// Thrown when the shifted QR iteration exhausts its budget. Carries the
/// active (unreduced) block [first, last] that failed to split.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, std::size_t first, std::size_t last)
        : std::runtime_error(what), first_(first), last_(last) {}
    std::size_t first() const { return first_; }
    std::size_t last() const { return last_; }

private:
    std::size_t first_;
    std::size_t last_;
};

struct QrOptions {
    int max_iterations_per_eigenvalue = 40;
    double deflation_tol = 1e-14;
};

/// Diagonal similarity scaling by powers of two so that row and column
/// norms are comparable. Eigenvalues are unchanged.
void balance(DenseMatrix& a);

/// Householder reduction to upper Hessenberg form in place.
void reduce_to_hessenberg(DenseMatrix& a);

/// Eigenvalues of an upper Hessenberg matrix by implicitly shifted
/// double-step (Francis) QR with deflation. The matrix is overwritten.
std::vector<std::complex<double>> hessenberg_eigenvalues(DenseMatrix& h, const QrOptions& opts = {});

/// balance + reduce_to_hessenberg + hessenberg_eigenvalues on a copy.
std::vector<std::complex<double>> eigenvalues(DenseMatrix a, const QrOptions& opts = {});

}  // namespace ncn
