#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncn {

/// Square tridiagonal matrix of order n. lower[i] holds entry (i, i-1) and
/// upper[i] holds (i, i+1); lower[0] and upper[n-1] are unused zeros.
template <typename T>
struct Tridiagonal {
    std::vector<T> lower;
    std::vector<T> diag;
    std::vector<T> upper;

    Tridiagonal() = default;
    explicit Tridiagonal(std::size_t n) : lower(n, T{}), diag(n, T{}), upper(n, T{}) {}

    std::size_t order() const { return diag.size(); }

    T at(std::size_t i, std::size_t j) const
    {
        if (i == j) {
            return diag[i];
        }
        if (j + 1 == i) {
            return lower[i];
        }
        if (i + 1 == j) {
            return upper[i];
        }
        return T{};
    }

    /// Max row sum of absolute values.
    double inf_norm() const
    {
        double best = 0.0;
        for (std::size_t i = 0; i < order(); ++i) {
            const double row = std::abs(lower[i]) + std::abs(diag[i]) + std::abs(upper[i]);
            best = row > best ? row : best;
        }
        return best;
    }

    template <typename V>
    std::vector<V> multiply(std::span<const V> x) const
    {
        const std::size_t n = order();
        if (x.size() != n) {
            throw std::invalid_argument("tridiagonal multiply: size mismatch");
        }
        std::vector<V> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            V acc = static_cast<V>(diag[i]) * x[i];
            if (i > 0) {
                acc += static_cast<V>(lower[i]) * x[i - 1];
            }
            if (i + 1 < n) {
                acc += static_cast<V>(upper[i]) * x[i + 1];
            }
            y[i] = acc;
        }
        return y;
    }
};

/// Raised when elimination meets a pivot that is zero relative to its row.
class SingularSystemError : public std::runtime_error {
public:
    SingularSystemError(const std::string& what, std::size_t row)
        : std::runtime_error(what), row_(row) {}
    std::size_t row() const { return row_; }

private:
    std::size_t row_;
};

/// Thomas elimination without pivoting. A pivot with modulus below
/// `pivot_tol` times the scale of its original row raises SingularSystemError.
std::vector<std::complex<double>> thomas_solve(const Tridiagonal<std::complex<double>>& m,
                                               std::span<const std::complex<double>> rhs,
                                               double pivot_tol = 1e-14);

/// LU with partial (row) pivoting for tridiagonal systems that may be nearly
/// singular, as in inverse iteration. Exactly zero pivots are replaced by a
/// tiny multiple of the matrix norm instead of failing.
class PivotedTridiagonalLU {
public:
    /// Pivots smaller than `pivot_floor` (default eps ||m||_inf) are replaced by
    /// it, so a singular shift still yields a usable factorization.
    explicit PivotedTridiagonalLU(const Tridiagonal<std::complex<double>>& m, double pivot_floor = 0.0);
    std::vector<std::complex<double>> solve(std::span<const std::complex<double>> rhs) const;

private:
    std::size_t n_;
    std::vector<std::complex<double>> d_;   // U diagonal
    std::vector<std::complex<double>> du_;  // U first superdiagonal
    std::vector<std::complex<double>> du2_; // U second superdiagonal (fill-in)
    std::vector<std::complex<double>> dl_;  // L multipliers
    std::vector<bool> swapped_;
};

}  // namespace ncn
