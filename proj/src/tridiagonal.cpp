#include "ncn/tridiagonal.hpp"

#include <algorithm>
#include <cmath>

namespace ncn {

using Complex = std::complex<double>;

std::vector<Complex> thomas_solve(const Tridiagonal<Complex>& m, std::span<const Complex> rhs,
                                  double pivot_tol)
{
    const std::size_t n = m.order();
    if (rhs.size() != n || n == 0) {
        throw std::invalid_argument("thomas_solve: size mismatch");
    }
    std::vector<Complex> c_star(n);
    std::vector<Complex> d_star(n);

    auto check = [&](const Complex& pivot, std::size_t i) {
        const double scale = std::abs(m.lower[i]) + std::abs(m.diag[i]) + std::abs(m.upper[i]);
        if (!(std::abs(pivot) >= pivot_tol * scale) || scale == 0.0) {
            throw SingularSystemError("tridiagonal pivot vanishes at row " + std::to_string(i), i);
        }
    };

    check(m.diag[0], 0);
    c_star[0] = m.upper[0] / m.diag[0];
    d_star[0] = rhs[0] / m.diag[0];
    for (std::size_t i = 1; i < n; ++i) {
        const Complex pivot = m.diag[i] - m.lower[i] * c_star[i - 1];
        check(pivot, i);
        c_star[i] = m.upper[i] / pivot;
        d_star[i] = (rhs[i] - m.lower[i] * d_star[i - 1]) / pivot;
    }

    std::vector<Complex> x(n);
    x[n - 1] = d_star[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] = d_star[i] - c_star[i] * x[i + 1];
    }
    return x;
}

PivotedTridiagonalLU::PivotedTridiagonalLU(const Tridiagonal<Complex>& m, double pivot_floor)
    : n_(m.order()), d_(m.diag), du_(m.upper), du2_(m.order(), Complex{}), dl_(m.order(), Complex{}),
      swapped_(m.order(), false)
{
    if (n_ == 0) {
        throw std::invalid_argument("PivotedTridiagonalLU: empty matrix");
    }
    std::vector<Complex> sub(n_, Complex{});
    for (std::size_t i = 1; i < n_; ++i) {
        sub[i - 1] = m.lower[i];
    }
    const double tiny = std::max({1e-300, pivot_floor, 2.2e-16 * m.inf_norm()});

    // Same elimination as LAPACK zgttrf: sub[i] is entry (i+1, i).
    for (std::size_t i = 0; i + 1 < n_; ++i) {
        if (std::abs(d_[i]) >= std::abs(sub[i])) {
            if (std::abs(d_[i]) < tiny) {
                d_[i] = tiny;
            }
            const Complex f = sub[i] / d_[i];
            dl_[i] = f;
            d_[i + 1] -= f * du_[i];
        } else {
            const Complex f = d_[i] / sub[i];
            d_[i] = sub[i];
            dl_[i] = f;
            const Complex tmp = du_[i];
            du_[i] = d_[i + 1];
            d_[i + 1] = tmp - f * d_[i + 1];
            if (i + 2 < n_) {
                du2_[i] = du_[i + 1];
                du_[i + 1] = -f * du_[i + 1];
            }
            swapped_[i] = true;
        }
    }
    if (std::abs(d_[n_ - 1]) < tiny) {
        d_[n_ - 1] = tiny;
    }
}

std::vector<Complex> PivotedTridiagonalLU::solve(std::span<const Complex> rhs) const
{
    if (rhs.size() != n_) {
        throw std::invalid_argument("PivotedTridiagonalLU::solve: size mismatch");
    }
    std::vector<Complex> x(rhs.begin(), rhs.end());
    for (std::size_t i = 0; i + 1 < n_; ++i) {
        if (!swapped_[i]) {
            x[i + 1] -= dl_[i] * x[i];
        } else {
            const Complex tmp = x[i];
            x[i] = x[i + 1];
            x[i + 1] = tmp - dl_[i] * x[i];
        }
    }
    x[n_ - 1] /= d_[n_ - 1];
    if (n_ > 1) {
        x[n_ - 2] = (x[n_ - 2] - du_[n_ - 2] * x[n_ - 1]) / d_[n_ - 2];
        for (std::size_t i = n_ - 2; i-- > 0;) {
            x[i] = (x[i] - du_[i] * x[i + 1] - du2_[i] * x[i + 2]) / d_[i];
        }
    }
    return x;
}

}  // namespace ncn
