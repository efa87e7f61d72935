#include "ncn/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace ncn {

namespace {

void require_aligned(const Mesh& mesh, std::span<const Complex> w)
{
    if (w.size() != mesh.intervals() + 1) {
        throw std::invalid_argument("grid function has " + std::to_string(w.size()) +
                                    " values, mesh has " + std::to_string(mesh.intervals() + 1) +
                                    " nodes");
    }
}

}  // namespace

NumerovWeights numerov_weights(double h, double h_plus)
{
    if (!(h > 0.0) || !(h_plus > 0.0)) {
        throw std::invalid_argument("Numerov weights need positive steps");
    }
    const double h_bar = 0.5 * (h + h_plus);
    const double diff = h_plus - h;
    return NumerovWeights{
        .alpha = 2.0 - h_plus * h_plus / (h * h_bar),
        .gamma = 1.0 + diff * diff / (5.0 * h * h_plus),
        .beta = 2.0 - h * h / (h_plus * h_bar),
    };
}

bool weights_nonnegative(double h, double h_plus)
{
    if (!(h > 0.0) || !(h_plus > 0.0)) {
        throw std::invalid_argument("Numerov weights need positive steps");
    }
    const double golden = (std::sqrt(5.0) + 1.0) / 2.0;
    const double ratio = h_plus / h;
    return ratio >= 2.0 / (std::sqrt(5.0) + 1.0) && ratio <= golden;
}

std::vector<Complex> apply_numerov(const Mesh& mesh, std::span<const Complex> w)
{
    require_aligned(mesh, w);
    const std::size_t J = mesh.intervals();
    std::vector<Complex> out(J - 1);
    for (std::size_t j = 1; j < J; ++j) {
        const auto nw = numerov_weights(mesh.step(j), mesh.step(j + 1));
        out[j - 1] = (nw.alpha * w[j - 1] + 10.0 * nw.gamma * w[j] + nw.beta * w[j + 1]) / 12.0;
    }
    return out;
}

std::vector<Complex> apply_neg_laplacian(const Mesh& mesh, std::span<const Complex> w)
{
    require_aligned(mesh, w);
    const std::size_t J = mesh.intervals();
    std::vector<Complex> out(J - 1);
    for (std::size_t j = 1; j < J; ++j) {
        const Complex forward = (w[j + 1] - w[j]) / mesh.step(j + 1);
        const Complex backward = (w[j] - w[j - 1]) / mesh.step(j);
        out[j - 1] = -(forward - backward) / mesh.avg_step(j);
    }
    return out;
}

Complex inner_product(const Mesh& mesh, std::span<const Complex> u, std::span<const Complex> w)
{
    require_aligned(mesh, u);
    require_aligned(mesh, w);
    Complex acc{};
    for (std::size_t j = 1; j < mesh.intervals(); ++j) {
        acc += u[j] * std::conj(w[j]) * mesh.avg_step(j);
    }
    return acc;
}

double norm(const Mesh& mesh, std::span<const Complex> u)
{
    require_aligned(mesh, u);
    double acc = 0.0;
    for (std::size_t j = 1; j < mesh.intervals(); ++j) {
        acc += std::norm(u[j]) * mesh.avg_step(j);
    }
    return std::sqrt(acc);
}

Pencil assemble_pencil(const Mesh& mesh)
{
    const std::size_t n = mesh.interior_count();
    Pencil p{Tridiagonal<double>(n), Tridiagonal<double>(n), std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i + 1;
        const double h = mesh.step(j);
        const double hp = mesh.step(j + 1);
        const double hb = mesh.avg_step(j);
        const auto nw = numerov_weights(h, hp);

        p.weights[i] = hb;
        p.A.diag[i] = (1.0 / h + 1.0 / hp) / hb;
        p.B.diag[i] = 10.0 * nw.gamma / 12.0;
        if (i > 0) {
            p.A.lower[i] = -1.0 / (h * hb);
            p.B.lower[i] = nw.alpha / 12.0;
        }
        if (i + 1 < n) {
            p.A.upper[i] = -1.0 / (hp * hb);
            p.B.upper[i] = nw.beta / 12.0;
        }
    }
    return p;
}

Tridiagonal<double> Pencil::weighted_A() const
{
    Tridiagonal<double> s = A;
    for (std::size_t i = 0; i < s.order(); ++i) {
        s.lower[i] *= weights[i];
        s.diag[i] *= weights[i];
        s.upper[i] *= weights[i];
    }
    return s;
}

}  // namespace ncn
