#include "ncn/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "ncn/tridiagonal.hpp"

namespace ncn {

namespace {

double euclidean_norm(std::span<const Complex> v)
{
    double acc = 0.0;
    for (const auto& z : v) {
        acc += std::norm(z);
    }
    return std::sqrt(acc);
}

void normalize_phase(std::vector<Complex>& v)
{
    const double len = euclidean_norm(v);
    if (len == 0.0) {
        return;
    }
    double biggest = 0.0;
    for (const auto& z : v) {
        biggest = std::max(biggest, std::abs(z));
    }
    Complex phase{1.0, 0.0};
    for (const auto& z : v) {
        if (std::abs(z) > 1e-8 * biggest) {
            phase = std::conj(z) / std::abs(z);
            break;
        }
    }
    for (auto& z : v) {
        z *= phase / len;
    }
}

Tridiagonal<Complex> shifted(const Pencil& p, Complex lambda)
{
    const std::size_t n = p.A.order();
    Tridiagonal<Complex> m(n);
    for (std::size_t i = 0; i < n; ++i) {
        m.lower[i] = p.A.lower[i] - lambda * p.B.lower[i];
        m.diag[i] = p.A.diag[i] - lambda * p.B.diag[i];
        m.upper[i] = p.A.upper[i] - lambda * p.B.upper[i];
    }
    return m;
}

std::vector<Complex> inverse_iteration(const Pencil& p, Complex lambda, int iterations,
                                       std::mt19937_64& rng)
{
    const std::size_t n = p.A.order();
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<Complex> x(n);
    for (auto& z : x) {
        z = {dist(rng), dist(rng)};
    }
    const PivotedTridiagonalLU lu(shifted(p, lambda), 2.2e-16 * (p.A.inf_norm() + std::abs(lambda) * p.B.inf_norm()));
    for (int it = 0; it < iterations; ++it) {
        // Solving against (A - lambda B) amplifies the B-image direction.
        x = lu.solve(p.B.multiply<Complex>(x));
        const double len = euclidean_norm(x);
        if (!(len > 0.0) || !std::isfinite(len)) {
            throw std::runtime_error("inverse iteration broke down");
        }
        for (auto& z : x) {
            z /= len;
        }
    }
    return x;
}

// Least-squares eigenvalue for a fixed vector: argmin ||A v - lambda B v||.
Complex least_squares_lambda(const Pencil& p, std::span<const Complex> v)
{
    const auto av = p.A.multiply<Complex>(v);
    const auto bv = p.B.multiply<Complex>(v);
    Complex num{};
    double den = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        num += std::conj(bv[i]) * av[i];
        den += std::norm(bv[i]);
    }
    return num / den;
}

}  // namespace

DenseMatrix reduced_matrix(const Pencil& pencil)
{
    const std::size_t n = pencil.A.order();
    const Tridiagonal<double> s = pencil.weighted_A();

    // LDL^T of the symmetric tridiagonal s; positive pivots certify that
    // every leading principal minor is positive.
    std::vector<double> d(n);
    std::vector<double> l(n, 0.0);
    d[0] = s.diag[0];
    for (std::size_t i = 1; i < n; ++i) {
        if (!(d[i - 1] > 0.0)) {
            break;
        }
        l[i] = s.lower[i] / d[i - 1];
        d[i] = s.diag[i] - l[i] * s.lower[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!(d[i] > 0.0)) {
            throw std::runtime_error("weighted second-difference matrix is not positive definite (minor " +
                                     std::to_string(i + 1) + ")");
        }
    }

    DenseMatrix m(n);
    std::vector<double> col(n);
    for (std::size_t c = 0; c < n; ++c) {
        // Column c of diag(weights) * B.
        std::fill(col.begin(), col.end(), 0.0);
        for (std::size_t i = (c > 0 ? c - 1 : 0); i <= std::min(c + 1, n - 1); ++i) {
            col[i] = pencil.weights[i] * pencil.B.at(i, c);
        }
        for (std::size_t i = 1; i < n; ++i) {
            col[i] -= l[i] * col[i - 1];
        }
        for (std::size_t i = 0; i < n; ++i) {
            col[i] /= d[i];
        }
        for (std::size_t i = n - 1; i-- > 0;) {
            col[i] -= l[i + 1] * col[i + 1];
        }
        for (std::size_t i = 0; i < n; ++i) {
            m(i, c) = col[i];
        }
    }
    return m;
}

double pencil_residual(const Pencil& pencil, Complex lambda, std::span<const Complex> v)
{
    if (v.size() != pencil.A.order()) {
        throw std::invalid_argument("pencil_residual: vector does not match the interior node count");
    }
    const double vnorm = euclidean_norm(v);
    if (vnorm == 0.0) {
        throw std::invalid_argument("pencil_residual: zero vector");
    }
    const auto av = pencil.A.multiply<Complex>(v);
    const auto bv = pencil.B.multiply<Complex>(v);
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        acc += std::norm(av[i] - lambda * bv[i]);
    }
    return std::sqrt(acc) / (vnorm * (pencil.A.inf_norm() + std::abs(lambda) * pencil.B.inf_norm()));
}

double pencil_residual(const Mesh& mesh, Complex lambda, std::span<const Complex> v)
{
    return pencil_residual(assemble_pencil(mesh), lambda, v);
}

GridFunction with_boundary(std::span<const Complex> interior)
{
    GridFunction w(interior.size() + 2, Complex{});
    std::copy(interior.begin(), interior.end(), w.begin() + 1);
    return w;
}

SpectrumReport generalized_eigenvalues(const Mesh& mesh, const EigenOptions& opts)
{
    const Pencil pencil = assemble_pencil(mesh);
    const DenseMatrix m = reduced_matrix(pencil);
    const double m_norm = m.inf_norm();
    const auto mus = eigenvalues(m, opts.qr);

    SpectrumReport report;
    std::vector<Complex> lambdas;
    for (const auto& mu : mus) {
        if (std::abs(mu) < opts.discard_ratio * m_norm) {
            ++report.discarded_count;
            continue;
        }
        lambdas.push_back(1.0 / mu);
    }

    // Pair each eigenvalue in the upper half plane with its nearest conjugate
    // partner and make the pair exactly conjugate.
    std::vector<bool> used(lambdas.size(), false);
    std::vector<std::pair<Complex, bool>> picked;  // (lambda, has conjugate partner)
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (lambdas[i].imag() == 0.0) {
            picked.emplace_back(lambdas[i], false);
            used[i] = true;
        }
    }
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (used[i] || lambdas[i].imag() < 0.0) {
            continue;
        }
        std::size_t best = lambdas.size();
        double best_dist = 0.0;
        for (std::size_t k = 0; k < lambdas.size(); ++k) {
            if (used[k] || k == i || lambdas[k].imag() >= 0.0) {
                continue;
            }
            const double dist = std::abs(lambdas[k] - std::conj(lambdas[i]));
            if (best == lambdas.size() || dist < best_dist) {
                best = k;
                best_dist = dist;
            }
        }
        if (best == lambdas.size() || best_dist > 1e-8 * std::abs(lambdas[i])) {
            throw std::runtime_error("complex eigenvalue without a conjugate partner");
        }
        used[i] = used[best] = true;
        picked.emplace_back(0.5 * (lambdas[i] + std::conj(lambdas[best])), true);
    }
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (!used[i]) {
            throw std::runtime_error("complex eigenvalue without a conjugate partner");
        }
    }

    std::mt19937_64 rng(opts.seed);
    for (const auto& [lambda0, paired] : picked) {
        EigenPair pair;
        pair.lambda = lambda0;
        pair.eigenvector = inverse_iteration(pencil, lambda0, opts.inverse_iterations, rng);
        pair.residual = pencil_residual(pencil, pair.lambda, pair.eigenvector);

        Complex refined = least_squares_lambda(pencil, pair.eigenvector);
        if (!paired) {
            refined = {refined.real(), 0.0};
        }
        const double refined_res = pencil_residual(pencil, refined, pair.eigenvector);
        if (refined_res < pair.residual) {
            pair.lambda = refined;
            pair.residual = refined_res;
        }
        normalize_phase(pair.eigenvector);

        if (paired) {
            EigenPair partner;
            partner.lambda = std::conj(pair.lambda);
            partner.eigenvector.resize(pair.eigenvector.size());
            std::transform(pair.eigenvector.begin(), pair.eigenvector.end(), partner.eigenvector.begin(),
                           [](Complex z) { return std::conj(z); });
            partner.residual = pencil_residual(pencil, partner.lambda, partner.eigenvector);
            report.pairs.push_back(std::move(partner));
            report.complex_count += 2;
        } else {
            ++report.real_count;
        }
        report.pairs.push_back(std::move(pair));
    }

    std::stable_sort(report.pairs.begin(), report.pairs.end(), [](const EigenPair& a, const EigenPair& b) {
        const double ma = std::abs(a.lambda);
        const double mb = std::abs(b.lambda);
        if (std::abs(ma - mb) > 1e-12 * std::max(ma, mb)) {
            return ma > mb;
        }
        return a.lambda.imag() > b.lambda.imag();
    });
    return report;
}

double extension_residual(const Mesh& base, const EigenPair& pair, int copies)
{
    const Mesh rep = replicate({base, copies, Layout::kMirrored});
    const GridFunction full = extend(with_boundary(pair.eigenvector), copies);
    const std::span<const Complex> interior(full.data() + 1, full.size() - 2);
    const double k2 = static_cast<double>(copies) * static_cast<double>(copies);
    return pencil_residual(rep, pair.lambda * k2, interior);
}

}  // namespace ncn
