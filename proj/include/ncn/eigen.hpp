#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "ncn/dense_eigen.hpp"
#include "ncn/mesh.hpp"
#include "ncn/operators.hpp"

namespace ncn {

/// One eigenpair of A w = lambda B w. The eigenvector lives on the interior
/// nodes, has unit Euclidean length, and its first significant entry is real
/// and positive.
struct EigenPair {
    Complex lambda;
    std::vector<Complex> eigenvector;
    double residual = 0.0;

    bool is_real() const { return lambda.imag() == 0.0; }
};

struct SpectrumReport {
    std::vector<EigenPair> pairs;  // descending |lambda|, ties by descending Im
    std::size_t real_count = 0;
    std::size_t complex_count = 0;    // counts both members of each conjugate pair
    std::size_t discarded_count = 0;  // infinite eigenvalues from a singular B
};

struct EigenOptions {
    QrOptions qr;
    /// Eigenvalues mu of A^{-1} B with |mu| below this times ||A^{-1}B||_inf
    /// are reported as infinite lambda.
    double discard_ratio = 1e-12;
    int inverse_iterations = 3;
    unsigned long long seed = 0x5eedULL;
};

/// Full spectrum of the mesh pencil through M = A^{-1} B, Francis QR on M,
/// lambda = 1 / mu, and inverse iteration for the eigenvectors.
SpectrumReport generalized_eigenvalues(const Mesh& mesh, const EigenOptions& opts = {});

/// ||A v - lambda B v||_2 / (||v||_2 (||A||_inf + |lambda| ||B||_inf)).
double pencil_residual(const Pencil& pencil, Complex lambda, std::span<const Complex> v);
double pencil_residual(const Mesh& mesh, Complex lambda, std::span<const Complex> v);

/// Pads an interior vector with zero boundary values.
GridFunction with_boundary(std::span<const Complex> interior);

/// Residual of (K^2 lambda, extend(w, K)) on the mirrored K-fold replication
/// of `base`.
double extension_residual(const Mesh& base, const EigenPair& pair, int copies);

/// Dense A^{-1} B, solved column by column against the weighted (symmetric
/// positive definite) form of A. Throws if that form is not positive definite.
DenseMatrix reduced_matrix(const Pencil& pencil);

}  // namespace ncn
