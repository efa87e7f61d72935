#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ncn/mesh.hpp"
#include "ncn/tridiagonal.hpp"

namespace ncn {

/// Coefficients of the three-point Numerov average at one interior node:
/// s_N W = (alpha W_- + 10 gamma W + beta W_+) / 12.
struct NumerovWeights {
    double alpha = 1.0;
    double gamma = 1.0;
    double beta = 1.0;
};

/// Weights from the left step h and right step h_plus. Reduces to (1, 1, 1)
/// when the steps agree; (alpha + 10 gamma + beta) / 12 == 1 always.
NumerovWeights numerov_weights(double h, double h_plus);

/// True iff alpha >= 0 and beta >= 0, i.e. the step ratio h_plus / h lies in
/// [2 / (sqrt(5) + 1), (sqrt(5) + 1) / 2].
bool weights_nonnegative(double h, double h_plus);

/// s_N W at interior nodes 1..J-1 (result index i is node i + 1).
std::vector<Complex> apply_numerov(const Mesh& mesh, std::span<const Complex> w);

/// -(forward-modified)(backward) second difference at interior nodes 1..J-1.
std::vector<Complex> apply_neg_laplacian(const Mesh& mesh, std::span<const Complex> w);

/// (U, W) = sum_{j=1}^{J-1} U_j conj(W_j) hbar_j over the interior nodes.
Complex inner_product(const Mesh& mesh, std::span<const Complex> u, std::span<const Complex> w);
double norm(const Mesh& mesh, std::span<const Complex> u);

/// Interior-node matrices of the generalized eigenproblem A w = lambda B w:
/// A represents -(second difference), B the Numerov average. Entries that
/// would multiply boundary nodes are dropped.
///
/// A is self-adjoint in the hbar-weighted inner product, so diag(weights) * A
/// is a symmetric positive definite matrix; A itself is symmetric only when
/// the averaged steps agree.
struct Pencil {
    Tridiagonal<double> A;
    Tridiagonal<double> B;
    std::vector<double> weights;  // hbar_j at interior nodes

    /// diag(weights) * A, symmetric.
    Tridiagonal<double> weighted_A() const;
};

Pencil assemble_pencil(const Mesh& mesh);

}  // namespace ncn
