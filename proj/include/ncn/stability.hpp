#pragma once

#include <complex>
#include <stdexcept>

namespace ncn {

/// hbar and m0 of i hbar psi_t = -(hbar^2 / 2 m0) psi_xx + V psi.
struct PhysicalParams {
    double hbar = 1.0;
    double m0 = 0.5;

    double c_hbar() const { return hbar * hbar / (2.0 * m0); }
    double a() const { return c_hbar() / hbar; }

    void validate() const
    {
        if (!(hbar > 0.0) || !(m0 > 0.0)) {
            throw std::invalid_argument("hbar and m0 must be positive");
        }
    }
};

/// Growth allowance of the bound ||Psi^m|| <= C (1 + kappa tau)^m ||Psi^0||,
/// valid for 0 < tau <= tau0. C is carried for reporting only.
struct StabilityParams {
    double kappa = 1.0;
    double tau0 = 0.1;
    double C = 1.0;
};

/// Raised at the pole lambda = 2i / (a tau) of the amplification factor.
class SingularInputError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// q = (1 - i a lambda tau / 2) / (1 + i a lambda tau / 2).
std::complex<double> amplification_factor(std::complex<double> lambda, double tau, double a);

/// |q|^2 through 1 + 4 lt_I tau / ((lt_R tau)^2 + (lt_I tau - 1)^2), lt = a lambda / 2.
double amplification_modulus_squared(std::complex<double> lambda, double tau, double a);

/// |q| <= 1 + kappa tau.
bool spectral_condition(std::complex<double> lambda, double tau, double kappa, double a);

/// The same test written for Im(lambda) > 0 as
/// 4 / (kappa (2 + kappa tau)) + 2 tau <= (|lt|^2 / lt_I) tau^2 + 1 / lt_I.
bool rewritten_condition(std::complex<double> lambda, double tau, double kappa, double a);

/// Smallest kappa >= 0 for which the spectral condition holds: (|q| - 1)^+ / tau.
double min_kappa(std::complex<double> lambda, double tau, double a);

/// Constants of the necessary condition
///   1 / sqrt(kappa (2 + kappa tau0)) <= c1 tau / h_omega + c2 h_omega
/// on the replicated family of a base mesh with mean step h_omega0 and a
/// non-real base eigenvalue, plus the asymptotic converse constant
/// c0 in h_omega <= c0 tau.
struct NecessaryConstants {
    double c1 = 0.0;
    double c2 = 0.0;
    double c0 = 0.0;
};

/// Conjugates lambda0 when Im(lambda0) < 0; throws for real lambda0.
NecessaryConstants necessary_condition(std::complex<double> lambda0, double h_omega0, double a,
                                       double kappa);

/// Evaluates the necessary inequality for one (tau, h_omega).
bool necessary_inequality_holds(const NecessaryConstants& c, double tau, double h_omega,
                                double kappa, double tau0);

}  // namespace ncn
