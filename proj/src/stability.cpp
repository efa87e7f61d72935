#include "ncn/stability.hpp"

#include <cmath>
#include <string>

namespace ncn {

namespace {

using Complex = std::complex<double>;

void require_positive(double value, const char* name)
{
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument(std::string(name) + " must be positive and finite");
    }
}

Complex denominator(Complex lambda, double tau, double a)
{
    const Complex half_step = Complex{0.0, 1.0} * a * lambda * tau / 2.0;
    const Complex den = 1.0 + half_step;
    if (std::abs(den) < 1e-300) {
        throw SingularInputError("lambda sits on the pole 2i/(a tau) of the amplification factor");
    }
    return den;
}

}  // namespace

Complex amplification_factor(Complex lambda, double tau, double a)
{
    require_positive(tau, "tau");
    require_positive(a, "a");
    const Complex den = denominator(lambda, tau, a);
    const Complex num = 1.0 - Complex{0.0, 1.0} * a * lambda * tau / 2.0;
    return num / den;
}

double amplification_modulus_squared(Complex lambda, double tau, double a)
{
    require_positive(tau, "tau");
    require_positive(a, "a");
    denominator(lambda, tau, a);
    const Complex lt = a * lambda / 2.0;
    const double rt = lt.real() * tau;
    const double it = lt.imag() * tau;
    return 1.0 + 4.0 * it / (rt * rt + (it - 1.0) * (it - 1.0));
}

bool spectral_condition(Complex lambda, double tau, double kappa, double a)
{
    require_positive(kappa, "kappa");
    return std::abs(amplification_factor(lambda, tau, a)) <= 1.0 + kappa * tau;
}

bool rewritten_condition(Complex lambda, double tau, double kappa, double a)
{
    require_positive(tau, "tau");
    require_positive(kappa, "kappa");
    require_positive(a, "a");
    if (!(lambda.imag() > 0.0)) {
        throw std::invalid_argument("rewritten condition needs Im(lambda) > 0");
    }
    denominator(lambda, tau, a);
    const Complex lt = a * lambda / 2.0;
    const double lhs = 4.0 / (kappa * (2.0 + kappa * tau)) + 2.0 * tau;
    const double rhs = std::norm(lt) / lt.imag() * tau * tau + 1.0 / lt.imag();
    return lhs <= rhs;
}

double min_kappa(Complex lambda, double tau, double a)
{
    // |q| > 1 exactly when Im(lambda) > 0; |q| - 1 = (|q|^2 - 1) / (|q| + 1).
    const double q2 = amplification_modulus_squared(lambda, tau, a);
    if (!(lambda.imag() > 0.0)) {
        return 0.0;
    }
    return (q2 - 1.0) / ((std::sqrt(q2) + 1.0) * tau);
}

NecessaryConstants necessary_condition(Complex lambda0, double h_omega0, double a, double kappa)
{
    require_positive(h_omega0, "h_omega0");
    require_positive(a, "a");
    require_positive(kappa, "kappa");
    if (lambda0.imag() == 0.0) {
        throw std::invalid_argument("necessary condition needs a non-real eigenvalue");
    }
    if (lambda0.imag() < 0.0) {
        lambda0 = std::conj(lambda0);
    }
    const double mod = std::abs(lambda0);
    const double li = lambda0.imag();
    return NecessaryConstants{
        .c1 = 0.5 * mod * h_omega0 * std::sqrt(a / (2.0 * li)),
        .c2 = 1.0 / (h_omega0 * std::sqrt(2.0 * a * li)),
        .c0 = std::sqrt(a * kappa) * h_omega0 * mod / (2.0 * std::sqrt(li)),
    };
}

bool necessary_inequality_holds(const NecessaryConstants& c, double tau, double h_omega, double kappa,
                                double tau0)
{
    require_positive(tau, "tau");
    require_positive(h_omega, "h_omega");
    require_positive(kappa, "kappa");
    require_positive(tau0, "tau0");
    const double lhs = 1.0 / std::sqrt(kappa * (2.0 + kappa * tau0));
    return lhs <= c.c1 * tau / h_omega + c.c2 * h_omega;
}

}  // namespace ncn
