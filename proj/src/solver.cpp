#include "ncn/solver.hpp"

#include <chrono>
#include <cmath>

#include "ncn/operators.hpp"

namespace ncn {

SchemeRun::SchemeRun(Mesh mesh, PhysicalParams params, double tau, GridFunction initial,
                     Potential potential, BoundaryFolding folding)
    : mesh_(std::move(mesh)), params_(params), tau_(tau), folding_(folding), state_(std::move(initial))
{
    params_.validate();
    if (!(tau_ > 0.0) || !std::isfinite(tau_)) {
        throw std::invalid_argument("time step must be positive");
    }
    const std::size_t J = mesh_.intervals();
    if (state_.size() != J + 1) {
        throw std::invalid_argument("initial state has " + std::to_string(state_.size()) +
                                    " values, mesh has " + std::to_string(J + 1) + " nodes");
    }

    std::vector<double> v(J + 1, 0.0);
    if (potential) {
        for (std::size_t j = 0; j <= J; ++j) {
            v[j] = potential(mesh_.node(j));
            if (!std::isfinite(v[j])) {
                throw std::invalid_argument("potential is not finite at node " + std::to_string(j));
            }
        }
    }

    const Complex i_hbar_tau{0.0, params_.hbar / tau_};
    const double c = params_.c_hbar();
    lhs_.resize(J - 1);
    rhs_.resize(J - 1);
    for (std::size_t j = 1; j < J; ++j) {
        const double h = mesh_.step(j);
        const double hp = mesh_.step(j + 1);
        const double hb = mesh_.avg_step(j);
        const auto nw = numerov_weights(h, hp);

        // Numerov row and the spatial operator c A + s_N(V .).
        const double b_l = nw.alpha / 12.0;
        const double b_d = 10.0 * nw.gamma / 12.0;
        const double b_u = nw.beta / 12.0;
        const double a_l = -1.0 / (h * hb);
        const double a_d = (1.0 / h + 1.0 / hp) / hb;
        const double a_u = -1.0 / (hp * hb);
        const double s_l = c * a_l + b_l * v[j - 1];
        const double s_d = c * a_d + b_d * v[j];
        const double s_u = c * a_u + b_u * v[j + 1];

        lhs_[j - 1] = {i_hbar_tau * b_l - 0.5 * s_l, i_hbar_tau * b_d - 0.5 * s_d, i_hbar_tau * b_u - 0.5 * s_u};
        rhs_[j - 1] = {i_hbar_tau * b_l + 0.5 * s_l, i_hbar_tau * b_d + 0.5 * s_d, i_hbar_tau * b_u + 0.5 * s_u};

        if (j == 1 || j == J - 1) {
            const bool full = folding_ == BoundaryFolding::kFull;
            const Complex l_l = full ? lhs_[j - 1].lower : Complex{-0.5 * c * a_l};
            const Complex l_u = full ? lhs_[j - 1].upper : Complex{-0.5 * c * a_u};
            const Complex r_l = full ? rhs_[j - 1].lower : Complex{0.5 * c * a_l};
            const Complex r_u = full ? rhs_[j - 1].upper : Complex{0.5 * c * a_u};
            if (j == 1) {
                lhs_left_ = l_l;
                rhs_left_ = r_l;
            }
            if (j == J - 1) {
                lhs_right_ = l_u;
                rhs_right_ = r_u;
            }
        }
    }

    system_ = Tridiagonal<Complex>(J - 1);
    for (std::size_t i = 0; i < J - 1; ++i) {
        system_.lower[i] = i > 0 ? lhs_[i].lower : Complex{};
        system_.diag[i] = lhs_[i].diag;
        system_.upper[i] = i + 2 < J ? lhs_[i].upper : Complex{};
    }
}

void SchemeRun::step(BoundaryValues boundary_new)
{
    const std::size_t J = mesh_.intervals();
    const std::size_t n = J - 1;
    std::vector<Complex> g(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i + 1;
        Complex acc = rhs_[i].diag * state_[j];
        if (j > 1) {
            acc += rhs_[i].lower * state_[j - 1];
        }
        if (j + 1 < J) {
            acc += rhs_[i].upper * state_[j + 1];
        }
        g[i] = acc;
    }
    g[0] += rhs_left_ * state_[0] - lhs_left_ * boundary_new.first;
    g[n - 1] += rhs_right_ * state_[J] - lhs_right_ * boundary_new.second;

    std::vector<Complex> interior;
    try {
        interior = thomas_solve(system_, g);
    } catch (const SingularSystemError& e) {
        throw StepError(std::string(e.what()) + " in time step " + std::to_string(step_index_ + 1),
                        step_index_ + 1);
    }
    state_[0] = boundary_new.first;
    state_[J] = boundary_new.second;
    std::copy(interior.begin(), interior.end(), state_.begin() + 1);
    ++step_index_;
}

double mass_norm(const Mesh& mesh, std::span<const Complex> state)
{
    return norm(mesh, state);
}

RunReport run_simulation(SchemeRun& run, std::size_t steps, const ExactSolution& exact)
{
    const auto start = std::chrono::steady_clock::now();
    const Mesh& mesh = run.mesh();
    const std::size_t J = mesh.intervals();

    RunReport report;
    report.steps = steps;
    report.tau = run.tau();
    report.mass_series.reserve(steps + 1);

    auto error_now = [&]() {
        double worst = 0.0;
        const double t = run.time();
        const auto& state = run.state();
        for (std::size_t j = 0; j <= J; ++j) {
            worst = std::max(worst, std::abs(exact(mesh.node(j), t) - state[j]));
        }
        return worst;
    };

    report.mass_series.push_back(mass_norm(mesh, run.state()));
    double worst = exact ? error_now() : 0.0;

    const BoundaryValues fixed{run.state().front(), run.state().back()};
    for (std::size_t m = 0; m < steps; ++m) {
        if (exact) {
            const double t_next = static_cast<double>(run.step_index() + 1) * run.tau();
            run.step({exact(mesh.node(0), t_next), exact(mesh.node(J), t_next)});
            worst = std::max(worst, error_now());
        } else {
            run.step(fixed);
        }
        report.mass_series.push_back(mass_norm(mesh, run.state()));
    }
    if (exact) {
        report.max_error = worst;
    }
    report.final_state = run.state();
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace ncn
