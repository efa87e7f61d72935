#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ncn/mesh.hpp"
#include "ncn/stability.hpp"
#include "ncn/tridiagonal.hpp"

namespace ncn {

using Potential = std::function<double(double x)>;
using ExactSolution = std::function<Complex(double x, double t)>;
using BoundaryValues = std::pair<Complex, Complex>;  // (left, right)

/// Which stencil weights carry known boundary values into the right-hand side.
enum class BoundaryFolding {
    kFull,           // every weight touching node 0 or J (Laplacian and Numerov)
    kLaplacianOnly,  // only the second-difference weights
};

/// Raised when the per-step tridiagonal solve meets a vanishing pivot.
class StepError : public std::runtime_error {
public:
    StepError(const std::string& what, std::size_t step) : std::runtime_error(what), step_(step) {}
    std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

/**
 * Numerov-Crank-Nicolson stepper for
 *   i hbar s_N dPsi/dt = -c_hbar (second difference) Psi_avg + s_N(V Psi_avg)
 * on a fixed mesh with Dirichlet data. Each step solves
 *   L Psi^m = R Psi^{m-1} + g
 * with L = (i hbar / tau) B - (c_hbar A + B V) / 2 and
 *      R = (i hbar / tau) B + (c_hbar A + B V) / 2,
 * where g holds the boundary contributions of both time levels.
 */
class SchemeRun {
public:
    SchemeRun(Mesh mesh, PhysicalParams params, double tau, GridFunction initial,
              Potential potential = {}, BoundaryFolding folding = BoundaryFolding::kFull);

    /// Advances one step; boundary values at the new time level are given.
    void step(BoundaryValues boundary_new = {});

    const Mesh& mesh() const { return mesh_; }
    const GridFunction& state() const { return state_; }
    std::size_t step_index() const { return step_index_; }
    double tau() const { return tau_; }
    double time() const { return static_cast<double>(step_index_) * tau_; }

private:
    // Full three-point row j (1..J-1), including the columns of nodes 0 and J.
    struct Row {
        Complex lower;
        Complex diag;
        Complex upper;
    };

    Mesh mesh_;
    PhysicalParams params_;
    double tau_;
    BoundaryFolding folding_;
    GridFunction state_;
    std::size_t step_index_ = 0;

    std::vector<Row> lhs_;
    std::vector<Row> rhs_;
    // Copies of the boundary-column entries used for folding (may differ from
    // lhs_/rhs_ when only the Laplacian part is folded).
    Complex lhs_left_{}, lhs_right_{}, rhs_left_{}, rhs_right_{};
    Tridiagonal<Complex> system_;
};

struct RunReport {
    std::vector<double> mass_series;   // ||Psi^m||, m = 0..M
    std::optional<double> max_error;   // max over m, j of |psi(x_j, t_m) - Psi_j^m|
    double wall_seconds = 0.0;
    GridFunction final_state;
    std::size_t steps = 0;
    double tau = 0.0;
};

/// Interior-node mass ||Psi||_{omega_h}.
double mass_norm(const Mesh& mesh, std::span<const Complex> state);

/// Runs M steps. With `exact`, boundary data come from it and the max-norm
/// error is taken over all nodes and all time levels including m = 0;
/// otherwise the boundary stays at the values of `run`'s initial state.
RunReport run_simulation(SchemeRun& run, std::size_t steps, const ExactSolution& exact = {});

}  // namespace ncn
