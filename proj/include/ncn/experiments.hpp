#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ncn/eigen.hpp"
#include "ncn/mesh.hpp"
#include "ncn/solver.hpp"
#include "ncn/stability.hpp"

namespace ncn {

/// Free Gaussian packet centred at x_c with wave number k, propagated to T.
struct PacketParams {
    double x_c = 5.0;
    double k = 4.0;
    double T = 1.0;
};

/// psi(x, t) = sqrt(1 / (1 + 4 i t)) exp((-(x - x_c)^2 + i k (x - x_c - k t)) / (1 + 4 i t)),
/// an exact solution of i psi_t = -psi_xx (principal square root).
Complex gaussian_packet(double x, double t, const PacketParams& params);

/// How the fourteen-interval demo mesh is scaled. Its steps are proportional
/// to (1, 1, 1, 5, 3, 1, 3, 4, 5, 5, 5, 5, 5, 5).
enum class BaseScaling {
    kFitDomain,       // rescaled so that X = 30 exactly
    kDivideByOneHalf, // listed values divided by 1.5, X = 49 / 1.5
};

const char* to_string(BaseScaling scaling);
Mesh fourteen_interval_mesh(BaseScaling scaling = BaseScaling::kFitDomain);

struct ExperimentConfig {
    Mesh base = fourteen_interval_mesh();
    Layout layout = Layout::kPeriodic;
    PacketParams packet;
    PhysicalParams physics;  // defaults give c_hbar = a = 1
    BoundaryFolding folding = BoundaryFolding::kFull;
};

/// Runs the packet on the K-fold replication of the base with M steps on [0, T].
RunReport run_packet(const ExperimentConfig& config, int copies, std::size_t steps, bool track_error = true);

/// err(J, M) = max over m and j of |psi(x_j, t_m) - Psi_j^m|, J = J_0 K.
/// M = 0 compares the initial level only.
double max_error(const ExperimentConfig& config, int copies, std::size_t steps);

/// One rate per adjacent pair: log(err_k / err_{k+1}) / log(J_{k+1} / J_k).
std::vector<double> convergence_rates(std::span<const std::size_t> intervals, std::span<const double> errors);

struct OptimalSteps {
    std::size_t steps = 0;
    double error = 0.0;
};

/// Exhaustive scan of M = lo, lo + stride, ..., <= hi. Ties go to the smaller M.
OptimalSteps find_optimal_M(const ExperimentConfig& config, int copies, std::size_t lo, std::size_t hi,
                            std::size_t stride = 100);

struct ConvergenceCase {
    int copies = 0;
    std::size_t intervals = 0;  // J
    std::size_t steps = 0;      // M*
    double error = 0.0;
    std::optional<double> rate;  // against the previous case
};

/// Table of optimal-M errors. The first case scans [lo, hi]; later cases scan
/// [max(100, M_prev), 3 M_prev].
std::vector<ConvergenceCase> convergence_study(const ExperimentConfig& config, std::span<const int> copies,
                                               std::size_t lo, std::size_t hi, std::size_t stride = 100);

/// Same table with M fixed per case instead of searched.
std::vector<ConvergenceCase> convergence_at(const ExperimentConfig& config, std::span<const int> copies,
                                            std::span<const std::size_t> steps);

struct MassSeries {
    std::size_t steps = 0;
    double tau = 0.0;
    std::vector<double> mass;  // m = 0..M
    double max_ratio() const;  // max_m mass[m] / mass[0]
};

/// One run per M (executed concurrently), exact boundary data, no error tracking.
std::vector<MassSeries> mass_sweep(const ExperimentConfig& config, int copies, std::span<const std::size_t> steps);

/// Output every ceil(M / 1000)-th time level and always the last one.
std::size_t csv_stride(std::size_t steps);

std::string spectrum_csv(const SpectrumReport& report);
std::string mass_csv(const MassSeries& series);
std::string mass_sweep_csv(std::span<const MassSeries> sweep);
std::string convergence_csv(std::span<const ConvergenceCase> cases);

}  // namespace ncn
