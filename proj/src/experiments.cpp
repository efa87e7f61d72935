#include "ncn/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <future>
#include <stdexcept>
#include <thread>

#include "ncn/format.hpp"

namespace ncn {

namespace {

// Evaluates fn(0..n-1) on a bounded pool of async tasks; results keep index order.
template <typename R>
std::vector<R> parallel_map(std::size_t n, const std::function<R(std::size_t)>& fn)
{
    const std::size_t width = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    std::vector<R> out(n);
    for (std::size_t first = 0; first < n; first += width) {
        const std::size_t last = std::min(n, first + width);
        std::vector<std::future<R>> jobs;
        for (std::size_t i = first; i < last; ++i) {
            jobs.push_back(std::async(std::launch::async, fn, i));
        }
        for (std::size_t i = first; i < last; ++i) {
            out[i] = jobs[i - first].get();
        }
    }
    return out;
}

GridFunction sample_packet(const Mesh& mesh, const PacketParams& packet, double t)
{
    GridFunction psi(mesh.intervals() + 1);
    for (std::size_t j = 0; j < psi.size(); ++j) {
        psi[j] = gaussian_packet(mesh.node(j), t, packet);
    }
    return psi;
}

}  // namespace

Complex gaussian_packet(double x, double t, const PacketParams& params)
{
    const Complex spread{1.0, 4.0 * t};
    const double d = x - params.x_c;
    const Complex exponent = (Complex{-d * d, params.k * (d - params.k * t)}) / spread;
    return std::sqrt(1.0 / spread) * std::exp(exponent);
}

const char* to_string(BaseScaling scaling)
{
    switch (scaling) {
    case BaseScaling::kFitDomain:
        return "fit-domain (X = 30)";
    case BaseScaling::kDivideByOneHalf:
        return "divide-by-1.5 (X = 49/1.5)";
    }
    return "?";
}

Mesh fourteen_interval_mesh(BaseScaling scaling)
{
    constexpr std::array<double, 14> kShape{1, 1, 1, 5, 3, 1, 3, 4, 5, 5, 5, 5, 5, 5};
    double total = 0.0;
    for (double s : kShape) {
        total += s;
    }
    std::vector<double> steps(kShape.begin(), kShape.end());
    for (double& s : steps) {
        s = scaling == BaseScaling::kFitDomain ? s * 30.0 / total : s / 1.5;
    }
    return mesh_from_steps(steps, 0.0);
}

RunReport run_packet(const ExperimentConfig& config, int copies, std::size_t steps, bool track_error)
{
    if (steps == 0) {
        throw std::invalid_argument("step count M must be >= 1");
    }
    Mesh mesh = replicate({config.base, copies, config.layout});
    const PacketParams packet = config.packet;
    GridFunction initial = sample_packet(mesh, packet, 0.0);
    const double tau = packet.T / static_cast<double>(steps);
    SchemeRun run(std::move(mesh), config.physics, tau, std::move(initial), {}, config.folding);

    const ExactSolution exact = [packet](double x, double t) { return gaussian_packet(x, t, packet); };
    RunReport report = run_simulation(run, steps, exact);
    if (!track_error) {
        report.max_error.reset();
    }
    return report;
}

double max_error(const ExperimentConfig& config, int copies, std::size_t steps)
{
    if (steps == 0) {
        // Only the sampled initial level is compared.
        const Mesh mesh = replicate({config.base, copies, config.layout});
        const GridFunction initial = sample_packet(mesh, config.packet, 0.0);
        double worst = 0.0;
        for (std::size_t j = 0; j < initial.size(); ++j) {
            worst = std::max(worst, std::abs(gaussian_packet(mesh.node(j), 0.0, config.packet) - initial[j]));
        }
        return worst;
    }
    return *run_packet(config, copies, steps, true).max_error;
}

std::vector<double> convergence_rates(std::span<const std::size_t> intervals, std::span<const double> errors)
{
    if (intervals.size() != errors.size()) {
        throw std::invalid_argument("convergence_rates: size mismatch");
    }
    for (double e : errors) {
        if (!(e > 0.0)) {
            throw std::invalid_argument("convergence_rates: errors must be positive");
        }
    }
    std::vector<double> rates;
    for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
        if (intervals[k + 1] <= intervals[k]) {
            throw std::invalid_argument("convergence_rates: J must increase strictly");
        }
        rates.push_back(std::log(errors[k] / errors[k + 1]) /
                        std::log(static_cast<double>(intervals[k + 1]) / static_cast<double>(intervals[k])));
    }
    return rates;
}

OptimalSteps find_optimal_M(const ExperimentConfig& config, int copies, std::size_t lo, std::size_t hi,
                            std::size_t stride)
{
    if (lo == 0 || stride == 0 || hi < lo) {
        throw std::invalid_argument("find_optimal_M: empty search grid");
    }
    std::vector<std::size_t> grid;
    for (std::size_t m = lo; m <= hi; m += stride) {
        grid.push_back(m);
    }
    const auto errors = parallel_map<double>(grid.size(), [&](std::size_t i) {
        return max_error(config, copies, grid[i]);
    });
    OptimalSteps best{grid[0], errors[0]};
    for (std::size_t i = 1; i < grid.size(); ++i) {
        // NaN errors (overflowed blowups) never win.
        if (errors[i] < best.error || std::isnan(best.error)) {
            best = {grid[i], errors[i]};
        }
    }
    return best;
}

namespace {

void fill_rates(std::vector<ConvergenceCase>& cases)
{
    for (std::size_t k = 1; k < cases.size(); ++k) {
        const std::array<std::size_t, 2> js{cases[k - 1].intervals, cases[k].intervals};
        const std::array<double, 2> es{cases[k - 1].error, cases[k].error};
        cases[k].rate = convergence_rates(js, es).front();
    }
}

}  // namespace

std::vector<ConvergenceCase> convergence_study(const ExperimentConfig& config, std::span<const int> copies,
                                               std::size_t lo, std::size_t hi, std::size_t stride)
{
    std::vector<ConvergenceCase> cases;
    for (std::size_t k = 0; k < copies.size(); ++k) {
        std::size_t case_lo = lo;
        std::size_t case_hi = hi;
        if (k > 0) {
            case_lo = std::max<std::size_t>(100, cases.back().steps);
            case_hi = 3 * cases.back().steps;
        }
        const auto best = find_optimal_M(config, copies[k], case_lo, case_hi, stride);
        cases.push_back({copies[k], config.base.intervals() * static_cast<std::size_t>(copies[k]), best.steps,
                         best.error, std::nullopt});
    }
    fill_rates(cases);
    return cases;
}

std::vector<ConvergenceCase> convergence_at(const ExperimentConfig& config, std::span<const int> copies,
                                            std::span<const std::size_t> steps)
{
    if (copies.size() != steps.size()) {
        throw std::invalid_argument("convergence_at: one step count per case required");
    }
    const auto errors = parallel_map<double>(copies.size(), [&](std::size_t i) {
        return max_error(config, copies[i], steps[i]);
    });
    std::vector<ConvergenceCase> cases;
    for (std::size_t k = 0; k < copies.size(); ++k) {
        cases.push_back({copies[k], config.base.intervals() * static_cast<std::size_t>(copies[k]), steps[k],
                         errors[k], std::nullopt});
    }
    fill_rates(cases);
    return cases;
}

double MassSeries::max_ratio() const
{
    double best = 0.0;
    for (double m : mass) {
        best = std::max(best, m);
    }
    return best / mass.front();
}

std::vector<MassSeries> mass_sweep(const ExperimentConfig& config, int copies, std::span<const std::size_t> steps)
{
    if (steps.empty()) {
        throw std::invalid_argument("mass_sweep: no step counts given");
    }
    return parallel_map<MassSeries>(steps.size(), [&](std::size_t i) {
        RunReport r = run_packet(config, copies, steps[i], false);
        return MassSeries{steps[i], r.tau, std::move(r.mass_series)};
    });
}

std::size_t csv_stride(std::size_t steps)
{
    return std::max<std::size_t>(1, (steps + 999) / 1000);
}

std::string spectrum_csv(const SpectrumReport& report)
{
    std::string out = "index,lambda_re,lambda_im,residual\n";
    for (std::size_t i = 0; i < report.pairs.size(); ++i) {
        const auto& p = report.pairs[i];
        out += std::to_string(i) + ',' + format_double(p.lambda.real()) + ',' + format_double(p.lambda.imag()) +
               ',' + format_double(p.residual) + '\n';
    }
    return out;
}

namespace {

void append_mass_rows(std::string& out, const MassSeries& s, bool with_m_column)
{
    const std::size_t stride = csv_stride(s.steps);
    for (std::size_t m = 0; m < s.mass.size(); ++m) {
        if (m % stride != 0 && m + 1 != s.mass.size()) {
            continue;
        }
        if (with_m_column) {
            out += std::to_string(s.steps) + ',';
        }
        out += std::to_string(m) + ',' + format_double(static_cast<double>(m) * s.tau) + ',' +
               format_double(s.mass[m]) + '\n';
    }
}

}  // namespace

std::string mass_csv(const MassSeries& series)
{
    std::string out = "m,t,mass\n";
    append_mass_rows(out, series, false);
    return out;
}

std::string mass_sweep_csv(std::span<const MassSeries> sweep)
{
    std::string out = "M,m,t,mass\n";
    for (const auto& s : sweep) {
        append_mass_rows(out, s, true);
    }
    return out;
}

std::string convergence_csv(std::span<const ConvergenceCase> cases)
{
    std::string out = "J,Mstar,err,p\n";
    for (const auto& c : cases) {
        out += std::to_string(c.intervals) + ',' + std::to_string(c.steps) + ',' + format_double(c.error) + ',' +
               (c.rate ? format_double(*c.rate) : std::string()) + '\n';
    }
    return out;
}

}  // namespace ncn
