// Command-line front end: spectra, mesh replication, single runs, mass
// sweeps, convergence tables and scalar stability checks.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ncn/eigen.hpp"
#include "ncn/experiments.hpp"
#include "ncn/format.hpp"
#include "ncn/mesh.hpp"
#include "ncn/stability.hpp"

namespace {

using ncn::Complex;
using ncn::format_double;

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << text;
}

Complex parse_complex(const std::string& text)
{
    const auto comma = text.find(',');
    try {
        if (comma == std::string::npos) {
            return {std::stod(text), 0.0};
        }
        return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse complex value '" + text + "' (expected re,im)");
    }
}

ncn::ExperimentConfig make_config(const std::string& mesh_file, const std::string& layout, double xc, double k,
                                  double tmax, const std::string& folding)
{
    ncn::ExperimentConfig config;
    if (!mesh_file.empty()) {
        config.base = ncn::read_mesh_file(mesh_file);
    }
    config.layout = ncn::layout_from_string(layout);
    config.packet = {xc, k, tmax};
    if (folding == "full") {
        config.folding = ncn::BoundaryFolding::kFull;
    } else if (folding == "laplacian") {
        config.folding = ncn::BoundaryFolding::kLaplacianOnly;
    } else {
        throw std::invalid_argument("unknown boundary folding '" + folding + "' (expected full or laplacian)");
    }
    if (!(config.packet.x_c > config.base.origin() && config.packet.x_c < config.base.origin() + config.base.length())) {
        throw std::invalid_argument("packet centre lies outside the mesh");
    }
    return config;
}

// copies = 0 leaves K and J out (multi-K tables).
void print_config(const ncn::ExperimentConfig& config, int copies = 0)
{
    std::cout << "# base J0=" << config.base.intervals() << " X=" << format_double(config.base.length())
              << " layout=" << ncn::to_string(config.layout) << " folding="
              << (config.folding == ncn::BoundaryFolding::kFull ? "full" : "laplacian");
    if (copies > 0) {
        std::cout << " K=" << copies << " J=" << config.base.intervals() * static_cast<std::size_t>(copies);
    }
    std::cout << '\n';
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Numerov-Crank-Nicolson scheme on non-uniform meshes"};
    app.require_subcommand(1);

    // eig
    auto* eig = app.add_subcommand("eig", "Spectrum of the mesh pencil as CSV");
    std::string eig_mesh;
    eig->add_option("--mesh", eig_mesh, "Mesh file (one step per line)")->required();

    // replicate
    auto* rep = app.add_subcommand("replicate", "Write the K-fold replicated mesh");
    std::string rep_mesh, rep_out, rep_layout = "mirrored";
    int rep_k = 1;
    rep->add_option("--mesh", rep_mesh)->required();
    rep->add_option("--k", rep_k)->required();
    rep->add_option("--out", rep_out)->required();
    rep->add_option("--layout", rep_layout, "mirrored or periodic");

    // shared experiment options
    std::string base_file, layout = "periodic", folding = "full", out_dir = ".";
    double xc = 5.0, wavenumber = 4.0, tmax = 1.0;
    auto add_experiment_options = [&](CLI::App* sub) {
        sub->add_option("--mesh-base", base_file, "Base mesh file (default: built-in 14-interval mesh)");
        sub->add_option("--layout", layout, "mirrored or periodic");
        sub->add_option("--tmax", tmax);
        sub->add_option("--xc", xc);
        sub->add_option("--wavenumber", wavenumber);
        sub->add_option("--boundary-folding", folding, "full or laplacian");
        sub->add_option("--out-dir", out_dir);
    };

    // run
    auto* run = app.add_subcommand("run", "Propagate the Gaussian packet once");
    int run_k = 40;
    std::size_t run_steps = 2000;
    run->add_option("--k", run_k)->required();
    run->add_option("--steps", run_steps)->required();
    add_experiment_options(run);

    // mass-sweep
    auto* sweep = app.add_subcommand("mass-sweep", "Mass history for several step counts");
    int sweep_k = 40;
    std::vector<std::size_t> sweep_steps;
    sweep->add_option("--k", sweep_k)->required();
    sweep->add_option("--steps", sweep_steps)->required()->delimiter(',');
    add_experiment_options(sweep);

    // converge
    auto* conv = app.add_subcommand("converge", "Convergence table with optimal step counts");
    std::vector<int> conv_ks;
    std::vector<std::size_t> conv_fixed;
    std::size_t lo = 1000, hi = 4000, stride = 100;
    std::string conv_out = "convergence.csv";
    conv->add_option("--ks", conv_ks)->required()->delimiter(',');
    conv->add_option("--bracket-lo", lo);
    conv->add_option("--bracket-hi", hi);
    conv->add_option("--stride", stride);
    conv->add_option("--fixed-steps", conv_fixed, "Skip the search and use these M per case")->delimiter(',');
    conv->add_option("--out", conv_out);
    add_experiment_options(conv);

    // check
    auto* check = app.add_subcommand("check", "Amplification factor and stability conditions for one lambda");
    std::string lambda_text;
    double tau = 0.0, kappa = 1.0, a = 1.0, tau0 = 0.1, h_omega0 = 0.0;
    check->add_option("--lambda", lambda_text, "re,im")->required();
    check->add_option("--tau", tau)->required();
    check->add_option("--kappa", kappa)->required();
    check->add_option("--a", a);
    check->add_option("--h-omega0", h_omega0, "Mean step of the base mesh (enables c0, c1, c2)");
    check->add_option("--tau0", tau0);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*eig) {
            const auto mesh = ncn::read_mesh_file(eig_mesh);
            std::cout << ncn::spectrum_csv(ncn::generalized_eigenvalues(mesh));
        } else if (*rep) {
            const auto base = ncn::read_mesh_file(rep_mesh);
            ncn::write_mesh_file(rep_out, ncn::replicate({base, rep_k, ncn::layout_from_string(rep_layout)}));
        } else if (*run) {
            const auto config = make_config(base_file, layout, xc, wavenumber, tmax, folding);
            print_config(config, run_k);
            const auto report = ncn::run_packet(config, run_k, run_steps, true);
            const std::size_t J = config.base.intervals() * static_cast<std::size_t>(run_k);
            const ncn::MassSeries series{run_steps, report.tau, report.mass_series};
            const auto path = std::filesystem::path(out_dir) /
                              ("mass_" + std::to_string(J) + "_" + std::to_string(run_steps) + ".csv");
            write_text(path, ncn::mass_csv(series));
            std::cout << "err(" << J << "," << run_steps << ") = " << format_double(*report.max_error) << '\n';
            std::cout << "max mass ratio = " << format_double(series.max_ratio()) << '\n';
        } else if (*sweep) {
            const auto config = make_config(base_file, layout, xc, wavenumber, tmax, folding);
            print_config(config, sweep_k);
            const auto result = ncn::mass_sweep(config, sweep_k, sweep_steps);
            const std::size_t J = config.base.intervals() * static_cast<std::size_t>(sweep_k);
            write_text(std::filesystem::path(out_dir) / ("mass_sweep_J" + std::to_string(J) + ".csv"),
                       ncn::mass_sweep_csv(result));
            std::cout << "M,max_mass_ratio\n";
            for (const auto& s : result) {
                std::cout << s.steps << ',' << format_double(s.max_ratio()) << '\n';
            }
        } else if (*conv) {
            const auto config = make_config(base_file, layout, xc, wavenumber, tmax, folding);
            print_config(config);
            const auto cases = conv_fixed.empty() ? ncn::convergence_study(config, conv_ks, lo, hi, stride)
                                                  : ncn::convergence_at(config, conv_ks, conv_fixed);
            const std::string csv = ncn::convergence_csv(cases);
            write_text(std::filesystem::path(out_dir) / conv_out, csv);
            std::cout << csv;
        } else if (*check) {
            const Complex lambda = parse_complex(lambda_text);
            const auto q = ncn::amplification_factor(lambda, tau, a);
            std::cout << "abs_q," << format_double(std::abs(q)) << '\n';
            std::cout << "spectral_condition," << (ncn::spectral_condition(lambda, tau, kappa, a) ? "true" : "false")
                      << '\n';
            std::cout << "min_kappa," << format_double(ncn::min_kappa(lambda, tau, a)) << '\n';
            if (lambda.imag() != 0.0 && h_omega0 > 0.0) {
                const auto c = ncn::necessary_condition(lambda, h_omega0, a, kappa);
                std::cout << "c0," << format_double(c.c0) << '\n';
                std::cout << "c1," << format_double(c.c1) << '\n';
                std::cout << "c2," << format_double(c.c2) << '\n';
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
