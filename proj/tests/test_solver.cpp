#include <doctest.h>

#include <cmath>
#include <random>

#include "ncn/eigen.hpp"
#include "ncn/experiments.hpp"
#include "ncn/solver.hpp"
#include "ncn/stability.hpp"
#include "test_support.hpp"

using ncn::Complex;
using ncn::GridFunction;
using ncn::Mesh;

namespace {

// (B Psi, Psi) over interior nodes with the mesh weights; equal to the
// discrete energy that the uniform-mesh scheme conserves.
double b_mass(const Mesh& mesh, const GridFunction& psi)
{
    const auto bpsi = ncn::apply_numerov(mesh, psi);
    Complex acc{};
    for (std::size_t j = 1; j < mesh.intervals(); ++j) {
        acc += bpsi[j - 1] * std::conj(psi[j]) * mesh.avg_step(j);
    }
    return acc.real();
}

GridFunction random_state(std::mt19937_64& rng, std::size_t J)
{
    auto v = testing::random_complex(rng, J + 1);
    v.front() = v.back() = 0.0;
    return v;
}

}  // namespace

TEST_CASE("zero state stays zero")
{
    std::mt19937_64 rng(1);
    const Mesh m = testing::random_mesh(rng, 12);
    ncn::SchemeRun run(m, {}, 0.01, GridFunction(13), [](double x) { return 3.0 * x * x; });
    run.step();
    for (const auto& z : run.state()) {
        CHECK(z == Complex{});
    }
    CHECK(run.step_index() == 1);
    CHECK(run.time() == doctest::Approx(0.01));
}

TEST_CASE("one step multiplies an eigenvector by its amplification factor")
{
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 5; ++trial) {
        const Mesh m = testing::random_mesh(rng, 6 + static_cast<std::size_t>(trial) * 3);
        const auto spectrum = ncn::generalized_eigenvalues(m);
        for (const auto& p : spectrum.pairs) {
            for (double tau : {1e-3, 0.1}) {
                const GridFunction w = ncn::with_boundary(p.eigenvector);
                ncn::SchemeRun run(m, {}, tau, w);
                run.step();
                const Complex q = ncn::amplification_factor(p.lambda, tau, 1.0);
                double err = 0.0;
                for (std::size_t j = 0; j < w.size(); ++j) {
                    err = std::max(err, std::abs(run.state()[j] - q * w[j]));
                }
                CHECK(err <= 1e-12 * std::abs(q));
            }
        }
    }
}

TEST_CASE("uniform mesh conserves the Numerov-weighted mass")
{
    std::mt19937_64 rng(3);
    const Mesh u = testing::uniform_mesh(64, 10.0);
    ncn::SchemeRun run(u, {}, 0.005, random_state(rng, 64));
    const double start = b_mass(u, run.state());
    double drift = 0.0;
    for (int m = 0; m < 1000; ++m) {
        run.step();
        drift = std::max(drift, std::abs(b_mass(u, run.state()) - start));
    }
    CHECK(drift <= 1e-12 * start);
}

TEST_CASE("steps are linear in the state")
{
    std::mt19937_64 rng(4);
    const Mesh m = testing::random_mesh(rng, 30);
    const auto u = random_state(rng, 30);
    const auto w = random_state(rng, 30);
    const Complex alpha{0.7, -1.3};
    const Complex beta{-0.2, 2.1};
    GridFunction combo(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        combo[j] = alpha * u[j] + beta * w[j];
    }
    const auto V = [](double x) { return std::sin(x); };
    ncn::SchemeRun ru(m, {}, 0.02, u, V);
    ncn::SchemeRun rw(m, {}, 0.02, w, V);
    ncn::SchemeRun rc(m, {}, 0.02, combo, V);
    for (int s = 0; s < 10; ++s) {
        ru.step();
        rw.step();
        rc.step();
    }
    double scale = 0.0;
    double err = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        const Complex expect = alpha * ru.state()[j] + beta * rw.state()[j];
        scale = std::max(scale, std::abs(expect));
        err = std::max(err, std::abs(rc.state()[j] - expect));
    }
    CHECK(err <= 1e-13 * scale);
}

TEST_CASE("eigenmode growth follows the amplification factor")
{
    const Mesh base = ncn::fourteen_interval_mesh();
    const auto spectrum = ncn::generalized_eigenvalues(base);
    for (const auto& p : spectrum.pairs) {
        for (int K : {1, 3, 10}) {
            const Mesh mesh = ncn::replicate({base, K, ncn::Layout::kMirrored});
            const GridFunction psi0 = ncn::extend(ncn::with_boundary(p.eigenvector), K);
            const double tau = 2e-3;
            ncn::SchemeRun run(mesh, {}, tau, psi0);
            const auto report = ncn::run_simulation(run, 200);
            const double q = std::abs(ncn::amplification_factor(p.lambda * double(K * K), tau, 1.0));
            for (std::size_t m = 0; m <= 200; m += 20) {
                const double expect = std::pow(q, static_cast<double>(m));
                CHECK(std::abs(report.mass_series[m] / report.mass_series[0] - expect) <= 1e-8 * expect);
            }
        }
    }
}

TEST_CASE("mass series and error bookkeeping")
{
    const ncn::PacketParams packet;
    const Mesh u = testing::uniform_mesh(6000, 30.0);
    GridFunction psi(u.intervals() + 1);
    for (std::size_t j = 0; j < psi.size(); ++j) {
        psi[j] = ncn::gaussian_packet(u.node(j), 0.0, packet);
    }
    CHECK(ncn::mass_norm(u, psi) == doctest::Approx(std::pow(M_PI / 2.0, 0.25)).epsilon(1e-10));

    const Mesh small = testing::uniform_mesh(10, 1.0);
    GridFunction ones(11, Complex{1.0, 0.0});
    ones.front() = ones.back() = 0.0;
    CHECK(ncn::mass_norm(small, ones) == doctest::Approx(std::sqrt(9 * 0.1)));
    CHECK(ncn::mass_norm(small, GridFunction(11)) == 0.0);

    ncn::SchemeRun run(small, {}, 0.01, ones);
    const auto report = ncn::run_simulation(run, 5);
    REQUIRE(report.mass_series.size() == 6);
    CHECK(report.mass_series[0] == ncn::mass_norm(small, ones));
    CHECK_FALSE(report.max_error.has_value());
    CHECK(report.final_state.size() == 11);
    for (double v : report.mass_series) {
        CHECK(v >= 0.0);
    }

    // An exact solution sampled on the mesh gives max_error >= error at m = 0 = 0.
    ncn::SchemeRun exact_run(small, {}, 0.01, GridFunction(11));
    const auto zero = ncn::run_simulation(exact_run, 3, [](double, double) { return Complex{}; });
    REQUIRE(zero.max_error.has_value());
    CHECK(*zero.max_error == 0.0);
}

TEST_CASE("inhomogeneous boundary data are folded into the right-hand side")
{
    // A state constant in space with V = 0 is a steady solution when the
    // boundary keeps the same constant: A annihilates constants, B preserves them.
    const Mesh m = ncn::fourteen_interval_mesh();
    GridFunction c(m.intervals() + 1, Complex{0.3, -0.4});
    for (auto folding : {ncn::BoundaryFolding::kFull, ncn::BoundaryFolding::kLaplacianOnly}) {
        ncn::SchemeRun run(m, {}, 0.05, c, {}, folding);
        for (int s = 0; s < 20; ++s) {
            run.step({c.front(), c.back()});
        }
        double err = 0.0;
        for (const auto& z : run.state()) {
            err = std::max(err, std::abs(z - c.front()));
        }
        // The Numerov boundary weights enter only through the change of the
        // boundary value in time, so both foldings keep a static constant.
        CHECK(err <= 1e-13);
    }

    // Time-dependent boundary data separate the two foldings.
    ncn::SchemeRun full(m, {}, 0.05, c, {}, ncn::BoundaryFolding::kFull);
    ncn::SchemeRun lap(m, {}, 0.05, c, {}, ncn::BoundaryFolding::kLaplacianOnly);
    for (int s = 1; s <= 5; ++s) {
        const Complex b = c.front() * (1.0 + 0.1 * s);
        full.step({b, b});
        lap.step({b, b});
    }
    CHECK(std::abs(full.state()[1] - lap.state()[1]) > 1e-6);
}

TEST_CASE("constructor and step errors")
{
    const Mesh m = testing::uniform_mesh(4, 1.0);
    CHECK_THROWS_AS(ncn::SchemeRun(m, {}, 0.0, GridFunction(5)), std::invalid_argument);
    CHECK_THROWS_AS(ncn::SchemeRun(m, {}, 0.1, GridFunction(4)), std::invalid_argument);
    CHECK_THROWS_AS(ncn::SchemeRun(m, {1.0, -1.0}, 0.1, GridFunction(5)), std::invalid_argument);
    CHECK_THROWS_AS(ncn::SchemeRun(m, {}, 0.1, GridFunction(5), [](double) { return NAN; }), std::invalid_argument);

    // A huge tau removes the time-derivative part of L, and V cancels the
    // diagonal of c A + s_N(V .) in row 1, so the first pivot vanishes.
    const double h = 0.25;
    const double a_d = 2.0 / (h * h);
    const double V = -a_d * 12.0 / 10.0;
    ncn::SchemeRun run(m, {}, 1e300, GridFunction(5, Complex{}), [V](double) { return V; });
    try {
        run.step();
        FAIL("expected StepError");
    } catch (const ncn::StepError& e) {
        CHECK(e.step() == 1);
        CHECK(std::string(e.what()).find("step 1") != std::string::npos);
    }
}
