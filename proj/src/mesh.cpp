#include "ncn/mesh.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "ncn/format.hpp"

namespace ncn {

Mesh::Mesh(std::vector<double> nodes) : nodes_(std::move(nodes))
{
    const std::size_t J = nodes_.size() - 1;
    steps_.resize(J);
    for (std::size_t j = 1; j <= J; ++j) {
        steps_[j - 1] = nodes_[j] - nodes_[j - 1];
    }
    avg_steps_.resize(J - 1);
    for (std::size_t j = 1; j < J; ++j) {
        avg_steps_[j - 1] = 0.5 * (steps_[j - 1] + steps_[j]);
    }
}

Mesh Mesh::from_nodes(std::vector<double> nodes)
{
    if (nodes.size() < 3) {
        throw MeshError("mesh needs at least two intervals (one interior node)");
    }
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (!std::isfinite(nodes[j])) {
            throw MeshError("node " + std::to_string(j) + " is not finite", j);
        }
        if (j > 0 && !(nodes[j] > nodes[j - 1])) {
            throw MeshError("nodes must be strictly increasing (step " + std::to_string(j) +
                                " is not positive)",
                            j);
        }
    }
    Mesh mesh(std::move(nodes));

    // Telescoping sum of the derived steps must reproduce the length.
    double sum = 0.0;
    for (double h : mesh.steps_) {
        sum += h;
    }
    if (std::abs(sum - mesh.length()) > 1e-12 * mesh.length()) {
        throw MeshError("step sum " + format_double(sum) + " disagrees with length " +
                        format_double(mesh.length()));
    }
    return mesh;
}

bool Mesh::is_uniform(double rel_tol) const
{
    const double h = mean_step();
    for (double s : steps_) {
        if (std::abs(s - h) > rel_tol * h) {
            return false;
        }
    }
    return true;
}

Mesh mesh_from_steps(std::span<const double> steps, double origin)
{
    if (steps.empty()) {
        throw MeshError("step list is empty");
    }
    if (!std::isfinite(origin)) {
        throw MeshError("origin is not finite");
    }
    std::vector<double> nodes;
    nodes.reserve(steps.size() + 1);
    nodes.push_back(origin);
    for (std::size_t j = 0; j < steps.size(); ++j) {
        const double h = steps[j];
        if (!std::isfinite(h) || h <= 0.0) {
            throw MeshError("step " + std::to_string(j + 1) + " must be positive and finite, got " +
                                format_double(h),
                            j + 1);
        }
        nodes.push_back(nodes.back() + h);
    }
    return Mesh::from_nodes(std::move(nodes));
}

const char* to_string(Layout layout)
{
    switch (layout) {
    case Layout::kMirrored:
        return "mirrored";
    case Layout::kPeriodic:
        return "periodic";
    }
    return "?";
}

Layout layout_from_string(const std::string& name)
{
    if (name == "mirrored") {
        return Layout::kMirrored;
    }
    if (name == "periodic") {
        return Layout::kPeriodic;
    }
    throw std::invalid_argument("unknown layout '" + name + "' (expected mirrored or periodic)");
}

Mesh replicate(const ReplicationSpec& spec)
{
    const int K = spec.copies;
    if (K < 1) {
        throw std::invalid_argument("replication count K must be >= 1, got " + std::to_string(K));
    }
    const Mesh& base = spec.base;
    if (K == 1) {
        return base;
    }

    const std::size_t J0 = base.intervals();
    const double x0 = base.origin();
    const double X = base.length();
    const double Kd = static_cast<double>(K);
    // Base coordinates relative to its own origin.
    auto local = [&](std::size_t l) { return base.node(l) - x0; };

    std::vector<double> nodes(J0 * static_cast<std::size_t>(K) + 1);
    for (int b = 0; b < K; ++b) {
        const std::size_t first = static_cast<std::size_t>(b) * J0;
        for (std::size_t l = 0; l < J0; ++l) {
            double x = 0.0;
            if (spec.layout == Layout::kPeriodic || b % 2 == 0) {
                x = static_cast<double>(b) * X / Kd + local(l) / Kd;
            } else {
                x = static_cast<double>(b + 1) * X / Kd - local(J0 - l) / Kd;
            }
            nodes[first + l] = x0 + x;
        }
    }
    nodes.back() = x0 + X;
    Mesh mesh = Mesh::from_nodes(std::move(nodes));

    if (spec.layout == Layout::kMirrored) {
        for (int k = 1; k < K; ++k) {
            const std::size_t j = static_cast<std::size_t>(k) * J0;
            const double left = mesh.step(j);
            const double right = mesh.step(j + 1);
            if (std::abs(left - right) > 1e-10 * (left + right)) {
                throw MeshError("mirrored junction " + std::to_string(j) + " has unequal steps", j);
            }
        }
    }
    return mesh;
}

GridFunction extend(std::span<const Complex> w, int copies)
{
    if (copies < 1) {
        throw std::invalid_argument("replication count K must be >= 1, got " + std::to_string(copies));
    }
    if (w.size() < 3) {
        throw std::invalid_argument("base grid function needs at least three nodes");
    }
    if (w.front() != Complex{} || w.back() != Complex{}) {
        throw std::invalid_argument("extension requires a grid function vanishing at both endpoints");
    }
    const std::size_t J0 = w.size() - 1;
    GridFunction out(J0 * static_cast<std::size_t>(copies) + 1, Complex{});
    for (int b = 0; b < copies; ++b) {
        const std::size_t first = static_cast<std::size_t>(b) * J0;
        for (std::size_t l = 0; l < J0; ++l) {
            out[first + l] = (b % 2 == 0) ? w[l] : -w[J0 - l];
        }
    }
    return out;
}

Mesh parse_mesh_text(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    double origin = 0.0;
    std::vector<double> steps;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) {
            continue;
        }
        std::istringstream fields(line.substr(start));
        if (line[start] == '#') {
            std::string hash;
            std::string key;
            fields >> hash >> key;
            if (hash == "#" && key == "origin") {
                if (!(fields >> origin)) {
                    throw MeshError("line " + std::to_string(line_no) + ": malformed origin header");
                }
            }
            continue;
        }
        double h = 0.0;
        std::string rest;
        if (!(fields >> h) || (fields >> rest)) {
            throw MeshError("line " + std::to_string(line_no) + ": expected a single step value",
                            steps.size() + 1);
        }
        steps.push_back(h);
    }
    return mesh_from_steps(steps, origin);
}

std::string format_mesh_text(const Mesh& mesh)
{
    std::string out = "# origin " + format_double(mesh.origin()) + "\n";
    for (double h : mesh.steps()) {
        out += format_double(h);
        out += '\n';
    }
    return out;
}

Mesh read_mesh_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open mesh file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_mesh_text(buf.str());
}

void write_mesh_file(const std::filesystem::path& path, const Mesh& mesh)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write mesh file " + path.string());
    }
    out << format_mesh_text(mesh);
}

}  // namespace ncn
