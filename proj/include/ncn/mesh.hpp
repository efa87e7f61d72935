#pragma once

#include <complex>
#include <cstddef>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncn {

using Complex = std::complex<double>;

/// Complex values on the nodes 0..J of a mesh. Members of the Dirichlet
/// space carry exact zeros at indices 0 and J.
using GridFunction = std::vector<Complex>;

/// Raised for malformed mesh input. `index()` is the 1-based position of the
/// offending step when the failure is attributable to one.
class MeshError : public std::invalid_argument {
public:
    explicit MeshError(const std::string& what, std::size_t index = 0)
        : std::invalid_argument(what), index_(index) {}
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

/**
 * Non-uniform mesh x_0 < x_1 < ... < x_J on [x_0, x_0 + X].
 *
 * Nodes are the stored representation. Steps h_j = x_j - x_{j-1} (j = 1..J)
 * and averaged steps hbar_j = (h_j + h_{j+1}) / 2 (j = 1..J-1) are caches
 * derived from the nodes at construction. Accessors use the 1-based
 * interval numbering of the difference formulas.
 */
class Mesh {
public:
    /// Takes ownership of the node list. Requires J >= 2, finite and
    /// strictly increasing nodes.
    static Mesh from_nodes(std::vector<double> nodes);

    std::size_t intervals() const { return nodes_.size() - 1; }  // J
    std::size_t interior_count() const { return nodes_.size() - 2; }  // J - 1

    std::span<const double> nodes() const { return nodes_; }
    double node(std::size_t j) const { return nodes_[j]; }

    /// h_j for j = 1..J.
    double step(std::size_t j) const { return steps_[j - 1]; }
    std::span<const double> steps() const { return steps_; }

    /// hbar_j for j = 1..J-1.
    double avg_step(std::size_t j) const { return avg_steps_[j - 1]; }
    std::span<const double> avg_steps() const { return avg_steps_; }

    double origin() const { return nodes_.front(); }
    double length() const { return nodes_.back() - nodes_.front(); }
    double mean_step() const { return length() / static_cast<double>(intervals()); }

    bool is_uniform(double rel_tol = 1e-12) const;

private:
    explicit Mesh(std::vector<double> nodes);

    std::vector<double> nodes_;
    std::vector<double> steps_;
    std::vector<double> avg_steps_;
};

/// Builds nodes by cumulative summation of `steps` starting at `origin`.
/// Throws MeshError naming the first non-positive or non-finite step.
Mesh mesh_from_steps(std::span<const double> steps, double origin = 0.0);

/// How the K scaled copies of a base mesh are laid out.
enum class Layout {
    /// Even blocks copy the base, odd blocks mirror it. Neighbouring blocks
    /// meet with equal steps, and eigenpairs extend through `extend`.
    kMirrored,
    /// Every block is a plain scaled copy of the base.
    kPeriodic,
};

const char* to_string(Layout layout);
Layout layout_from_string(const std::string& name);

struct ReplicationSpec {
    Mesh base;
    int copies = 1;  // K
    Layout layout = Layout::kMirrored;
};

/// Tiles [x_0, x_0 + X] with K copies of the base scaled by 1/K. The result
/// has J = J_0 K intervals and mean step h_{omega^0} / K.
Mesh replicate(const ReplicationSpec& spec);

/// Extension operator onto the mirrored replication: copies `w` on even
/// blocks and stores the negated reflection on odd blocks. `w` must vanish
/// at both base endpoints.
GridFunction extend(std::span<const Complex> w, int copies);

/// Plain text mesh format: one step per line, optional `# origin <value>`
/// header. Blank lines and other `#` lines are ignored.
Mesh read_mesh_file(const std::filesystem::path& path);
void write_mesh_file(const std::filesystem::path& path, const Mesh& mesh);
Mesh parse_mesh_text(const std::string& text);
std::string format_mesh_text(const Mesh& mesh);

}  // namespace ncn
