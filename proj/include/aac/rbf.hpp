#pragma once

#include <cstddef>
#include <vector>

#include "aac/mat.hpp"

namespace aac {

/**
 * Gaussian radial basis layout for the linear-in-parameters network
 * u(x, w) = Pi(x) w. Pi is block diagonal: output channel l owns a
 * contiguous block of basis functions, and basis i evaluates to
 * exp(-||x - c_i||^2 / width^2), so every value lies in (0, 1] with the
 * peak 1 at the center.
 */
class RbfLayout {
public:
    RbfLayout() = default;

    /// counts[l] basis functions per output channel; centers is the
    /// concatenation over channels, each of dimension input_dim.
    RbfLayout(std::vector<std::size_t> counts,
              std::vector<Vec> centers, double width);

    std::size_t input_dim() const { return input_dim_; }
    std::size_t output_dim() const { return counts_.size(); }
    /// Total weight length (sum of per-channel counts).
    std::size_t weight_dim() const { return total_; }
    const std::vector<std::size_t>& counts() const { return counts_; }
    const std::vector<Vec>& centers() const { return centers_; }
    double width() const { return width_; }

    /// First basis index of channel l.
    std::size_t block_offset(std::size_t l) const { return offsets_[l]; }

    /// All basis values at x, concatenated over channels (length weight_dim).
    void basis_values(const Vec& x, double* out) const;

private:
    std::vector<std::size_t> counts_;
    std::vector<std::size_t> offsets_;
    std::vector<Vec> centers_;
    double width_ = 0.0;
    std::size_t input_dim_ = 0;
    std::size_t total_ = 0;
    Vec soa_;  // dimension-major center coordinates for the kernel
};

/// Block-diagonal basis matrix Pi(x), output_dim x weight_dim. Entries
/// outside a channel's block are exactly zero.
Mat basis_matrix(const RbfLayout& layout, const Vec& x);

/// Network output Pi(x) w, one value per output channel.
Vec evaluate(const RbfLayout& layout, const Vec& weights, const Vec& x);

}  // namespace aac
