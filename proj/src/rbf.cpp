#include "aac/rbf.hpp"

#include <string>

#include "aac/errors.hpp"
#include "aac/kernels.hpp"

namespace aac {

RbfLayout::RbfLayout(std::vector<std::size_t> counts, std::vector<Vec> centers,
                     double width)
    : counts_(std::move(counts)), centers_(std::move(centers)), width_(width) {
    if (!(width_ > 0.0)) throw InvalidParameter("RbfLayout: width must be > 0");
    if (counts_.empty()) throw InvalidParameter("RbfLayout: no output channels");
    total_ = 0;
    offsets_.reserve(counts_.size());
    for (std::size_t c : counts_) {
        if (c == 0) throw InvalidParameter("RbfLayout: empty channel block");
        offsets_.push_back(total_);
        total_ += c;
    }
    if (centers_.size() != total_)
        throw DimensionMismatch("RbfLayout: " + std::to_string(centers_.size()) +
                                " centers for " + std::to_string(total_) +
                                " basis functions");
    input_dim_ = centers_.front().size();
    for (const Vec& c : centers_)
        if (c.size() != input_dim_)
            throw DimensionMismatch("RbfLayout: centers of mixed dimension");

    soa_.resize(input_dim_ * total_);
    for (std::size_t i = 0; i < total_; ++i)
        for (std::size_t j = 0; j < input_dim_; ++j)
            soa_[j * total_ + i] = centers_[i][j];
}

void RbfLayout::basis_values(const Vec& x, double* out) const {
    if (x.size() != input_dim_)
        throw DimensionMismatch("RbfLayout: input of dimension " +
                                std::to_string(x.size()) + ", expected " +
                                std::to_string(input_dim_));
    kernels::gaussian_row(x.data(), soa_.data(), input_dim_, total_,
                          1.0 / (width_ * width_), out);
}

Mat basis_matrix(const RbfLayout& layout, const Vec& x) {
    Vec values(layout.weight_dim());
    layout.basis_values(x, values.data());
    Mat pi(layout.output_dim(), layout.weight_dim());
    for (std::size_t l = 0; l < layout.output_dim(); ++l) {
        const std::size_t off = layout.block_offset(l);
        for (std::size_t i = 0; i < layout.counts()[l]; ++i)
            pi(l, off + i) = values[off + i];
    }
    return pi;
}

Vec evaluate(const RbfLayout& layout, const Vec& weights, const Vec& x) {
    if (weights.size() != layout.weight_dim())
        throw DimensionMismatch("evaluate: weight vector of length " +
                                std::to_string(weights.size()) + ", expected " +
                                std::to_string(layout.weight_dim()));
    Vec values(layout.weight_dim());
    layout.basis_values(x, values.data());
    Vec out(layout.output_dim());
    for (std::size_t l = 0; l < layout.output_dim(); ++l) {
        const std::size_t off = layout.block_offset(l);
        out[l] = kernels::dot(values.data() + off, weights.data() + off,
                              layout.counts()[l]);
    }
    return out;
}

}  // namespace aac
