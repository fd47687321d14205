#include "fostab/interval.hpp"

#include <random>
#include <string>

#include "fostab/errors.hpp"

namespace fostab {

IntervalMatrix::IntervalMatrix(RealMatrix lower, RealMatrix upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (!lower_.is_square() || lower_.rows() != upper_.rows() || lower_.cols() != upper_.cols()) {
        throw ShapeMismatchError("interval bounds must be square matrices of equal shape");
    }
    if (!lower_.all_finite() || !upper_.all_finite()) {
        throw NonFiniteError("interval bound has a NaN or infinite entry");
    }
    for (std::size_t i = 0; i < lower_.rows(); ++i) {
        for (std::size_t j = 0; j < lower_.cols(); ++j) {
            if (lower_(i, j) > upper_(i, j)) {
                throw BoundsViolationError("interval entry (" + std::to_string(i) + ", " +
                                           std::to_string(j) + ") has lower bound above upper bound");
            }
        }
    }
}

bool IntervalMatrix::contains(const RealMatrix& x) const {
    if (x.rows() != lower_.rows() || x.cols() != lower_.cols()) {
        throw ShapeMismatchError("membership query shape does not match the interval");
    }
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < x.cols(); ++j) {
            if (x(i, j) < lower_(i, j) || x(i, j) > upper_(i, j)) return false;
        }
    }
    return true;
}

std::vector<std::pair<std::size_t, std::size_t>> free_positions(const IntervalMatrix& a) {
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            if (a.lower()(i, j) != a.upper()(i, j)) free.emplace_back(i, j);
        }
    }
    return free;
}

VertexSet::VertexSet(IntervalMatrix source, std::size_t vertex_cap)
    : source_(std::move(source)), free_(free_positions(source_)), count_(0) {
    if (free_.size() > vertex_cap) {
        throw VertexExplosionError("interval has " + std::to_string(free_.size()) +
                                   " free entries; vertex cap is " + std::to_string(vertex_cap));
    }
    count_ = std::uint64_t{1} << free_.size();
}

RealMatrix VertexSet::vertex(std::uint64_t index) const {
    if (index >= count_) {
        throw ShapeMismatchError("vertex index " + std::to_string(index) + " out of range");
    }
    RealMatrix v = source_.lower();
    for (std::size_t b = 0; b < free_.size(); ++b) {
        if ((index >> b) & 1u) {
            const auto [i, j] = free_[b];
            v(i, j) = source_.upper()(i, j);
        }
    }
    return v;
}

std::vector<RealMatrix> sample(const IntervalMatrix& a, std::size_t count, std::uint64_t seed) {
    if (count == 0) {
        throw ConfigError("sample count must be at least 1");
    }
    std::mt19937_64 rng(seed);
    std::vector<RealMatrix> draws;
    draws.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        RealMatrix x(a.dim(), a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) {
            for (std::size_t j = 0; j < a.dim(); ++j) {
                const double lo = a.lower()(i, j);
                const double up = a.upper()(i, j);
                x(i, j) = lo + uniform01(rng) * (up - lo);
            }
        }
        draws.push_back(std::move(x));
    }
    return draws;
}

} // namespace fostab
