#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "fostab/matrix.hpp"
#include "fostab/numeric.hpp"

namespace fostab {

/// Entrywise box of real square matrices, lower(i,j) <= x(i,j) <= upper(i,j).
/// An entry is degenerate when its bounds coincide exactly.
class IntervalMatrix {
public:
    IntervalMatrix(RealMatrix lower, RealMatrix upper);

    std::size_t dim() const { return lower_.rows(); }
    const RealMatrix& lower() const { return lower_; }
    const RealMatrix& upper() const { return upper_; }

    /// Closed-box membership.
    bool contains(const RealMatrix& x) const;

private:
    RealMatrix lower_;
    RealMatrix upper_;
};

/// Row-major positions (i, j) whose bounds differ.
std::vector<std::pair<std::size_t, std::size_t>> free_positions(const IntervalMatrix& a);

/// The 2^k corner matrices of an interval box with k free entries. Vertices
/// are indexed by a binary counter: bit b of the index picks the upper bound
/// (1) or the lower bound (0) of the b-th free position in row-major order,
/// so index 0 is the all-lower corner. Vertices are produced on demand; the
/// set is never materialized.
class VertexSet {
public:
    explicit VertexSet(IntervalMatrix source, std::size_t vertex_cap = kDefaultVertexCap);

    std::uint64_t size() const { return count_; }
    const IntervalMatrix& source() const { return source_; }
    const std::vector<std::pair<std::size_t, std::size_t>>& positions() const { return free_; }

    RealMatrix vertex(std::uint64_t index) const;

    class const_iterator {
    public:
        const_iterator(const VertexSet* set, std::uint64_t index) : set_(set), index_(index) {}
        RealMatrix operator*() const { return set_->vertex(index_); }
        const_iterator& operator++() {
            ++index_;
            return *this;
        }
        bool operator!=(const const_iterator& other) const { return index_ != other.index_; }

    private:
        const VertexSet* set_;
        std::uint64_t index_;
    };

    const_iterator begin() const { return const_iterator(this, 0); }
    const_iterator end() const { return const_iterator(this, count_); }

private:
    IntervalMatrix source_;
    std::vector<std::pair<std::size_t, std::size_t>> free_;
    std::uint64_t count_;
};

/// `count` independent uniform draws from the box. Deterministic for a given
/// seed; degenerate entries reproduce their bound exactly.
std::vector<RealMatrix> sample(const IntervalMatrix& a, std::size_t count, std::uint64_t seed);

} // namespace fostab
