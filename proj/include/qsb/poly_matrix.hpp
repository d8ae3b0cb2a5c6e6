#pragma once

#include <vector>

#include "qsb/mpoly.hpp"

namespace qsb {

// Square matrix of polynomials; `symmetric` asserts entry(i,j) == entry(j,i).
class PolyMatrix {
public:
    PolyMatrix(size_t n, const RingPtr& ring, bool symmetric = false);

    size_t size() const { return n_; }
    const RingPtr& ring() const { return ring_; }
    bool symmetric() const { return symmetric_; }

    const MPoly& at(size_t i, size_t j) const { return rows_.at(i).at(j); }
    void set(size_t i, size_t j, MPoly v);

    PolyMatrix scaled(const Rat& c) const;
    std::vector<std::vector<Rat>> eval(const std::vector<Rat>& point) const;

private:
    size_t n_;
    RingPtr ring_;
    bool symmetric_;
    std::vector<std::vector<MPoly>> rows_;
};

// Exact determinant; cofactor expansion with subset memoization for small
// sizes, fraction-free elimination beyond that.
MPoly determinant(const PolyMatrix& m);

}  // namespace qsb
