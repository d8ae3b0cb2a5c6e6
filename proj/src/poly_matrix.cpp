#include "qsb/poly_matrix.hpp"

#include <unordered_map>

namespace qsb {

PolyMatrix::PolyMatrix(size_t n, const RingPtr& ring, bool symmetric)
    : n_(n), ring_(ring), symmetric_(symmetric), rows_(n, std::vector<MPoly>(n, MPoly(ring))) {}

void PolyMatrix::set(size_t i, size_t j, MPoly v) {
    rows_.at(i).at(j) = v;
    if (symmetric_ && i != j) rows_.at(j).at(i) = std::move(v);
}

PolyMatrix PolyMatrix::scaled(const Rat& c) const {
    PolyMatrix out(n_, ring_, symmetric_);
    for (size_t i = 0; i < n_; ++i)
        for (size_t j = 0; j < n_; ++j) out.rows_[i][j] = rows_[i][j].scaled(c);
    return out;
}

std::vector<std::vector<Rat>> PolyMatrix::eval(const std::vector<Rat>& point) const {
    std::vector<std::vector<Rat>> out(n_, std::vector<Rat>(n_));
    for (size_t i = 0; i < n_; ++i)
        for (size_t j = 0; j < n_; ++j) out[i][j] = rows_[i][j].eval(point);
    return out;
}

namespace {

// expansion along the first remaining row, memoized on the column subset
MPoly minor_det(const PolyMatrix& m, unsigned cols, size_t row,
                std::unordered_map<unsigned, MPoly>& memo) {
    if (cols == 0) return MPoly::constant(m.ring(), Rat(1));
    auto it = memo.find(cols);
    if (it != memo.end()) return it->second;
    MPoly acc(m.ring());
    int sign = 1;
    for (size_t j = 0, seen = 0; j < m.size(); ++j) {
        if (!(cols & (1u << j))) continue;
        const MPoly& e = m.at(row, j);
        if (!e.is_zero()) {
            MPoly sub = minor_det(m, cols & ~(1u << j), row + 1, memo);
            MPoly term = e * sub;
            acc += sign > 0 ? term : -term;
        }
        sign = -sign;
        ++seen;
    }
    memo.emplace(cols, acc);
    return acc;
}

}  // namespace

MPoly determinant(const PolyMatrix& m) {
    size_t n = m.size();
    if (n == 0) return MPoly::constant(m.ring(), Rat(1));
    if (n <= 8) {
        std::unordered_map<unsigned, MPoly> memo;
        return minor_det(m, (1u << n) - 1, 0, memo);
    }
    // fraction-free elimination
    std::vector<std::vector<MPoly>> a(n, std::vector<MPoly>(n, MPoly(m.ring())));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i][j] = m.at(i, j);
    MPoly prev = MPoly::constant(m.ring(), Rat(1));
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            size_t s = k + 1;
            while (s < n && a[s][k].is_zero()) ++s;
            if (s == n) return MPoly(m.ring());
            std::swap(a[k], a[s]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                MPoly num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                auto q = divexact(num, prev);
                if (!q) throw std::logic_error("determinant: inexact division");
                a[i][j] = *q;
            }
        prev = a[k][k];
    }
    MPoly det = a[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

}  // namespace qsb
