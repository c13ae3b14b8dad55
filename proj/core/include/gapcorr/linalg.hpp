#pragma once

#include "gapcorr/hp.hpp"

#include <cstddef>
#include <vector>

namespace gapcorr {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using HPMatrix = Matrix<HPReal>;
using HPCMatrix = Matrix<HPComplex>;
using QMatrix = Matrix<Rational>;
using ZMatrix = Matrix<Integer>;

// LU with partial pivoting at the entries' precision; 0x0 gives 1.
HPReal det_hp(HPMatrix m, mpfr_prec_t prec = kDefaultPrec);
HPComplex det_hp(HPCMatrix m, mpfr_prec_t prec = kDefaultPrec);

// Fraction-free (Bareiss) elimination.
Integer det_bareiss(ZMatrix m);
Rational det_exact(const QMatrix& m);

HPMatrix to_hp(const QMatrix& m, mpfr_prec_t prec);

} // namespace gapcorr
