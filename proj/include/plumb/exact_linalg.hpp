// Small dense exact linear algebra over Int / Rat.
//
// Everything here is fraction-free or plain rational elimination; matrices
// stay below ~10x10 so asymptotics are irrelevant, exactness is not.

#pragma once

#include <vector>

#include "plumb/numeric.hpp"

namespace plumb {

template <typename T>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, T(0)) {}

    T& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const T& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    Mat transposed() const {
        Mat m(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    bool operator==(const Mat& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }
};

using IMat = Mat<Int>;
using RMat = Mat<Rat>;

RMat to_rat(const IMat& m);

template <typename T>
Mat<T> mat_mul(const Mat<T>& x, const Mat<T>& y) {
    Mat<T> r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            if (x(i, k) == 0) continue;
            for (int j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
        }
    return r;
}

template <typename T>
std::vector<T> mat_vec(const Mat<T>& m, const std::vector<T>& v) {
    std::vector<T> r(m.rows, T(0));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r[i] += m(i, j) * v[j];
    return r;
}

// Determinant by fraction-free (Bareiss) elimination.
Int det_bareiss(IMat m);

// Leading principal minors det(m[0..k, 0..k]) for k = 0..n-1.
std::vector<Int> leading_minors(const IMat& m);

// All leading principal minors of -W positive.
bool is_positive_definite(const IMat& m);

Rat det_rat(RMat m);

// Exact inverse (Gauss-Jordan); throws SingularMatrix.
RMat inverse(RMat m);

// Integer inverse of a unimodular matrix; throws if |det| != 1.
IMat inverse_unimodular(const IMat& m);

// Signature (#positive - #negative eigenvalues) of a symmetric rational
// matrix, via exact congruence diagonalization.
int signature(RMat m);

} // namespace plumb
