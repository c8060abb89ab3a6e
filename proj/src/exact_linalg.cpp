#include "plumb/exact_linalg.hpp"

namespace plumb {

RMat to_rat(const IMat& m) {
    RMat r(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = Rat(m.a[i]);
    return r;
}

Int det_bareiss(IMat m) {
    if (m.rows != m.cols) throw Error("det: not square");
    int n = m.rows;
    if (n == 0) return 1;
    Int prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (int j = k; j < n; ++j) std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                m(i, j) = t / prev; // exact division, Bareiss invariant
            }
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

std::vector<Int> leading_minors(const IMat& m) {
    if (m.rows != m.cols) throw Error("leading_minors: not square");
    std::vector<Int> out;
    for (int k = 1; k <= m.rows; ++k) {
        IMat sub(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) sub(i, j) = m(i, j);
        out.push_back(det_bareiss(sub));
    }
    return out;
}

bool is_positive_definite(const IMat& m) {
    for (const Int& d : leading_minors(m))
        if (d <= 0) return false;
    return true;
}

Rat det_rat(RMat m) {
    if (m.rows != m.cols) throw Error("det: not square");
    int n = m.rows;
    Rat det(1);
    for (int k = 0; k < n; ++k) {
        int p = -1;
        for (int i = k; i < n; ++i)
            if (m(i, k) != 0) { p = i; break; }
        if (p < 0) return Rat(0);
        if (p != k) {
            for (int j = k; j < n; ++j) std::swap(m(k, j), m(p, j));
            det = -det;
        }
        det *= m(k, k);
        Rat inv = Rat(1) / m(k, k);
        for (int i = k + 1; i < n; ++i) {
            if (m(i, k) == 0) continue;
            Rat f = m(i, k) * inv;
            for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return det;
}

RMat inverse(RMat m) {
    if (m.rows != m.cols) throw Error("inverse: not square");
    int n = m.rows;
    RMat inv = RMat::identity(n);
    for (int k = 0; k < n; ++k) {
        int p = -1;
        for (int i = k; i < n; ++i)
            if (m(i, k) != 0) { p = i; break; }
        if (p < 0) throw SingularMatrix("inverse: singular matrix");
        if (p != k)
            for (int j = 0; j < n; ++j) {
                std::swap(m(k, j), m(p, j));
                std::swap(inv(k, j), inv(p, j));
            }
        Rat piv = Rat(1) / m(k, k);
        for (int j = 0; j < n; ++j) {
            m(k, j) *= piv;
            inv(k, j) *= piv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k || m(i, k) == 0) continue;
            Rat f = m(i, k);
            for (int j = 0; j < n; ++j) {
                m(i, j) -= f * m(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

IMat inverse_unimodular(const IMat& m) {
    Int d = det_bareiss(m);
    if (d != 1 && d != -1) throw Error("inverse_unimodular: |det| != 1");
    RMat r = inverse(to_rat(m));
    IMat out(m.rows, m.cols);
    for (size_t i = 0; i < r.a.size(); ++i) {
        if (denominator(r.a[i]) != 1) throw Error("inverse_unimodular: non-integer entry");
        out.a[i] = numerator(r.a[i]);
    }
    return out;
}

int signature(RMat m) {
    if (m.rows != m.cols) throw Error("signature: not square");
    int n = m.rows, sig = 0;
    // Symmetric congruence reduction.  A zero diagonal pivot with a nonzero
    // off-diagonal partner is fixed by a row+col addition first.
    for (int k = 0; k < n; ++k) {
        if (m(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m(k, i) != 0) { p = i; break; }
            if (p < 0) continue; // zero row/col: contributes 0
            // row_k += s*row_p, col_k += s*col_p; one of s = +-1 gives a
            // nonzero diagonal since 2m(k,p) +- m(p,p) cannot both vanish.
            Rat s = (2 * m(k, p) + m(p, p) != 0) ? Rat(1) : Rat(-1);
            for (int j = 0; j < n; ++j) m(k, j) += s * m(p, j);
            for (int i = 0; i < n; ++i) m(i, k) += s * m(i, p);
        }
        sig += (m(k, k) > 0) ? 1 : -1;
        for (int i = k + 1; i < n; ++i) {
            if (m(i, k) == 0) continue;
            Rat f = m(i, k) / m(k, k);
            for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
            for (int j = k; j < n; ++j) m(j, i) -= f * m(j, k);
        }
    }
    return sig;
}

} // namespace plumb
