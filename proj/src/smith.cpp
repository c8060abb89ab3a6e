#include "plumb/smith.hpp"

namespace plumb {

namespace {

// In-place row/column ops tracking P*A*Q = work, with P, Q unimodular.
struct SnfWork {
    IMat a, p, q;

    void swap_rows(int i, int j) {
        for (int c = 0; c < a.cols; ++c) std::swap(a(i, c), a(j, c));
        for (int c = 0; c < p.cols; ++c) std::swap(p(i, c), p(j, c));
    }
    void swap_cols(int i, int j) {
        for (int r = 0; r < a.rows; ++r) std::swap(a(r, i), a(r, j));
        for (int r = 0; r < q.rows; ++r) std::swap(q(r, i), q(r, j));
    }
    void add_row(int dst, int src, const Int& f) {
        for (int c = 0; c < a.cols; ++c) a(dst, c) += f * a(src, c);
        for (int c = 0; c < p.cols; ++c) p(dst, c) += f * p(src, c);
    }
    void add_col(int dst, int src, const Int& f) {
        for (int r = 0; r < a.rows; ++r) a(r, dst) += f * a(r, src);
        for (int r = 0; r < q.rows; ++r) q(r, dst) += f * q(r, src);
    }
    void negate_row(int i) {
        for (int c = 0; c < a.cols; ++c) a(i, c) = -a(i, c);
        for (int c = 0; c < p.cols; ++c) p(i, c) = -p(i, c);
    }
};

} // namespace

SmithForm smith_normal_form(const IMat& A) {
    if (A.rows != A.cols) throw Error("smith: not square");
    int n = A.rows;
    SnfWork w{A, IMat::identity(n), IMat::identity(n)};

    for (int k = 0; k < n; ++k) {
        for (;;) {
            // Smallest nonzero pivot in the trailing block limits coefficient
            // growth at these sizes.
            int pi = -1, pj = -1;
            Int best(0);
            for (int i = k; i < n; ++i)
                for (int j = k; j < n; ++j) {
                    if (w.a(i, j) == 0) continue;
                    Int m = abs(w.a(i, j));
                    if (pi < 0 || m < best) { best = m; pi = i; pj = j; }
                }
            if (pi < 0) break; // trailing block all zero
            if (pi != k) w.swap_rows(k, pi);
            if (pj != k) w.swap_cols(k, pj);

            bool dirty = false;
            for (int i = k + 1; i < n; ++i) {
                if (w.a(i, k) == 0) continue;
                Int f = -floor_div(w.a(i, k), w.a(k, k));
                w.add_row(i, k, f);
                if (w.a(i, k) != 0) dirty = true;
            }
            for (int j = k + 1; j < n; ++j) {
                if (w.a(k, j) == 0) continue;
                Int f = -floor_div(w.a(k, j), w.a(k, k));
                w.add_col(j, k, f);
                if (w.a(k, j) != 0) dirty = true;
            }
            if (dirty) continue;

            // Enforce the divisibility chain: if some trailing entry is not
            // divisible by the pivot, fold its row in and reduce again.
            bool fixed = true;
            for (int i = k + 1; i < n && fixed; ++i)
                for (int j = k + 1; j < n; ++j)
                    if (w.a(i, j) % w.a(k, k) != 0) {
                        w.add_row(k, i, Int(1));
                        fixed = false;
                        break;
                    }
            if (fixed) break;
        }
        if (w.a(k, k) < 0) w.negate_row(k);
    }

    SmithForm out;
    out.D = w.a;
    out.U = inverse_unimodular(w.p);
    out.V = inverse_unimodular(w.q);
    out.Uinv = w.p;

    // Exact verification: A = U D V and divisibility.
    IMat check = mat_mul(out.U, mat_mul(out.D, out.V));
    if (!(check == A)) throw Error("smith: verification A == U*D*V failed");
    for (int k = 0; k + 1 < n; ++k)
        if (out.D(k, k) != 0 && out.D(k + 1, k + 1) % out.D(k, k) != 0)
            throw Error("smith: divisibility chain violated");
    return out;
}

CosetSystem::CosetSystem(const IMat& A) : n_(A.rows) {
    Int d = det_bareiss(A);
    if (d == 0) throw SingularMatrix("coset_reps: singular matrix");
    snf_ = smith_normal_form(A);
    size_ = 1;
    for (int i = 0; i < n_; ++i) {
        diag_.push_back(snf_.D(i, i));
        size_ *= snf_.D(i, i);
    }
}

std::vector<Int> CosetSystem::rep(const Int& linear_index) const {
    Int idx = linear_index;
    std::vector<Int> y(n_);
    for (int i = 0; i < n_; ++i) {
        y[i] = idx % diag_[i];
        idx /= diag_[i];
    }
    std::vector<Int> r(n_, Int(0));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r[i] += snf_.U(i, j) * y[j];
    return r;
}

std::vector<Int> CosetSystem::reduce(const std::vector<Int>& x) const {
    std::vector<Int> y(n_, Int(0));
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) y[i] += snf_.Uinv(i, j) * x[j];
        y[i] = mod_euclid(y[i], diag_[i]);
    }
    std::vector<Int> r(n_, Int(0));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r[i] += snf_.U(i, j) * y[j];
    return r;
}

bool CosetSystem::congruent(const std::vector<Int>& x, const std::vector<Int>& y) const {
    return reduce(x) == reduce(y);
}

void CosetSystem::for_each(const Int& begin, const Int& end,
                           const std::function<void(const std::vector<Int>&)>& fn) const {
    if (begin >= end) return;
    Int idx = begin;
    std::vector<Int> y(n_);
    {
        Int t = begin;
        for (int i = 0; i < n_; ++i) {
            y[i] = t % diag_[i];
            t /= diag_[i];
        }
    }
    std::vector<Int> r(n_, Int(0));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r[i] += snf_.U(i, j) * y[j];

    for (;;) {
        fn(r);
        if (++idx >= end) return;
        // Mixed-radix increment, updating r by columns of U.
        for (int i = 0; i < n_; ++i) {
            ++y[i];
            if (y[i] < diag_[i]) {
                for (int j = 0; j < n_; ++j) r[j] += snf_.U(j, i);
                break;
            }
            y[i] = 0;
            for (int j = 0; j < n_; ++j) r[j] -= (diag_[i] - 1) * snf_.U(j, i);
        }
    }
}

void CosetSystem::for_each(const std::function<void(const std::vector<Int>&)>& fn) const {
    for_each(Int(0), size_, fn);
}

std::vector<std::pair<Int, Int>> CosetSystem::chunks(int nchunks) const {
    if (nchunks < 1) nchunks = 1;
    std::vector<std::pair<Int, Int>> out;
    Int base = size_ / nchunks, rem = size_ % nchunks;
    Int at(0);
    for (int i = 0; i < nchunks; ++i) {
        Int len = base + (Int(i) < rem ? 1 : 0);
        out.emplace_back(at, at + len);
        at += len;
    }
    return out;
}

} // namespace plumb
