// Smith normal form and lattice-coset enumeration.
//
// For a nonsingular integer matrix A we compute unimodular U, V and a
// diagonal D with A = U D V.  Then Z^n / A Z^n is represented by
// { U y : 0 <= y_i < D_ii }, a set of size |det A| streamed as a
// mixed-radix counter (the quotients here reach millions, so no
// materialized list).

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "plumb/exact_linalg.hpp"

namespace plumb {

struct SmithForm {
    IMat U, D, V;   // A = U * D * V, U and V unimodular, D diagonal
    IMat Uinv;      // cached for coset reduction
};

// Row/column reduction with smallest-pivot selection; verifies A = UDV and
// the divisibility chain D_11 | D_22 | ... before returning.
SmithForm smith_normal_form(const IMat& A);

class CosetSystem {
  public:
    explicit CosetSystem(const IMat& A); // throws SingularMatrix

    const SmithForm& smith() const { return snf_; }
    const Int& size() const { return size_; }
    int dim() const { return n_; }

    // Representative for a linear index in [0, size).
    std::vector<Int> rep(const Int& linear_index) const;

    // Canonical representative of an arbitrary lattice vector.
    std::vector<Int> reduce(const std::vector<Int>& x) const;
    bool congruent(const std::vector<Int>& x, const std::vector<Int>& y) const;

    // Streams representatives for linear indices [begin, end), in order.
    void for_each(const Int& begin, const Int& end,
                  const std::function<void(const std::vector<Int>&)>& fn) const;
    void for_each(const std::function<void(const std::vector<Int>&)>& fn) const;

    // Splits [0, size) into nchunks contiguous ranges (last ones may be
    // empty); chunk plan depends only on nchunks, keeping parallel
    // reductions bit-reproducible.
    std::vector<std::pair<Int, Int>> chunks(int nchunks) const;

  private:
    int n_;
    SmithForm snf_;
    std::vector<Int> diag_;
    Int size_;
};

} // namespace plumb
