// Signed half-character data attached to high-degree vertices.
//
// For v in V_{>=2} the set S_v consists of the 2^{|vbar|} rationals
//     deg(v)/2 - 1 + sum_{i in vbar} l_i / (2 w_i),   l_i in {+-1},
// carrying the sign eps_v = prod l_i.  These are distinct mod Z and their
// moments sum_alpha eps(alpha) alpha^n vanish for n < |vbar|.

#pragma once

#include "plumb/lattice.hpp"
#include "plumb/qseries.hpp"

namespace plumb {

struct HalfCharEntry {
    Rat alpha;
    int sign;                       // prod l_i
    std::vector<int> leaf_signs;    // aligned with HalfCharacter::leaves
};

struct HalfCharacter {
    int vertex;                 // graph index
    Int M;                      // leaf product M_v
    int degree;
    std::vector<int> leaves;    // vbar, ascending graph index
    std::vector<HalfCharEntry> entries; // sorted by alpha ascending

    size_t nbar() const { return leaves.size(); }
};

HalfCharacter half_char(const LinkingData& ld, int v); // throws NotHighDegree

// sum_alpha eps_v(alpha) alpha^n, exact.  Zero for n < |vbar|.
Rat eps_moment(const HalfCharacter& hc, unsigned n);

struct ProductCharEntry {
    std::vector<Rat> alpha; // over V_{>=2}, in ld.vge2 order
    int sign;
};

struct ProductCharacter {
    std::vector<HalfCharacter> per_vertex; // in ld.vge2 order
    std::vector<ProductCharEntry> entries; // leaf-sign lex order over V_1
};

ProductCharacter product_char(const LinkingData& ld);

// sum_alpha eps_v(alpha) q^alpha as a finite QSeries (2^{|vbar|} terms).
QSeries char_qseries(const HalfCharacter& hc);

} // namespace plumb
