#include "plumb/chardata.hpp"

#include <algorithm>

namespace plumb {

HalfCharacter half_char(const LinkingData& ld, int v) {
    if (std::find(ld.vge2.begin(), ld.vge2.end(), v) == ld.vge2.end())
        throw NotHighDegree("half_char: vertex not in V_{>=2}");
    HalfCharacter hc;
    hc.vertex = v;
    hc.M = ld.M(v);
    hc.degree = ld.part.degree[v];
    hc.leaves = ld.part.leaf_nbrs.at(v);

    size_t nb = hc.leaves.size();
    Rat base = Rat(hc.degree, 2) - 1;
    for (size_t mask = 0; mask < (size_t(1) << nb); ++mask) {
        HalfCharEntry e;
        e.leaf_signs.resize(nb);
        e.alpha = base;
        e.sign = 1;
        // Bit j of mask set means l_j = -1; mask order is lexicographic in
        // (+1 before -1) over the ascending leaf list.
        for (size_t j = 0; j < nb; ++j) {
            int l = (mask >> j) & 1 ? -1 : 1;
            e.leaf_signs[j] = l;
            e.sign *= l;
            e.alpha += rat_frac(Int(l), Int(2 * ld.g.weights[hc.leaves[j]]));
        }
        hc.entries.push_back(std::move(e));
    }
    std::sort(hc.entries.begin(), hc.entries.end(),
              [](const HalfCharEntry& a, const HalfCharEntry& b) { return a.alpha < b.alpha; });
    return hc;
}

Rat eps_moment(const HalfCharacter& hc, unsigned n) {
    Rat s(0);
    for (auto& e : hc.entries) s += Rat(e.sign) * rat_pow(e.alpha, static_cast<long>(n));
    return s;
}

ProductCharacter product_char(const LinkingData& ld) {
    ProductCharacter pc;
    for (int v : ld.vge2) pc.per_vertex.push_back(half_char(ld, v));

    // Cartesian product in lexicographic order of the V_1 sign vector: walk
    // per-vertex leaf-sign masks jointly.  Equivalent to iterating each
    // vertex's 2^{|vbar|} entries in its own lex order, outermost vertex
    // first.
    size_t total = 1;
    for (auto& hc : pc.per_vertex) total <<= hc.nbar();
    int r = static_cast<int>(pc.per_vertex.size());

    // Re-derive per-vertex entries in mask order (entries are stored sorted
    // by alpha, so rebuild the map mask -> entry).
    std::vector<std::vector<const HalfCharEntry*>> by_mask(r);
    for (int i = 0; i < r; ++i) {
        auto& hc = pc.per_vertex[i];
        by_mask[i].resize(size_t(1) << hc.nbar());
        for (auto& e : hc.entries) {
            size_t mask = 0;
            for (size_t j = 0; j < hc.nbar(); ++j)
                if (e.leaf_signs[j] < 0) mask |= size_t(1) << j;
            by_mask[i][mask] = &e;
        }
    }

    for (size_t code = 0; code < total; ++code) {
        ProductCharEntry pe;
        pe.sign = 1;
        pe.alpha.resize(r);
        size_t rest = code;
        for (int i = 0; i < r; ++i) {
            size_t nb = pc.per_vertex[i].nbar();
            size_t mask = rest & ((size_t(1) << nb) - 1);
            rest >>= nb;
            const HalfCharEntry* e = by_mask[i][mask];
            pe.alpha[i] = e->alpha;
            pe.sign *= e->sign;
        }
        pc.entries.push_back(std::move(pe));
    }
    return pc;
}

QSeries char_qseries(const HalfCharacter& hc) {
    QSeries s;
    for (auto& e : hc.entries) s.add_term(e.alpha, Rat(e.sign));
    return s;
}

} // namespace plumb
