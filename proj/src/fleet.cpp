#include "plumb/fleet.hpp"

#include "plumb/lattice.hpp"

#include <iostream>
#include <random>
#include <set>

namespace plumb {

namespace {

PlumbingGraph star(const std::string& prefix, long center,
                   const std::vector<long>& leaves) {
    // leaf names skip 'c', which is the center
    static const char* names = "abdefghijklm";
    PlumbingGraph g;
    g.vertices.push_back(prefix + "c");
    g.weights.push_back(center);
    for (size_t i = 0; i < leaves.size(); ++i) {
        g.vertices.push_back(prefix + std::string(1, names[i]));
        g.weights.push_back(leaves[i]);
        g.edges.emplace_back(0, static_cast<int>(i) + 1);
    }
    return g;
}

} // namespace

PlumbingGraph graph_single_minus1() {
    PlumbingGraph g;
    g.vertices = {"v"};
    g.weights = {-1};
    return g;
}

PlumbingGraph graph_path_s3() {
    PlumbingGraph g;
    g.vertices = {"a", "c", "b"};
    g.weights = {-2, -1, -3};
    g.edges = {{0, 1}, {1, 2}};
    return g;
}

PlumbingGraph graph_sigma_2_3_7() { return star("", -1, {-2, -3, -7}); }

PlumbingGraph graph_sigma_2_3_7_43() { return star("", -1, {-2, -3, -7, -43}); }

PlumbingGraph graph_h(long r, long s) {
    PlumbingGraph g;
    g.vertices = {"u", "v", "a", "b", "c", "d"};
    g.weights = {-2, -1, -2, -3, -r, -s};
    g.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}};
    return g;
}

PlumbingGraph graph_h_12_17() { return graph_h(12, 17); }

PlumbingGraph graph_e8() {
    // Star with arms of lengths 1, 2, 4, every weight -2.
    PlumbingGraph g;
    g.vertices = {"c", "a1", "b1", "b2", "d1", "d2", "d3", "d4"};
    g.weights.assign(8, -2);
    g.edges = {{0, 1}, {0, 2}, {2, 3}, {0, 4}, {4, 5}, {5, 6}, {6, 7}};
    return g;
}

namespace {

bool fleet_ok(const PlumbingGraph& g) {
    if (g.size() > 10) return false;
    ValidationReport r = validate(g);
    if (!r.admissible()) return false;
    // keep coset sums at desk scale
    auto part = degree_partition(g);
    Int dets(1);
    for (int v : part.v1) dets *= Int(-g.weights[v]);
    if (dets > 6000) return false;
    if (part.v1.size() > 8) return false;
    return true;
}

FleetGraph make_member(PlumbingGraph g, std::string name) {
    FleetGraph f;
    f.g = std::move(g);
    f.name = std::move(name);
    LinkingData ld = build_linking_data(f.g);
    f.condition_ok = ld.condition_margin() > 0;
    f.n_ge3 = ld.nge3();
    Int dets(1);
    for (int v : ld.v1) dets *= Int(-f.g.weights[v]);
    f.det_s = dets;
    return f;
}

// H-shaped solutions with nodes (-w1, -1): rs - A(r+s)/B = ... found via the
// divisor trick (Br - A)(Bs - A) = A^2 + B with A = w1*p*q - p - q,
// B = A - p*q; every factorization gives an exactly unimodular graph.
std::vector<PlumbingGraph> h_family(long max_leaf) {
    std::vector<PlumbingGraph> out;
    for (long p = 2; p <= 5; ++p)
        for (long q = p + 1; q <= 7; ++q) {
            long A = 2 * p * q - p - q, B = p * q - p - q;
            if (B <= 0) continue;
            Int target = Int(A) * A + B;
            for (Int d = 1; d * d <= target; ++d) {
                if (target % d != 0) continue;
                Int e = target / d;
                // r = (d + A)/B, s = (e + A)/B
                if ((d + A) % B != 0 || (e + A) % B != 0) continue;
                Int r = (d + A) / B, sV = (e + A) / B;
                if (r < 2 || sV < 2 || sV > max_leaf) continue;
                PlumbingGraph g;
                g.vertices = {"u", "v", "a", "b", "c", "d"};
                g.weights = {-2, -1, -p, -q, -r.convert_to<long long>(),
                             -sV.convert_to<long long>()};
                g.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}};
                if (fleet_ok(g)) out.push_back(g);
            }
        }
    return out;
}

} // namespace

std::vector<FleetGraph> generate_fleet(unsigned n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<FleetGraph> out;
    std::set<std::string> seen;

    auto push = [&](const PlumbingGraph& g, const std::string& name) {
        if (out.size() >= n) return;
        std::string canon = serialize(g);
        if (!seen.insert(canon).second) return;
        out.push_back(make_member(g, name));
    };

    // Deterministic seeds first: the named family.
    push(graph_sigma_2_3_7(), "sigma_2_3_7");
    push(graph_h_12_17(), "h_12_17");
    push(graph_single_minus1(), "s3_single");
    push(graph_path_s3(), "s3_path");
    push(graph_sigma_2_3_7_43(), "sigma_2_3_7_43");
    push(graph_e8(), "e8");
    int hcount = 0;
    for (auto& g : h_family(64)) {
        push(g, "h_fam_" + std::to_string(hcount++));
        if (out.size() >= n) break;
    }

    // Blow-up closure: A-expansion with sign -1 keeps admissibility and
    // |det W|; every application yields a new fleet member.
    unsigned attempts = 0;
    while (out.size() < n && attempts < 50000) {
        ++attempts;
        if (out.empty()) break;
        const PlumbingGraph& base = out[rng() % out.size()].g;
        if (base.edges.empty() || base.size() >= 10) continue;
        auto& e = base.edges[rng() % base.edges.size()];
        MoveSite site;
        site.vertex = base.vertices[e.first];
        site.other = base.vertices[e.second];
        site.sign = -1;
        PlumbingGraph g = neumann_move(base, NeumannMove::A, site, MoveDir::Expand);
        if (fleet_ok(g)) push(g, "blowup_" + std::to_string(out.size()));

        // occasionally try a fresh random star too
        if (attempts % 7 == 0) {
            int leaves = 3 + static_cast<int>(rng() % 2);
            std::vector<long> ws;
            for (int i = 0; i < leaves; ++i) ws.push_back(-2 - static_cast<long>(rng() % 8));
            PlumbingGraph cand = star("r", -1 - static_cast<long>(rng() % 2), ws);
            if (fleet_ok(cand)) push(cand, "star_" + std::to_string(out.size()));
        }
    }

    unsigned multi = 0;
    for (auto& f : out)
        if (f.n_ge3 >= 2) ++multi;
    if (out.size() >= 20 && multi < out.size() / 20)
        std::cerr << "fleet: warning: only " << multi << " multi-node graphs in "
                  << out.size() << " generated\n";
    return out;
}

} // namespace plumb
