// Deterministic generator of admissible test graphs (stars, caterpillars,
// H-shapes, blow-up variants), plus the named examples used everywhere.

#pragma once

#include <cstdint>

#include "plumb/graph.hpp"

namespace plumb {

PlumbingGraph graph_single_minus1();         // S^3, one vertex
PlumbingGraph graph_path_s3();               // weights -2, -1, -3 (also S^3)
PlumbingGraph graph_sigma_2_3_7();           // Brieskorn star, center -1
PlumbingGraph graph_sigma_2_3_7_43();        // 4-leaf star, center -1
PlumbingGraph graph_h(long r, long s);       // nodes -2 (leaves -2,-3) and -1 (leaves -r,-s)
PlumbingGraph graph_h_12_17();
PlumbingGraph graph_e8();                    // all weights -2; condition margin 0

struct FleetGraph {
    PlumbingGraph g;
    std::string name;
    bool condition_ok = false; // |vbar| + 2 - deg(v) > 0 on V_{>=3}
    int n_ge3 = 0;
    Int det_s;                 // prod |w_i| over leaves
};

// n admissible graphs (<= 10 vertices), identical across runs for a fixed
// seed.  Warns on stderr when fewer than one |V>=3| >= 2 graph per 20
// appears.
std::vector<FleetGraph> generate_fleet(unsigned n, std::uint64_t seed);

} // namespace plumb
