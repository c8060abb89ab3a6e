#include <doctest.h>

#include "plumb/fleet.hpp"
#include "plumb/graph.hpp"
#include "plumb/lattice.hpp"

using namespace plumb;

TEST_CASE("parse basics and errors") {
    PlumbingGraph g = parse_graph("vertex c -1\nvertex a -2\nedge c a\n");
    CHECK(g.size() == 2);
    CHECK(g.vertices[0] == "c");
    CHECK(g.weights[0] == -1);
    CHECK(g.weights[1] == -2);
    CHECK(g.has_edge(0, 1));

    CHECK_THROWS_AS(parse_graph("vertex a -2\nvertex a -3\n"), DuplicateVertex);
    CHECK_THROWS_AS(parse_graph("vertex a -2\nedge a b\n"), UnknownVertexInEdge);
    CHECK_THROWS_AS(parse_graph("vertex a -2\nvertex b -3\nedge a b\nedge b a\n"),
                    DuplicateEdge);
    CHECK_THROWS_AS(parse_graph("vertex a two\n"), SyntaxError);
    CHECK_THROWS_AS(parse_graph("vertx a -2\n"), SyntaxError);
    // comments and blank lines are fine
    CHECK_NOTHROW(parse_graph("# header\n\nvertex a -2 # trailing\n"));
}

TEST_CASE("json input form") {
    PlumbingGraph g = parse_graph(
        R"({"vertices":[{"id":"c","weight":-1},{"id":"a","weight":-2}],"edges":[["c","a"]]})");
    CHECK(g.size() == 2);
    CHECK(g.weight_of("c") == -1);
    CHECK(g.has_edge(0, 1));
    CHECK_THROWS_AS(parse_graph("{\"bad\":1}"), SyntaxError);
}

TEST_CASE("serialize round trip on canonical form") {
    PlumbingGraph g = graph_sigma_2_3_7();
    std::string canon = serialize(g);
    PlumbingGraph g2 = parse_graph(canon);
    CHECK(serialize(g2) == canon);
    // and the star parses back to 4 vertices
    CHECK(g2.size() == 4);
}

TEST_CASE("validation flags") {
    ValidationReport r = validate(graph_sigma_2_3_7());
    CHECK(r.is_tree);
    CHECK(r.negative_definite);
    CHECK(r.unimodular);
    CHECK(r.leaves_at_most_minus2);
    CHECK(r.admissible());
    CHECK(r.det_w == 1); // (-1)^{|V|} for negative definite W

    // sigma(2,3,5) star with center -1: unimodular but not negative definite
    PlumbingGraph bad = parse_graph(
        "vertex c -1\nvertex a -2\nvertex b -3\nvertex d -5\nedge c a\nedge c b\nedge c d\n");
    ValidationReport rb = validate(bad);
    CHECK(rb.unimodular);
    CHECK(!rb.negative_definite);
    CHECK(!rb.admissible());

    // single -1 vertex is the S^3 surgery description
    ValidationReport rs = validate(graph_single_minus1());
    CHECK(rs.admissible());
    CHECK(rs.det_w == -1);

    // disconnected "tree" fails
    PlumbingGraph disc = parse_graph("vertex a -2\nvertex b -2\n");
    CHECK(!validate(disc).is_tree);
}

TEST_CASE("degree partition") {
    PlumbingGraph g = graph_sigma_2_3_7();
    DegreePartition p = degree_partition(g);
    CHECK(p.v1.size() == 3);
    CHECK(p.vge2 == std::vector<int>{0});
    CHECK(p.vge3 == std::vector<int>{0});
    CHECK(p.leaf_nbrs.at(0).size() == 3);
    CHECK(p.leaf_prod.at(0) == -42);

    // 3-vertex path: ends are leaves, middle in V2
    PlumbingGraph path = graph_path_s3();
    DegreePartition pp = degree_partition(path);
    CHECK(pp.v1.size() == 2);
    CHECK(pp.v2 == std::vector<int>{1});
    CHECK(pp.vge3.empty());
    CHECK(pp.leaf_prod.at(1) == 6);

    // H-graph: two degree-3 nodes, each with two leaf neighbors
    DegreePartition ph = degree_partition(graph_h_12_17());
    CHECK(ph.vge3.size() == 2);
    for (int v : ph.vge3) CHECK(ph.leaf_nbrs.at(v).size() == 2);

    // the single vertex joins V_{>=2} so V = V1 u V>=2 holds
    DegreePartition ps = degree_partition(graph_single_minus1());
    CHECK(ps.v1.empty());
    CHECK(ps.vge2 == std::vector<int>{0});
    CHECK(ps.leaf_prod.at(0) == 1);
}

TEST_CASE("partition stable under relabeling") {
    PlumbingGraph g = graph_sigma_2_3_7();
    DegreePartition p = degree_partition(g);
    // relabel by renaming vertices (permutes file order on reparse)
    PlumbingGraph h = g;
    h.vertices = {"z_mid", "q1", "q2", "q3"};
    PlumbingGraph h2 = parse_graph(serialize(h));
    DegreePartition p2 = degree_partition(h2);
    CHECK(p2.v1.size() == p.v1.size());
    CHECK(p2.vge3.size() == p.vge3.size());
    int c2 = h2.index_of("z_mid");
    CHECK(p2.leaf_prod.at(c2) == p.leaf_prod.at(0));
}

TEST_CASE("neumann moves: round trips and det invariance") {
    PlumbingGraph g = graph_sigma_2_3_7();
    Int d0 = abs(validate(g).det_w);

    // A: expand an edge with sign -1, contract back
    MoveSite site;
    site.vertex = "c";
    site.other = "a";
    site.sign = -1;
    PlumbingGraph ga = neumann_move(g, NeumannMove::A, site, MoveDir::Expand);
    CHECK(ga.size() == 5);
    CHECK(abs(validate(ga).det_w) == d0);
    CHECK(validate(ga).negative_definite);
    // the inserted vertex is fresh; contract it
    MoveSite back;
    back.vertex = ga.vertices.back();
    PlumbingGraph gb = neumann_move(ga, NeumannMove::A, back, MoveDir::Contract);
    CHECK(serialize(gb) == serialize(g));

    // B: contract a -1 leaf bumps the neighbor weight by +1
    PlumbingGraph h = parse_graph("vertex a -4\nvertex l -1\nedge a l\n");
    MoveSite leaf;
    leaf.vertex = "l";
    PlumbingGraph hc = neumann_move(h, NeumannMove::B, leaf, MoveDir::Contract);
    CHECK(hc.size() == 1);
    CHECK(hc.weights[0] == -3);
    CHECK(abs(validate(hc).det_w) == abs(validate(h).det_w));

    // B round trip
    MoveSite bexp;
    bexp.vertex = "a";
    bexp.sign = 1;
    PlumbingGraph hb = neumann_move(h, NeumannMove::B, bexp, MoveDir::Expand);
    MoveSite bc;
    bc.vertex = hb.vertices.back();
    CHECK(serialize(neumann_move(hb, NeumannMove::B, bc, MoveDir::Contract)) == serialize(h));
    CHECK(abs(validate(hb).det_w) == abs(validate(h).det_w));

    // C: contract a 0-weight chain merges neighbor weights
    PlumbingGraph w0 = parse_graph(
        "vertex a -2\nvertex z 0\nvertex b -3\nvertex x -5\nedge a z\nedge z b\nedge b x\n");
    MoveSite zc;
    zc.vertex = "z";
    PlumbingGraph wc = neumann_move(w0, NeumannMove::C, zc, MoveDir::Contract);
    CHECK(wc.size() == 2);
    CHECK(wc.weight_of("a") == -5); // -2 + -3
    CHECK(abs(validate(wc).det_w) == abs(validate(w0).det_w));

    // C round trip through expand
    MoveSite cexp;
    cexp.vertex = "a";
    cexp.split_weight = -2;
    cexp.split_nbrs = {};
    PlumbingGraph we = neumann_move(wc, NeumannMove::C, cexp, MoveDir::Expand);
    CHECK(we.size() == 4);
    CHECK(abs(validate(we).det_w) == abs(validate(wc).det_w));
    MoveSite zc2;
    zc2.vertex = we.vertices[we.size() - 2]; // the fresh 0-vertex
    PlumbingGraph wr = neumann_move(we, NeumannMove::C, zc2, MoveDir::Contract);
    CHECK(abs(validate(wr).det_w) == abs(validate(wc).det_w));

    // pattern mismatches
    MoveSite nota;
    nota.vertex = "a";
    CHECK_THROWS_AS(neumann_move(w0, NeumannMove::C, nota, MoveDir::Contract),
                    PatternMismatch);
    CHECK_THROWS_AS(neumann_move(g, NeumannMove::A, nota, MoveDir::Contract),
                    PatternMismatch);
}

TEST_CASE("neumann A preserves |det| on every fleet edge") {
    for (auto& f : generate_fleet(12, 3)) {
        Int d0 = abs(validate(f.g).det_w);
        for (auto& e : f.g.edges) {
            MoveSite s;
            s.vertex = f.g.vertices[e.first];
            s.other = f.g.vertices[e.second];
            for (int sign : {-1, 1}) {
                s.sign = sign;
                PlumbingGraph gg = neumann_move(f.g, NeumannMove::A, s, MoveDir::Expand);
                ValidationReport r = validate(gg);
                CHECK(abs(r.det_w) == d0);
                // negative-definiteness matches direct recomputation
                CHECK(r.negative_definite == is_negative_definite(linking_matrix(gg)));
            }
        }
    }
}
