// Plumbing graphs: weighted finite trees and their local moves.

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "plumb/exact_linalg.hpp"

namespace plumb {

struct PlumbingGraph {
    // Vertex ids in file order; indices into this vector are used for all
    // matrix rows/columns.
    std::vector<std::string> vertices;
    std::vector<long long> weights;           // by vertex index
    std::vector<std::pair<int, int>> edges;   // index pairs, first < second

    int size() const { return static_cast<int>(vertices.size()); }
    int index_of(const std::string& id) const; // -1 if absent
    long long weight_of(const std::string& id) const;
    bool has_edge(int a, int b) const;
    std::vector<int> degrees() const;
    std::vector<std::vector<int>> adjacency() const;
    bool is_tree() const;
};

// Line format: '#' comments, "vertex <id> <weight>", "edge <id> <id>".
// A JSON object {"vertices":[{"id":..,"weight":..}],"edges":[[a,b],..]}
// is also accepted.
PlumbingGraph parse_graph(const std::string& text);
std::string serialize(const PlumbingGraph& g); // canonical: sorted lexicographically
std::string graph_to_json(const PlumbingGraph& g);

IMat linking_matrix(const PlumbingGraph& g); // throws NotATree

struct ValidationReport {
    bool is_tree = false;
    bool negative_definite = false;
    bool unimodular = false;
    bool leaves_at_most_minus2 = false;
    Int det_w;

    bool admissible() const {
        return is_tree && negative_definite && unimodular && leaves_at_most_minus2;
    }
    std::string to_json() const;
};

ValidationReport validate(const PlumbingGraph& g);

struct DegreePartition {
    std::vector<int> v1, v2, vge2, vge3;      // vertex indices, ascending
    std::vector<int> degree;                  // by vertex index
    std::map<int, std::vector<int>> leaf_nbrs; // v in vge2 -> leaves adjacent to v
    std::map<int, Int> leaf_prod;             // M_v (1 when no adjacent leaves)

    bool in_vge3(int v) const;
};

// The complement of V_1 is taken as V_{>=2}; for the one-vertex graph this
// makes the isolated vertex (degree 0) a member of V_{>=2} so every formula
// downstream sees V = V_1 u V_{>=2}.
DegreePartition degree_partition(const PlumbingGraph& g); // throws NotATree

enum class NeumannMove { A, B, C };
enum class MoveDir { Expand, Contract };

// Site of a Neumann move.
//  A expand: edge {a,b} + sign (+1/-1); A contract: vertex (the +-1 middle).
//  B expand: vertex + sign; B contract: vertex (the +-1 leaf).
//  C expand: vertex + weight split (w_first) + the neighbor ids that follow
//            the first copy; C contract: vertex (the 0-weighted middle).
struct MoveSite {
    std::string vertex;
    std::string other;                 // second endpoint for A-expand
    int sign = -1;                     // +-1 for A/B expand
    long long split_weight = 0;        // C expand: weight of the first copy
    std::vector<std::string> split_nbrs; // C expand: neighbors kept on the first copy
};

PlumbingGraph neumann_move(const PlumbingGraph& g, NeumannMove move,
                           const MoveSite& site, MoveDir dir); // throws PatternMismatch

} // namespace plumb
