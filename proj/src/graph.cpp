#include "plumb/graph.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace plumb {

int PlumbingGraph::index_of(const std::string& id) const {
    for (int i = 0; i < size(); ++i)
        if (vertices[i] == id) return i;
    return -1;
}

long long PlumbingGraph::weight_of(const std::string& id) const {
    int i = index_of(id);
    if (i < 0) throw Error("unknown vertex '" + id + "'");
    return weights[i];
}

bool PlumbingGraph::has_edge(int a, int b) const {
    if (a > b) std::swap(a, b);
    for (auto& e : edges)
        if (e.first == a && e.second == b) return true;
    return false;
}

std::vector<int> PlumbingGraph::degrees() const {
    std::vector<int> d(size(), 0);
    for (auto& e : edges) {
        ++d[e.first];
        ++d[e.second];
    }
    return d;
}

std::vector<std::vector<int>> PlumbingGraph::adjacency() const {
    std::vector<std::vector<int>> adj(size());
    for (auto& e : edges) {
        adj[e.first].push_back(e.second);
        adj[e.second].push_back(e.first);
    }
    return adj;
}

bool PlumbingGraph::is_tree() const {
    int n = size();
    if (n == 0) return false;
    if (static_cast<int>(edges.size()) != n - 1) return false;
    // connectivity
    auto adj = adjacency();
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int cnt = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : adj[v])
            if (!seen[u]) {
                seen[u] = 1;
                ++cnt;
                stack.push_back(u);
            }
    }
    return cnt == n;
}

namespace {

void add_vertex(PlumbingGraph& g, const std::string& id, long long w,
                const std::string& where) {
    if (g.index_of(id) >= 0)
        throw DuplicateVertex("duplicate vertex '" + id + "' " + where);
    g.vertices.push_back(id);
    g.weights.push_back(w);
}

void add_edge(PlumbingGraph& g, const std::string& a, const std::string& b,
              const std::string& where) {
    int ia = g.index_of(a), ib = g.index_of(b);
    if (ia < 0) throw UnknownVertexInEdge("unknown vertex '" + a + "' in edge " + where);
    if (ib < 0) throw UnknownVertexInEdge("unknown vertex '" + b + "' in edge " + where);
    if (ia == ib) throw SyntaxError("self-loop at '" + a + "' " + where);
    if (ia > ib) std::swap(ia, ib);
    if (g.has_edge(ia, ib)) throw DuplicateEdge("duplicate edge {" + a + "," + b + "} " + where);
    g.edges.emplace_back(ia, ib);
}

PlumbingGraph parse_graph_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& ex) {
        throw SyntaxError(std::string("bad JSON graph: ") + ex.what());
    }
    PlumbingGraph g;
    if (!j.is_object() || !j.contains("vertices"))
        throw SyntaxError("JSON graph needs a 'vertices' array");
    for (auto& v : j["vertices"]) {
        if (!v.contains("id") || !v.contains("weight"))
            throw SyntaxError("JSON vertex needs 'id' and 'weight'");
        add_vertex(g, v["id"].get<std::string>(), v["weight"].get<long long>(), "(json)");
    }
    if (j.contains("edges"))
        for (auto& e : j["edges"]) {
            if (!e.is_array() || e.size() != 2) throw SyntaxError("JSON edge must be a pair");
            add_edge(g, e[0].get<std::string>(), e[1].get<std::string>(), "(json)");
        }
    return g;
}

} // namespace

PlumbingGraph parse_graph(const std::string& text) {
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_graph_json(text);

    PlumbingGraph g;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string where = "at line " + std::to_string(lineno);
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "vertex") {
            std::string id, wtok;
            if (!(ls >> id >> wtok))
                throw SyntaxError("expected 'vertex <id> <weight>' " + where);
            long long w = 0;
            try {
                size_t pos = 0;
                w = std::stoll(wtok, &pos);
                if (pos != wtok.size()) throw std::invalid_argument(wtok);
            } catch (const std::exception&) {
                throw SyntaxError("bad weight '" + wtok + "' " + where);
            }
            std::string extra;
            if (ls >> extra) throw SyntaxError("trailing tokens " + where);
            add_vertex(g, id, w, where);
        } else if (kw == "edge") {
            std::string a, b;
            if (!(ls >> a >> b)) throw SyntaxError("expected 'edge <id> <id>' " + where);
            std::string extra;
            if (ls >> extra) throw SyntaxError("trailing tokens " + where);
            add_edge(g, a, b, where);
        } else {
            throw SyntaxError("unknown keyword '" + kw + "' " + where);
        }
    }
    if (g.size() == 0) throw SyntaxError("empty graph");
    return g;
}

std::string serialize(const PlumbingGraph& g) {
    std::vector<int> order(g.size());
    for (int i = 0; i < g.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return g.vertices[a] < g.vertices[b]; });
    std::ostringstream os;
    for (int i : order) os << "vertex " << g.vertices[i] << " " << g.weights[i] << "\n";
    std::vector<std::pair<std::string, std::string>> es;
    for (auto& e : g.edges) {
        std::string a = g.vertices[e.first], b = g.vertices[e.second];
        if (b < a) std::swap(a, b);
        es.emplace_back(a, b);
    }
    std::sort(es.begin(), es.end());
    for (auto& e : es) os << "edge " << e.first << " " << e.second << "\n";
    return os.str();
}

std::string graph_to_json(const PlumbingGraph& g) {
    nlohmann::json j;
    auto vs = nlohmann::json::array();
    for (int i = 0; i < g.size(); ++i)
        vs.push_back({{"id", g.vertices[i]}, {"weight", g.weights[i]}});
    j["vertices"] = vs;
    auto es = nlohmann::json::array();
    for (auto& e : g.edges)
        es.push_back({g.vertices[e.first], g.vertices[e.second]});
    j["edges"] = es;
    return j.dump();
}

IMat linking_matrix(const PlumbingGraph& g) {
    if (!g.is_tree()) throw NotATree("linking_matrix: graph is not a tree");
    int n = g.size();
    IMat w(n, n);
    for (int i = 0; i < n; ++i) w(i, i) = Int(g.weights[i]);
    for (auto& e : g.edges) {
        w(e.first, e.second) = 1;
        w(e.second, e.first) = 1;
    }
    return w;
}

ValidationReport validate(const PlumbingGraph& g) {
    ValidationReport r;
    r.is_tree = g.is_tree();
    if (!r.is_tree) {
        r.det_w = 0;
        return r;
    }
    IMat w = linking_matrix(g);
    r.det_w = det_bareiss(w);
    r.unimodular = (r.det_w == 1 || r.det_w == -1);
    IMat neg(w.rows, w.cols);
    for (size_t i = 0; i < w.a.size(); ++i) neg.a[i] = -w.a[i];
    r.negative_definite = is_positive_definite(neg);
    r.leaves_at_most_minus2 = true;
    auto deg = g.degrees();
    for (int i = 0; i < g.size(); ++i)
        if (deg[i] == 1 && g.weights[i] > -2) r.leaves_at_most_minus2 = false;
    return r;
}

std::string ValidationReport::to_json() const {
    nlohmann::json j;
    j["is_tree"] = is_tree;
    j["is_negative_definite"] = negative_definite;
    j["is_unimodular"] = unimodular;
    j["leaves_at_most_minus2"] = leaves_at_most_minus2;
    j["det_w"] = det_w.convert_to<std::string>();
    j["admissible"] = admissible();
    return j.dump();
}

bool DegreePartition::in_vge3(int v) const {
    return std::find(vge3.begin(), vge3.end(), v) != vge3.end();
}

DegreePartition degree_partition(const PlumbingGraph& g) {
    if (!g.is_tree()) throw NotATree("degree_partition: graph is not a tree");
    DegreePartition p;
    p.degree = g.degrees();
    for (int v = 0; v < g.size(); ++v) {
        if (p.degree[v] == 1)
            p.v1.push_back(v);
        else
            p.vge2.push_back(v);
        if (p.degree[v] >= 3) p.vge3.push_back(v);
        if (p.degree[v] == 2 || (p.degree[v] == 0)) p.v2.push_back(v);
    }
    auto adj = g.adjacency();
    for (int v : p.vge2) {
        std::vector<int> leaves;
        for (int u : adj[v])
            if (p.degree[u] == 1) leaves.push_back(u);
        std::sort(leaves.begin(), leaves.end());
        Int m(1);
        for (int u : leaves) m *= Int(g.weights[u]);
        if (m == 0) throw Error("degree_partition: zero leaf weight makes M_v zero");
        p.leaf_nbrs[v] = leaves;
        p.leaf_prod[v] = m;
    }
    return p;
}

namespace {

std::string fresh_name(const PlumbingGraph& g) {
    for (int k = 0;; ++k) {
        std::string cand = "n" + std::to_string(k);
        if (g.index_of(cand) < 0) return cand;
    }
}

PlumbingGraph drop_vertex(const PlumbingGraph& g, int v) {
    PlumbingGraph h;
    std::vector<int> remap(g.size(), -1);
    for (int i = 0; i < g.size(); ++i) {
        if (i == v) continue;
        remap[i] = h.size();
        h.vertices.push_back(g.vertices[i]);
        h.weights.push_back(g.weights[i]);
    }
    for (auto& e : g.edges) {
        if (e.first == v || e.second == v) continue;
        int a = remap[e.first], b = remap[e.second];
        if (a > b) std::swap(a, b);
        h.edges.emplace_back(a, b);
    }
    return h;
}

} // namespace

PlumbingGraph neumann_move(const PlumbingGraph& g, NeumannMove move,
                           const MoveSite& site, MoveDir dir) {
    auto deg = g.degrees();
    auto adj = g.adjacency();

    if (dir == MoveDir::Expand) {
        if (site.sign != 1 && site.sign != -1)
            throw PatternMismatch("expand: sign must be +-1");
        switch (move) {
        case NeumannMove::A: {
            int a = g.index_of(site.vertex), b = g.index_of(site.other);
            if (a < 0 || b < 0 || !g.has_edge(std::min(a, b), std::max(a, b)))
                throw PatternMismatch("A-expand: site must be an existing edge");
            PlumbingGraph h = g;
            std::string mid = fresh_name(g);
            h.vertices.push_back(mid);
            h.weights.push_back(site.sign);
            int m = h.size() - 1;
            h.weights[a] += site.sign;
            h.weights[b] += site.sign;
            auto& es = h.edges;
            es.erase(std::remove(es.begin(), es.end(),
                                 std::make_pair(std::min(a, b), std::max(a, b))),
                     es.end());
            es.emplace_back(std::min(a, m), std::max(a, m));
            es.emplace_back(std::min(b, m), std::max(b, m));
            return h;
        }
        case NeumannMove::B: {
            int a = g.index_of(site.vertex);
            if (a < 0) throw PatternMismatch("B-expand: unknown vertex");
            PlumbingGraph h = g;
            std::string leaf = fresh_name(g);
            h.vertices.push_back(leaf);
            h.weights.push_back(site.sign);
            int m = h.size() - 1;
            h.weights[a] += site.sign;
            h.edges.emplace_back(std::min(a, m), std::max(a, m));
            return h;
        }
        case NeumannMove::C: {
            int a = g.index_of(site.vertex);
            if (a < 0) throw PatternMismatch("C-expand: unknown vertex");
            std::set<int> first_side;
            for (auto& id : site.split_nbrs) {
                int u = g.index_of(id);
                if (u < 0 || !g.has_edge(std::min(a, u), std::max(a, u)))
                    throw PatternMismatch("C-expand: '" + id + "' is not a neighbor");
                first_side.insert(u);
            }
            // Split a into a (keeps split_nbrs, weight split_weight) and a
            // fresh twin (keeps the rest), joined through a 0-vertex.
            PlumbingGraph h = g;
            std::string mid = fresh_name(h);
            h.vertices.push_back(mid);
            h.weights.push_back(0);
            int m = h.size() - 1;
            std::string twin = fresh_name(h);
            h.vertices.push_back(twin);
            h.weights.push_back(g.weights[a] - site.split_weight);
            int t = h.size() - 1;
            h.weights[a] = site.split_weight;
            std::vector<std::pair<int, int>> es;
            for (auto& e : h.edges) {
                int u = -1;
                if (e.first == a) u = e.second;
                if (e.second == a) u = e.first;
                if (u < 0) {
                    es.push_back(e);
                } else if (first_side.count(u)) {
                    es.push_back(e);
                } else {
                    es.emplace_back(std::min(t, u), std::max(t, u));
                }
            }
            es.emplace_back(std::min(a, m), std::max(a, m));
            es.emplace_back(std::min(t, m), std::max(t, m));
            h.edges = std::move(es);
            return h;
        }
        }
    } else {
        int v = g.index_of(site.vertex);
        if (v < 0) throw PatternMismatch("contract: unknown vertex");
        switch (move) {
        case NeumannMove::A: {
            if (deg[v] != 2 || (g.weights[v] != 1 && g.weights[v] != -1))
                throw PatternMismatch("A-contract: need a degree-2 vertex of weight +-1");
            int a = adj[v][0], b = adj[v][1];
            if (g.has_edge(std::min(a, b), std::max(a, b)))
                throw PatternMismatch("A-contract: neighbors already adjacent");
            PlumbingGraph h = g;
            h.weights[a] -= g.weights[v];
            h.weights[b] -= g.weights[v];
            h = drop_vertex(h, v);
            int ia = h.index_of(g.vertices[a]), ib = h.index_of(g.vertices[b]);
            h.edges.emplace_back(std::min(ia, ib), std::max(ia, ib));
            return h;
        }
        case NeumannMove::B: {
            if (deg[v] != 1 || (g.weights[v] != 1 && g.weights[v] != -1))
                throw PatternMismatch("B-contract: need a leaf of weight +-1");
            int a = adj[v][0];
            PlumbingGraph h = g;
            h.weights[a] -= g.weights[v];
            return drop_vertex(h, v);
        }
        case NeumannMove::C: {
            if (deg[v] != 2 || g.weights[v] != 0)
                throw PatternMismatch("C-contract: need a degree-2 vertex of weight 0");
            int a = adj[v][0], b = adj[v][1];
            if (g.has_edge(std::min(a, b), std::max(a, b)))
                throw PatternMismatch("C-contract: neighbors already adjacent");
            // Merge b into a with weight w+w', then drop v and b.
            PlumbingGraph h = g;
            h.weights[a] += h.weights[b];
            std::vector<std::pair<int, int>> es;
            for (auto& e : h.edges) {
                int x = e.first == b ? a : e.first;
                int y = e.second == b ? a : e.second;
                if (x == y) continue; // the b-v edge collapses with v dropped below
                es.emplace_back(std::min(x, y), std::max(x, y));
            }
            std::sort(es.begin(), es.end());
            es.erase(std::unique(es.begin(), es.end()), es.end());
            h.edges = std::move(es);
            h = drop_vertex(h, v);
            return drop_vertex(h, h.index_of(g.vertices[b]));
        }
        }
    }
    throw PatternMismatch("neumann_move: unhandled case");
}

} // namespace plumb
