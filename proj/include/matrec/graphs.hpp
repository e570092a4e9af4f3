#pragma once

// Simple graphs, graph homomorphisms, the single-vertex recolouring graph
// and Kempe recolouring on vector-labelled (decision-graph) targets.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <queue>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "matrec/caps.hpp"
#include "matrec/gf2.hpp"

namespace matrec {

struct VecU32Hash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ v.size();
        for (auto x : v) {
            h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 0xbf58476d1ce4e5b9ull;
        }
        return static_cast<std::size_t>(h ^ (h >> 31));
    }
};

// An undirected graph without parallel edges.  Self-loops are not stored;
// a graph flagged reflexive is adjacent-to-itself at every vertex (this is
// how decision graphs of looped matroids come out).  Vertices may carry
// BitVec payloads, used when the graph is a decision graph.
struct SimpleGraph {
    std::size_t n = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges; // u < v, sorted
    std::vector<BitVec> adj;     // adjacency rows, length n each
    std::vector<BitVec> labels;  // optional vertex payloads
    bool reflexive = false;

    static SimpleGraph from_edges(std::size_t n,
                                  std::vector<std::pair<std::uint32_t, std::uint32_t>> es,
                                  bool reflexive = false) {
        SimpleGraph g;
        g.n = n;
        g.reflexive = reflexive;
        for (auto& [u, v] : es) {
            if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
            if (u == v) throw std::invalid_argument("self-loop in edge list");
            if (u > v) std::swap(u, v);
        }
        std::sort(es.begin(), es.end());
        es.erase(std::unique(es.begin(), es.end()), es.end());
        g.edges = std::move(es);
        g.adj.assign(n, BitVec(n));
        for (auto [u, v] : g.edges) {
            g.adj[u].set(v);
            g.adj[v].set(u);
        }
        return g;
    }

    bool adjacent(std::uint32_t u, std::uint32_t v) const {
        if (u == v) return reflexive;
        return adj[u].test(v);
    }

    std::size_t degree(std::uint32_t u) const { return adj[u].weight(); }

    // Index into edges of undirected pair {u, v}; requires the edge to exist.
    std::uint32_t edge_index(std::uint32_t u, std::uint32_t v) const {
        if (u > v) std::swap(u, v);
        auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(u, v));
        if (it == edges.end() || *it != std::make_pair(u, v))
            throw std::invalid_argument("edge_index: no such edge");
        return static_cast<std::uint32_t>(it - edges.begin());
    }

    // Connected component of `start` inside the vertex set `allowed`.
    BitVec component_within(std::uint32_t start, const BitVec& allowed) const {
        BitVec seen(n);
        if (!allowed.test(start)) return seen;
        std::vector<std::uint32_t> stack{start};
        seen.set(start);
        while (!stack.empty()) {
            auto u = stack.back();
            stack.pop_back();
            BitVec next = (adj[u] & allowed).and_not(seen);
            next.for_each_set([&](std::size_t w) {
                seen.set(w);
                stack.push_back(static_cast<std::uint32_t>(w));
            });
        }
        return seen;
    }

    bool connected() const {
        if (n == 0) return true;
        BitVec all(n);
        for (std::size_t i = 0; i < n; ++i) all.set(i);
        return component_within(0, all).weight() == n;
    }
};

inline SimpleGraph complete_graph(std::size_t n) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> es;
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = u + 1; v < n; ++v) es.emplace_back(u, v);
    return SimpleGraph::from_edges(n, std::move(es));
}

inline SimpleGraph cycle_graph(std::size_t n) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> es;
    for (std::uint32_t u = 0; u < n; ++u)
        es.emplace_back(u, static_cast<std::uint32_t>((u + 1) % n));
    return SimpleGraph::from_edges(n, std::move(es));
}

// Path on n vertices (n - 1 edges).
inline SimpleGraph path_graph(std::size_t n) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> es;
    for (std::uint32_t u = 0; u + 1 < n; ++u) es.emplace_back(u, u + 1);
    return SimpleGraph::from_edges(n, std::move(es));
}

inline SimpleGraph complete_bipartite(std::size_t a, std::size_t b) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> es;
    for (std::uint32_t u = 0; u < a; ++u)
        for (std::uint32_t v = 0; v < b; ++v)
            es.emplace_back(u, static_cast<std::uint32_t>(a + v));
    return SimpleGraph::from_edges(a + b, std::move(es));
}

inline SimpleGraph complete_minus_edge(std::size_t n) {
    auto g = complete_graph(n);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> es(g.edges);
    es.pop_back(); // drop the lexicographically last edge (n-2, n-1)
    return SimpleGraph::from_edges(n, std::move(es));
}

// Complete graph on n vertices plus one pendant vertex hanging off vertex 0.
inline SimpleGraph complete_plus_pendant(std::size_t n) {
    auto g = complete_graph(n);
    auto es = g.edges;
    es.emplace_back(0, static_cast<std::uint32_t>(n));
    return SimpleGraph::from_edges(n + 1, std::move(es));
}

// Backtracking isomorphism test for small graphs (degree-pruned).
inline bool graphs_isomorphic(const SimpleGraph& g, const SimpleGraph& h) {
    if (g.n != h.n || g.edges.size() != h.edges.size() || g.reflexive != h.reflexive)
        return false;
    std::vector<std::size_t> dg(g.n), dh(h.n);
    for (std::size_t v = 0; v < g.n; ++v) dg[v] = g.degree(static_cast<std::uint32_t>(v));
    for (std::size_t v = 0; v < h.n; ++v) dh[v] = h.degree(static_cast<std::uint32_t>(v));
    {
        auto a = dg, b = dh;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return false;
    }
    std::vector<std::int64_t> map(g.n, -1);
    std::vector<bool> used(h.n, false);
    std::function<bool(std::size_t)> rec = [&](std::size_t v) -> bool {
        if (v == g.n) return true;
        for (std::uint32_t w = 0; w < h.n; ++w) {
            if (used[w] || dg[v] != dh[w]) continue;
            bool ok = true;
            for (std::uint32_t u = 0; u < v && ok; ++u)
                if (g.adjacent(u, static_cast<std::uint32_t>(v)) !=
                    h.adjacent(static_cast<std::uint32_t>(map[u]), w))
                    ok = false;
            if (!ok) continue;
            map[v] = w;
            used[w] = true;
            if (rec(v + 1)) return true;
            map[v] = -1;
            used[w] = false;
        }
        return false;
    };
    return rec(0);
}

// A homomorphism between graphs: every source edge maps to a target edge
// (equal endpoints are allowed only on reflexive targets).
struct GraphColouring {
    std::shared_ptr<const SimpleGraph> source;
    std::shared_ptr<const SimpleGraph> target;
    std::vector<std::uint32_t> image;

    const BitVec& label(std::uint32_t v) const { return target->labels.at(image[v]); }

    friend bool operator==(const GraphColouring& a, const GraphColouring& b) {
        return a.image == b.image;
    }
};

inline bool is_graph_hom(const SimpleGraph& g, const SimpleGraph& h,
                         const std::vector<std::uint32_t>& image) {
    if (image.size() != g.n) return false;
    for (auto v : image)
        if (v >= h.n) return false;
    for (auto [u, v] : g.edges)
        if (!h.adjacent(image[u], image[v])) return false;
    return true;
}

inline void check_same_colouring_frame(const GraphColouring& a, const GraphColouring& b) {
    if (a.source.get() != b.source.get() || a.target.get() != b.target.get())
        throw std::invalid_argument("colourings live over different graphs");
}

// All homomorphisms G -> H by backtracking, lexicographic by image array.
inline std::vector<GraphColouring> graph_homs(std::shared_ptr<const SimpleGraph> g,
                                              std::shared_ptr<const SimpleGraph> h,
                                              const Caps& caps = {}) {
    // |V(H)|^|V(G)| candidate bound
    long double bound = 1;
    for (std::size_t i = 0; i < g->n; ++i) bound *= static_cast<long double>(h->n);
    if (bound > static_cast<long double>(caps.max_homs))
        throw capacity_error("graph_homs: candidate space exceeds cap");

    std::vector<GraphColouring> out;
    std::vector<std::uint32_t> image(g->n, 0);
    std::function<void(std::uint32_t)> rec = [&](std::uint32_t v) {
        if (v == g->n) {
            out.push_back(GraphColouring{g, h, image});
            return;
        }
        for (std::uint32_t w = 0; w < h->n; ++w) {
            bool ok = true;
            for (std::uint32_t u = 0; u < v && ok; ++u)
                if (g->adjacent(u, v) && !h->adjacent(image[u], w)) ok = false;
            if (!ok) continue;
            image[v] = w;
            rec(v + 1);
        }
    };
    if (g->n == 0)
        out.push_back(GraphColouring{g, h, {}});
    else
        rec(0);
    return out;
}

// Adjacency in gCol(G, H): the colourings differ on exactly one vertex.
inline bool gcol_adjacent(const GraphColouring& phi, const GraphColouring& psi) {
    check_same_colouring_frame(phi, psi);
    std::size_t diff = 0;
    for (std::size_t v = 0; v < phi.image.size(); ++v)
        if (phi.image[v] != psi.image[v] && ++diff > 1) return false;
    return diff == 1;
}

struct KempeWitness {
    BitVec toggle;   // b: added to the colour of every vertex in the component
    BitVec vertices; // U over source vertex indices
    BitVec base;     // b': lexicographically least colour appearing on U
};

namespace detail {
inline void require_vector_labelled(const GraphColouring& phi) {
    if (phi.target->labels.size() != phi.target->n)
        throw std::invalid_argument("kempe: target is not vector-labelled");
}
} // namespace detail

// Kempe adjacency on decision-graph-valued colourings: psi = phi + b on a
// connected component U of the subgraph induced on the two colour classes
// b' and b' + b.
inline std::optional<KempeWitness> kempe_adjacent(const GraphColouring& phi,
                                                  const GraphColouring& psi) {
    check_same_colouring_frame(phi, psi);
    detail::require_vector_labelled(phi);
    const SimpleGraph& g = *phi.source;

    BitVec diff(g.n);
    for (std::size_t v = 0; v < g.n; ++v)
        if (phi.image[v] != psi.image[v]) diff.set(v);
    if (diff.none()) return std::nullopt;

    std::uint32_t v0 = static_cast<std::uint32_t>(diff.lowest_set());
    BitVec b = phi.label(v0) + psi.label(v0);
    bool constant = true;
    diff.for_each_set([&](std::size_t v) {
        if (phi.label(static_cast<std::uint32_t>(v)) +
                psi.label(static_cast<std::uint32_t>(v)) != b)
            constant = false;
    });
    if (!constant) return std::nullopt;

    // The pair class {b', b' + b} with b' the least colour seen on U.
    BitVec base = phi.label(v0);
    bool in_pair = true;
    diff.for_each_set([&](std::size_t v) {
        const BitVec& c = phi.label(static_cast<std::uint32_t>(v));
        if (c < base) base = c;
    });
    BitVec other = base + b;
    diff.for_each_set([&](std::size_t v) {
        const BitVec& c = phi.label(static_cast<std::uint32_t>(v));
        if (c != base && c != other) in_pair = false;
    });
    if (!in_pair) return std::nullopt;

    BitVec cls(g.n);
    for (std::size_t v = 0; v < g.n; ++v) {
        const BitVec& c = phi.label(static_cast<std::uint32_t>(v));
        if (c == base || c == other) cls.set(v);
    }
    if (g.component_within(v0, cls) != diff) return std::nullopt;
    return KempeWitness{b, diff, base};
}

// All Kempe moves from phi: for every colour pair and every component of the
// induced two-colour subgraph, toggle and keep the result when it is again a
// homomorphism.  Deduplicated, ordered lexicographically by image.
inline std::vector<GraphColouring> kempe_neighbors(const GraphColouring& phi) {
    detail::require_vector_labelled(phi);
    const SimpleGraph& g = *phi.source;
    const SimpleGraph& d = *phi.target;

    std::unordered_map<BitVec, std::uint32_t, BitVecHash> vertex_of;
    for (std::uint32_t i = 0; i < d.n; ++i) vertex_of[d.labels[i]] = i;

    std::vector<GraphColouring> out;
    std::unordered_set<std::vector<std::uint32_t>, VecU32Hash> seen;
    for (std::uint32_t x = 0; x < d.n; ++x) {
        for (std::uint32_t y = x + 1; y < d.n; ++y) {
            BitVec b = d.labels[x] + d.labels[y];
            BitVec cls(g.n);
            for (std::size_t v = 0; v < g.n; ++v)
                if (phi.image[v] == x || phi.image[v] == y) cls.set(v);
            if (cls.none()) continue;
            BitVec todo = cls;
            while (todo.any()) {
                std::uint32_t v0 = static_cast<std::uint32_t>(todo.lowest_set());
                BitVec comp = g.component_within(v0, cls);
                todo = todo.and_not(comp);
                std::vector<std::uint32_t> image = phi.image;
                comp.for_each_set([&](std::size_t v) {
                    image[v] = vertex_of.at(d.labels[phi.image[v]] + b);
                });
                if (is_graph_hom(g, d, image) && seen.insert(image).second)
                    out.push_back(GraphColouring{phi.source, phi.target, std::move(image)});
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const GraphColouring& a, const GraphColouring& b) { return a.image < b.image; });
    return out;
}

// Explicit recolouring graphs over a fixed colouring list: vertices are the
// colourings, edges are single-vertex changes (gCol) or Kempe moves (kCol).
inline SimpleGraph gcol_graph(const std::vector<GraphColouring>& cols) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t i = 0; i < cols.size(); ++i)
        for (std::uint32_t j = i + 1; j < cols.size(); ++j)
            if (gcol_adjacent(cols[i], cols[j])) edges.emplace_back(i, j);
    return SimpleGraph::from_edges(cols.size(), std::move(edges));
}

inline SimpleGraph kcol_graph(const std::vector<GraphColouring>& cols) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t i = 0; i < cols.size(); ++i)
        for (std::uint32_t j = i + 1; j < cols.size(); ++j)
            if (kempe_adjacent(cols[i], cols[j])) edges.emplace_back(i, j);
    return SimpleGraph::from_edges(cols.size(), std::move(edges));
}

// BFS path in kCol(G, D) from phi to psi, or nullopt.
inline std::optional<std::vector<GraphColouring>> kempe_decide(const GraphColouring& phi,
                                                               const GraphColouring& psi,
                                                               const Caps& caps = {}) {
    check_same_colouring_frame(phi, psi);
    detail::require_vector_labelled(phi);
    if (phi.image == psi.image) return std::vector<GraphColouring>{phi};

    std::vector<std::vector<std::uint32_t>> states{phi.image};
    std::unordered_map<std::vector<std::uint32_t>, std::size_t, VecU32Hash> parent_of;
    parent_of[phi.image] = 0; // self-parent marks the root
    std::queue<std::size_t> queue;
    queue.push(0);
    std::vector<std::size_t> parent{0};

    while (!queue.empty()) {
        std::size_t cur = queue.front();
        queue.pop();
        GraphColouring c{phi.source, phi.target, states[cur]};
        for (auto& nb : kempe_neighbors(c)) {
            if (parent_of.count(nb.image)) continue;
            std::size_t id = states.size();
            if (id > caps.max_states)
                throw capacity_error("kempe_decide: state cap exceeded");
            parent_of[nb.image] = id;
            states.push_back(nb.image);
            parent.push_back(cur);
            if (nb.image == psi.image) {
                std::vector<GraphColouring> path;
                std::size_t at = id;
                while (true) {
                    path.push_back(GraphColouring{phi.source, phi.target, states[at]});
                    if (at == 0) break;
                    at = parent[at];
                }
                std::reverse(path.begin(), path.end());
                return path;
            }
            queue.push(id);
        }
    }
    return std::nullopt;
}

} // namespace matrec
