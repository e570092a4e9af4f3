#pragma once

// Decision graphs of binary matroids, the Tutte connection between matroid
// colourings of M(G) and graph colourings of G into the decision graph, and
// the constructive transfers between matroid recolouring and Kempe
// recolouring.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "matrec/caps.hpp"
#include "matrec/gf2.hpp"
#include "matrec/graphs.hpp"
#include "matrec/hom.hpp"
#include "matrec/matroid.hpp"
#include "matrec/recolor.hpp"

namespace matrec {

// The graph on all of GF(2)^m whose edges are the pairs summing to a point.
// With the rank-row reduced representation this is the universal decision
// graph; vertex i carries the vector whose coordinate k is bit k of i.
struct DecisionGraph {
    std::shared_ptr<const SimpleGraph> graph; // labels[i] = vector of vertex i
    MatroidPtr source;
    BitMatrix representation; // the representation the graph was built from
    bool universal = false;

    std::size_t coords() const { return representation.rows(); }

    std::uint32_t vertex_of(const BitVec& v) const {
        if (v.size() != coords())
            throw std::invalid_argument("decision graph: vector has wrong dimension");
        std::uint64_t x = 0;
        v.for_each_set([&](std::size_t i) { x |= std::uint64_t{1} << i; });
        return static_cast<std::uint32_t>(x);
    }

    // Point index of a representation column, e.g. when reading colours back.
    std::optional<std::uint32_t> point_of_column(const BitVec& v) const {
        auto it = column_index.find(v);
        if (it == column_index.end()) return std::nullopt;
        return it->second;
    }

    const BitVec& column(std::size_t point) const { return representation.col(point); }

    std::unordered_map<BitVec, std::uint32_t, BitVecHash> column_index;
};

// Row-reduces the representation of N down to rank many rows; the cached
// basis columns become identity columns.
inline BitMatrix universal_representation(const BinaryMatroid& n) {
    RowReduction rr = row_reduce(n.representation());
    std::vector<BitVec> cols;
    cols.reserve(n.size());
    for (std::size_t j = 0; j < n.size(); ++j) {
        BitVec c(rr.rank);
        for (std::size_t i = 0; i < rr.rank; ++i)
            if (rr.rref.col(j).test(i)) c.set(i);
        cols.push_back(std::move(c));
    }
    return BitMatrix(rr.rank, std::move(cols));
}

inline DecisionGraph decision_graph(const MatroidPtr& n, bool universal = true,
                                    const Caps& caps = {}) {
    DecisionGraph d;
    d.source = n;
    d.universal = universal;
    d.representation = universal ? universal_representation(*n) : n->representation();
    const std::size_t m = d.representation.rows();
    if (m >= 63 || (std::uint64_t{1} << m) > caps.max_states)
        throw capacity_error("decision_graph: 2^" + std::to_string(m) +
                             " vertices exceed the state cap");
    const std::uint64_t nverts = std::uint64_t{1} << m;

    for (std::uint32_t p = 0; p < n->size(); ++p)
        d.column_index.emplace(d.representation.col(p), p);

    bool reflexive = false;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t p = 0; p < n->size(); ++p) {
        std::uint64_t x = 0;
        d.representation.col(p).for_each_set([&](std::size_t i) { x |= std::uint64_t{1} << i; });
        if (x == 0) {
            reflexive = true; // a loop makes every vertex self-adjacent
            continue;
        }
        for (std::uint64_t v = 0; v < nverts; ++v) {
            std::uint64_t w = v ^ x;
            if (w > v)
                edges.emplace_back(static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(w));
        }
    }
    auto g = SimpleGraph::from_edges(static_cast<std::size_t>(nverts), std::move(edges),
                                     reflexive);
    g.labels.reserve(nverts);
    for (std::uint64_t v = 0; v < nverts; ++v) {
        BitVec label(m);
        for (std::size_t i = 0; i < m; ++i)
            if ((v >> i) & 1) label.set(i);
        g.labels.push_back(std::move(label));
    }
    d.graph = std::make_shared<const SimpleGraph>(std::move(g));
    return d;
}

// Root, BFS spanning tree and a vertex order refining the tree order.
struct TutteContext {
    std::shared_ptr<const SimpleGraph> graph;
    std::uint32_t root = 0;
    std::vector<std::int64_t> parent;      // -1 at the root
    std::vector<std::uint32_t> parent_edge; // edge index towards the parent
    std::vector<std::uint32_t> order;       // BFS discovery order
};

inline TutteContext make_tutte_context(std::shared_ptr<const SimpleGraph> g,
                                       std::uint32_t root = 0) {
    if (root >= g->n) throw std::invalid_argument("tutte: root out of range");
    TutteContext ctx;
    ctx.graph = g;
    ctx.root = root;
    ctx.parent.assign(g->n, -1);
    ctx.parent_edge.assign(g->n, 0);
    std::vector<bool> seen(g->n, false);
    seen[root] = true;
    ctx.order.push_back(root);
    for (std::size_t head = 0; head < ctx.order.size(); ++head) {
        std::uint32_t u = ctx.order[head];
        g->adj[u].for_each_set([&](std::size_t w) {
            if (seen[w]) return;
            seen[w] = true;
            ctx.parent[w] = u;
            ctx.parent_edge[w] = g->edge_index(u, static_cast<std::uint32_t>(w));
            ctx.order.push_back(static_cast<std::uint32_t>(w));
        });
    }
    if (ctx.order.size() != g->n)
        throw std::invalid_argument("tutte: graph is disconnected");
    return ctx;
}

namespace detail {
inline void check_domain_graphic(const MatroidHom& tau, const SimpleGraph& g) {
    if (tau.dom->ambient_dim() != g.n || tau.dom->size() != g.edges.size())
        throw std::invalid_argument("tutte: hom domain is not the graphic matroid of G");
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        BitVec expect(g.n);
        expect.set(g.edges[i].first);
        expect.set(g.edges[i].second);
        if (tau.dom->point(i) != expect)
            throw std::invalid_argument("tutte: hom domain is not the graphic matroid of G");
    }
}
} // namespace detail

// The colouring phi_{tau,b}: sets b at the root and propagates tau values
// along the tree; a graph homomorphism G -> D with phi(root) = b.
inline GraphColouring tutte_phi(const MatroidHom& tau, const TutteContext& ctx, const BitVec& b,
                                const DecisionGraph& d) {
    check_same_matroid(tau.cod, d.source, "tutte_phi: decision graph of a different matroid");
    detail::check_domain_graphic(tau, *ctx.graph);
    std::vector<BitVec> colour(ctx.graph->n, BitVec(d.coords()));
    colour[ctx.root] = b;
    for (std::size_t k = 1; k < ctx.order.size(); ++k) {
        std::uint32_t v = ctx.order[k];
        colour[v] = colour[static_cast<std::size_t>(ctx.parent[v])] +
                    d.column(tau.image[ctx.parent_edge[v]]);
    }
    std::vector<std::uint32_t> image(ctx.graph->n);
    for (std::size_t v = 0; v < ctx.graph->n; ++v) image[v] = d.vertex_of(colour[v]);
    GraphColouring phi{ctx.graph, d.graph, std::move(image)};
    if (!is_graph_hom(*phi.source, *phi.target, phi.image))
        throw internal_error("tutte_phi: produced map is not a graph homomorphism");
    return phi;
}

// The matroid colouring tau_phi(uv) = phi(u) + phi(v).
inline MatroidHom tutte_tau(const GraphColouring& phi, const DecisionGraph& d,
                            const MatroidPtr& dom_graphic) {
    if (phi.target.get() != d.graph.get())
        throw std::invalid_argument("tutte_tau: colouring does not target this decision graph");
    const SimpleGraph& g = *phi.source;
    std::vector<std::uint32_t> image(g.edges.size());
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        auto [u, v] = g.edges[i];
        auto p = d.point_of_column(phi.label(u) + phi.label(v));
        if (!p) throw std::invalid_argument("tutte_tau: input is not a homomorphism into D");
        image[i] = *p;
    }
    MatroidHom tau{dom_graphic, d.source, std::move(image)};
    detail::check_domain_graphic(tau, g);
    if (!is_homomorphism(tau.dom, tau.cod, tau.image))
        throw internal_error("tutte_tau: produced map is not a matroid homomorphism");
    return tau;
}

// For every base colour b, the maps tau -> phi_{tau,b} and phi -> tau_phi
// are mutually inverse bijections between Hom(M(G), N) and the colourings
// with phi(root) = b.  Checked by full enumeration.
inline bool phi_fiber_bijection_check(std::shared_ptr<const SimpleGraph> g, const MatroidPtr& n,
                                      std::uint32_t root = 0, const Caps& caps = {}) {
    auto dom = share(graphic(*g));
    auto d = decision_graph(n, /*universal=*/true, caps);
    auto ctx = make_tutte_context(g, root);
    auto homs = enumerate_homs(dom, n, caps);
    auto colourings = graph_homs(g, d.graph, caps);

    for (std::uint32_t b = 0; b < d.graph->n; ++b) {
        std::vector<const GraphColouring*> fiber;
        for (const auto& phi : colourings)
            if (phi.image[root] == b) fiber.push_back(&phi);
        if (fiber.size() != homs.size()) return false;
        for (const auto& tau : homs) {
            auto phi = tutte_phi(tau, ctx, d.graph->labels[b], d);
            if (phi.image[root] != b) return false;
            if (tutte_tau(phi, d, dom).image != tau.image) return false;
        }
        for (const auto* phi : fiber) {
            auto tau = tutte_tau(*phi, d, dom);
            if (tutte_phi(tau, ctx, d.graph->labels[b], d).image != phi->image) return false;
        }
    }
    return true;
}

// Transfer kCol -> Col: a Kempe path maps, edge by edge, to a
// witnessed path in Col(M(G), N); each Kempe move crosses the cut delta(U),
// which splits into cocircuits recoloured one at a time.
inline RecolPath mk_transfer_to_matroid(const std::vector<GraphColouring>& kempe_path,
                                        const DecisionGraph& d, const MatroidPtr& dom_graphic) {
    if (kempe_path.empty())
        throw std::invalid_argument("mk_transfer_to_matroid: empty path");
    const SimpleGraph& g = *kempe_path.front().source;

    RecolPath out;
    out.homs.push_back(tutte_tau(kempe_path.front(), d, dom_graphic));
    for (std::size_t step = 0; step + 1 < kempe_path.size(); ++step) {
        auto witness = kempe_adjacent(kempe_path[step], kempe_path[step + 1]);
        if (!witness)
            throw std::invalid_argument("mk_transfer_to_matroid: consecutive maps not "
                                        "Kempe-adjacent");
        // toggled vertex set U; the crossing edges form a cocycle of M(G)
        PointSet crossing(g.edges.size());
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
            auto [u, v] = g.edges[i];
            if (witness->vertices.test(u) != witness->vertices.test(v)) crossing.set(i);
        }
        MatroidHom target = tutte_tau(kempe_path[step + 1], d, dom_graphic);
        if (crossing.none()) {
            if (out.homs.back().image != target.image)
                throw internal_error("mk_transfer_to_matroid: untouched cut but maps differ");
            continue;
        }
        auto parts = dom_graphic->cocycle_decompose(crossing);
        for (const auto& part : parts) {
            const MatroidHom& cur = out.homs.back();
            std::vector<std::uint32_t> image = cur.image;
            bool ok = true;
            part.for_each_set([&](std::size_t e) {
                auto idx = d.point_of_column(d.column(cur.image[e]) + witness->toggle);
                if (!idx)
                    ok = false;
                else
                    image[e] = *idx;
            });
            if (!ok)
                throw internal_error("mk_transfer_to_matroid: shifted image left the matroid");
            MatroidHom next{dom_graphic, d.source, std::move(image)};
            auto w = adjacent(cur, next);
            if (!w || w->cocircuit != part)
                throw internal_error("mk_transfer_to_matroid: step is not the expected edge");
            out.moves.push_back(std::move(*w));
            out.homs.push_back(std::move(next));
        }
        if (out.homs.back().image != target.image)
            throw internal_error("mk_transfer_to_matroid: path endpoint mismatch");
    }
    return out;
}

// Transfer Col -> kCol for complete decision graphs: an edge
// tau ~ tau' = tau + b*chi_C lifts to a Kempe path from phi_tau to phi_tau'
// rooted at colour 0, toggling the two-colour components partitioning the
// side of the cut away from the root.
//
// The decision graph must be complete (the codomain is a projective
// geometry); the number of coordinates t is reported via the context.
struct MKTransfer {
    std::size_t t = 0;                  // D is K_{2^t}
    std::vector<GraphColouring> path;   // Kempe path, endpoints included
};

inline MKTransfer mk_transfer_to_kempe(const MatroidHom& tau, const MatroidHom& tau2,
                                       const TutteContext& ctx, const DecisionGraph& d) {
    // completeness of D = loopless + every pair adjacent
    const SimpleGraph& dg = *d.graph;
    if (dg.reflexive || dg.edges.size() != dg.n * (dg.n - 1) / 2)
        throw std::invalid_argument("mk_transfer_to_kempe: decision graph is not a clique");
    MKTransfer out;
    out.t = d.coords();
    if (out.t < 2) throw std::invalid_argument("mk_transfer_to_kempe: need t >= 2");

    const SimpleGraph& g = *ctx.graph;
    BitVec zero(d.coords());
    GraphColouring phi = tutte_phi(tau, ctx, zero, d);
    GraphColouring psi = tutte_phi(tau2, ctx, zero, d);
    out.path.push_back(phi);
    if (tau.image == tau2.image) return out;

    auto w = adjacent(tau, tau2);
    if (!w) throw std::invalid_argument("mk_transfer_to_kempe: maps are not adjacent");
    // b in decision-graph coordinates, read off any crossing point
    std::size_t e0 = w->cocircuit.lowest_set();
    BitVec b = d.column(tau.image[e0]) + d.column(tau2.image[e0]);

    // 2-colour the vertices by which side of the cut they are on
    std::vector<int> side(g.n, -1);
    side[ctx.root] = 0;
    std::vector<std::uint32_t> stack{ctx.root};
    while (!stack.empty()) {
        auto u = stack.back();
        stack.pop_back();
        g.adj[u].for_each_set([&](std::size_t v) {
            int expect = side[u] ^ (w->cocircuit.test(g.edge_index(u, static_cast<std::uint32_t>(v)))
                                        ? 1
                                        : 0);
            if (side[v] == -1) {
                side[v] = expect;
                stack.push_back(static_cast<std::uint32_t>(v));
            } else if (side[v] != expect) {
                throw internal_error("mk_transfer_to_kempe: witness set is not a cut");
            }
        });
    }

    BitVec toggled(g.n);
    for (std::size_t v = 0; v < g.n; ++v)
        if (side[v] == 1) toggled.set(v);

    // partition the toggled side into two-colour components
    std::unordered_map<BitVec, std::uint32_t, BitVecHash> vertex_of_label;
    for (std::uint32_t i = 0; i < dg.n; ++i) vertex_of_label.emplace(dg.labels[i], i);
    GraphColouring cur = phi;
    BitVec remaining = toggled;
    while (remaining.any()) {
        std::uint32_t u = static_cast<std::uint32_t>(remaining.lowest_set());
        BitVec pair_class(g.n);
        const BitVec cu = cur.label(u);
        for (std::size_t v = 0; v < g.n; ++v)
            if (cur.label(static_cast<std::uint32_t>(v)) == cu ||
                cur.label(static_cast<std::uint32_t>(v)) == cu + b)
                pair_class.set(v);
        BitVec comp = g.component_within(u, pair_class);
        if (!comp.subset_of(toggled))
            throw internal_error("mk_transfer_to_kempe: a two-colour component escapes the "
                                 "toggled side");
        std::vector<std::uint32_t> image = cur.image;
        comp.for_each_set(
            [&](std::size_t v) { image[v] = vertex_of_label.at(cur.label(static_cast<std::uint32_t>(v)) + b); });
        GraphColouring next{cur.source, cur.target, std::move(image)};
        if (!kempe_adjacent(cur, next))
            throw internal_error("mk_transfer_to_kempe: toggle is not a Kempe move");
        out.path.push_back(next);
        cur = std::move(next);
        remaining = remaining.and_not(comp);
    }
    if (cur.image != psi.image)
        throw internal_error("mk_transfer_to_kempe: path did not reach phi_{tau'}");
    return out;
}

} // namespace matrec
