#pragma once

// The gadget reduction: embedding-clique verification, construction of the
// twin-extension matroid M*, the lift s(tau) and restriction sigma_M, the
// crossing-cocircuit classification, and a brute-force harness validating
// the reduction's path equivalence on small instances.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "matrec/caps.hpp"
#include "matrec/decision.hpp"
#include "matrec/gf2.hpp"
#include "matrec/graphs.hpp"
#include "matrec/hom.hpp"
#include "matrec/matroid.hpp"
#include "matrec/recolor.hpp"

namespace matrec {

// M* built from M and an embedded clique copy inside N.
//
// Point layout of M*: [0, m) the points of M, [m, 2m) their twins, then the
// clique block: one point u_i + u_j per pair 0 <= i < j < n in pair-lex
// order.  The twin of e completes a circuit {e, e', Z} with the four-point
// star Z = {u_i + u_{n-1} : i = 0..3}.
struct GadgetInstance {
    MatroidPtr source; // M
    MatroidPtr target; // N
    std::size_t clique_n = 0;
    std::vector<BitVec> embedding;       // y_0 = 0, ..., y_{n-1}; N-ambient
    std::vector<std::uint32_t> copy_k4;  // N point indices of {y_i + y_j : i<j<=3}, pair-lex
    std::vector<std::uint32_t> star;     // N point indices of {y_i + y_{n-1} : i = 0..3}
    BitVec star_sum;                     // y_0 + y_1 + y_2 + y_3 in N-ambient
    MatroidPtr gadget;                   // M*

    std::size_t m_size() const { return source->size(); }
    std::uint32_t twin(std::uint32_t e) const {
        return e + static_cast<std::uint32_t>(m_size());
    }
    std::uint32_t clique_block() const { return static_cast<std::uint32_t>(2 * m_size()); }

    // Index in M* of the clique point u_i + u_j (i < j, 0-based).
    std::uint32_t clique_point(std::uint32_t i, std::uint32_t j) const {
        if (i > j) std::swap(i, j);
        // offset of pair (i, j) in lexicographic pair order over n vertices
        std::uint32_t off = 0;
        for (std::uint32_t a = 0; a < i; ++a)
            off += static_cast<std::uint32_t>(clique_n) - a - 1;
        off += j - i - 1;
        return clique_block() + off;
    }

    // The star Z as a point set of M*.
    PointSet star_set() const {
        PointSet s(gadget->size());
        for (std::uint32_t i = 0; i < 4; ++i)
            s.set(clique_point(i, static_cast<std::uint32_t>(clique_n) - 1));
        return s;
    }
};

namespace detail {
// Greatest n in [5, limit] such that N contains an induced M(K_n) copy.
inline std::optional<std::pair<std::size_t, std::vector<BitVec>>> largest_clique_copy(
    const BinaryMatroid& n_matroid, std::size_t forced_n) {
    if (forced_n != 0) {
        auto emb = find_clique_copy(n_matroid, forced_n);
        if (!emb) return std::nullopt;
        return std::make_pair(forced_n, std::move(*emb));
    }
    std::size_t upper = n_matroid.rank() + 1;
    while (upper * (upper - 1) / 2 > n_matroid.size()) --upper;
    for (std::size_t n = upper; n >= 5; --n)
        if (auto emb = find_clique_copy(n_matroid, n)) return std::make_pair(n, std::move(*emb));
    return std::nullopt;
}
} // namespace detail

// Builds M* over the (largest, or forced when clique_n != 0) embedded clique
// copy of N.  Verifies the construction invariants: the twin circuits, the
// combined basis, and simplicity of the result.
inline GadgetInstance build_gadget(const MatroidPtr& m, const MatroidPtr& n,
                                   const Caps& caps = {}, std::size_t clique_n = 0) {
    (void)caps;
    if (n->has_loop()) throw std::invalid_argument("build_gadget: N must be loopless");
    auto found = detail::largest_clique_copy(*n, clique_n);
    if (!found)
        throw std::invalid_argument("build_gadget: N contains no M(K_5) copy");

    GadgetInstance g;
    g.source = m;
    g.target = n;
    g.clique_n = found->first;
    g.embedding = std::move(found->second);

    const std::size_t nn = g.clique_n;
    g.star_sum = BitVec(n->ambient_dim());
    for (std::size_t i = 0; i < 4; ++i) g.star_sum += g.embedding[i];
    for (std::uint32_t i = 0; i < 4; ++i)
        for (std::uint32_t j = i + 1; j < 4; ++j)
            g.copy_k4.push_back(*n->find_point(g.embedding[i] + g.embedding[j]));
    for (std::uint32_t i = 0; i < 4; ++i)
        g.star.push_back(*n->find_point(g.embedding[i] + g.embedding[nn - 1]));

    // columns of M*: the M block keeps its coordinates, the clique block
    // lives on fresh ones; a twin is its point plus the star sum u0+u1+u2+u3
    const std::size_t mm = m->ambient_dim();
    const std::size_t ambient = mm + nn;
    auto lift_col = [&](const BitVec& v) {
        BitVec c(ambient);
        v.for_each_set([&](std::size_t i) { c.set(i); });
        return c;
    };
    std::vector<BitVec> cols;
    cols.reserve(2 * m->size() + nn * (nn - 1) / 2);
    for (const auto& p : m->points()) cols.push_back(lift_col(p));
    for (const auto& p : m->points()) {
        BitVec c = lift_col(p);
        for (std::size_t i = 0; i < 4; ++i) c.flip(mm + i);
        cols.push_back(std::move(c));
    }
    for (std::uint32_t i = 0; i < nn; ++i)
        for (std::uint32_t j = i + 1; j < nn; ++j) {
            BitVec c(ambient);
            c.set(mm + i);
            c.set(mm + j);
            cols.push_back(std::move(c));
        }
    try {
        g.gadget = share(BinaryMatroid::from_columns(std::move(cols), m->has_loop()));
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("build_gadget: M* is not simple: ") + e.what());
    }

    // every {e, e', Z} is a circuit of M*
    for (std::uint32_t e = 0; e < m->size(); ++e) {
        PointSet c = g.star_set();
        c.set(e);
        c.set(g.twin(e));
        if (!g.gadget->is_circuit(c))
            throw internal_error("build_gadget: twin set is not a circuit");
    }

    // a basis of M and the star {u_i + u_{n-1}} together form a basis of M*
    {
        Echelon ech;
        std::size_t count = 0;
        for (auto e : m->basis()) {
            if (!ech.add(g.gadget->point(e))) throw internal_error("build_gadget: basis check");
            ++count;
        }
        for (std::uint32_t i = 0; i + 1 < nn; ++i) {
            if (!ech.add(g.gadget->point(g.clique_point(i, static_cast<std::uint32_t>(nn) - 1))))
                throw internal_error("build_gadget: basis check");
            ++count;
        }
        if (count != g.gadget->rank())
            throw internal_error("build_gadget: combined basis has the wrong size");
        // with respect to that basis, the fundamental cycle of the twin of a
        // basis point of M is exactly {e, e', Z}
        std::vector<BitVec> basis_cols;
        std::vector<std::uint32_t> basis_ids;
        for (auto e : m->basis()) {
            basis_cols.push_back(g.gadget->point(e));
            basis_ids.push_back(static_cast<std::uint32_t>(e));
        }
        for (std::uint32_t i = 0; i + 1 < nn; ++i) {
            auto id = g.clique_point(i, static_cast<std::uint32_t>(nn) - 1);
            basis_cols.push_back(g.gadget->point(id));
            basis_ids.push_back(id);
        }
        GF2Solver solver(basis_cols);
        for (auto e : m->basis()) {
            auto combo = solver.express(g.gadget->point(g.twin(static_cast<std::uint32_t>(e))));
            if (!combo) throw internal_error("build_gadget: twin outside the basis span");
            PointSet fc(g.gadget->size());
            combo->for_each_set([&](std::size_t slot) { fc.set(basis_ids[slot]); });
            fc.set(g.twin(static_cast<std::uint32_t>(e)));
            PointSet expect = g.star_set();
            expect.set(e);
            expect.set(g.twin(static_cast<std::uint32_t>(e)));
            if (fc != expect)
                throw internal_error("build_gadget: fundamental cycle of a twin is off");
        }
    }
    return g;
}

// Every homomorphism M(K_n) -> M(G) with n >= 5 is an isomorphic embedding.
// Two independent routes per hom: (a) injectivity plus an isomorphism test
// of the induced submatroid, (b) the decision-graph argument, reading the
// clique through the zero vertex and recovering a vertex relabelling.
// Returns true iff every hom passes; the two oracles must agree.
inline bool verify_k5auto(std::size_t n, const SimpleGraph& graph, const Caps& caps = {}) {
    auto dom = share(graphic(complete_graph(n)));
    auto cod = share(graphic(graph));
    auto homs = enumerate_homs(dom, cod, caps);
    bool all = true;
    for (const auto& tau : homs) {
        // route (a): injective with an induced M(K_n) image
        bool injective = true;
        {
            auto sorted = tau.image;
            std::sort(sorted.begin(), sorted.end());
            injective = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
        }
        bool induced = false;
        if (injective) {
            std::vector<BitVec> cols;
            for (auto p : tau.image) cols.push_back(cod->point(p));
            std::sort(cols.begin(), cols.end());
            induced = isomorphism(*dom, BinaryMatroid::from_columns(cols)).has_value();
        }
        bool route_a = injective && induced;

        // route (b): walk the clique through 0 in D(M(G), A_G); the images
        // of the star at vertex 0 must share a common graph vertex
        bool route_b = true;
        auto kn = complete_graph(n);
        std::vector<BitVec> psi(n, BitVec(graph.n));
        for (std::uint32_t j = 1; j < n; ++j)
            psi[j] = tau.image_col(dom->basis()[j - 1]); // star edges (0, j) are the basis
        for (std::uint32_t i = 0; i < n && route_b; ++i)
            for (std::uint32_t j = i + 1; j < n && route_b; ++j)
                if (psi[i] + psi[j] != tau.image_col(kn.edge_index(i, j))) route_b = false;
        if (route_b) {
            BitVec common = psi[1];
            for (std::uint32_t j = 2; j < n; ++j) common &= psi[j];
            if (common.weight() != 1) {
                route_b = false;
            } else {
                std::size_t v0 = common.lowest_set();
                std::vector<std::size_t> vertex(n, v0);
                std::vector<bool> used(graph.n, false);
                used[v0] = true;
                for (std::uint32_t j = 1; j < n && route_b; ++j) {
                    BitVec rest = psi[j];
                    rest.set(v0, false);
                    if (rest.weight() != 1 || used[rest.lowest_set()]) {
                        route_b = false;
                    } else {
                        vertex[j] = rest.lowest_set();
                        used[vertex[j]] = true;
                    }
                }
            }
        }
        if (route_a != route_b)
            throw internal_error("verify_k5auto: embedding oracles disagree");
        all = all && route_a;
    }
    return all;
}

// Maps a homomorphism tau: M -> N whose images lie in the designated K4
// copy to its lift s(tau): M* -> N, fixing the clique block onto the
// embedded copy and sending each twin to tau(e) + (y0 + y1 + y2 + y3).
inline MatroidHom lift_hom(const GadgetInstance& g, const MatroidHom& tau) {
    check_same_matroid(tau.dom, g.source, "lift_hom: wrong domain");
    check_same_matroid(tau.cod, g.target, "lift_hom: wrong codomain");
    for (auto v : tau.image)
        if (std::find(g.copy_k4.begin(), g.copy_k4.end(), v) == g.copy_k4.end())
            throw std::invalid_argument("lift_hom: tau does not land in the designated copy");

    const auto& n = *g.target;
    std::vector<std::uint32_t> image(g.gadget->size());
    for (std::uint32_t e = 0; e < g.m_size(); ++e) {
        image[e] = tau.image[e];
        auto idx = n.find_point(tau.image_col(e) + g.star_sum);
        if (!idx) throw internal_error("lift_hom: twin image is not a point");
        image[g.twin(e)] = *idx;
    }
    for (std::uint32_t i = 0; i < g.clique_n; ++i)
        for (std::uint32_t j = i + 1; j < g.clique_n; ++j)
            image[g.clique_point(i, j)] = *n.find_point(g.embedding[i] + g.embedding[j]);

    MatroidHom s{g.gadget, g.target, std::move(image)};
    if (!is_homomorphism(s.dom, s.cod, s.image))
        throw internal_error("lift_hom: s(tau) fails the homomorphism check");
    // the restriction of the lift is tau itself
    for (std::uint32_t e = 0; e < g.m_size(); ++e)
        if (s.image[e] != tau.image[e]) throw internal_error("lift_hom: restriction mismatch");
    return s;
}

// The restriction of sigma: M* -> N to the points of M, together with the
// clique copy it lands in (recovered from sigma on the clique block).
struct RestrictedHom {
    MatroidHom hom;                  // M -> N, images inside the copy below
    std::vector<BitVec> clique_labels; // y'_0 = 0, ..., y'_{n-1} in N-ambient
};

inline RestrictedHom restrict_hom(const GadgetInstance& g, const MatroidHom& sigma) {
    check_same_matroid(sigma.dom, g.gadget, "restrict_hom: wrong domain");
    check_same_matroid(sigma.cod, g.target, "restrict_hom: wrong codomain");
    const auto& n = *g.target;
    const std::uint32_t nn = static_cast<std::uint32_t>(g.clique_n);

    RestrictedHom out;
    out.clique_labels.assign(nn, BitVec(n.ambient_dim()));
    for (std::uint32_t j = 1; j < nn; ++j)
        out.clique_labels[j] = n.point(sigma.image[g.clique_point(0, j)]);
    // pairwise consistency (forced by the triangle circuits of the block)
    for (std::uint32_t i = 0; i < nn; ++i)
        for (std::uint32_t j = i + 1; j < nn; ++j)
            if (out.clique_labels[i] + out.clique_labels[j] !=
                n.point(sigma.image[g.clique_point(i, j)]))
                throw internal_error("restrict_hom: clique image is not a clique labelling");
    // the embedding-style independence that makes it a genuine copy
    {
        Echelon e;
        for (std::uint32_t j = 1; j < nn; ++j)
            if (!e.add(out.clique_labels[j]))
                throw internal_error("restrict_hom: clique image is degenerate");
    }

    BitVec star_sum(n.ambient_dim());
    for (std::uint32_t i = 0; i < 4; ++i) star_sum += out.clique_labels[i];

    std::vector<std::uint32_t> image(g.m_size());
    for (std::uint32_t e = 0; e < g.m_size(); ++e) {
        image[e] = sigma.image[e];
        // sigma(e) + sigma(e') equals the star sum
        if (sigma.image_col(e) + sigma.image_col(g.twin(e)) != star_sum)
            throw internal_error("restrict_hom: twin relation violated");
        // and sigma(e) lies in the K4 copy on the first four labels
        bool in_copy = false;
        for (std::uint32_t i = 0; i < 4 && !in_copy; ++i)
            for (std::uint32_t j = i + 1; j < 4 && !in_copy; ++j)
                if (sigma.image_col(e) == out.clique_labels[i] + out.clique_labels[j])
                    in_copy = true;
        if (!in_copy)
            throw internal_error("restrict_hom: restriction leaves the K4 copy");
    }
    out.hom = MatroidHom{g.source, g.target, std::move(image)};
    return out;
}

enum class CrossingKind { Empty, StarCut, PairCut, Anomaly };

struct CrossingClass {
    PointSet cocircuit;   // over M*
    BitVec constant;      // admissible c in N-ambient
    CrossingKind kind = CrossingKind::Empty;
    std::vector<std::uint32_t> cut_side; // clique vertex indices of the small side
};

// Classifies, at a given sigma, every admissible (cocircuit, constant) move
// of Col(M*, N) by the shape of its restriction to the clique block: empty,
// a star cut with c = y_a + y' opening a fresh clique vertex, or a two-vertex
// cut with c = y_a + y_b.  Anything else is flagged.
inline std::vector<CrossingClass> classify_crossing_cocircuits(const GadgetInstance& g,
                                                               const MatroidHom& sigma,
                                                               const Caps& caps = {}) {
    auto restricted = restrict_hom(g, sigma);
    const auto& labels = restricted.clique_labels;
    const auto& n = *g.target;
    const std::uint32_t nn = static_cast<std::uint32_t>(g.clique_n);

    std::vector<CrossingClass> out;
    for (const auto& c_set : g.gadget->cocircuits(caps)) {
        std::size_t e0 = c_set.lowest_set();
        for (std::uint32_t p = 0; p < n.size(); ++p) {
            if (p == sigma.image[e0]) continue;
            BitVec c = n.point(p) + sigma.image_col(e0);
            bool admissible = true;
            c_set.for_each_set([&](std::size_t e) {
                if (admissible && !n.find_point(sigma.image_col(e) + c)) admissible = false;
            });
            if (!admissible) continue;

            CrossingClass cc;
            cc.cocircuit = c_set;
            cc.constant = c;
            // restriction to the clique block as a cut of K_n
            std::vector<int> side(nn, 0);
            for (std::uint32_t j = 1; j < nn; ++j)
                side[j] = c_set.test(g.clique_point(0, j)) ? 1 : 0;
            bool is_cut = true, empty = true;
            for (std::uint32_t i = 0; i < nn && is_cut; ++i)
                for (std::uint32_t j = i + 1; j < nn && is_cut; ++j) {
                    bool crossing = c_set.test(g.clique_point(i, j));
                    empty = empty && !crossing;
                    if (crossing != (side[i] != side[j])) is_cut = false;
                }
            if (empty) {
                cc.kind = CrossingKind::Empty;
            } else if (!is_cut) {
                cc.kind = CrossingKind::Anomaly;
            } else {
                std::vector<std::uint32_t> ones, zeros;
                for (std::uint32_t v = 0; v < nn; ++v) (side[v] ? ones : zeros).push_back(v);
                cc.cut_side = ones.size() <= zeros.size() ? ones : zeros;
                if (cc.cut_side.size() == 1) {
                    // c must open a fresh clique vertex: c + y_a completes a
                    // clique with the remaining labels
                    std::uint32_t a = cc.cut_side[0];
                    BitVec fresh = c + labels[a];
                    bool ok = std::find(labels.begin(), labels.end(), fresh) == labels.end();
                    for (std::uint32_t j = 0; j < nn && ok; ++j)
                        if (j != a && !n.find_point(fresh + labels[j])) ok = false;
                    cc.kind = ok ? CrossingKind::StarCut : CrossingKind::Anomaly;
                } else if (cc.cut_side.size() == 2) {
                    cc.kind = (c == labels[cc.cut_side[0]] + labels[cc.cut_side[1]])
                                  ? CrossingKind::PairCut
                                  : CrossingKind::Anomaly;
                } else {
                    cc.kind = CrossingKind::Anomaly;
                }
            }
            out.push_back(std::move(cc));
        }
    }
    return out;
}

struct ReductionReport {
    std::size_t clique_n = 0;
    std::size_t source_homs = 0;     // homs M -> designated K4 copy
    std::size_t source_edges = 0;
    std::size_t source_components = 0;
    std::size_t target_homs = 0;     // homs M* -> N
    std::size_t target_edges = 0;
    std::size_t target_components = 0;
    std::size_t pairs_checked = 0;
    std::size_t pairs_agreeing = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> mismatches;
    std::size_t lemma1_edges = 0;
    std::size_t lemma1_steps = 0;
    std::size_t lemma2_edges = 0;
    std::size_t lemma2_zero = 0;     // restrictions abstractly equal
    std::size_t lemma2_walks = 0;    // nonempty restricted walks
    std::size_t lemma2_steps = 0;

    bool ok() const { return mismatches.empty(); }

    std::string summary_line() const {
        std::ostringstream os;
        os << "n=" << clique_n << " source_homs=" << source_homs
           << " source_components=" << source_components << " target_homs=" << target_homs
           << " target_components=" << target_components << " pairs=" << pairs_checked
           << " agreeing=" << pairs_agreeing << " mismatches=" << mismatches.size()
           << " lemma1_edges=" << lemma1_edges << " lemma2_edges=" << lemma2_edges;
        return os.str();
    }

    std::string text() const {
        std::ostringstream os;
        os << "gadget reduction report\n"
           << "  clique size n:          " << clique_n << "\n"
           << "  source homs / edges:    " << source_homs << " / " << source_edges << "\n"
           << "  source components:      " << source_components << "\n"
           << "  target homs / edges:    " << target_homs << " / " << target_edges << "\n"
           << "  target components:      " << target_components << "\n"
           << "  pairs checked:          " << pairs_checked << "\n"
           << "  pairs agreeing:         " << pairs_agreeing << "\n"
           << "  mismatches:             " << mismatches.size() << "\n"
           << "  lifted edge walks:      " << lemma1_edges << " (" << lemma1_steps
           << " steps)\n"
           << "  restricted edge walks:  " << lemma2_edges << " (" << lemma2_zero
           << " trivial, " << lemma2_walks << " walks, " << lemma2_steps << " steps)\n"
           << (ok() ? "  RESULT: equivalence holds\n" : "  RESULT: MISMATCH\n");
        return os.str();
    }
};

namespace detail {

// Explicit Col(M, N) built from neighbour generation instead of pairwise
// adjacency; same graph, but linear in edges.  Used by the harness where
// the vertex count makes the quadratic scan painful.
inline RecolouringGraph build_col_graph_by_neighbors(const MatroidPtr& m, const MatroidPtr& n,
                                                     const Caps& caps) {
    RecolouringGraph g;
    g.dom = m;
    g.cod = n;
    g.homs = enumerate_homs(m, n, caps);
    g.adjacency.resize(g.homs.size());
    for (std::uint32_t i = 0; i < g.homs.size(); ++i) {
        for (const auto& nb : neighbors(g.homs[i], caps)) {
            auto j = g.index_of(nb.image);
            if (!j) throw internal_error("col graph: neighbour is not an enumerated hom");
            if (*j <= i) continue;
            auto w = adjacent(g.homs[i], g.homs[*j]);
            if (!w) throw internal_error("col graph: neighbour not adjacent");
            g.edges.push_back(ColEdge{i, *j, std::move(*w)});
            g.adjacency[i].push_back(*j);
            g.adjacency[*j].push_back(i);
        }
    }
    return g;
}

// Component id per vertex.
inline std::vector<std::size_t> component_ids(const RecolouringGraph& g) {
    auto comps = g.components();
    std::vector<std::size_t> id(g.homs.size(), 0);
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (auto v : comps[c]) id[v] = c;
    return id;
}

} // namespace detail

// Exhaustive verification that the reduction preserves path existence:
// tau ~path~ tau' in Col(M, K4-copy)  iff  s(tau) ~path~ s(tau') in
// Col(M*, N); plus step-by-step validation of the lifted walk for every
// source edge and of the restricted walk for every target edge.
inline ReductionReport verify_reduction(const MatroidPtr& m, const MatroidPtr& n,
                                        const Caps& caps = {}, std::size_t forced_n = 0) {
    GadgetInstance g = build_gadget(m, n, caps, forced_n);
    ReductionReport report;
    report.clique_n = g.clique_n;

    // the designated copy as a standalone matroid, points in pair-lex order
    std::vector<BitVec> copy_cols;
    for (auto idx : g.copy_k4) copy_cols.push_back(n->point(idx));
    auto copy = share(BinaryMatroid::from_columns(copy_cols));
    auto to_target = [&](const MatroidHom& h) {
        std::vector<std::uint32_t> image(h.image.size());
        for (std::size_t e = 0; e < h.image.size(); ++e) image[e] = g.copy_k4[h.image[e]];
        return MatroidHom{m, n, std::move(image)};
    };

    auto col_src = build_col_graph(m, copy, caps);
    report.source_homs = col_src.homs.size();
    report.source_edges = col_src.edges.size();
    auto src_comp = detail::component_ids(col_src);
    report.source_components = col_src.components().size();

    auto col_tgt = detail::build_col_graph_by_neighbors(g.gadget, n, caps);
    report.target_homs = col_tgt.homs.size();
    report.target_edges = col_tgt.edges.size();
    auto tgt_comp = detail::component_ids(col_tgt);
    report.target_components = col_tgt.components().size();

    // lift every source hom and locate it among the target homs
    std::vector<std::uint32_t> lift_index(col_src.homs.size());
    for (std::uint32_t i = 0; i < col_src.homs.size(); ++i) {
        auto lifted = lift_hom(g, to_target(col_src.homs[i]));
        auto idx = col_tgt.index_of(lifted.image);
        if (!idx) throw internal_error("verify_reduction: lift is not an enumerated hom");
        lift_index[i] = *idx;
    }

    // connectivity equivalence over all source pairs
    for (std::uint32_t i = 0; i < col_src.homs.size(); ++i) {
        for (std::uint32_t j = i + 1; j < col_src.homs.size(); ++j) {
            ++report.pairs_checked;
            bool src_conn = src_comp[i] == src_comp[j];
            bool tgt_conn = tgt_comp[lift_index[i]] == tgt_comp[lift_index[j]];
            if (src_conn == tgt_conn)
                ++report.pairs_agreeing;
            else
                report.mismatches.emplace_back(i, j);
        }
    }

    // lifted walk for every source edge: C and its twin set form a cocycle
    // of M*, recoloured one cocircuit at a time
    for (const auto& e : col_src.edges) {
        PointSet crossing(g.gadget->size());
        e.witness.cocircuit.for_each_set([&](std::size_t p) {
            crossing.set(p);
            crossing.set(g.twin(static_cast<std::uint32_t>(p)));
        });
        if (!g.gadget->is_cocycle(crossing))
            throw internal_error("verify_reduction: C + twins is not a cocycle of M*");
        auto parts = g.gadget->cocycle_decompose(crossing);
        MatroidHom cur = col_tgt.homs[lift_index[e.a]];
        const MatroidHom goal = col_tgt.homs[lift_index[e.b]];
        for (const auto& part : parts) {
            std::vector<std::uint32_t> image = cur.image;
            part.for_each_set([&](std::size_t p) {
                auto idx = n->find_point(cur.image_col(p) + e.witness.constant);
                if (!idx) throw internal_error("verify_reduction: lifted step left E(N)");
                image[p] = *idx;
            });
            MatroidHom next{g.gadget, n, std::move(image)};
            auto w = adjacent(cur, next);
            if (!w || w->cocircuit != part)
                throw internal_error("verify_reduction: lifted step is not the expected edge");
            cur = std::move(next);
            ++report.lemma1_steps;
        }
        if (cur.image != goal.image)
            throw internal_error("verify_reduction: lifted walk misses s(tau')");
        ++report.lemma1_edges;
    }

    // restricted walk for every target edge, carried out against a fixed
    // abstract K4 so that walks through different clique copies concatenate
    auto k4_abs = share(graphic(complete_graph(4)));
    auto abstract_of = [&](const RestrictedHom& r) {
        // map y'_i + y'_j to the abstract point of the pair (i, j)
        std::vector<std::uint32_t> image(r.hom.image.size());
        for (std::size_t e = 0; e < image.size(); ++e) {
            bool found = false;
            for (std::uint32_t i = 0; i < 4 && !found; ++i)
                for (std::uint32_t j = i + 1; j < 4 && !found; ++j)
                    if (r.hom.image_col(e) == r.clique_labels[i] + r.clique_labels[j]) {
                        BitVec v(4);
                        v.set(i);
                        v.set(j);
                        image[e] = *k4_abs->find_point(v);
                        found = true;
                    }
            if (!found) throw internal_error("verify_reduction: abstraction failed");
        }
        return MatroidHom{r.hom.dom, k4_abs, std::move(image)};
    };

    std::vector<MatroidHom> abstracted;
    abstracted.reserve(col_tgt.homs.size());
    for (const auto& sigma : col_tgt.homs) abstracted.push_back(abstract_of(restrict_hom(g, sigma)));

    for (const auto& e : col_tgt.edges) {
        const MatroidHom& ta = abstracted[e.a];
        const MatroidHom& tb = abstracted[e.b];
        ++report.lemma2_edges;
        PointSet diff(m->size());
        for (std::size_t p = 0; p < m->size(); ++p)
            if (ta.image[p] != tb.image[p]) diff.set(p);
        if (diff.none()) {
            ++report.lemma2_zero;
            continue;
        }
        std::size_t p0 = diff.lowest_set();
        BitVec c = ta.image_col(p0) + tb.image_col(p0);
        bool constant = true;
        diff.for_each_set([&](std::size_t p) {
            if (ta.image_col(p) + tb.image_col(p) != c) constant = false;
        });
        if (!constant)
            throw internal_error("verify_reduction: restricted difference is not constant");
        if (!m->is_cocycle(diff))
            throw internal_error("verify_reduction: restricted difference is not a cocycle");
        MatroidHom cur = ta;
        for (const auto& part : m->cocycle_decompose(diff)) {
            std::vector<std::uint32_t> image = cur.image;
            part.for_each_set([&](std::size_t p) {
                auto idx = k4_abs->find_point(cur.image_col(p) + c);
                if (!idx) throw internal_error("verify_reduction: restricted step left M(K4)");
                image[p] = *idx;
            });
            MatroidHom next{m, k4_abs, std::move(image)};
            auto w = adjacent(cur, next);
            if (!w || w->cocircuit != part)
                throw internal_error("verify_reduction: restricted step is not an edge");
            cur = std::move(next);
            ++report.lemma2_steps;
        }
        if (cur.image != tb.image)
            throw internal_error("verify_reduction: restricted walk misses sigma'_M");
        ++report.lemma2_walks;
    }
    return report;
}

} // namespace matrec
