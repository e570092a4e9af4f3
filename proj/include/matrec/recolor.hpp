#pragma once

// The matroid recolouring graph Col(M, N): adjacency with witnesses,
// neighbour generation, explicit construction, components, and witnessed
// path search by implicit BFS.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <unordered_map>
#include <vector>

#include "matrec/caps.hpp"
#include "matrec/graphs.hpp"
#include "matrec/hom.hpp"
#include "matrec/matroid.hpp"

namespace matrec {

// Certificate for one recolouring move: the maps differ exactly on the
// cocircuit, by the constant (a nonzero point-space vector of the codomain).
struct EdgeWitness {
    PointSet cocircuit;
    BitVec constant;
};

// Adjacency in Col(M, N): the difference set is exactly a cocircuit of the
// domain.  For genuine homomorphisms a cocircuit difference always carries a
// constant; a non-constant difference on a cocircuit is an internal error.
inline std::optional<EdgeWitness> adjacent(const MatroidHom& tau, const MatroidHom& sigma) {
    check_same_matroid(tau.dom, sigma.dom, "adjacent: domain mismatch");
    check_same_matroid(tau.cod, sigma.cod, "adjacent: codomain mismatch");
    PointSet diff(tau.dom->size());
    for (std::size_t e = 0; e < tau.image.size(); ++e)
        if (tau.image[e] != sigma.image[e]) diff.set(e);
    if (diff.none()) return std::nullopt;
    if (!tau.dom->is_cocircuit(diff)) return std::nullopt;

    std::size_t e0 = diff.lowest_set();
    BitVec c = tau.image_col(e0) + sigma.image_col(e0);
    bool constant = true;
    diff.for_each_set([&](std::size_t e) {
        if (tau.image_col(e) + sigma.image_col(e) != c) constant = false;
    });
    if (!constant)
        throw internal_error("adjacent: cocircuit difference is not constant "
                             "(violates the constant-on-cocircuit fact)");
    return EdgeWitness{std::move(diff), std::move(c)};
}

// All maps tau + c*chi_C over cocircuits C of the domain and nonzero c such
// that every shifted image is again a point.  Each neighbour arises from a
// unique (C, c); output is ordered lexicographically by image array.
inline std::vector<MatroidHom> neighbors(const MatroidHom& tau, const Caps& caps = {}) {
    std::vector<MatroidHom> out;
    const BinaryMatroid& dom = *tau.dom;
    const BinaryMatroid& cod = *tau.cod;
    for (const auto& c_set : dom.cocircuits(caps)) {
        std::size_t e0 = c_set.lowest_set();
        for (std::uint32_t p = 0; p < cod.size(); ++p) {
            if (p == tau.image[e0]) continue;
            BitVec c = cod.point(p) + tau.image_col(e0);
            std::vector<std::uint32_t> image = tau.image;
            bool ok = true;
            c_set.for_each_set([&](std::size_t e) {
                if (!ok) return;
                auto idx = cod.find_point(tau.image_col(e) + c);
                if (!idx)
                    ok = false;
                else
                    image[e] = *idx;
            });
            if (ok) out.push_back(MatroidHom{tau.dom, tau.cod, std::move(image)});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const MatroidHom& a, const MatroidHom& b) { return a.image < b.image; });
    return out;
}

struct ColEdge {
    std::uint32_t a, b; // indices into homs, a < b
    EdgeWitness witness;
};

struct RecolouringGraph {
    MatroidPtr dom, cod;
    std::vector<MatroidHom> homs;   // lexicographic by image
    std::vector<ColEdge> edges;
    std::vector<std::vector<std::uint32_t>> adjacency; // per-vertex neighbour lists

    std::optional<std::uint32_t> index_of(const std::vector<std::uint32_t>& image) const {
        auto it = std::lower_bound(homs.begin(), homs.end(), image,
                                   [](const MatroidHom& h, const std::vector<std::uint32_t>& i) {
                                       return h.image < i;
                                   });
        if (it == homs.end() || it->image != image) return std::nullopt;
        return static_cast<std::uint32_t>(it - homs.begin());
    }

    // Connected components; each is ascending, and components are ordered by
    // their least (lexicographically least) member.
    std::vector<std::vector<std::uint32_t>> components() const {
        std::vector<std::uint32_t> root(homs.size());
        std::iota(root.begin(), root.end(), 0);
        std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
            while (root[x] != x) x = root[x] = root[root[x]];
            return x;
        };
        for (const auto& e : edges) {
            auto ra = find(e.a), rb = find(e.b);
            if (ra != rb) root[std::max(ra, rb)] = std::min(ra, rb);
        }
        std::vector<std::vector<std::uint32_t>> comps;
        std::unordered_map<std::uint32_t, std::size_t> comp_of_root;
        for (std::uint32_t v = 0; v < homs.size(); ++v) {
            auto r = find(v);
            auto it = comp_of_root.find(r);
            if (it == comp_of_root.end()) {
                comp_of_root.emplace(r, comps.size());
                comps.push_back({v});
            } else {
                comps[it->second].push_back(v);
            }
        }
        return comps;
    }

    bool connected() const { return homs.size() <= 1 || components().size() == 1; }
};

// Builds Col(M, N) explicitly: vertices by enumeration, edges by pairwise
// adjacency.  (Tests cross-check the edge set against neighbors().)
inline RecolouringGraph build_col_graph(const MatroidPtr& m, const MatroidPtr& n,
                                        const Caps& caps = {}) {
    RecolouringGraph g;
    g.dom = m;
    g.cod = n;
    g.homs = enumerate_homs(m, n, caps);
    g.adjacency.resize(g.homs.size());
    for (std::uint32_t i = 0; i < g.homs.size(); ++i) {
        for (std::uint32_t j = i + 1; j < g.homs.size(); ++j) {
            if (auto w = adjacent(g.homs[i], g.homs[j])) {
                g.edges.push_back(ColEdge{i, j, std::move(*w)});
                g.adjacency[i].push_back(j);
                g.adjacency[j].push_back(i);
            }
        }
    }
    return g;
}

// Hom connected-component partition of Col(M, N), canonical representative
// first in each block.
inline std::vector<std::vector<std::uint32_t>> components(const MatroidPtr& m,
                                                          const MatroidPtr& n,
                                                          const Caps& caps = {}) {
    return build_col_graph(m, n, caps).components();
}

// A witnessed walk in Col(M, N): homs.size() == moves.size() + 1, and each
// move certifies the adjacency of the surrounding pair.
struct RecolPath {
    std::vector<MatroidHom> homs;
    std::vector<EdgeWitness> moves;

    std::size_t length() const { return moves.size(); }
};

// Implicit BFS from tau towards sigma with a hashed visited set and
// lexicographic expansion order; explores at most the component of tau.
inline std::optional<RecolPath> recol_decide(const MatroidHom& tau, const MatroidHom& sigma,
                                             const Caps& caps = {}) {
    check_same_matroid(tau.dom, sigma.dom, "recol_decide: domain mismatch");
    check_same_matroid(tau.cod, sigma.cod, "recol_decide: codomain mismatch");

    auto finish = [&](const std::vector<std::vector<std::uint32_t>>& states,
                      const std::vector<std::size_t>& parent, std::size_t at) {
        RecolPath path;
        std::vector<std::size_t> chain{at};
        while (at != 0) {
            at = parent[at];
            chain.push_back(at);
        }
        std::reverse(chain.begin(), chain.end());
        for (auto s : chain) path.homs.push_back(MatroidHom{tau.dom, tau.cod, states[s]});
        for (std::size_t k = 0; k + 1 < path.homs.size(); ++k) {
            auto w = adjacent(path.homs[k], path.homs[k + 1]);
            if (!w) throw internal_error("recol_decide: reconstructed step not adjacent");
            path.moves.push_back(std::move(*w));
        }
        return path;
    };

    if (tau.image == sigma.image) return RecolPath{{tau}, {}};

    std::vector<std::vector<std::uint32_t>> states{tau.image};
    std::vector<std::size_t> parent{0};
    std::unordered_map<std::vector<std::uint32_t>, std::size_t, VecU32Hash> seen;
    seen.emplace(tau.image, 0);
    std::queue<std::size_t> queue;
    queue.push(0);

    while (!queue.empty()) {
        std::size_t cur = queue.front();
        queue.pop();
        MatroidHom h{tau.dom, tau.cod, states[cur]};
        for (auto& nb : neighbors(h, caps)) {
            if (seen.count(nb.image)) continue;
            std::size_t id = states.size();
            if (id >= caps.max_states)
                throw capacity_error("recol_decide: state cap exceeded");
            seen.emplace(nb.image, id);
            states.push_back(nb.image);
            parent.push_back(cur);
            if (nb.image == sigma.image) return finish(states, parent, id);
            queue.push(id);
        }
    }
    return std::nullopt;
}

} // namespace matrec
