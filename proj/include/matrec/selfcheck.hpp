#pragma once

// Built-in verification suite: known small instances with exact expected
// values, plus exhaustive cross-oracle sweeps.  Used by the acceptance test
// binary and by the `verify` CLI subcommand.

#include <chrono>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "matrec/decision.hpp"
#include "matrec/graphs.hpp"
#include "matrec/hom.hpp"
#include "matrec/matroid.hpp"
#include "matrec/recolor.hpp"
#include "matrec/reduction.hpp"

namespace matrec {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

namespace selfcheck {

inline MatroidPtr triangle_matroid() {
    // the 2x3 representation with columns 01, 10, 11
    return share(BinaryMatroid::from_columns(
        {BitVec::from_string("01"), BitVec::from_string("10"), BitVec::from_string("11")}));
}

inline bool graph_is_complete(const SimpleGraph& g) {
    return !g.reflexive && g.edges.size() == g.n * (g.n - 1) / 2;
}

inline bool graph_is_half_cube(const SimpleGraph& g) {
    for (std::uint32_t u = 0; u < g.n; ++u)
        for (std::uint32_t v = u + 1; v < g.n; ++v) {
            std::size_t dist = (g.labels[u] + g.labels[v]).weight();
            if (g.adjacent(u, v) != (dist == 1 || dist == 2)) return false;
        }
    return true;
}

// 1. Col(M(C5), M(K3)) has 60 vertices and is connected.
inline void check_c5_k3(std::ostream& detail, bool& pass) {
    auto g = build_col_graph(share(graphic(cycle_graph(5))), triangle_matroid());
    detail << g.homs.size() << " vertices, " << (g.connected() ? "connected" : "DISCONNECTED");
    pass = g.homs.size() == 60 && g.connected();
}

// 2. Col(M(K4), M(K3)) is the complete bipartite graph on 3 + 3.
inline void check_k4_k3_shape(std::ostream& detail, bool& pass) {
    auto g = build_col_graph(share(graphic(complete_graph(4))), triangle_matroid());
    SimpleGraph as_graph;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (const auto& e : g.edges) edges.emplace_back(e.a, e.b);
    as_graph = SimpleGraph::from_edges(g.homs.size(), std::move(edges));
    pass = graphs_isomorphic(as_graph, complete_bipartite(3, 3));
    detail << g.homs.size() << " vertices, " << g.edges.size() << " edges, K_{3,3} "
           << (pass ? "confirmed" : "REFUTED");
}

// 3. gCol(K4, K4) is 24 independent vertices.
inline void check_gcol_k4(std::ostream& detail, bool& pass) {
    auto k4 = std::make_shared<const SimpleGraph>(complete_graph(4));
    auto cols = graph_homs(k4, k4);
    std::size_t edges = 0;
    for (std::size_t i = 0; i < cols.size(); ++i)
        for (std::size_t j = i + 1; j < cols.size(); ++j)
            if (gcol_adjacent(cols[i], cols[j])) ++edges;
    pass = cols.size() == 24 && edges == 0;
    detail << cols.size() << " vertices, " << edges << " edges";
}

// 4. Universal decision graphs of the small standards.
inline void check_decision_graphs(std::ostream& detail, bool& pass) {
    pass = true;
    auto d_k3 = decision_graph(triangle_matroid());
    pass = pass && d_k3.graph->n == 4 && graph_is_complete(*d_k3.graph);
    auto d_pg1 = decision_graph(share(projective_geometry(2)));
    pass = pass && d_pg1.graph->n == 4 && graph_is_complete(*d_pg1.graph);
    auto d_pg2 = decision_graph(share(projective_geometry(3)));
    pass = pass && d_pg2.graph->n == 8 && graph_is_complete(*d_pg2.graph);
    for (std::size_t n : {4u, 5u}) {
        auto d = decision_graph(share(graphic(complete_graph(n))));
        pass = pass && d.graph->n == (std::size_t{1} << (n - 1)) && graph_is_half_cube(*d.graph);
    }
    detail << "K4, K4, K8 and the half-cubes on 8 and 16 vertices "
           << (pass ? "confirmed" : "REFUTED");
}

// 5. Tutte round trip over a corpus of graphs and targets, plus the worked
// figure instance value for value.
inline void check_tutte_round_trip(std::ostream& detail, bool& pass) {
    pass = true;
    std::vector<std::shared_ptr<const SimpleGraph>> graphs;
    for (auto g : {path_graph(2), path_graph(3), path_graph(4), complete_graph(3),
                   cycle_graph(4), cycle_graph(5), cycle_graph(6), complete_graph(4),
                   complete_minus_edge(4), complete_bipartite(2, 3), complete_graph(5),
                   SimpleGraph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {2, 4}})})
        graphs.push_back(std::make_shared<const SimpleGraph>(std::move(g)));
    std::vector<MatroidPtr> targets{triangle_matroid(), share(graphic(complete_graph(4))),
                                    share(projective_geometry(2))};
    std::size_t trips = 0;
    for (const auto& g : graphs) {
        auto dom = share(graphic(*g));
        auto ctx = make_tutte_context(g);
        for (const auto& n : targets) {
            auto d = decision_graph(n);
            for (const auto& tau : enumerate_homs(dom, n)) {
                for (std::uint32_t b = 0; b < d.graph->n && pass; ++b) {
                    auto phi = tutte_phi(tau, ctx, d.graph->labels[b], d);
                    pass = pass && phi.image[0] == b &&
                           tutte_tau(phi, d, dom).image == tau.image;
                    ++trips;
                }
            }
        }
    }
    // the figure instance: edge values 01 01 01 10 11 11 (drawing order),
    // base colour 01 at the root gives vertex colours 01 00 01 00 10
    auto g = graphs.back();
    auto dom = share(graphic(*g));
    auto n = triangle_matroid();
    auto d = decision_graph(n, /*universal=*/false);
    MatroidHom tau{dom, n, {0, 2, 0, 0, 2, 1}};
    pass = pass && is_homomorphism(dom, n, tau.image);
    auto phi = tutte_phi(tau, make_tutte_context(g), BitVec::from_string("01"), d);
    std::vector<std::string> expect{"01", "00", "01", "00", "10"};
    for (std::size_t v = 0; v < 5; ++v)
        pass = pass && phi.label(static_cast<std::uint32_t>(v)).to_string() == expect[v];
    pass = pass && tutte_tau(phi, d, dom).image == tau.image;
    detail << trips << " round trips over " << graphs.size() << " graphs x " << targets.size()
           << " targets; figure instance " << (pass ? "reproduced" : "REFUTED");
}

// 6. Difference-set-is-cocircuit <=> constant-on-cocircuit, exhaustively
// over all hom pairs of three instance pairs.
inline void check_constant_on_cocircuit(std::ostream& detail, bool& pass) {
    pass = true;
    std::size_t pairs = 0, violations = 0;
    struct Inst {
        MatroidPtr m, n;
    };
    std::vector<Inst> instances{{share(graphic(cycle_graph(5))), triangle_matroid()},
                                {share(graphic(complete_graph(4))), triangle_matroid()},
                                {share(graphic(cycle_graph(4))),
                                 share(graphic(complete_graph(4)))}};
    for (const auto& [m, n] : instances) {
        auto homs = enumerate_homs(m, n);
        for (std::size_t i = 0; i < homs.size(); ++i) {
            for (std::size_t j = i + 1; j < homs.size(); ++j) {
                ++pairs;
                PointSet diff(m->size());
                for (std::size_t e = 0; e < m->size(); ++e)
                    if (homs[i].image[e] != homs[j].image[e]) diff.set(e);
                if (diff.none()) continue;
                bool is_cc = m->is_cocircuit(diff);
                BitVec c = homs[i].image_col(diff.lowest_set()) +
                           homs[j].image_col(diff.lowest_set());
                bool constant = c.any();
                diff.for_each_set([&](std::size_t e) {
                    if (homs[i].image_col(e) + homs[j].image_col(e) != c) constant = false;
                });
                if (is_cc != (is_cc && constant)) ++violations;
                if (adjacent(homs[i], homs[j]).has_value() != is_cc) ++violations;
            }
        }
    }
    pass = violations == 0;
    detail << pairs << " hom pairs, " << violations << " violations";
}

// 7. Colouring graphs into the looped projective geometries are connected,
// with path lengths bounded by the basis disagreement count.
inline void check_looped_pg_connectivity(std::ostream& detail, bool& pass) {
    pass = true;
    std::size_t pairs = 0;
    std::vector<MatroidPtr> corpus{
        share(BinaryMatroid::from_columns({BitVec::from_string("1")})),
        share(graphic(path_graph(4))), triangle_matroid(), share(graphic(cycle_graph(4))),
        share(graphic(cycle_graph(5))), share(graphic(complete_graph(4)))};
    for (std::size_t t = 1; t <= 2 && pass; ++t) {
        auto pg = share(looped_projective_geometry(t));
        for (const auto& m : corpus) {
            auto g = build_col_graph(m, pg);
            if (!g.connected()) {
                pass = false;
                break;
            }
            // single-source BFS distances bound every pair
            std::vector<std::vector<std::uint32_t>> dist(g.homs.size());
            for (std::uint32_t s = 0; s < g.homs.size(); ++s) {
                std::vector<std::uint32_t> d(g.homs.size(), ~0u);
                d[s] = 0;
                std::vector<std::uint32_t> queue{s};
                for (std::size_t head = 0; head < queue.size(); ++head) {
                    auto u = queue[head];
                    for (auto v : g.adjacency[u])
                        if (d[v] == ~0u) {
                            d[v] = d[u] + 1;
                            queue.push_back(v);
                        }
                }
                dist[s] = std::move(d);
            }
            for (std::uint32_t i = 0; i < g.homs.size() && pass; ++i) {
                for (std::uint32_t j = i + 1; j < g.homs.size() && pass; ++j) {
                    ++pairs;
                    std::size_t basis_diff = 0;
                    for (auto b : m->basis())
                        if (g.homs[i].image[b] != g.homs[j].image[b]) ++basis_diff;
                    pass = dist[i][j] <= basis_diff;
                }
            }
            // spot-check that the path search realises those distances
            if (pass && g.homs.size() > 1) {
                auto path = recol_decide(g.homs.front(), g.homs.back());
                pass = path.has_value() && path->length() == dist[0][g.homs.size() - 1];
            }
        }
    }
    detail << pairs << " pairs bounded" << (pass ? "" : "; BOUND FAILED");
}

// 8. Dismantling: the K4 collapse is found and certifies the K4 -> K3
// dismantling; looped cliques dismantle to the loop; M(K3) does not
// dismantle to the single edge.
inline void check_dismantling(std::ostream& detail, bool& pass) {
    auto k4 = share(graphic(complete_graph(4)));
    BitVec c = BitVec::from_string("1111");
    std::vector<std::uint32_t> expect(6);
    for (std::uint32_t e = 0; e < 6; ++e)
        expect[e] = k4->point(e).test(3) ? *k4->find_point(k4->point(e) + c) : e;
    bool collapse_found = false;
    for (const auto& r : dismantling_retractions(k4))
        collapse_found = collapse_found || r.image == expect;

    auto seq = dismantles_to(k4, graphic(complete_graph(3)));
    bool k4_to_k3 = seq.has_value() && seq->size() == 1;

    BinaryMatroid loop = BinaryMatroid::from_columns({BitVec(1)}, true);
    bool loops_ok = true;
    for (std::size_t n = 2; n <= 4; ++n)
        loops_ok = loops_ok && dismantles_to(share(looped_clique(n)), loop).has_value();

    auto k2 = BinaryMatroid::from_columns({BitVec::from_string("1")});
    bool negative = !dismantles_to(triangle_matroid(), k2).has_value();

    pass = collapse_found && k4_to_k3 && loops_ok && negative;
    detail << "collapse " << (collapse_found ? "found" : "MISSING") << ", K4->K3 "
           << (k4_to_k3 ? "certified" : "MISSING") << ", looped cliques "
           << (loops_ok ? "dismantle" : "FAIL") << ", K3->K2 "
           << (negative ? "absent" : "PRESENT");
}

// 9. Matroid recolouring vs Kempe recolouring at t = 2: over every connected
// graph on at most 5 vertices, matched pairs of root-0 colourings are
// connected in Col(M(G), PG(1,2)) exactly when they are Kempe-connected.
inline void check_mk_equivalence(std::ostream& detail, bool& pass) {
    pass = true;
    auto n = share(projective_geometry(2));
    auto d = decision_graph(n);
    std::size_t graphs_checked = 0, pairs = 0, mismatches = 0;

    for (std::size_t nv = 2; nv <= 5 && pass; ++nv) {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> all_edges;
        for (std::uint32_t u = 0; u < nv; ++u)
            for (std::uint32_t v = u + 1; v < nv; ++v) all_edges.emplace_back(u, v);
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << all_edges.size()); ++mask) {
            std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
            for (std::size_t i = 0; i < all_edges.size(); ++i)
                if ((mask >> i) & 1) edges.push_back(all_edges[i]);
            auto g = std::make_shared<const SimpleGraph>(SimpleGraph::from_edges(nv, edges));
            if (!g->connected()) continue;
            ++graphs_checked;

            auto dom = share(graphic(*g));
            auto cols = graph_homs(g, d.graph);
            if (cols.empty()) continue; // no colourings, vacuous

            // Kempe component ids over all colourings
            std::vector<std::size_t> kcomp(cols.size(), ~std::size_t{0});
            auto index_of = [&](const std::vector<std::uint32_t>& image) {
                auto it = std::lower_bound(cols.begin(), cols.end(), image,
                                           [](const GraphColouring& a,
                                              const std::vector<std::uint32_t>& b) {
                                               return a.image < b;
                                           });
                return static_cast<std::size_t>(it - cols.begin());
            };
            std::size_t next_comp = 0;
            for (std::size_t s = 0; s < cols.size(); ++s) {
                if (kcomp[s] != ~std::size_t{0}) continue;
                kcomp[s] = next_comp;
                std::vector<std::size_t> queue{s};
                for (std::size_t head = 0; head < queue.size(); ++head) {
                    for (const auto& nb : kempe_neighbors(cols[queue[head]])) {
                        auto j = index_of(nb.image);
                        if (kcomp[j] == ~std::size_t{0}) {
                            kcomp[j] = next_comp;
                            queue.push_back(j);
                        }
                    }
                }
                ++next_comp;
            }

            auto col = build_col_graph(dom, n);
            auto mcomp = matrec::detail::component_ids(col);
            auto ctx = make_tutte_context(g);

            // root-0 fiber matched through the Tutte connection
            std::vector<std::size_t> fiber;
            for (std::size_t i = 0; i < cols.size(); ++i)
                if (cols[i].image[0] == 0) fiber.push_back(i);
            std::vector<std::uint32_t> tau_of(fiber.size());
            for (std::size_t fi = 0; fi < fiber.size(); ++fi) {
                auto tau = tutte_tau(cols[fiber[fi]], d, dom);
                auto idx = col.index_of(tau.image);
                if (!idx) {
                    pass = false;
                    break;
                }
                tau_of[fi] = *idx;
            }
            for (std::size_t a = 0; a < fiber.size(); ++a) {
                for (std::size_t b = a + 1; b < fiber.size(); ++b) {
                    ++pairs;
                    bool kempe_conn = kcomp[fiber[a]] == kcomp[fiber[b]];
                    bool matroid_conn = mcomp[tau_of[a]] == mcomp[tau_of[b]];
                    if (kempe_conn != matroid_conn) ++mismatches;
                }
            }
        }
    }
    pass = pass && mismatches == 0;
    detail << graphs_checked << " connected graphs, " << pairs << " matched pairs, "
           << mismatches << " mismatches";
}

// 10. Every hom of M(K5) into the graphic corpus is an isomorphic
// embedding, and the classic n = 4 counterexample is exhibited.
inline void check_embedding_fact(std::ostream& detail, bool& pass) {
    pass = verify_k5auto(5, complete_graph(5)) && verify_k5auto(5, complete_graph(6)) &&
           verify_k5auto(5, complete_minus_edge(6)) &&
           verify_k5auto(5, complete_plus_pendant(5));
    bool counterexample = !verify_k5auto(4, complete_graph(3));
    pass = pass && counterexample;
    detail << "n=5 embeddings hold on K5, K6, K6-e, K5+pendant; n=4 counterexample "
           << (counterexample ? "exhibited" : "MISSING");
}

// 11. Gadget reduction equivalence on three source matroids against M(K5),
// with lifted and restricted walks validated step by step.
inline void check_reduction(std::ostream& detail, bool& pass) {
    pass = true;
    auto n = share(graphic(complete_graph(5)));
    std::size_t total_pairs = 0, total_mismatches = 0;
    for (const auto& m : {triangle_matroid(), share(graphic(cycle_graph(4))),
                          share(graphic(path_graph(4)))}) {
        auto report = verify_reduction(m, n);
        total_pairs += report.pairs_checked;
        total_mismatches += report.mismatches.size();
        pass = pass && report.ok() && report.lemma1_edges == report.source_edges &&
               report.lemma2_edges == report.target_edges;
    }
    detail << total_pairs << " lifted pairs, " << total_mismatches << " mismatches";
}

// 12. Cross-oracle consistency: neighbour generation vs pairwise adjacency,
// fast vs exhaustive homomorphism checks, and cocircuits vs vertex cuts.
inline void check_cross_oracles(std::ostream& detail, bool& pass) {
    pass = true;
    std::size_t discrepancies = 0;

    struct Inst {
        MatroidPtr m, n;
    };
    std::vector<Inst> instances{{share(graphic(cycle_graph(5))), triangle_matroid()},
                                {share(graphic(complete_graph(4))), triangle_matroid()},
                                {share(graphic(cycle_graph(4))),
                                 share(graphic(complete_graph(4)))}};
    for (const auto& [m, n] : instances) {
        auto g = build_col_graph(m, n);
        std::vector<std::pair<std::uint32_t, std::uint32_t>> from_adjacent, from_neighbors;
        for (const auto& e : g.edges) from_adjacent.emplace_back(e.a, e.b);
        for (std::uint32_t i = 0; i < g.homs.size(); ++i)
            for (const auto& nb : neighbors(g.homs[i])) {
                auto j = g.index_of(nb.image);
                if (!j) {
                    ++discrepancies;
                    continue;
                }
                if (i < *j) from_neighbors.emplace_back(i, *j);
            }
        std::sort(from_neighbors.begin(), from_neighbors.end());
        if (from_adjacent != from_neighbors) ++discrepancies;
    }

    // every image array, homomorphism or not: fast check == exhaustive check
    {
        auto m = share(graphic(cycle_graph(4)));
        auto n = share(graphic(complete_graph(4)));
        std::vector<std::uint32_t> image(m->size(), 0);
        std::function<void(std::size_t)> visit = [&](std::size_t e) {
            if (e == image.size()) {
                if (is_homomorphism(m, n, image) != is_homomorphism(m, n, image, true))
                    ++discrepancies;
                return;
            }
            for (std::uint32_t v = 0; v < n->size(); ++v) {
                image[e] = v;
                visit(e + 1);
            }
        };
        visit(0);
    }

    // cocircuits of graphic matroids against vertex-cut enumeration
    for (const auto& graph : {complete_graph(4), cycle_graph(5), complete_graph(5),
                              complete_bipartite(2, 3), path_graph(4)}) {
        auto m = graphic(graph);
        std::vector<PointSet> cuts;
        for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << graph.n); ++mask) {
            PointSet cut(m.size());
            for (std::size_t i = 0; i < graph.edges.size(); ++i) {
                auto [u, v] = graph.edges[i];
                if (((mask >> u) & 1) != ((mask >> v) & 1)) cut.set(i);
            }
            if (cut.any()) cuts.push_back(cut);
        }
        std::vector<PointSet> minimal;
        for (const auto& c : cuts) {
            bool dominated = false;
            for (const auto& d2 : cuts)
                if (d2 != c && d2.subset_of(c)) dominated = true;
            if (!dominated) minimal.push_back(c);
        }
        std::sort(minimal.begin(), minimal.end());
        minimal.erase(std::unique(minimal.begin(), minimal.end()), minimal.end());
        auto listed = m.cocircuits();
        auto sorted = listed;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != minimal) ++discrepancies;
    }

    pass = discrepancies == 0;
    detail << discrepancies << " discrepancies";
}

} // namespace selfcheck

inline std::vector<CheckResult> run_verification_suite(const Caps& caps = {}) {
    (void)caps;
    using Fn = std::function<void(std::ostream&, bool&)>;
    std::vector<std::pair<std::string, Fn>> checks{
        {"col-c5-k3-order-and-connectivity", selfcheck::check_c5_k3},
        {"col-k4-k3-is-k33", selfcheck::check_k4_k3_shape},
        {"gcol-k4-k4-independent", selfcheck::check_gcol_k4},
        {"decision-graphs-small-standards", selfcheck::check_decision_graphs},
        {"tutte-round-trip-corpus", selfcheck::check_tutte_round_trip},
        {"constant-on-cocircuit-exhaustive", selfcheck::check_constant_on_cocircuit},
        {"looped-pg-connectivity-short-paths", selfcheck::check_looped_pg_connectivity},
        {"dismantling-certificates", selfcheck::check_dismantling},
        {"matroid-vs-kempe-equivalence-t2", selfcheck::check_mk_equivalence},
        {"clique-embedding-fact", selfcheck::check_embedding_fact},
        {"gadget-reduction-equivalence", selfcheck::check_reduction},
        {"cross-oracle-consistency", selfcheck::check_cross_oracles},
    };
    std::vector<CheckResult> results;
    for (auto& [name, fn] : checks) {
        CheckResult r;
        r.name = name;
        std::ostringstream detail;
        auto start = std::chrono::steady_clock::now();
        try {
            fn(detail, r.pass);
        } catch (const std::exception& e) {
            r.pass = false;
            detail << " exception: " << e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        r.detail = detail.str();
        results.push_back(std::move(r));
    }
    return results;
}

} // namespace matrec
