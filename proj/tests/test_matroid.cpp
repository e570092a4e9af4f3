#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "matrec/matroid.hpp"

using namespace matrec;

namespace {

BinaryMatroid mk3() {
    return BinaryMatroid::from_columns(
        {BitVec::from_string("01"), BitVec::from_string("10"), BitVec::from_string("11")});
}

std::set<std::set<std::size_t>> as_sets(const std::vector<PointSet>& sets) {
    std::set<std::set<std::size_t>> out;
    for (const auto& s : sets) {
        std::set<std::size_t> one;
        s.for_each_set([&](std::size_t e) { one.insert(e); });
        out.insert(std::move(one));
    }
    return out;
}

// Independent oracle for cocircuits of a graphic matroid: enumerate vertex
// subsets, take the crossing edge sets, keep the minimal nonempty ones.
std::set<std::set<std::size_t>> graph_cut_cocircuits(const SimpleGraph& g) {
    std::vector<std::set<std::size_t>> cuts;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << g.n) - 1; ++mask) {
        std::set<std::size_t> cut;
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
            auto [u, v] = g.edges[i];
            if (((mask >> u) & 1) != ((mask >> v) & 1)) cut.insert(i);
        }
        if (!cut.empty()) cuts.push_back(std::move(cut));
    }
    std::set<std::set<std::size_t>> minimal;
    for (const auto& c : cuts) {
        bool dominated = false;
        for (const auto& d : cuts)
            if (d != c && std::includes(c.begin(), c.end(), d.begin(), d.end())) {
                dominated = true;
                break;
            }
        if (!dominated) minimal.insert(c);
    }
    return minimal;
}

// Independent oracle for circuits of a graphic matroid: simple cycles found
// by walking all vertex sequences (fine for tiny graphs).
std::set<std::set<std::size_t>> graph_cycle_circuits(const SimpleGraph& g) {
    std::set<std::set<std::size_t>> out;
    std::vector<std::uint32_t> path;
    std::vector<bool> used(g.n, false);
    std::function<void(std::uint32_t)> walk = [&](std::uint32_t v) {
        for (std::uint32_t w = 0; w < g.n; ++w) {
            if (!g.adjacent(v, w)) continue;
            if (w == path.front() && path.size() >= 3) {
                std::set<std::size_t> cyc;
                for (std::size_t i = 0; i + 1 < path.size(); ++i)
                    cyc.insert(g.edge_index(path[i], path[i + 1]));
                cyc.insert(g.edge_index(path.back(), path.front()));
                out.insert(std::move(cyc));
            }
            if (!used[w] && w > path.front()) {
                used[w] = true;
                path.push_back(w);
                walk(w);
                path.pop_back();
                used[w] = false;
            }
        }
    };
    for (std::uint32_t s = 0; s < g.n; ++s) {
        used.assign(g.n, false);
        used[s] = true;
        path = {s};
        walk(s);
    }
    return out;
}

} // namespace

TEST_CASE("from_columns basics") {
    auto m = mk3();
    CHECK(m.size() == 3);
    CHECK(m.rank() == 2);
    CHECK(m.basis() == std::vector<std::size_t>{0, 1});
    CHECK_FALSE(m.has_loop());

    auto pg1 = looped_projective_geometry(2);
    CHECK(pg1.size() == 4);
    CHECK(pg1.rank() == 2);
    CHECK(pg1.has_loop());

    CHECK_THROWS_AS(BinaryMatroid::from_columns({BitVec::from_string("01"),
                                                 BitVec::from_string("01"),
                                                 BitVec::from_string("10")}),
                    std::invalid_argument);
    CHECK_THROWS_AS(BinaryMatroid::from_columns({BitVec::from_string("01"), BitVec(2)}),
                    std::invalid_argument);
}

TEST_CASE("graphic matroids") {
    auto k3 = graphic(complete_graph(3));
    CHECK(k3.size() == 3);
    CHECK(k3.rank() == 2);
    for (const auto& p : k3.points()) CHECK(p.weight() == 2);

    auto c5 = graphic(cycle_graph(5));
    CHECK(c5.size() == 5);
    CHECK(c5.rank() == 4);

    auto k4 = graphic(complete_graph(4));
    CHECK(k4.size() == 6);
    CHECK(k4.rank() == 3);
}

TEST_CASE("fundamental circuits") {
    auto m = mk3();
    auto fc = m.fundamental_circuit(2);
    CHECK(fc.to_string() == "111");
    CHECK_THROWS_AS(m.fundamental_circuit(0), std::invalid_argument);

    auto c5 = graphic(cycle_graph(5));
    // the lone non-tree edge closes the whole cycle
    std::size_t non_tree = 0;
    for (std::size_t e = 0; e < c5.size(); ++e)
        if (!c5.in_basis(e)) non_tree = e;
    CHECK(c5.fundamental_circuit(non_tree).weight() == 5);

    auto pg3 = projective_geometry(3);
    auto idx = pg3.find_point(BitVec::from_string("111"));
    REQUIRE(idx);
    auto f = pg3.fundamental_circuit(*idx);
    CHECK(f.weight() == 4);
    CHECK(f.test(*idx));
    for (auto b : {"100", "010", "001"}) CHECK(f.test(*pg3.find_point(BitVec::from_string(b))));
    CHECK(pg3.is_cycle(f));
}

TEST_CASE("circuit enumeration") {
    auto k3 = mk3();
    auto cs = k3.circuits();
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].to_string() == "111");

    auto c5 = graphic(cycle_graph(5));
    REQUIRE(c5.circuits().size() == 1);
    CHECK(c5.circuits()[0].weight() == 5);

    auto k4 = graphic(complete_graph(4));
    CHECK(k4.circuits().size() == 7);
}

TEST_CASE("cocircuit enumeration") {
    auto c5 = graphic(cycle_graph(5));
    auto cc = c5.cocircuits();
    CHECK(cc.size() == 10);
    for (const auto& s : cc) CHECK(s.weight() == 2);

    auto k3 = mk3();
    CHECK(k3.cocircuits().size() == 3);
    for (const auto& s : k3.cocircuits()) CHECK(s.weight() == 2);

    auto k4 = graphic(complete_graph(4));
    auto k4cc = k4.cocircuits();
    REQUIRE(k4cc.size() == 7);
    std::size_t stars = 0, quads = 0;
    for (const auto& s : k4cc) {
        if (s.weight() == 3) ++stars;
        if (s.weight() == 4) ++quads;
    }
    CHECK(stars == 4);
    CHECK(quads == 3);
}

TEST_CASE("cocircuits match the graph-cut oracle") {
    for (const auto& g : {complete_graph(4), cycle_graph(5), complete_graph(5),
                          complete_minus_edge(5), path_graph(4), complete_bipartite(2, 3)}) {
        auto m = graphic(g);
        CHECK(as_sets(m.cocircuits()) == graph_cut_cocircuits(g));
    }
}

TEST_CASE("circuits match the graph-cycle oracle") {
    for (const auto& g : {complete_graph(4), cycle_graph(5), complete_graph(5),
                          complete_minus_edge(5), complete_bipartite(2, 3), cycle_graph(6)}) {
        auto m = graphic(g);
        CHECK(as_sets(m.circuits()) == graph_cycle_circuits(g));
    }
}

TEST_CASE("circuit/cocircuit orthogonality", "[property]") {
    for (const auto& m : {graphic(complete_graph(4)), graphic(cycle_graph(5)),
                          projective_geometry(3), looped_clique(3)}) {
        for (const auto& z : m.circuits())
            for (const auto& c : m.cocircuits()) CHECK((z & c).weight() % 2 == 0);
        // every non-basis point's fundamental circuit is a cycle
        for (std::size_t e = 0; e < m.size(); ++e)
            if (!m.in_basis(e)) CHECK(m.is_cycle(m.fundamental_circuit(e)));
    }
}

TEST_CASE("is_cocircuit agrees with the enumerated list") {
    auto c5 = graphic(cycle_graph(5));
    PointSet pair(5);
    pair.set(0);
    pair.set(3);
    CHECK(c5.is_cocircuit(pair));
    // a 3-subset is not even a cocycle (cuts of a cycle have even size)
    PointSet triple = pair;
    triple.set(1);
    CHECK_FALSE(c5.is_cocycle(triple));
    CHECK_FALSE(c5.is_cocircuit(triple));
    // a 4-subset is a cocycle but not minimal
    PointSet quad = triple;
    quad.set(2);
    CHECK(c5.is_cocycle(quad));
    CHECK_FALSE(c5.is_cocircuit(quad));
    CHECK_FALSE(c5.is_cocircuit(PointSet(5)));

    for (const auto& m : {graphic(complete_graph(4)), projective_geometry(3)}) {
        auto listed = as_sets(m.cocircuits());
        // spot-check every subset of size <= 4 against the list
        std::function<void(PointSet&, std::size_t, std::size_t)> visit =
            [&](PointSet& s, std::size_t from, std::size_t left) {
                std::set<std::size_t> key;
                s.for_each_set([&](std::size_t e) { key.insert(e); });
                CHECK(m.is_cocircuit(s) == (listed.count(key) > 0));
                if (left == 0) return;
                for (std::size_t e = from; e < m.size(); ++e) {
                    s.set(e);
                    visit(s, e + 1, left - 1);
                    s.set(e, false);
                }
            };
        PointSet s(m.size());
        visit(s, 0, 4);
    }
}

TEST_CASE("cocycle decomposition into disjoint cocircuits") {
    // C6: vertex stars on opposite sides are disjoint cocircuits
    auto c6 = graphic(cycle_graph(6));
    PointSet s(6);
    s.set(0);
    s.set(1);
    s.set(3);
    s.set(4);
    REQUIRE(c6.is_cocycle(s));
    auto parts = c6.cocycle_decompose(s);
    CHECK(parts.size() == 2);
    PointSet uni(6);
    for (const auto& p : parts) {
        CHECK(c6.is_cocircuit(p));
        CHECK_FALSE(uni.intersects(p));
        uni += p;
    }
    CHECK(uni == s);

    // a single cycle edge is not a cut
    CHECK_THROWS_AS(c6.cocycle_decompose(PointSet::from_string("100000")),
                    std::invalid_argument);
}

TEST_CASE("matroid isomorphism") {
    auto k3 = mk3();
    auto c3 = graphic(cycle_graph(3));
    CHECK(isomorphism(k3, c3).has_value());
    CHECK_FALSE(isomorphism(graphic(complete_graph(4)), projective_geometry(3)).has_value());

    // relabelled K4 is still K4
    auto k4 = graphic(complete_graph(4));
    auto relabelled = SimpleGraph::from_edges(4, {{3, 1}, {2, 0}, {1, 0}, {3, 0}, {2, 1}, {3, 2}});
    auto iso = isomorphism(k4, graphic(relabelled));
    REQUIRE(iso);
    // the bijection preserves cycles
    auto k4b = graphic(relabelled);
    for (const auto& z : k4.circuits()) {
        PointSet img(k4b.size());
        z.for_each_set([&](std::size_t e) { img.set((*iso)[e]); });
        CHECK(k4b.is_cycle(img));
    }

    // reflexive and symmetric over a small corpus
    for (const auto& m : {k3, k4, projective_geometry(3), looped_clique(3)}) {
        auto self = isomorphism(m, m);
        REQUIRE(self);
    }
    auto ab = isomorphism(k3, c3);
    auto ba = isomorphism(c3, k3);
    CHECK(ab.has_value() == ba.has_value());

    // loop placement matters
    CHECK_FALSE(isomorphism(looped_projective_geometry(1),
                            BinaryMatroid::from_columns({BitVec::from_string("1")}))
                    .has_value());
}

TEST_CASE("find_clique_copy") {
    auto k5 = graphic(complete_graph(5));
    auto emb = find_clique_copy(k5, 5);
    REQUIRE(emb);
    CHECK(emb->size() == 5);
    CHECK((*emb)[0].none());
    // all pairwise sums are points
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j)
            CHECK(k5.find_point((*emb)[i] + (*emb)[j]).has_value());

    CHECK_FALSE(find_clique_copy(graphic(cycle_graph(5)), 3).has_value());

    auto pendant = graphic(complete_plus_pendant(5));
    CHECK(find_clique_copy(pendant, 5).has_value());
    CHECK_FALSE(find_clique_copy(pendant, 6).has_value());

    // cross-check the embedding against the isomorphism oracle
    auto emb6 = find_clique_copy(graphic(complete_graph(6)), 5);
    REQUIRE(emb6);
    std::vector<BitVec> pts;
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j) pts.push_back((*emb6)[i] + (*emb6)[j]);
    std::sort(pts.begin(), pts.end());
    auto sub = BinaryMatroid::from_columns(pts);
    CHECK(isomorphism(graphic(complete_graph(5)), sub).has_value());
}

TEST_CASE("enumeration caps are honoured") {
    Caps tight;
    tight.max_rank_exponent = 2;
    auto k5 = graphic(complete_graph(5));
    CHECK_THROWS_AS(k5.cocircuits(tight), capacity_error);
}

TEST_CASE("point space membership") {
    auto k3 = mk3();
    CHECK(k3.in_point_space(BitVec::from_string("00")));
    CHECK(k3.in_point_space(BitVec::from_string("11")));
    auto line = BinaryMatroid::from_columns({BitVec::from_string("100"),
                                             BitVec::from_string("010")});
    CHECK_FALSE(line.in_point_space(BitVec::from_string("001")));
    CHECK_THROWS_AS(line.in_point_space(BitVec(2)), std::invalid_argument);
}
