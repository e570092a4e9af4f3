#include <catch2/catch_amalgamated.hpp>

#include "matrec/decision.hpp"
#include "matrec/graphs.hpp"

using namespace matrec;

namespace {

MatroidPtr mk3() {
    return share(BinaryMatroid::from_columns(
        {BitVec::from_string("01"), BitVec::from_string("10"), BitVec::from_string("11")}));
}

// K4 as the universal decision graph of M(K3): vector-labelled clique on Z_2^2.
DecisionGraph labelled_k4() { return decision_graph(mk3()); }

} // namespace

TEST_CASE("graph construction and generators") {
    auto k4 = complete_graph(4);
    CHECK(k4.n == 4);
    CHECK(k4.edges.size() == 6);
    CHECK(k4.adjacent(0, 3));
    CHECK_FALSE(k4.adjacent(2, 2));
    CHECK(k4.connected());

    auto c5 = cycle_graph(5);
    CHECK(c5.edges.size() == 5);
    CHECK(c5.degree(0) == 2);
    CHECK(c5.edge_index(0, 4) == 1); // sorted edge list: (0,1), (0,4), ...

    auto p4 = path_graph(4);
    CHECK(p4.edges.size() == 3);

    CHECK(complete_minus_edge(6).edges.size() == 14);
    CHECK(complete_plus_pendant(5).edges.size() == 11);
    CHECK_THROWS_AS(SimpleGraph::from_edges(2, {{0, 0}}), std::invalid_argument);
}

TEST_CASE("graph isomorphism checks") {
    CHECK(graphs_isomorphic(complete_graph(4), complete_graph(4)));
    CHECK(graphs_isomorphic(complete_bipartite(3, 3),
                            SimpleGraph::from_edges(6, {{0, 1}, {2, 1}, {2, 3}, {4, 3}, {4, 5},
                                                        {0, 5}, {0, 3}, {2, 5}, {4, 1}})));
    CHECK_FALSE(graphs_isomorphic(cycle_graph(6), complete_bipartite(3, 3)));
    CHECK_FALSE(graphs_isomorphic(path_graph(4), cycle_graph(4)));
}

TEST_CASE("graph hom enumeration") {
    auto k4 = std::make_shared<const SimpleGraph>(complete_graph(4));
    auto k3 = std::make_shared<const SimpleGraph>(complete_graph(3));
    auto c5 = std::make_shared<const SimpleGraph>(cycle_graph(5));

    CHECK(graph_homs(k4, k4).size() == 24);
    CHECK(graph_homs(k3, std::make_shared<const SimpleGraph>(complete_graph(2))).empty());
    CHECK(graph_homs(c5, k3).size() == 30);

    auto homs = graph_homs(c5, k3);
    for (std::size_t i = 1; i < homs.size(); ++i) CHECK(homs[i - 1].image < homs[i].image);
    for (const auto& h : homs) CHECK(is_graph_hom(*h.source, *h.target, h.image));

    Caps tight;
    tight.max_homs = 8;
    CHECK_THROWS_AS(graph_homs(k4, k4, tight), capacity_error);
}

TEST_CASE("gcol adjacency") {
    auto k4 = std::make_shared<const SimpleGraph>(complete_graph(4));
    auto homs = graph_homs(k4, k4);
    // proper K4-colourings of K4 never differ in exactly one vertex
    for (std::size_t i = 0; i < homs.size(); ++i)
        for (std::size_t j = i + 1; j < homs.size(); ++j)
            CHECK_FALSE(gcol_adjacent(homs[i], homs[j]));
    CHECK_FALSE(gcol_adjacent(homs[0], homs[0]));

    auto c5 = std::make_shared<const SimpleGraph>(cycle_graph(5));
    auto k3 = std::make_shared<const SimpleGraph>(complete_graph(3));
    auto cols = graph_homs(c5, k3);
    bool found = false;
    for (std::size_t i = 0; i < cols.size() && !found; ++i)
        for (std::size_t j = i + 1; j < cols.size() && !found; ++j)
            found = gcol_adjacent(cols[i], cols[j]);
    CHECK(found);
}

TEST_CASE("kempe adjacency on decision-graph targets") {
    auto d = labelled_k4();
    auto c4 = std::make_shared<const SimpleGraph>(cycle_graph(4));
    auto cols = graph_homs(c4, d.graph);

    // proper 2-colouring of C4; toggling the whole (a,b)-component swaps it
    GraphColouring two{c4, d.graph, {0, 1, 0, 1}};
    REQUIRE(is_graph_hom(*c4, *d.graph, two.image));
    GraphColouring swapped{c4, d.graph, {1, 0, 1, 0}};
    auto w = kempe_adjacent(two, swapped);
    REQUIRE(w);
    CHECK(w->vertices.weight() == 4);
    CHECK(w->toggle == d.graph->labels[0] + d.graph->labels[1]);

    CHECK_FALSE(kempe_adjacent(two, two).has_value());

    // single-vertex recolouring is a Kempe move (singleton component)
    GraphColouring moved{c4, d.graph, {2, 1, 0, 1}};
    REQUIRE(is_graph_hom(*c4, *d.graph, moved.image));
    CHECK(gcol_adjacent(two, moved));
    CHECK(kempe_adjacent(two, moved).has_value());

    // symmetry
    for (const auto& a : cols)
        for (const auto& b : cols)
            CHECK(kempe_adjacent(a, b).has_value() == kempe_adjacent(b, a).has_value());
}

TEST_CASE("kempe neighbors") {
    auto d = labelled_k4();

    // edgeless graph: every single-vertex change is a Kempe move
    auto edgeless = std::make_shared<const SimpleGraph>(SimpleGraph::from_edges(3, {}));
    GraphColouring base{edgeless, d.graph, {0, 0, 0}};
    auto nbs = kempe_neighbors(base);
    CHECK(nbs.size() == 9); // 3 vertices x 3 other colours

    // neighbour lists agree with a pairwise adjacency scan
    auto c5 = std::make_shared<const SimpleGraph>(cycle_graph(5));
    auto cols = graph_homs(c5, d.graph);
    for (std::size_t i = 0; i < cols.size(); i += 17) {
        auto list = kempe_neighbors(cols[i]);
        std::size_t count = 0;
        for (const auto& other : cols)
            if (kempe_adjacent(cols[i], other)) ++count;
        CHECK(list.size() == count);
        for (const auto& nb : list) {
            CHECK(kempe_adjacent(cols[i], nb).has_value());
            CHECK(is_graph_hom(*c5, *d.graph, nb.image));
        }
    }
}

TEST_CASE("kempe moves preserve properness", "[property]") {
    auto d = labelled_k4();
    auto g = std::make_shared<const SimpleGraph>(complete_minus_edge(4));
    for (const auto& phi : graph_homs(g, d.graph))
        for (const auto& nb : kempe_neighbors(phi))
            CHECK(is_graph_hom(*g, *d.graph, nb.image));
}

TEST_CASE("kempe path search") {
    auto d = labelled_k4();
    auto k4 = std::make_shared<const SimpleGraph>(complete_graph(4));
    auto cols = graph_homs(k4, d.graph);
    REQUIRE(cols.size() == 24);

    // all 4-colourings of K4 are Kempe-connected
    for (const auto& target : cols) {
        auto path = kempe_decide(cols.front(), target);
        REQUIRE(path);
        CHECK(path->front().image == cols.front().image);
        CHECK(path->back().image == target.image);
        for (std::size_t k = 0; k + 1 < path->size(); ++k)
            CHECK(kempe_adjacent((*path)[k], (*path)[k + 1]).has_value());
    }

    auto self = kempe_decide(cols.front(), cols.front());
    REQUIRE(self);
    CHECK(self->size() == 1);

    Caps tight;
    tight.max_states = 2;
    CHECK_THROWS_AS(kempe_decide(cols.front(), cols.back(), tight), capacity_error);
}

TEST_CASE("gCol edges are kCol edges", "[property]") {
    auto d = labelled_k4();
    auto c5 = std::make_shared<const SimpleGraph>(cycle_graph(5));
    auto cols = graph_homs(c5, d.graph);
    for (std::size_t i = 0; i < cols.size(); i += 11)
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (gcol_adjacent(cols[i], cols[j]))
                CHECK(kempe_adjacent(cols[i], cols[j]).has_value());
}

TEST_CASE("explicit gCol and kCol graphs") {
    auto d = labelled_k4();
    auto k4 = std::make_shared<const SimpleGraph>(complete_graph(4));
    auto cols = graph_homs(k4, d.graph);
    auto gcol = gcol_graph(cols);
    CHECK(gcol.n == 24);
    CHECK(gcol.edges.empty());
    auto kcol = kcol_graph(cols);
    CHECK(kcol.n == 24);
    CHECK(kcol.connected());
    // the gCol edge set embeds into the kCol edge set
    for (auto e : gcol.edges) CHECK(kcol.adjacent(e.first, e.second));
}
