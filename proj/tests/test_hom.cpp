#include <catch2/catch_amalgamated.hpp>

#include "matrec/hom.hpp"
#include "matrec/recolor.hpp"

using namespace matrec;

namespace {

MatroidPtr mk3() {
    return share(BinaryMatroid::from_columns(
        {BitVec::from_string("01"), BitVec::from_string("10"), BitVec::from_string("11")}));
}

MatroidPtr mk(std::size_t n) { return share(graphic(complete_graph(n))); }

// The K4 -> K3 assignment: outer edges 01, 11, 10 and each spoke equal to
// its opposite outer edge.  Point order of graphic(K4): (0,1) (0,2) (0,3)
// (1,2) (1,3) (2,3) with vertices a,b,c,m = 0,1,2,3.
std::vector<std::uint32_t> k4k3_image() {
    // ab=01 ac=11 am=10 bc=10 bm=11 cm=01 over N points {01,10,11} = {0,1,2}
    return {0, 2, 1, 1, 2, 0};
}

} // namespace

TEST_CASE("is_homomorphism") {
    auto k4 = mk(4);
    auto k3 = mk3();
    CHECK(is_homomorphism(k4, k3, k4k3_image()));
    CHECK(is_homomorphism(k4, k3, k4k3_image(), /*slow=*/true));

    auto id = identity_hom(k3);
    CHECK(is_homomorphism(k3, k3, id.image));

    // all three points to 01: the circuit sums to 01, not a homomorphism
    CHECK_FALSE(is_homomorphism(k3, k3, {0, 0, 0}));
    CHECK_FALSE(is_homomorphism(k3, k3, {0, 0, 0}, /*slow=*/true));

    CHECK_THROWS_AS(is_homomorphism(k3, k3, {0, 9, 0}), std::invalid_argument);
}

TEST_CASE("fast and slow homomorphism checks agree", "[property]") {
    auto c4 = share(graphic(cycle_graph(4)));
    auto k4 = mk(4);
    std::vector<std::uint32_t> image(c4->size(), 0);
    std::function<void(std::size_t)> visit = [&](std::size_t e) {
        if (e == image.size()) {
            CHECK(is_homomorphism(c4, k4, image) == is_homomorphism(c4, k4, image, true));
            return;
        }
        for (std::uint32_t v = 0; v < k4->size(); ++v) {
            image[e] = v;
            visit(e + 1);
        }
    };
    visit(0);
}

TEST_CASE("linear extension") {
    auto k3 = mk3();
    auto id = linear_extension(k3, k3, {0, 1});
    REQUIRE(id);
    CHECK(id->image == std::vector<std::uint32_t>{0, 1, 2});

    // swapping 01 and 10 forces 11 to stay fixed
    auto swap = linear_extension(k3, k3, {1, 0});
    REQUIRE(swap);
    CHECK(swap->image == std::vector<std::uint32_t>{1, 0, 2});

    // round trip: reading off basis images returns the input
    for (std::size_t slot = 0; slot < k3->rank(); ++slot)
        CHECK(swap->image[k3->basis()[slot]] == std::vector<std::uint32_t>{1, 0}[slot]);

    // brute force: of the 27 assignments of the K4 3-star basis into M(K3),
    // exactly 6 extend (matching |Hom(M(K4), M(K3))| = 6)
    auto k4 = mk(4);
    int extend = 0;
    for (std::uint32_t a = 0; a < 3; ++a)
        for (std::uint32_t b = 0; b < 3; ++b)
            for (std::uint32_t c = 0; c < 3; ++c)
                if (linear_extension(k4, k3, {a, b, c})) ++extend;
    CHECK(extend == 6);
}

TEST_CASE("hom enumeration counts") {
    auto k3 = mk3();
    CHECK(enumerate_homs(mk(4), k3).size() == 6);
    CHECK(enumerate_homs(share(graphic(cycle_graph(5))), k3).size() == 60);
    auto k2 = share(BinaryMatroid::from_columns({BitVec::from_string("1")}));
    CHECK(enumerate_homs(k3, k2).empty());
}

TEST_CASE("enumerated homs are valid, unique, sorted", "[property]") {
    auto homs = enumerate_homs(share(graphic(cycle_graph(4))), mk(4));
    for (std::size_t i = 0; i < homs.size(); ++i) {
        CHECK(is_homomorphism(homs[i].dom, homs[i].cod, homs[i].image, /*slow=*/true));
        if (i) CHECK(homs[i - 1].image < homs[i].image);
    }
}

TEST_CASE("enumeration cap") {
    Caps tight;
    tight.max_homs = 10;
    CHECK_THROWS_AS(enumerate_homs(mk(4), mk(4), tight), capacity_error);
}

TEST_CASE("loops map to loops") {
    auto looped = share(looped_projective_geometry(1)); // {0, 1}
    auto loopless = share(BinaryMatroid::from_columns({BitVec::from_string("1")}));
    // domain loop, loopless codomain: no homomorphisms at all
    CHECK(enumerate_homs(looped, loopless).empty());
    // looped codomain: the loop must land on the loop
    auto homs = enumerate_homs(looped, looped);
    CHECK(homs.size() == 2);
    auto loop_idx = static_cast<std::uint32_t>(*looped->loop_index());
    for (const auto& h : homs) CHECK(h.image[loop_idx] == loop_idx);
}

TEST_CASE("composition") {
    auto k4 = mk(4);
    auto k3 = mk3();
    MatroidHom tau = make_hom(k4, k3, k4k3_image());
    auto id = identity_hom(k3);
    CHECK(compose(id, tau).image == tau.image);

    auto swap = *linear_extension(k3, k3, {1, 0});
    auto composed = compose(swap, tau);
    CHECK(is_homomorphism(composed.dom, composed.cod, composed.image, /*slow=*/true));
    // outer edges become 10, 11, 01
    CHECK(composed.image[0] == 1);
    CHECK(composed.image[1] == 2);
    CHECK(composed.image[3] == 0);

    CHECK_THROWS_AS(compose(tau, tau), std::invalid_argument);
}

TEST_CASE("composition of homs is a hom", "[property]") {
    auto c5 = share(graphic(cycle_graph(5)));
    auto k3 = mk3();
    auto alphas = enumerate_homs(c5, k3);
    auto betas = enumerate_homs(k3, k3);
    for (std::size_t i = 0; i < alphas.size(); i += 7) {
        for (const auto& beta : betas) {
            auto comp = compose(beta, alphas[i]);
            CHECK(is_homomorphism(comp.dom, comp.cod, comp.image));
        }
    }
}

TEST_CASE("retraction test") {
    auto k3 = mk3();
    CHECK(is_retraction(identity_hom(k3)));
    CHECK_FALSE(is_retraction(*linear_extension(k3, k3, {1, 0}))); // order-2 swap

    // the K4 -> K3 collapse: id + [1,1,1,1]^T on the points with a 1 in the
    // fourth coordinate
    auto k4 = mk(4);
    BitVec c = BitVec::from_string("1111");
    std::vector<std::uint32_t> image(6);
    for (std::uint32_t e = 0; e < 6; ++e) {
        if (k4->point(e).test(3))
            image[e] = *k4->find_point(k4->point(e) + c);
        else
            image[e] = e;
    }
    auto r = make_hom(k4, k4, image);
    CHECK(is_retraction(r));

    auto k4k3 = make_hom(k4, k3, k4k3_image());
    CHECK_THROWS_AS(is_retraction(k4k3), std::invalid_argument);
}

TEST_CASE("dismantling retractions") {
    auto k4 = mk(4);
    auto found = dismantling_retractions(k4);
    CHECK_FALSE(found.empty());

    // the collapse along the fourth coordinate must be among them
    BitVec c = BitVec::from_string("1111");
    std::vector<std::uint32_t> expect(6);
    for (std::uint32_t e = 0; e < 6; ++e)
        expect[e] = k4->point(e).test(3) ? *k4->find_point(k4->point(e) + c) : e;
    bool present = false;
    for (const auto& r : found) {
        present = present || r.image == expect;
        CHECK(is_retraction(r));
        // each one is adjacent to the identity
        CHECK(adjacent(identity_hom(k4), r).has_value());
    }
    CHECK(present);

    // the looped projective geometry has the coordinate projection
    auto pg = share(looped_projective_geometry(3));
    auto pg_found = dismantling_retractions(pg);
    std::vector<std::uint32_t> projection(pg->size());
    for (std::uint32_t e = 0; e < pg->size(); ++e) {
        BitVec v = pg->point(e);
        v.set(2, false);
        projection[e] = *pg->find_point(v);
    }
    bool has_projection = false;
    for (const auto& r : pg_found) has_projection = has_projection || r.image == projection;
    CHECK(has_projection);

    // M(K3) admits none
    CHECK(dismantling_retractions(mk3()).empty());
}

TEST_CASE("dismantles_to") {
    auto k4 = mk(4);
    auto seq = dismantles_to(k4, graphic(complete_graph(3)));
    REQUIRE(seq);
    CHECK(seq->size() == 1);
    CHECK(isomorphism(*(*seq)[0].restricted, graphic(complete_graph(3))).has_value());

    BinaryMatroid loop = BinaryMatroid::from_columns({BitVec(1)}, true);
    CHECK(dismantles_to(share(looped_clique(3)), loop).has_value());

    auto k2 = BinaryMatroid::from_columns({BitVec::from_string("1")});
    CHECK_FALSE(dismantles_to(mk3(), k2).has_value());
}

TEST_CASE("triviality certificates") {
    auto k2 = share(BinaryMatroid::from_columns({BitVec::from_string("1")}));
    auto cert = triviality_certificate(k2);
    REQUIRE(cert);
    CHECK(cert->empty());

    CHECK(triviality_certificate(share(looped_clique(4))).has_value());
    CHECK_FALSE(triviality_certificate(mk3()).has_value());
}

TEST_CASE("apply_linear extends over the point space") {
    auto k4 = mk(4);
    auto k3 = mk3();
    auto tau = make_hom(k4, k3, k4k3_image());
    // on points it matches the image map
    for (std::size_t e = 0; e < k4->size(); ++e)
        CHECK(apply_linear(tau, k4->point(e)) == tau.image_col(e));
    // and it is additive on sums of points
    BitVec v = k4->point(0) + k4->point(3);
    CHECK(apply_linear(tau, v) == tau.image_col(0) + tau.image_col(3));
}
