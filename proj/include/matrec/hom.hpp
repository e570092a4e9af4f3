#pragma once

// Matroid homomorphisms: verification, linear extension from a basis,
// exhaustive enumeration, composition, retractions and dismantling.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "matrec/caps.hpp"
#include "matrec/gf2.hpp"
#include "matrec/matroid.hpp"

namespace matrec {

// A point map E(dom) -> E(cod) that is linear on point spaces; equivalently,
// the images sum to zero over every circuit of the domain.  Instances are
// only created through the factories below, so holding one means the
// homomorphism condition has been checked (or is guaranteed by construction).
struct MatroidHom {
    MatroidPtr dom;
    MatroidPtr cod;
    std::vector<std::uint32_t> image;

    std::uint32_t operator()(std::size_t e) const { return image.at(e); }
    const BitVec& image_col(std::size_t e) const { return cod->point(image.at(e)); }

    bool is_endomorphism() const { return dom.get() == cod.get() || *dom == *cod; }

    friend bool operator==(const MatroidHom& a, const MatroidHom& b) {
        return a.image == b.image && (a.dom.get() == b.dom.get() || *a.dom == *b.dom) &&
               (a.cod.get() == b.cod.get() || *a.cod == *b.cod);
    }
};

inline void check_same_matroid(const MatroidPtr& a, const MatroidPtr& b, const char* what) {
    if (a.get() != b.get() && !(*a == *b)) throw std::invalid_argument(what);
}

// Homomorphism test.  The fast path checks fundamental circuits with respect
// to the cached basis, which suffices by linearity; slow mode rechecks every
// circuit and exists as a cross-oracle.
inline bool is_homomorphism(const MatroidPtr& dom, const MatroidPtr& cod,
                            const std::vector<std::uint32_t>& image, bool slow = false,
                            const Caps& caps = {}) {
    if (image.size() != dom->size())
        throw std::invalid_argument("is_homomorphism: image array size mismatch");
    for (auto v : image)
        if (v >= cod->size()) throw std::invalid_argument("is_homomorphism: index out of range");
    if (slow) {
        for (const auto& z : dom->circuits(caps)) {
            BitVec sum(cod->ambient_dim());
            z.for_each_set([&](std::size_t e) { sum += cod->point(image[e]); });
            if (sum.any()) return false;
        }
        return true;
    }
    for (std::size_t e = 0; e < dom->size(); ++e) {
        if (dom->in_basis(e)) continue;
        BitVec forced(cod->ambient_dim());
        dom->basis_coords(e).for_each_set(
            [&](std::size_t slot) { forced += cod->point(image[dom->basis()[slot]]); });
        if (forced != cod->point(image[e])) return false;
    }
    return true;
}

inline MatroidHom make_hom(MatroidPtr dom, MatroidPtr cod, std::vector<std::uint32_t> image) {
    if (!is_homomorphism(dom, cod, image))
        throw std::invalid_argument("make_hom: not a homomorphism");
    return MatroidHom{std::move(dom), std::move(cod), std::move(image)};
}

inline MatroidHom identity_hom(const MatroidPtr& m) {
    std::vector<std::uint32_t> image(m->size());
    for (std::uint32_t e = 0; e < m->size(); ++e) image[e] = e;
    return MatroidHom{m, m, std::move(image)};
}

// The unique linear extension of an assignment on the cached basis, if every
// forced image lands on a point of the codomain.
inline std::optional<MatroidHom> linear_extension(const MatroidPtr& dom, const MatroidPtr& cod,
                                                  const std::vector<std::uint32_t>& basis_images) {
    if (basis_images.size() != dom->rank())
        throw std::invalid_argument("linear_extension: need one image per basis element");
    std::vector<std::uint32_t> image(dom->size());
    for (std::size_t e = 0; e < dom->size(); ++e) {
        BitVec v(cod->ambient_dim());
        dom->basis_coords(e).for_each_set(
            [&](std::size_t slot) { v += cod->point(basis_images.at(slot)); });
        auto idx = cod->find_point(v);
        if (!idx) return std::nullopt;
        image[e] = *idx;
    }
    return MatroidHom{dom, cod, std::move(image)};
}

// All homomorphisms dom -> cod, lexicographic by image array.
inline std::vector<MatroidHom> enumerate_homs(const MatroidPtr& dom, const MatroidPtr& cod,
                                              const Caps& caps = {}) {
    long double bound = 1;
    for (std::size_t i = 0; i < dom->rank(); ++i) bound *= static_cast<long double>(cod->size());
    if (bound > static_cast<long double>(caps.max_homs))
        throw capacity_error("enumerate_homs: |E(cod)|^rank(dom) exceeds cap");

    const std::size_t r = dom->rank();
    const std::size_t npts = dom->size();

    // Forced points become checkable once the last basis slot they use is
    // assigned; group them by that slot.
    std::vector<std::vector<std::size_t>> ready(r + 1);
    for (std::size_t e = 0; e < npts; ++e) {
        std::size_t top = 0;
        dom->basis_coords(e).for_each_set([&](std::size_t s) { top = std::max(top, s + 1); });
        ready[top].push_back(e);
    }

    std::vector<MatroidHom> out;
    std::vector<std::uint32_t> image(npts, 0);
    std::vector<std::uint32_t> basis_images(r, 0);

    std::function<bool(std::size_t)> place = [&](std::size_t depth) -> bool {
        for (std::size_t e : ready[depth]) {
            BitVec v(cod->ambient_dim());
            dom->basis_coords(e).for_each_set(
                [&](std::size_t slot) { v += cod->point(basis_images[slot]); });
            auto idx = cod->find_point(v);
            if (!idx) return false;
            image[e] = *idx;
        }
        return true;
    };

    std::function<void(std::size_t)> rec = [&](std::size_t depth) {
        if (depth == r) {
            out.push_back(MatroidHom{dom, cod, image});
            return;
        }
        for (std::uint32_t cand = 0; cand < cod->size(); ++cand) {
            basis_images[depth] = cand;
            image[dom->basis()[depth]] = cand;
            if (place(depth + 1)) rec(depth + 1);
        }
    };

    if (place(0)) rec(0); // depth 0 handles loops, which map to a loop or nothing
    std::sort(out.begin(), out.end(),
              [](const MatroidHom& a, const MatroidHom& b) { return a.image < b.image; });
    return out;
}

// beta after alpha; domains must chain.
inline MatroidHom compose(const MatroidHom& beta, const MatroidHom& alpha) {
    check_same_matroid(alpha.cod, beta.dom, "compose: codomain/domain mismatch");
    std::vector<std::uint32_t> image(alpha.image.size());
    for (std::size_t e = 0; e < image.size(); ++e) image[e] = beta.image[alpha.image[e]];
    return MatroidHom{alpha.dom, beta.cod, std::move(image)};
}

// Applies the linear extension of the hom to an arbitrary point-space vector.
inline BitVec apply_linear(const MatroidHom& f, const BitVec& v) {
    GF2Solver solver(f.dom->points());
    auto combo = solver.express(v);
    if (!combo) throw std::invalid_argument("apply_linear: vector outside the point space");
    BitVec out(f.cod->ambient_dim());
    combo->for_each_set([&](std::size_t e) { out += f.image_col(e); });
    return out;
}

// A retraction is an idempotent endomorphism; it fixes its image pointwise.
inline bool is_retraction(const MatroidHom& r) {
    if (!r.is_endomorphism()) throw std::invalid_argument("is_retraction: not an endomorphism");
    for (std::size_t e = 0; e < r.image.size(); ++e)
        if (r.image[r.image[e]] != r.image[e]) return false;
    return true;
}

// All well-defined idempotent maps id + c*chi_C over cocircuits C of N and
// nonzero constants c, i.e. the retractions adjacent to the identity.
inline std::vector<MatroidHom> dismantling_retractions(const MatroidPtr& n,
                                                       const Caps& caps = {}) {
    std::vector<MatroidHom> out;
    for (const auto& c_set : n->cocircuits(caps)) {
        std::size_t e0 = c_set.lowest_set();
        for (std::uint32_t p = 0; p < n->size(); ++p) {
            if (p == e0) continue;
            BitVec c = n->point(p) + n->point(e0);
            std::vector<std::uint32_t> image(n->size());
            bool ok = true;
            for (std::uint32_t e = 0; e < n->size() && ok; ++e) {
                if (!c_set.test(e)) {
                    image[e] = e;
                    continue;
                }
                auto idx = n->find_point(n->point(e) + c);
                if (!idx)
                    ok = false;
                else
                    image[e] = *idx;
            }
            if (!ok) continue;
            MatroidHom cand{n, n, std::move(image)};
            if (is_retraction(cand)) out.push_back(std::move(cand));
        }
    }
    std::sort(out.begin(), out.end(),
              [](const MatroidHom& a, const MatroidHom& b) { return a.image < b.image; });
    return out;
}

// One step of a dismantling sequence: the retraction, the surviving point
// indices of the previous matroid, and the image submatroid they induce.
struct DismantlingStep {
    MatroidHom retraction;                 // endomorphism of the previous matroid
    std::vector<std::uint32_t> fixed;      // image point indices, ascending
    MatroidPtr restricted;                 // submatroid on those points
};

namespace detail {
inline DismantlingStep restrict_to_image(const MatroidPtr& host, const MatroidHom& r) {
    DismantlingStep step;
    step.retraction = r;
    for (std::uint32_t e = 0; e < host->size(); ++e)
        if (r.image[e] == e) step.fixed.push_back(e);
    std::vector<BitVec> cols;
    bool loops = false;
    cols.reserve(step.fixed.size());
    for (auto e : step.fixed) {
        if (host->point(e).none()) loops = true;
        cols.push_back(host->point(e));
    }
    step.restricted = share(BinaryMatroid::from_columns(std::move(cols), loops));
    return step;
}
} // namespace detail

// Breadth-first search over isomorphism classes of images for a sequence of
// dismantling retractions carrying N onto a copy of `target`.
inline std::optional<std::vector<DismantlingStep>> dismantles_to(const MatroidPtr& n,
                                                                 const BinaryMatroid& target,
                                                                 const Caps& caps = {}) {
    struct Node {
        MatroidPtr matroid;
        std::vector<DismantlingStep> path;
    };
    std::vector<MatroidPtr> visited{n};
    std::vector<Node> queue{Node{n, {}}};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Node cur = queue[head];
        if (isomorphism(*cur.matroid, target)) return cur.path;
        for (const auto& r : dismantling_retractions(cur.matroid, caps)) {
            auto step = detail::restrict_to_image(cur.matroid, r);
            bool seen = false;
            for (const auto& v : visited)
                if (isomorphism(*v, *step.restricted)) {
                    seen = true;
                    break;
                }
            if (seen) continue;
            visited.push_back(step.restricted);
            if (visited.size() > caps.max_states)
                throw capacity_error("dismantles_to: visited cap exceeded");
            Node next{step.restricted, cur.path};
            next.path.push_back(std::move(step));
            queue.push_back(std::move(next));
        }
    }
    return std::nullopt;
}

// A dismantling sequence witnessing that Recol is trivial for N: reaching
// either the one-loop matroid or the one-edge matroid.  This checks only the
// sufficient direction; no converse is attempted.
inline std::optional<std::vector<DismantlingStep>> triviality_certificate(const MatroidPtr& n,
                                                                          const Caps& caps = {}) {
    BinaryMatroid loop = BinaryMatroid::from_columns({BitVec(1)}, /*allow_loops=*/true);
    BinaryMatroid edge = BinaryMatroid::from_columns({BitVec::from_string("1")});
    if (auto seq = dismantles_to(n, loop, caps)) return seq;
    if (auto seq = dismantles_to(n, edge, caps)) return seq;
    return std::nullopt;
}

} // namespace matrec
