#pragma once

// Binary matroids via representing matrices: bases, fundamental circuits,
// circuit/cocircuit enumeration, graphic matroids, isomorphism and clique
// copy detection.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "matrec/caps.hpp"
#include "matrec/gf2.hpp"
#include "matrec/graphs.hpp"

namespace matrec {

// A set of points of a host matroid, stored as a bitmask over point indices.
// XOR is symmetric difference, which is exactly cycle/cocycle addition.
using PointSet = BitVec;

// A simple binary matroid: an ordered list of distinct columns over GF(2).
// The zero column (a loop) is admitted only when constructed with
// allow_loops.  Rank and the greedy-leftmost basis are cached eagerly;
// circuit and cocircuit lists are cached on first use.
class BinaryMatroid {
public:
    static BinaryMatroid from_columns(std::vector<BitVec> cols, bool allow_loops = false) {
        if (cols.empty()) throw std::invalid_argument("matroid: no columns");
        BinaryMatroid m;
        m.ambient_ = cols.front().size();
        m.allows_loop_ = allow_loops;
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != m.ambient_)
                throw std::invalid_argument("matroid: column length mismatch");
            if (cols[j].none()) {
                if (!allow_loops)
                    throw std::invalid_argument("matroid: zero column (loop) not allowed here");
                m.loop_ = j;
            }
            if (!m.index_.emplace(cols[j], static_cast<std::uint32_t>(j)).second)
                throw std::invalid_argument("matroid: duplicate column at position " +
                                            std::to_string(j));
        }
        m.points_ = std::move(cols);
        GF2Solver solver(m.points_);
        m.rank_ = solver.rank();
        m.basis_ = solver.pivot_generators();
        // Re-index expansions from generator positions to basis slots.
        std::vector<std::size_t> slot_of(m.points_.size(), 0);
        for (std::size_t s = 0; s < m.basis_.size(); ++s) slot_of[m.basis_[s]] = s;
        m.coords_.reserve(m.points_.size());
        for (const auto& p : m.points_) {
            BitVec combo = *solver.express(p);
            BitVec slots(m.rank_);
            combo.for_each_set([&](std::size_t g) { slots.set(slot_of[g]); });
            m.coords_.push_back(std::move(slots));
        }
        return m;
    }

    std::size_t size() const { return points_.size(); }
    std::size_t ambient_dim() const { return ambient_; }
    std::size_t rank() const { return rank_; }
    const BitVec& point(std::size_t e) const { return points_.at(e); }
    const std::vector<BitVec>& points() const { return points_; }
    bool allows_loops() const { return allows_loop_; }
    bool has_loop() const { return loop_.has_value(); }
    std::optional<std::size_t> loop_index() const { return loop_; }

    // Greedy-leftmost basis: the point indices picked by elimination scanning
    // columns left to right.
    const std::vector<std::size_t>& basis() const { return basis_; }

    bool in_basis(std::size_t e) const {
        return std::find(basis_.begin(), basis_.end(), e) != basis_.end();
    }

    // Expansion of point e over the cached basis, indexed by basis slot.
    const BitVec& basis_coords(std::size_t e) const { return coords_.at(e); }

    std::optional<std::uint32_t> find_point(const BitVec& v) const {
        auto it = index_.find(v);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    BitMatrix representation() const { return BitMatrix(ambient_, points_); }

    bool in_point_space(const BitVec& v) const {
        if (v.size() != ambient_) throw std::invalid_argument("in_point_space: dimension");
        Echelon e;
        for (const auto& p : points_) e.add(p);
        return e.reduces_to_zero(v);
    }

    // The unique circuit inside basis + {e}; e must not be a basis element.
    PointSet fundamental_circuit(std::size_t e) const {
        if (e >= size()) throw std::invalid_argument("fundamental_circuit: bad index");
        if (in_basis(e)) throw std::invalid_argument("fundamental_circuit: e is in the basis");
        PointSet s(size());
        s.set(e);
        coords_.at(e).for_each_set([&](std::size_t slot) { s.set(basis_[slot]); });
        return s;
    }

    // Basis of the cycle space (kernel of the representation), as PointSets.
    const std::vector<PointSet>& cycle_space_basis() const {
        if (!cycle_basis_) cycle_basis_ = null_space_basis(representation());
        return *cycle_basis_;
    }

    // Basis of the cocycle space (row space of the representation), as
    // PointSets over the point indices.
    const std::vector<PointSet>& cocycle_space_basis() const {
        if (!cocycle_basis_) cocycle_basis_ = row_space_basis(representation());
        return *cocycle_basis_;
    }

    bool is_cycle(const PointSet& s) const {
        check_point_set(s);
        BitVec sum(ambient_);
        s.for_each_set([&](std::size_t e) { sum += points_[e]; });
        return sum.none();
    }

    bool is_cocycle(const PointSet& s) const {
        check_point_set(s);
        Echelon e;
        for (const auto& r : cocycle_space_basis()) e.add(r);
        return e.reduces_to_zero(s);
    }

    // Minimal nonempty cycle.
    bool is_circuit(const PointSet& s) const {
        return s.any() && is_cycle(s) && space_dim_within(cycle_space_basis(), s) == 1;
    }

    // Minimal nonempty support of a cocycle-space vector.
    bool is_cocircuit(const PointSet& s) const {
        return s.any() && is_cocycle(s) && space_dim_within(cocycle_space_basis(), s) == 1;
    }

    // All circuits, cached; ordered by (size, lexicographic).
    const std::vector<PointSet>& circuits(const Caps& caps = {}) const {
        if (!circuits_) circuits_ = minimal_supports(cycle_space_basis(), caps, "circuits");
        return *circuits_;
    }

    // All cocircuits, cached; ordered by (size, lexicographic).
    const std::vector<PointSet>& cocircuits(const Caps& caps = {}) const {
        if (!cocircuits_) cocircuits_ = minimal_supports(cocycle_space_basis(), caps, "cocircuits");
        return *cocircuits_;
    }

    // Some cocircuit contained in s, or nullopt.  Works by descending through
    // ever smaller cocycle supports, so it needs no enumeration cap.
    std::optional<PointSet> cocircuit_within(const PointSet& s) const {
        check_point_set(s);
        auto sub = subspace_within(cocycle_space_basis(), s);
        if (sub.empty()) return std::nullopt;
        PointSet w = *std::min_element(sub.begin(), sub.end());
        while (true) {
            auto inner = subspace_within(cocycle_space_basis(), w);
            if (inner.size() == 1) return w;
            // Any basis vector other than w itself has strictly smaller support.
            std::sort(inner.begin(), inner.end());
            for (const auto& x : inner)
                if (x != w) {
                    w = x;
                    break;
                }
        }
    }

    // Splits a cocycle into disjoint cocircuits by repeatedly extracting one.
    std::vector<PointSet> cocycle_decompose(PointSet s) const {
        if (!is_cocycle(s))
            throw std::invalid_argument("cocycle_decompose: not a cocycle");
        std::vector<PointSet> parts;
        while (s.any()) {
            auto c = cocircuit_within(s);
            if (!c)
                throw internal_error("cocycle_decompose: nonempty cocycle holds no cocircuit");
            parts.push_back(*c);
            s = s.and_not(*c);
        }
        return parts;
    }

    friend bool operator==(const BinaryMatroid& a, const BinaryMatroid& b) {
        return a.ambient_ == b.ambient_ && a.allows_loop_ == b.allows_loop_ &&
               a.points_ == b.points_;
    }

private:
    BinaryMatroid() = default;

    void check_point_set(const PointSet& s) const {
        if (s.size() != size())
            throw std::invalid_argument("point set size does not match matroid");
    }

    // Basis of {w in span(basis) : supp(w) subset of s}.  The input basis is
    // independent, so combinations vanishing outside s map bijectively to the
    // vectors supported inside s.
    static std::vector<BitVec> subspace_within(const std::vector<BitVec>& basis,
                                               const BitVec& s) {
        if (basis.empty()) return {};
        std::vector<BitVec> projected;
        projected.reserve(basis.size());
        for (const auto& b : basis) projected.push_back(b.and_not(s));
        // Kernel of the matrix whose columns are the projections.
        std::vector<BitVec> combos = null_space_basis(BitMatrix(s.size(), projected));
        std::vector<BitVec> out;
        out.reserve(combos.size());
        for (const auto& c : combos) {
            BitVec w(s.size());
            c.for_each_set([&](std::size_t i) { w += basis[i]; });
            out.push_back(std::move(w));
        }
        return out;
    }

    static std::size_t space_dim_within(const std::vector<BitVec>& basis, const BitVec& s) {
        return subspace_within(basis, s).size();
    }

    static std::vector<PointSet> minimal_supports(const std::vector<BitVec>& basis,
                                                  const Caps& caps, const char* what) {
        if (basis.size() > caps.max_rank_exponent)
            throw capacity_error(std::string(what) + ": space dimension " +
                                 std::to_string(basis.size()) + " exceeds cap " +
                                 std::to_string(caps.max_rank_exponent));
        std::vector<PointSet> supports;
        if (basis.empty()) return supports;
        BitVec current(basis.front().size());
        std::uint64_t total = std::uint64_t{1} << basis.size();
        supports.reserve(static_cast<std::size_t>(total) - 1);
        for (std::uint64_t i = 1; i < total; ++i) {
            current += basis[static_cast<std::size_t>(std::countr_zero(i))];
            if (current.any()) supports.push_back(current);
        }
        std::sort(supports.begin(), supports.end(), [](const PointSet& a, const PointSet& b) {
            auto wa = a.weight(), wb = b.weight();
            return wa != wb ? wa < wb : a < b;
        });
        std::vector<PointSet> minimal;
        for (const auto& s : supports) {
            bool dominated = false;
            for (const auto& m : minimal) {
                if (m.weight() >= s.weight()) break;
                if (m.subset_of(s)) {
                    dominated = true;
                    break;
                }
            }
            if (!dominated) minimal.push_back(s);
        }
        return minimal;
    }

    std::size_t ambient_ = 0;
    bool allows_loop_ = false;
    std::optional<std::size_t> loop_;
    std::vector<BitVec> points_;
    std::size_t rank_ = 0;
    std::vector<std::size_t> basis_;
    std::vector<BitVec> coords_;
    std::unordered_map<BitVec, std::uint32_t, BitVecHash> index_;

    mutable std::optional<std::vector<PointSet>> circuits_;
    mutable std::optional<std::vector<PointSet>> cocircuits_;
    mutable std::optional<std::vector<BitVec>> cycle_basis_;
    mutable std::optional<std::vector<BitVec>> cocycle_basis_;
};

using MatroidPtr = std::shared_ptr<const BinaryMatroid>;

inline MatroidPtr share(BinaryMatroid m) {
    return std::make_shared<const BinaryMatroid>(std::move(m));
}

// Graphic matroid M(G): one point e_u + e_v per edge, in edge-list order.
inline BinaryMatroid graphic(const SimpleGraph& g) {
    if (g.reflexive) throw std::invalid_argument("graphic: graph must be loopless");
    if (g.edges.empty()) throw std::invalid_argument("graphic: graph has no edges");
    std::vector<BitVec> cols;
    cols.reserve(g.edges.size());
    for (auto [u, v] : g.edges) {
        BitVec c(g.n);
        c.set(u);
        c.set(v);
        cols.push_back(std::move(c));
    }
    return BinaryMatroid::from_columns(std::move(cols));
}

// Projective geometry PG(t-1, 2): all nonzero columns of GF(2)^t.
inline BinaryMatroid projective_geometry(std::size_t t) {
    if (t == 0 || t > 20) throw std::invalid_argument("projective_geometry: bad t");
    std::vector<BitVec> cols;
    for (std::uint64_t x = 1; x < (std::uint64_t{1} << t); ++x) {
        BitVec c(t);
        for (std::size_t i = 0; i < t; ++i)
            if ((x >> i) & 1) c.set(i);
        cols.push_back(std::move(c));
    }
    return BinaryMatroid::from_columns(std::move(cols));
}

// Looped projective geometry PG^l(t-1, 2): all 2^t columns of GF(2)^t.
inline BinaryMatroid looped_projective_geometry(std::size_t t) {
    if (t > 20) throw std::invalid_argument("looped_projective_geometry: bad t");
    std::vector<BitVec> cols;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << t); ++x) {
        BitVec c(t);
        for (std::size_t i = 0; i < t; ++i)
            if ((x >> i) & 1) c.set(i);
        cols.push_back(std::move(c));
    }
    return BinaryMatroid::from_columns(std::move(cols), /*allow_loops=*/true);
}

// Looped clique M^l(K_n): the columns of GF(2)^n of weight 0 or 2.
inline BinaryMatroid looped_clique(std::size_t n) {
    if (n < 1) throw std::invalid_argument("looped_clique: n must be positive");
    std::vector<BitVec> cols;
    cols.push_back(BitVec(n)); // the loop
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = u + 1; v < n; ++v) {
            BitVec c(n);
            c.set(u);
            c.set(v);
            cols.push_back(std::move(c));
        }
    return BinaryMatroid::from_columns(std::move(cols), /*allow_loops=*/true);
}

// A bijection of point indices preserving cycles in both directions, found
// by backtracking over basis images (first hit in lexicographic candidate
// order), or nullopt.
inline std::optional<std::vector<std::uint32_t>> isomorphism(const BinaryMatroid& m1,
                                                             const BinaryMatroid& m2) {
    if (m1.size() != m2.size() || m1.rank() != m2.rank()) return std::nullopt;
    if (m1.has_loop() != m2.has_loop()) return std::nullopt;

    const std::size_t r = m1.rank();
    const std::size_t npts = m1.size();
    std::vector<std::int64_t> map(npts, -1);
    std::vector<bool> used(npts, false);

    // Points of m1 grouped by the highest basis slot in their expansion, so
    // each becomes forced as soon as its last slot is assigned.
    std::vector<std::vector<std::size_t>> ready(r + 1);
    for (std::size_t e = 0; e < npts; ++e) {
        const BitVec& c = m1.basis_coords(e);
        std::size_t top = 0;
        c.for_each_set([&](std::size_t slot) { top = std::max(top, slot + 1); });
        ready[top].push_back(e);
    }

    std::vector<BitVec> images; // chosen image columns for basis slots
    images.reserve(r);

    std::function<bool(std::size_t)> place_forced = [&](std::size_t depth) -> bool {
        for (std::size_t e : ready[depth]) {
            BitVec v(m2.ambient_dim());
            m1.basis_coords(e).for_each_set([&](std::size_t slot) { v += images[slot]; });
            auto idx = m2.find_point(v);
            if (!idx || used[*idx]) return false;
            map[e] = *idx;
            used[*idx] = true;
        }
        return true;
    };
    auto unplace_forced = [&](std::size_t depth) {
        for (std::size_t e : ready[depth]) {
            if (map[e] >= 0) {
                used[static_cast<std::size_t>(map[e])] = false;
                map[e] = -1;
            }
        }
    };

    std::function<bool(std::size_t)> rec = [&](std::size_t depth) -> bool {
        if (depth == r) return true;
        Echelon indep;
        for (const auto& v : images) indep.add(v);
        for (std::uint32_t cand = 0; cand < npts; ++cand) {
            if (used[cand]) continue;
            Echelon check = indep;
            if (!check.add(m2.point(cand))) continue; // image must stay independent
            images.push_back(m2.point(cand));
            if (place_forced(depth + 1)) {
                if (rec(depth + 1)) return true;
            }
            unplace_forced(depth + 1);
            images.pop_back();
        }
        return false;
    };

    if (!place_forced(0)) return std::nullopt; // loops with empty expansion
    if (!rec(0)) {
        unplace_forced(0);
        return std::nullopt;
    }
    std::vector<std::uint32_t> out(npts);
    for (std::size_t e = 0; e < npts; ++e) out[e] = static_cast<std::uint32_t>(map[e]);
    return out;
}

// Searches N for an induced copy of M(K_n).  Returns n ambient vectors
// y_0 = 0, y_1, ..., y_{n-1} whose pairwise sums are all points of N and
// whose nonzero members are linearly independent; the induced point map
// (i, j) -> y_i + y_j is then an isomorphic embedding of M(K_n).
// The search walks n-cliques through the zero vertex of the decision graph,
// equivalently (n-1)-cliques of the point graph p ~ q iff p + q is a point.
inline std::optional<std::vector<BitVec>> find_clique_copy(const BinaryMatroid& n_matroid,
                                                           std::size_t n) {
    if (n < 2) throw std::invalid_argument("find_clique_copy: n must be at least 2");
    const std::size_t npts = n_matroid.size();
    if (npts < n * (n - 1) / 2 || n_matroid.rank() < n - 1) return std::nullopt;

    std::vector<std::uint32_t> chosen;
    chosen.reserve(n - 1);

    std::function<bool(std::uint32_t)> rec = [&](std::uint32_t from) -> bool {
        if (chosen.size() == n - 1) {
            Echelon e;
            for (auto i : chosen)
                if (!e.add(n_matroid.point(i))) return false;
            return true; // independent, so a genuine induced copy
        }
        for (std::uint32_t cand = from; cand < npts; ++cand) {
            if (n_matroid.point(cand).none()) continue; // a loop is never clique material
            bool ok = true;
            for (auto i : chosen)
                if (!n_matroid.find_point(n_matroid.point(i) + n_matroid.point(cand))) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            chosen.push_back(cand);
            if (rec(cand + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };

    if (!rec(0)) return std::nullopt;
    std::vector<BitVec> embedding;
    embedding.reserve(n);
    embedding.push_back(BitVec(n_matroid.ambient_dim()));
    for (auto i : chosen) embedding.push_back(n_matroid.point(i));
    return embedding;
}

} // namespace matrec
