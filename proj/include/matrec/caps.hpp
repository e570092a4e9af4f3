#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace matrec {

// Thrown when an enumeration or search would exceed its configured budget.
// Exponential objects are never truncated silently; they fail loudly.
class capacity_error : public std::runtime_error {
public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a verified internal invariant fails.  Seeing one of these means
// either a bug or a genuine counterexample to a claim the code relies on.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

// Resource budgets shared by all enumerating operations.
struct Caps {
    // Full sweeps of a row space / cycle space enumerate 2^k vectors; k must
    // stay at or below this exponent.
    std::size_t max_rank_exponent = 24;
    // Implicit BFS over colourings visits at most this many states.
    std::size_t max_states = 1'000'000;
    // Homomorphism enumeration: |E(codomain)|^rank(domain) candidate bound.
    std::uint64_t max_homs = 100'000'000;
};

} // namespace matrec
