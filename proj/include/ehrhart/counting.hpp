#pragma once

#include "ehrhart/polynomial.hpp"
#include "ehrhart/polytope.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace ehrhart {

enum class ScanStrategy {
    /// Nested scan of all but the last coordinate; the last coordinate's
    /// feasible run is solved from the constraints in O(#constraints).
    RowIntervals,
    /// Test every bounding-box point individually.
    Pointwise,
};

struct CountOptions {
    /// Worker threads; 0 means std::thread::hardware_concurrency().
    unsigned threads = 1;
    /// Slabs along the first coordinate; 0 picks 4 per thread.
    std::size_t slabs = 0;
    /// Refuse enumerations with more candidate points than this. nullopt = no limit.
    std::optional<BigInt> max_points = BigInt(100'000'000);
    ScanStrategy strategy = ScanStrategy::RowIntervals;
};

/// Bounding-box points examined when counting nP. With `factorized`,
/// products cost the sum of their factors rather than the joint box.
BigInt candidate_points(const LatticePolytope& p, const BigInt& n, bool factorized = true);

/// #(nP ∩ Z^N). Products are counted as the product of factor counts.
/// Throws InputError for n < 0 and BudgetExceeded past opts.max_points.
BigInt count_lattice_points(const LatticePolytope& p, const BigInt& n, const CountOptions& opts = {});

/// Same count by a single enumeration over the joint bounding box
/// (products are not factorized).
BigInt count_lattice_points_flat(const LatticePolytope& p, const BigInt& n, const CountOptions& opts = {});

/// Single-threaded scan testing contains(P, q/n) in exact rationals for
/// every bounding-box point. Slow; no budget guard.
BigInt count_lattice_points_reference(const LatticePolytope& p, const BigInt& n);

/// Counts nP for n = 0..d, interpolates, and checks the result against fresh
/// counts at n = d+1 and d+2. Throws NotEhrhartConsistent if the guard
/// counts disagree, the degree is not d, or either of the two leading
/// coefficients is not positive. The budget is checked for n = d+2 before
/// any counting starts.
Polynomial ehrhart_polynomial(const LatticePolytope& p, const CountOptions& opts = {});

/// Counts at n = 0..last (inclusive), as used by ehrhart_polynomial.
std::vector<BigInt> dilate_counts(const LatticePolytope& p, unsigned last, const CountOptions& opts = {});

struct DeltaVector {
    std::vector<BigInt> entries;

    friend bool operator==(const DeltaVector&, const DeltaVector&) = default;
};

/// delta_i = sum_{j=0..i} (-1)^j binomial(d+1, j) p(i-j), i = 0..d.
/// Throws InputError unless deg p == d and p(0) == 1; throws
/// NotLatticeEhrhart if an entry is not an integer.
DeltaVector delta_vector(const Polynomial& p, int d);

}  // namespace ehrhart
