#pragma once

#include "ehrhart/polynomial.hpp"
#include "ehrhart/polytope.hpp"

#include <vector>

namespace ehrhart {

/// Reeve tetrahedron Q_m with vertices (0,0,0), (1,0,0), (0,1,0), (1,1,m); m >= 1.
LatticePolytope reeve(const BigInt& m);

/// m/6 n^3 + n^2 + (12-m)/6 n + 1, the Ehrhart polynomial of reeve(m).
Polynomial reeve_ehrhart(const BigInt& m);

/// Q_m x [0, d-3]^(d-3): the Reeve tetrahedron prismed d-3 times with height
/// d-3. Dimension d; requires d >= 4 and m >= 1.
LatticePolytope negative_coefficient_polytope(int d, const BigInt& m);

/// ((d-3)n + 1)^(d-3) * reeve_ehrhart(m), expanded.
Polynomial closed_form_ehrhart(int d, const BigInt& m);

/// A_i = (d-3)^i * binomial(d-3, i), for d >= 4 and 0 <= i <= d-2.
/// A_{d-2} is always 0 through the vanishing binomial.
BigInt a_value(int d, int i);

/// g(d, j) = (d-3)^2 binomial(d-3, j-1) - binomial(d-3, j-3), for d >= 5, 3 <= j <= d-2.
BigInt g_value(int d, int j);

enum class Sign { Negative, Zero, Positive };

const char* sign_label(Sign s);  // "NEG", "ZERO", "POS"

struct GEntry {
    int j;
    BigInt value;
};

/// Coefficients c_0..c_d of the family's Ehrhart polynomial, computed both
/// from the per-degree formulas and from the expanded product.
struct CoefficientReport {
    int d = 0;
    BigInt m;
    std::vector<Rational> coefficients;  // c_0 .. c_d
    std::vector<BigInt> a_table;         // A_0 .. A_{d-2}
    std::vector<GEntry> g_table;         // g(d, j), 3 <= j <= d-2
    std::vector<Sign> signs;             // per coefficient
    bool all_middle_negative = false;    // c_j < 0 for 1 <= j <= d-2
};

/// Throws InputError for d < 4 or m < 1, and InvariantViolation if the two
/// computation paths ever disagree.
CoefficientReport coefficient_report(int d, const BigInt& m);

/// c_j = slope * m + intercept, for 1 <= j <= d-2.
struct AffineCoefficient {
    int j;
    Rational slope;
    Rational intercept;
    /// Least integer m >= 1 with c_j < 0.
    BigInt threshold;
};

/// Per-coefficient affine forms in m, with their negativity thresholds.
std::vector<AffineCoefficient> middle_coefficient_thresholds(int d);

/// Least m >= 1 making every c_j, 1 <= j <= d-2, negative. Checked against
/// coefficient_report at m and m-1.
BigInt min_negative_m(int d);

/// Least m >= 1 for which reeve_ehrhart(m) has a positive real root.
BigInt min_positive_root_m();

}  // namespace ehrhart
