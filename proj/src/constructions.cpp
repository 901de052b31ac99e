#include "ehrhart/constructions.hpp"

#include "ehrhart/errors.hpp"

#include <algorithm>
#include <string>

namespace ehrhart {

namespace {

void require_family(int d, const BigInt& m) {
    if (d < 4) throw InputError("dimension must be at least 4, got " + std::to_string(d));
    if (m < 1) throw InputError("Reeve parameter must be positive, got " + m.get_str());
}

BigInt power(long base, unsigned long e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), e);
    return r;
}

Sign sign_of(const Rational& x) {
    int s = sgn(x);
    return s < 0 ? Sign::Negative : (s == 0 ? Sign::Zero : Sign::Positive);
}

}  // namespace

LatticePolytope reeve(const BigInt& m) {
    if (m < 1) throw InputError("Reeve parameter must be positive, got " + m.get_str());
    return Simplex({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, m}});
}

Polynomial reeve_ehrhart(const BigInt& m) {
    return Polynomial({Rational(1), Rational(12 - m) / 6, Rational(1), Rational(m) / 6});
}

LatticePolytope negative_coefficient_polytope(int d, const BigInt& m) {
    require_family(d, m);
    LatticePolytope p = reeve(m);
    for (int i = 0; i < d - 3; ++i) p = prism(p, BigInt(d - 3));
    return p;
}

Polynomial closed_form_ehrhart(int d, const BigInt& m) {
    require_family(d, m);
    return poly_pow_linear(BigInt(d - 3), BigInt(1), static_cast<unsigned>(d - 3)) * reeve_ehrhart(m);
}

BigInt a_value(int d, int i) {
    if (d < 4 || i < 0 || i > d - 2)
        throw InputError("A_i needs d >= 4 and 0 <= i <= d-2, got d = " + std::to_string(d) + ", i = " + std::to_string(i));
    return power(d - 3, static_cast<unsigned long>(i)) * binomial(d - 3, i);
}

BigInt g_value(int d, int j) {
    if (d < 5 || j < 3 || j > d - 2)
        throw InputError("g(d, j) needs d >= 5 and 3 <= j <= d-2, got d = " + std::to_string(d) + ", j = " +
                         std::to_string(j));
    return power(d - 3, 2) * binomial(d - 3, j - 1) - binomial(d - 3, j - 3);
}

const char* sign_label(Sign s) {
    switch (s) {
        case Sign::Negative: return "NEG";
        case Sign::Zero: return "ZERO";
        case Sign::Positive: return "POS";
    }
    return "?";
}

CoefficientReport coefficient_report(int d, const BigInt& m) {
    require_family(d, m);
    CoefficientReport rep;
    rep.d = d;
    rep.m = m;
    for (int i = 0; i <= d - 2; ++i) rep.a_table.push_back(a_value(d, i));
    for (int j = 3; j <= d - 2; ++j) rep.g_table.push_back({j, g_value(d, j)});

    const Polynomial expanded = closed_form_ehrhart(d, m);
    for (int i = 0; i <= d; ++i) rep.coefficients.push_back(expanded.coefficient(static_cast<std::size_t>(i)));

    auto mismatch = [&](const std::string& what, int j, const Rational& formula) {
        throw InvariantViolation(what + " disagrees with the expansion at d = " + std::to_string(d) + ", m = " +
                                 m.get_str() + ", j = " + std::to_string(j) + ": " + formula.get_str() + " vs " +
                                 rep.coefficients[static_cast<std::size_t>(j)].get_str());
    };

    const auto& A = rep.a_table;
    const Rational linear = Rational(12 - m) / 6;  // n-coefficient of reeve_ehrhart
    const Rational cubic = Rational(m) / 6;

    Rational c1 = linear + Rational(A[1]);
    if (c1 != rep.coefficients[1]) mismatch("c_1 formula", 1, c1);
    Rational c2 = 1 + linear * A[1] + Rational(A[2]);
    if (c2 != rep.coefficients[2]) mismatch("c_2 formula", 2, c2);

    // At j = d-2 the formula reads A_{d-2}, which is in range and equals 0.
    for (int j = 3; j <= d - 2; ++j) {
        const auto u = static_cast<std::size_t>(j);
        Rational cj = cubic * A[u - 3] + Rational(A[u - 2]) + linear * A[u - 1] + Rational(A[u]);
        if (cj != rep.coefficients[u]) mismatch("c_j formula", j, cj);
        Rational rearranged = -Rational(power(d - 3, static_cast<unsigned long>(j - 3)) * g_value(d, j)) / 6 * m +
                              Rational(A[u - 2] + 2 * A[u - 1] + A[u]);
        if (rearranged != rep.coefficients[u]) mismatch("rearranged c_j", j, rearranged);
    }

    if (rep.coefficients[0] != 1) mismatch("constant term 1", 0, Rational(1));
    const Rational top = Rational(m * power(d - 3, static_cast<unsigned long>(d - 3))) / 6;
    if (rep.coefficients[static_cast<std::size_t>(d)] != top) mismatch("leading coefficient m(d-3)^(d-3)/6", d, top);
    if (rep.coefficients[static_cast<std::size_t>(d - 1)] <= 0)
        throw InvariantViolation("coefficient of n^(d-1) is not positive at d = " + std::to_string(d) + ", m = " + m.get_str());

    for (const auto& c : rep.coefficients) rep.signs.push_back(sign_of(c));
    rep.all_middle_negative = std::all_of(rep.coefficients.begin() + 1, rep.coefficients.end() - 2,
                                          [](const Rational& c) { return c < 0; });
    return rep;
}

std::vector<AffineCoefficient> middle_coefficient_thresholds(int d) {
    if (d < 4) throw InputError("dimension must be at least 4, got " + std::to_string(d));
    std::vector<BigInt> A;
    for (int i = 0; i <= d - 2; ++i) A.push_back(a_value(d, i));

    std::vector<AffineCoefficient> out;
    out.push_back({1, Rational(-1, 6), Rational(2 + A[1]), 0});
    out.push_back({2, -Rational(A[1]) / 6, Rational(1 + 2 * A[1] + A[2]), 0});
    for (int j = 3; j <= d - 2; ++j) {
        const auto u = static_cast<std::size_t>(j);
        out.push_back({j, -Rational(power(d - 3, static_cast<unsigned long>(j - 3)) * g_value(d, j)) / 6,
                       Rational(A[u - 2] + 2 * A[u - 1] + A[u]), 0});
    }
    for (auto& c : out) {
        if (c.slope >= 0)
            throw InvariantViolation("coefficient of n^" + std::to_string(c.j) + " is not decreasing in m at d = " +
                                     std::to_string(d));
        // slope*m + intercept < 0  <=>  m > intercept / -slope
        Rational cut = c.intercept / -c.slope;
        BigInt least = floor_div(cut.get_num(), cut.get_den()) + 1;
        c.threshold = std::max(least, BigInt(1));
    }
    return out;
}

BigInt min_negative_m(int d) {
    BigInt best = 1;
    for (const auto& c : middle_coefficient_thresholds(d)) best = std::max(best, c.threshold);

    if (!coefficient_report(d, best).all_middle_negative)
        throw InvariantViolation("threshold " + best.get_str() + " does not make every middle coefficient negative");
    if (best > 1 && coefficient_report(d, best - 1).all_middle_negative)
        throw InvariantViolation("threshold " + best.get_str() + " is not minimal");
    return best;
}

BigInt min_positive_root_m() {
    for (BigInt m = 1; m <= 1'000'000; ++m)
        if (count_positive_real_roots(reeve_ehrhart(m)) >= 1) return m;
    throw InvariantViolation("no positive real root found for m <= 10^6");
}

}  // namespace ehrhart
