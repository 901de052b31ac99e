#pragma once

#include "ehrhart/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace ehrhart {

/// Dense univariate polynomial in `n` over the rationals.
///
/// coefficients()[i] is the coefficient of n^i. Trailing zeros are never
/// stored, so the zero polynomial has an empty coefficient list and
/// degree() == -1.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coefficients);
    Polynomial(std::initializer_list<Rational> coefficients);

    static Polynomial constant(const Rational& c);
    /// a*n + b
    static Polynomial linear(const Rational& a, const Rational& b);

    const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }

    /// Coefficient of n^i; zero above the degree.
    Rational coefficient(std::size_t i) const;
    Rational leading_coefficient() const;

    Rational operator()(const Rational& x) const;

    Polynomial derivative() const;

    friend Polynomial operator+(const Polynomial& p, const Polynomial& q);
    friend Polynomial operator-(const Polynomial& p, const Polynomial& q);
    friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
    friend Polynomial operator*(const Rational& c, const Polynomial& p);
    Polynomial operator-() const;

    friend bool operator==(const Polynomial& p, const Polynomial& q) { return p.coeffs_ == q.coeffs_; }

    /// "13/6*n^3 + n^2 - 1/6*n + 1"; the zero polynomial prints as "0".
    std::string to_string() const;

private:
    void trim();

    std::vector<Rational> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

/// Quotient and remainder of Euclidean division; divisor must be nonzero.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& p, const Polynomial& divisor);

Rational poly_eval(const Polynomial& p, const Rational& x);
Polynomial poly_mul(const Polynomial& p, const Polynomial& q);

/// (a*n + b)^e, expanded with the binomial theorem.
Polynomial poly_pow_linear(const BigInt& a, const BigInt& b, unsigned e);

/// Binomial coefficient with the vanishing convention: 0 when k < 0 or k > n.
BigInt binomial(long n, long k);

struct Sample {
    BigInt n;
    BigInt value;
};

/// Unique polynomial of degree < samples.size() through every sample
/// (Newton divided differences). Throws InputError on a repeated abscissa
/// or an empty sample list.
Polynomial interpolate(std::span<const Sample> samples);

/// Half-open isolating interval (lo, hi] holding exactly one root.
struct RootInterval {
    Rational lo;
    Rational hi;
};

/// Number of distinct real roots in (0, +inf), via a Sturm sequence on
/// (0, B] with B the Cauchy bound. Throws InputError for the zero polynomial.
std::size_t count_positive_real_roots(const Polynomial& p);

/// Disjoint intervals, one per distinct positive root, in increasing order.
std::vector<RootInterval> isolate_positive_real_roots(const Polynomial& p);

/// Bisects an isolating interval of p until hi - lo <= max_width.
/// The result still holds exactly one root in (lo, hi].
RootInterval refine_root(const Polynomial& p, RootInterval iv, const Rational& max_width);

/// JSON form: [[num, den], ...] ascending by degree. Integers that fit in
/// int64 are emitted as JSON numbers, larger ones as decimal strings.
nlohmann::ordered_json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const BigInt& z);
BigInt bigint_from_json(const nlohmann::json& j);

}  // namespace ehrhart
