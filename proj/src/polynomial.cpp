#include "ehrhart/polynomial.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <sstream>

namespace ehrhart {

Polynomial::Polynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

Polynomial::Polynomial(std::initializer_list<Rational> coefficients) : coeffs_(coefficients) { trim(); }

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::linear(const Rational& a, const Rational& b) { return Polynomial({b, a}); }

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

Rational Polynomial::leading_coefficient() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

Rational Polynomial::operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> out(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
    return Polynomial(std::move(out));
}

Polynomial operator+(const Polynomial& p, const Polynomial& q) {
    std::vector<Rational> out(std::max(p.coeffs_.size(), q.coeffs_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = p.coefficient(i) + q.coefficient(i);
    return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& p, const Polynomial& q) { return p + (-q); }

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<Rational> out(p.coeffs_.size() + q.coeffs_.size() - 1);
    for (std::size_t i = 0; i < p.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < q.coeffs_.size(); ++j) out[i + j] += p.coeffs_[i] * q.coeffs_[j];
    return Polynomial(std::move(out));
}

Polynomial operator*(const Rational& c, const Polynomial& p) {
    std::vector<Rational> out = p.coeffs_;
    for (auto& x : out) x *= c;
    return Polynomial(std::move(out));
}

std::string Polynomial::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rational& c = coeffs_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        Rational mag = abs(c);
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            os << mag.get_str();
            continue;
        }
        if (mag != 1) os << mag.get_str() << '*';
        os << 'n';
        if (i > 1) os << '^' << i;
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

std::pair<Polynomial, Polynomial> divmod(const Polynomial& p, const Polynomial& divisor) {
    if (divisor.is_zero()) throw InputError("polynomial division by zero");
    std::vector<Rational> rem = p.coefficients();
    const int dd = divisor.degree();
    if (p.degree() < dd) return {Polynomial{}, p};
    std::vector<Rational> quot(static_cast<std::size_t>(p.degree() - dd + 1));
    const Rational& lead = divisor.leading_coefficient();
    for (int k = p.degree(); k >= dd; --k) {
        Rational f = rem[static_cast<std::size_t>(k)] / lead;
        quot[static_cast<std::size_t>(k - dd)] = f;
        if (f == 0) continue;
        for (int i = 0; i <= dd; ++i)
            rem[static_cast<std::size_t>(k - dd + i)] -= f * divisor.coefficients()[static_cast<std::size_t>(i)];
    }
    rem.resize(static_cast<std::size_t>(dd));
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Rational poly_eval(const Polynomial& p, const Rational& x) { return p(x); }

Polynomial poly_mul(const Polynomial& p, const Polynomial& q) { return p * q; }

BigInt binomial(long n, long k) {
    if (n < 0) throw InputError("binomial: negative upper index " + std::to_string(n));
    if (k < 0 || k > n) return 0;
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Polynomial poly_pow_linear(const BigInt& a, const BigInt& b, unsigned e) {
    // coefficient of n^i is binomial(e, i) a^i b^(e-i)
    std::vector<Rational> out(e + 1);
    BigInt apow = 1;
    for (unsigned i = 0; i <= e; ++i) {
        BigInt bpow;
        mpz_pow_ui(bpow.get_mpz_t(), b.get_mpz_t(), e - i);
        out[i] = Rational(binomial(e, i) * apow * bpow);
        apow *= a;
    }
    return Polynomial(std::move(out));
}

Polynomial interpolate(std::span<const Sample> samples) {
    if (samples.empty()) throw InputError("interpolate: no samples");
    const std::size_t k = samples.size();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (samples[i].n == samples[j].n)
                throw InputError("interpolate: duplicate abscissa " + samples[i].n.get_str());

    // In-place divided differences: after pass `level`, diff[i] = f[x_{i-level}, ..., x_i].
    std::vector<Rational> diff(k);
    for (std::size_t i = 0; i < k; ++i) diff[i] = Rational(samples[i].value);
    for (std::size_t level = 1; level < k; ++level)
        for (std::size_t i = k - 1; i >= level; --i)
            diff[i] = (diff[i] - diff[i - 1]) / Rational(samples[i].n - samples[i - level].n);

    // Horner on the Newton form.
    Polynomial result = Polynomial::constant(diff[k - 1]);
    for (std::size_t i = k - 1; i-- > 0;)
        result = result * Polynomial::linear(1, Rational(-samples[i].n)) + Polynomial::constant(diff[i]);
    return result;
}

namespace {

Polynomial strip_zero_roots(const Polynomial& p) {
    const auto& c = p.coefficients();
    std::size_t lo = 0;
    while (lo < c.size() && c[lo] == 0) ++lo;
    return Polynomial(std::vector<Rational>(c.begin() + static_cast<std::ptrdiff_t>(lo), c.end()));
}

std::vector<Polynomial> sturm_sequence(const Polynomial& p) {
    std::vector<Polynomial> seq{p, p.derivative()};
    while (!seq.back().is_zero()) {
        auto rem = divmod(seq[seq.size() - 2], seq.back()).second;
        if (rem.is_zero()) break;
        // Rescale to a monic-magnitude representative; only signs matter.
        const Rational lead = abs(rem.leading_coefficient());
        seq.push_back(-(Rational(1) / lead * rem));
    }
    if (seq.back().is_zero()) seq.pop_back();
    return seq;
}

int sign_variations(const std::vector<Polynomial>& seq, const Rational& x) {
    int changes = 0;
    int prev = 0;
    for (const auto& s : seq) {
        int sg = sgn(s(x));
        if (sg == 0) continue;
        if (prev != 0 && sg != prev) ++changes;
        prev = sg;
    }
    return changes;
}

Rational cauchy_bound(const Polynomial& p) {
    Rational best = 0;
    const Rational lead = p.leading_coefficient();
    for (int i = 0; i < p.degree(); ++i) best = std::max(best, Rational(abs(p.coefficients()[static_cast<std::size_t>(i)] / lead)));
    return 1 + best;
}

struct Isolator {
    Polynomial p;
    std::vector<Polynomial> seq;

    int roots_in(const Rational& lo, const Rational& hi) const { return sign_variations(seq, lo) - sign_variations(seq, hi); }

    // Split point strictly inside (lo, hi) that is not a root of p.
    Rational split(const Rational& lo, const Rational& hi) const {
        for (unsigned long den = 2;; ++den) {
            Rational t = lo + (hi - lo) / den;
            if (p(t) != 0) return t;
        }
    }

    void isolate(const Rational& lo, const Rational& hi, int count, std::vector<RootInterval>& out) const {
        if (count == 0) return;
        if (count == 1) {
            out.push_back({lo, hi});
            return;
        }
        Rational mid = split(lo, hi);
        int left = roots_in(lo, mid);
        isolate(lo, mid, left, out);
        isolate(mid, hi, count - left, out);
    }
};

Isolator make_isolator(const Polynomial& p) {
    if (p.is_zero()) throw InputError("root counting on the zero polynomial");
    Polynomial q = strip_zero_roots(p);
    return Isolator{q, sturm_sequence(q)};
}

}  // namespace

std::size_t count_positive_real_roots(const Polynomial& p) {
    Isolator iso = make_isolator(p);
    if (iso.p.degree() < 1) return 0;
    return static_cast<std::size_t>(iso.roots_in(0, cauchy_bound(iso.p)));
}

std::vector<RootInterval> isolate_positive_real_roots(const Polynomial& p) {
    Isolator iso = make_isolator(p);
    std::vector<RootInterval> out;
    if (iso.p.degree() < 1) return out;
    const Rational bound = cauchy_bound(iso.p);
    iso.isolate(0, bound, iso.roots_in(0, bound), out);
    return out;
}

RootInterval refine_root(const Polynomial& p, RootInterval iv, const Rational& max_width) {
    if (max_width <= 0) throw InputError("refine_root: width must be positive");
    Isolator iso = make_isolator(p);
    if (iso.roots_in(iv.lo, iv.hi) != 1) throw InputError("refine_root: interval does not isolate one root");
    while (iv.hi - iv.lo > max_width) {
        const Rational mid = (iv.lo + iv.hi) / 2;
        if (iso.roots_in(iv.lo, mid) == 1)
            iv.hi = mid;
        else
            iv.lo = mid;
    }
    return iv;
}

nlohmann::ordered_json to_json(const BigInt& z) {
    if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
    return z.get_str();
}

BigInt bigint_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return BigInt(std::to_string(j.get<std::int64_t>()));
    if (j.is_number_unsigned()) return BigInt(std::to_string(j.get<std::uint64_t>()));
    if (j.is_string()) {
        BigInt z;
        if (z.set_str(j.get<std::string>(), 10) != 0) throw InputError("not a decimal integer: " + j.get<std::string>());
        return z;
    }
    throw InputError("expected an integer, got " + j.dump());
}

nlohmann::ordered_json to_json(const Polynomial& p) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : p.coefficients())
        arr.push_back(nlohmann::ordered_json::array({to_json(BigInt(c.get_num())), to_json(BigInt(c.get_den()))}));
    return arr;
}

Polynomial polynomial_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw InputError("polynomial JSON must be an array");
    std::vector<Rational> coeffs;
    for (const auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2) throw InputError("polynomial coefficient must be [num, den]");
        coeffs.push_back(make_rational(bigint_from_json(pair[0]), bigint_from_json(pair[1])));
    }
    return Polynomial(std::move(coeffs));
}

}  // namespace ehrhart
