#include "ehrhart/counting.hpp"

#include "ehrhart/errors.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace ehrhart {

namespace {

using i128 = __int128;

i128 div_floor(i128 a, i128 b) {
    i128 q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

i128 div_ceil(i128 a, i128 b) { return -div_floor(-a, b); }

BigInt div_floor(const BigInt& a, const BigInt& b) { return floor_div(a, b); }
BigInt div_ceil(const BigInt& a, const BigInt& b) { return ceil_div(a, b); }

BigInt to_big(i128 v) {
    const bool neg = v < 0;
    unsigned __int128 mag = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    BigInt hi(static_cast<unsigned long>(mag >> 64));
    BigInt lo(static_cast<unsigned long>(mag & 0xFFFFFFFFFFFFFFFFULL));
    BigInt r = (hi << 64) + lo;
    return neg ? BigInt(-r) : r;
}

i128 to_i128(const BigInt& z) {
    BigInt mag = abs(z);
    BigInt hi = mag >> 64;
    BigInt lo = mag - (hi << 64);
    i128 r = (static_cast<i128>(hi.get_ui()) << 64) | static_cast<i128>(lo.get_ui());
    return z < 0 ? -r : r;
}

BigInt to_big(const BigInt& v) { return v; }

// Rows of  sum_k a[i][k] * q_k + c[i] * n >= 0.
struct ConstraintSystem {
    std::size_t dim = 0;
    std::vector<std::vector<BigInt>> a;
    std::vector<BigInt> c;
    std::vector<Interval> bbox;
};

void append_constraints(ConstraintSystem& sys, const LatticePolytope& p, std::size_t offset) {
    auto row = [&]() -> std::vector<BigInt>& {
        sys.a.emplace_back(sys.dim, BigInt(0));
        sys.c.emplace_back(0);
        return sys.a.back();
    };
    if (const auto* s = p.get_if<Simplex>()) {
        const auto& inv = s->barycentric_inverse();
        const std::size_t d = s->dimension();
        BigInt lcm = 1;
        for (const auto& r : inv)
            for (const auto& x : r) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
        for (std::size_t i = 0; i <= d; ++i) {
            auto& a = row();
            for (std::size_t k = 0; k < d; ++k) a[offset + k] = BigInt(Rational(inv[i][k] * lcm).get_num());
            sys.c.back() = BigInt(Rational(inv[i][d] * lcm).get_num());
        }
    } else if (const auto* b = p.get_if<Box>()) {
        for (std::size_t k = 0; k < b->ambient_dimension(); ++k) {
            row()[offset + k] = 1;
            sys.c.back() = -b->intervals()[k].lo;
            row()[offset + k] = -1;
            sys.c.back() = b->intervals()[k].hi;
        }
    } else if (const auto* h = p.get_if<HRep>()) {
        for (const auto& ineq : h->inequalities()) {
            auto& a = row();
            for (std::size_t k = 0; k < h->dimension(); ++k) a[offset + k] = -ineq.normal[k];
            sys.c.back() = ineq.rhs;
        }
    } else if (const auto* pr = p.get_if<Product>()) {
        for (const auto& f : pr->factors()) {
            append_constraints(sys, f, offset);
            offset += ambient_dimension(f);
        }
    }
}

ConstraintSystem build_system(const LatticePolytope& p) {
    ConstraintSystem sys;
    sys.dim = ambient_dimension(p);
    sys.bbox = bounding_box(p);
    append_constraints(sys, p, 0);
    return sys;
}

template <class Int>
Int max_of(const Int& a, const Int& b) {
    return a < b ? b : a;
}

template <class Int>
Int min_of(const Int& a, const Int& b) {
    return a < b ? a : b;
}

template <class Int, class Convert>
class Scanner {
public:
    Scanner(const ConstraintSystem& sys, const BigInt& n, ScanStrategy strategy, Convert conv)
        : dim_(sys.dim), rows_(sys.a.size()), strategy_(strategy) {
        // Column-major for the per-level update.
        cols_.assign(dim_, std::vector<Int>(rows_));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < dim_; ++k) cols_[k][i] = conv(sys.a[i][k]);
        for (std::size_t i = 0; i < rows_; ++i) base_.push_back(conv(BigInt(sys.c[i] * n)));
        for (const auto& iv : sys.bbox) {
            lo_.push_back(conv(BigInt(iv.lo * n)));
            hi_.push_back(conv(BigInt(iv.hi * n)));
        }
    }

    Int first_lo() const { return lo_[0]; }
    Int first_hi() const { return hi_[0]; }

    Int count_slab(const Int& from, const Int& to) const {
        std::vector<std::vector<Int>> acc(dim_, std::vector<Int>(rows_));
        acc[0] = base_;
        return scan(0, from, to, acc);
    }

private:
    Int scan(std::size_t level, const Int& from, const Int& to, std::vector<std::vector<Int>>& acc) const {
        const auto& col = cols_[level];
        const auto& cur = acc[level];
        if (level + 1 == dim_) {
            if (strategy_ == ScanStrategy::RowIntervals) {
                Int t_lo = from;
                Int t_hi = to;
                for (std::size_t i = 0; i < rows_; ++i) {
                    const Int& w = col[i];
                    if (w == 0) {
                        if (cur[i] < 0) return Int(0);
                    } else if (w > 0) {
                        t_lo = max_of<Int>(t_lo, div_ceil(Int(-cur[i]), w));
                    } else {
                        t_hi = min_of<Int>(t_hi, div_floor(cur[i], Int(-w)));
                    }
                }
                return t_hi < t_lo ? Int(0) : Int(t_hi - t_lo + 1);
            }
            Int hits = 0;
            for (Int t = from; t <= to; t = t + 1) {
                bool inside = true;
                for (std::size_t i = 0; i < rows_ && inside; ++i) inside = cur[i] + col[i] * t >= 0;
                if (inside) hits = hits + 1;
            }
            return hits;
        }
        Int total = 0;
        auto& next = acc[level + 1];
        for (Int t = from; t <= to; t = t + 1) {
            for (std::size_t i = 0; i < rows_; ++i) next[i] = cur[i] + col[i] * t;
            total = total + scan(level + 1, lo_[level + 1], hi_[level + 1], acc);
        }
        return total;
    }

    std::size_t dim_;
    std::size_t rows_;
    ScanStrategy strategy_;
    std::vector<std::vector<Int>> cols_;
    std::vector<Int> base_;
    std::vector<Int> lo_;
    std::vector<Int> hi_;
};

unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

template <class Int, class Convert>
BigInt run_scan(const ConstraintSystem& sys, const BigInt& n, const CountOptions& opts, Convert conv) {
    Scanner<Int, Convert> scanner(sys, n, opts.strategy, conv);
    const Int lo = scanner.first_lo();
    const Int hi = scanner.first_hi();
    const BigInt width = to_big(Int(hi - lo + 1));

    const unsigned threads = resolve_threads(opts.threads);
    std::size_t slabs = opts.slabs != 0 ? opts.slabs : std::size_t{threads} * 4;
    if (width < slabs) slabs = width.get_ui();
    slabs = std::max<std::size_t>(slabs, 1);

    // Slab s covers [lo + s*width/slabs, lo + (s+1)*width/slabs - 1].
    std::vector<std::pair<Int, Int>> ranges;
    for (std::size_t s = 0; s < slabs; ++s) {
        BigInt a = to_big(lo) + width * s / slabs;
        BigInt b = to_big(lo) + width * (s + 1) / slabs - 1;
        ranges.emplace_back(conv(a), conv(b));
    }

    std::vector<BigInt> partial(slabs);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t s = next++; s < slabs; s = next++)
            partial[s] = to_big(scanner.count_slab(ranges[s].first, ranges[s].second));
    };
    const unsigned spawn = static_cast<unsigned>(std::min<std::size_t>(threads, slabs));
    if (spawn <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < spawn; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    BigInt total = 0;
    for (const auto& c : partial) total += c;
    return total;
}

BigInt enumerate(const LatticePolytope& p, const BigInt& n, const CountOptions& opts) {
    const ConstraintSystem sys = build_system(p);

    // __int128 is safe when every partial sum and the box volume stay well inside its range.
    BigInt reach = 0;
    for (const auto& iv : sys.bbox) reach = std::max(reach, BigInt(std::max(abs(iv.lo), abs(iv.hi)) * n));
    BigInt worst = 0;
    for (std::size_t i = 0; i < sys.a.size(); ++i) {
        BigInt bound = abs(sys.c[i]) * n;
        for (const auto& x : sys.a[i]) bound += abs(x) * reach;
        worst = std::max(worst, bound);
    }
    const BigInt limit = BigInt(1) << 120;
    if (worst < limit && candidate_points(p, n, false) < limit)
        return run_scan<i128>(sys, n, opts, [](const BigInt& z) { return to_i128(z); });
    return run_scan<BigInt>(sys, n, opts, [](const BigInt& z) { return z; });
}

BigInt box_volume(const std::vector<Interval>& box, const BigInt& n) {
    BigInt v = 1;
    for (const auto& iv : box) v *= n * (iv.hi - iv.lo) + 1;
    return v;
}

void check_budget(const BigInt& needed, const CountOptions& opts, const BigInt& n) {
    if (opts.max_points && needed > *opts.max_points)
        throw BudgetExceeded("counting the " + n.get_str() + "-th dilate needs " + needed.get_str() +
                             " candidate points, over the budget of " + opts.max_points->get_str());
}

BigInt count_leaf(const LatticePolytope& leaf, const BigInt& n, const CountOptions& opts) {
    if (const auto* b = leaf.get_if<Box>()) return box_volume(b->intervals(), n);
    return enumerate(leaf, n, opts);
}

}  // namespace

BigInt candidate_points(const LatticePolytope& p, const BigInt& n, bool factorized) {
    if (n == 0) return 1;
    if (factorized) {
        if (const auto* pr = p.get_if<Product>()) {
            BigInt total = 0;
            for (const auto& f : pr->factors()) total += box_volume(bounding_box(f), n);
            return total;
        }
    }
    return box_volume(bounding_box(p), n);
}

BigInt count_lattice_points(const LatticePolytope& p, const BigInt& n, const CountOptions& opts) {
    if (n < 0) throw InputError("dilation factor must be non-negative, got " + n.get_str());
    if (n == 0) return 1;
    check_budget(candidate_points(p, n, true), opts, n);
    BigInt total = 1;
    for (const auto* leaf : leaf_factors(p)) {
        total *= count_leaf(*leaf, n, opts);
        if (total == 0) break;
    }
    return total;
}

BigInt count_lattice_points_flat(const LatticePolytope& p, const BigInt& n, const CountOptions& opts) {
    if (n < 0) throw InputError("dilation factor must be non-negative, got " + n.get_str());
    if (n == 0) return 1;
    check_budget(candidate_points(p, n, false), opts, n);
    return enumerate(p, n, opts);
}

BigInt count_lattice_points_reference(const LatticePolytope& p, const BigInt& n) {
    if (n < 0) throw InputError("dilation factor must be non-negative, got " + n.get_str());
    if (n == 0) return 1;
    const auto box = bounding_box(p);
    const std::size_t dim = box.size();
    std::vector<BigInt> q(dim);
    for (std::size_t k = 0; k < dim; ++k) q[k] = box[k].lo * n;
    RationalPoint x(dim);
    BigInt hits = 0;
    while (true) {
        for (std::size_t k = 0; k < dim; ++k) x[k] = Rational(q[k]) / Rational(n);
        if (contains(p, x)) ++hits;
        std::size_t k = dim;
        while (k-- > 0) {
            if (q[k] < box[k].hi * n) {
                ++q[k];
                break;
            }
            q[k] = box[k].lo * n;
        }
        if (k == static_cast<std::size_t>(-1)) break;
    }
    return hits;
}

std::vector<BigInt> dilate_counts(const LatticePolytope& p, unsigned last, const CountOptions& opts) {
    check_budget(candidate_points(p, BigInt(last), true), opts, BigInt(last));
    std::vector<BigInt> counts;
    for (unsigned n = 0; n <= last; ++n) counts.push_back(count_lattice_points(p, BigInt(n), opts));
    return counts;
}

Polynomial ehrhart_polynomial(const LatticePolytope& p, const CountOptions& opts) {
    const unsigned d = static_cast<unsigned>(dimension(p));
    const auto counts = dilate_counts(p, d + 2, opts);

    std::vector<Sample> samples;
    for (unsigned n = 0; n <= d; ++n) samples.push_back({BigInt(n), counts[n]});
    Polynomial poly = interpolate(samples);

    for (unsigned n = d + 1; n <= d + 2; ++n)
        if (poly(Rational(n)) != Rational(counts[n]))
            throw NotEhrhartConsistent("not Ehrhart-consistent: interpolant predicts " + poly(Rational(n)).get_str() +
                                       " points at n = " + std::to_string(n) + ", counted " + counts[n].get_str());
    if (poly.degree() != static_cast<int>(d))
        throw NotEhrhartConsistent("not Ehrhart-consistent: degree " + std::to_string(poly.degree()) + " for dimension " +
                                   std::to_string(d));
    if (poly.leading_coefficient() <= 0 || (d >= 1 && poly.coefficient(d - 1) <= 0))
        throw NotEhrhartConsistent("not Ehrhart-consistent: leading coefficients of " + poly.to_string() +
                                   " are not both positive");
    return poly;
}

DeltaVector delta_vector(const Polynomial& p, int d) {
    if (d < 0 || p.degree() != d) throw InputError("delta_vector: polynomial degree does not match d = " + std::to_string(d));
    if (p(0) != 1) throw InputError("delta_vector: constant term must be 1, got " + p(0).get_str());
    DeltaVector out;
    for (int i = 0; i <= d; ++i) {
        Rational acc = 0;
        for (int j = 0; j <= i; ++j) {
            Rational term = Rational(binomial(d + 1, j)) * p(Rational(i - j));
            acc += (j % 2 == 0) ? term : Rational(-term);
        }
        if (!is_integer(acc))
            throw NotLatticeEhrhart("not a lattice-polytope Ehrhart polynomial: delta_" + std::to_string(i) + " = " +
                                    acc.get_str());
        out.entries.push_back(acc.get_num());
    }
    return out;
}

}  // namespace ehrhart
