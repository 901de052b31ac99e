#include "ehrhart/polytope.hpp"

#include "ehrhart/errors.hpp"

#include <algorithm>
#include <string>

namespace ehrhart {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Gauss-Jordan inverse; returns an empty matrix when singular.
RationalMatrix invert(RationalMatrix a) {
    const std::size_t n = a.size();
    RationalMatrix inv(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        if (pivot == n) return {};
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        const Rational scale = a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] /= scale;
            inv[col][j] /= scale;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            const Rational f = a[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

void check_intervals(const std::vector<Interval>& intervals, bool allow_degenerate, const char* what) {
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        const auto& iv = intervals[i];
        if (iv.lo > iv.hi)
            throw InvalidPolytope(std::string(what) + ": empty interval [" + iv.lo.get_str() + "," + iv.hi.get_str() +
                                  "] at index " + std::to_string(i));
        if (iv.lo == iv.hi && !allow_degenerate)
            throw InvalidPolytope(std::string(what) + ": degenerate interval at index " + std::to_string(i) +
                                  " (set allow_degenerate to permit)");
    }
}

}  // namespace

Simplex::Simplex(std::vector<LatticePoint> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 2) throw InvalidPolytope("simplex needs at least 2 vertices");
    const std::size_t d = vertices_.size() - 1;
    for (const auto& v : vertices_)
        if (v.size() != d)
            throw InvalidPolytope("simplex: affinely dependent / wrong vertex count: " + std::to_string(vertices_.size()) +
                                  " vertices need ambient dimension " + std::to_string(d) + ", got a vertex of length " +
                                  std::to_string(v.size()));
    RationalMatrix m(d + 1, std::vector<Rational>(d + 1));
    for (std::size_t col = 0; col <= d; ++col) {
        for (std::size_t row = 0; row < d; ++row) m[row][col] = vertices_[col][row];
        m[d][col] = 1;
    }
    auto inv = invert(std::move(m));
    if (inv.empty()) throw InvalidPolytope("simplex: affinely dependent vertices");
    inverse_ = std::make_shared<const RationalMatrix>(std::move(inv));
}

RationalPoint Simplex::barycentric(std::span<const Rational> x) const {
    const std::size_t d = dimension();
    if (x.size() != d)
        throw InputError("point of length " + std::to_string(x.size()) + " tested against dimension " + std::to_string(d));
    const auto& inv = *inverse_;
    RationalPoint lambda(d + 1);
    for (std::size_t i = 0; i <= d; ++i) {
        Rational acc = inv[i][d];
        for (std::size_t k = 0; k < d; ++k) acc += inv[i][k] * x[k];
        lambda[i] = acc;
    }
    return lambda;
}

Box::Box(std::vector<Interval> intervals, bool allow_degenerate)
    : intervals_(std::move(intervals)), allow_degenerate_(allow_degenerate) {
    if (intervals_.empty()) throw InvalidPolytope("box needs at least one interval");
    check_intervals(intervals_, allow_degenerate_, "box");
}

std::size_t Box::dimension() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(intervals_.begin(), intervals_.end(), [](const Interval& iv) { return iv.lo < iv.hi; }));
}

HRep::HRep(std::size_t dim, std::vector<Inequality> inequalities, std::vector<Interval> bbox)
    : dim_(dim), inequalities_(std::move(inequalities)), bbox_(std::move(bbox)) {
    if (dim_ == 0) throw InvalidPolytope("hrep: dimension must be positive");
    if (bbox_.size() != dim_)
        throw InvalidPolytope("hrep: bbox has " + std::to_string(bbox_.size()) + " intervals, expected " + std::to_string(dim_));
    check_intervals(bbox_, true, "hrep bbox");
    for (std::size_t i = 0; i < inequalities_.size(); ++i)
        if (inequalities_[i].normal.size() != dim_)
            throw InvalidPolytope("hrep: inequality " + std::to_string(i) + " has normal of length " +
                                  std::to_string(inequalities_[i].normal.size()));
}

Product::Product(std::vector<LatticePolytope> factors) {
    if (factors.empty()) throw InvalidPolytope("product needs at least one factor");
    for (auto& f : factors) {
        if (const auto* inner = f.get_if<Product>())
            factors_.insert(factors_.end(), inner->factors().begin(), inner->factors().end());
        else
            factors_.push_back(std::move(f));
    }
}

bool operator==(const Product& a, const Product& b) { return a.factors_ == b.factors_; }

std::size_t dimension(const LatticePolytope& p) {
    return std::visit(overloaded{
                          [](const Simplex& s) { return s.dimension(); },
                          [](const Box& b) { return b.dimension(); },
                          [](const HRep& h) { return h.dimension(); },
                          [](const Product& pr) {
                              std::size_t d = 0;
                              for (const auto& f : pr.factors()) d += dimension(f);
                              return d;
                          },
                      },
                      p.variant());
}

std::size_t ambient_dimension(const LatticePolytope& p) {
    return std::visit(overloaded{
                          [](const Simplex& s) { return s.dimension(); },
                          [](const Box& b) { return b.ambient_dimension(); },
                          [](const HRep& h) { return h.dimension(); },
                          [](const Product& pr) {
                              std::size_t d = 0;
                              for (const auto& f : pr.factors()) d += ambient_dimension(f);
                              return d;
                          },
                      },
                      p.variant());
}

bool contains(const LatticePolytope& p, std::span<const Rational> point) {
    const std::size_t n = ambient_dimension(p);
    if (point.size() != n)
        throw InputError("point of length " + std::to_string(point.size()) + " tested against ambient dimension " +
                         std::to_string(n));
    return std::visit(overloaded{
                          [&](const Simplex& s) {
                              auto lambda = s.barycentric(point);
                              return std::all_of(lambda.begin(), lambda.end(), [](const Rational& l) { return l >= 0; });
                          },
                          [&](const Box& b) {
                              for (std::size_t i = 0; i < n; ++i) {
                                  const auto& iv = b.intervals()[i];
                                  if (point[i] < iv.lo || point[i] > iv.hi) return false;
                              }
                              return true;
                          },
                          [&](const HRep& h) {
                              for (const auto& ineq : h.inequalities()) {
                                  Rational lhs = 0;
                                  for (std::size_t i = 0; i < n; ++i) lhs += ineq.normal[i] * point[i];
                                  if (lhs > ineq.rhs) return false;
                              }
                              return true;
                          },
                          [&](const Product& pr) {
                              std::size_t offset = 0;
                              for (const auto& f : pr.factors()) {
                                  const std::size_t k = ambient_dimension(f);
                                  if (!contains(f, point.subspan(offset, k))) return false;
                                  offset += k;
                              }
                              return true;
                          },
                      },
                      p.variant());
}

std::vector<Interval> bounding_box(const LatticePolytope& p) {
    return std::visit(overloaded{
                          [](const Simplex& s) {
                              std::vector<Interval> box;
                              for (std::size_t i = 0; i < s.dimension(); ++i) {
                                  Interval iv{s.vertices()[0][i], s.vertices()[0][i]};
                                  for (const auto& v : s.vertices()) {
                                      if (v[i] < iv.lo) iv.lo = v[i];
                                      if (v[i] > iv.hi) iv.hi = v[i];
                                  }
                                  box.push_back(iv);
                              }
                              return box;
                          },
                          [](const Box& b) { return b.intervals(); },
                          [](const HRep& h) { return h.bbox(); },
                          [](const Product& pr) {
                              std::vector<Interval> box;
                              for (const auto& f : pr.factors()) {
                                  auto fb = bounding_box(f);
                                  box.insert(box.end(), fb.begin(), fb.end());
                              }
                              return box;
                          },
                      },
                      p.variant());
}

LatticePolytope product(const LatticePolytope& p, const LatticePolytope& q) { return Product({p, q}); }

LatticePolytope prism(const LatticePolytope& p, const BigInt& k) {
    if (k <= 0) throw InputError("prism height must be positive, got " + k.get_str());
    return product(p, Box({Interval{0, k}}));
}

std::vector<const LatticePolytope*> leaf_factors(const LatticePolytope& p) {
    if (const auto* pr = p.get_if<Product>()) {
        std::vector<const LatticePolytope*> out;
        for (const auto& f : pr->factors()) out.push_back(&f);
        return out;
    }
    return {&p};
}

}  // namespace ehrhart
