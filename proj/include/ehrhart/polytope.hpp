#pragma once

#include "ehrhart/rational.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <variant>
#include <vector>

namespace ehrhart {

using LatticePoint = std::vector<BigInt>;
using RationalPoint = std::vector<Rational>;
using RationalMatrix = std::vector<std::vector<Rational>>;

struct Interval {
    BigInt lo;
    BigInt hi;

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Full-dimensional lattice simplex: d+1 affinely independent vertices in Z^d.
class Simplex {
public:
    /// Throws InvalidPolytope on a wrong vertex count, ragged coordinates or
    /// affinely dependent vertices.
    explicit Simplex(std::vector<LatticePoint> vertices);

    const std::vector<LatticePoint>& vertices() const noexcept { return vertices_; }
    std::size_t dimension() const noexcept { return vertices_.size() - 1; }

    /// Inverse of the (d+1)x(d+1) matrix whose i-th column is (v_i, 1).
    /// Multiplying it by (x, 1) gives barycentric coordinates of x.
    const RationalMatrix& barycentric_inverse() const noexcept { return *inverse_; }

    RationalPoint barycentric(std::span<const Rational> x) const;

    friend bool operator==(const Simplex& a, const Simplex& b) { return a.vertices_ == b.vertices_; }

private:
    std::vector<LatticePoint> vertices_;
    // Computed once at construction; shared between copies, never mutated.
    std::shared_ptr<const RationalMatrix> inverse_;
};

/// Axis-parallel lattice box. Degenerate intervals (lo == hi) are rejected
/// unless `allow_degenerate` is set; they then drop out of dimension().
class Box {
public:
    explicit Box(std::vector<Interval> intervals, bool allow_degenerate = false);

    const std::vector<Interval>& intervals() const noexcept { return intervals_; }
    bool allow_degenerate() const noexcept { return allow_degenerate_; }
    std::size_t ambient_dimension() const noexcept { return intervals_.size(); }
    std::size_t dimension() const noexcept;

    friend bool operator==(const Box&, const Box&) = default;

private:
    std::vector<Interval> intervals_;
    bool allow_degenerate_ = false;
};

/// normal . x <= rhs
struct Inequality {
    std::vector<BigInt> normal;
    BigInt rhs;

    friend bool operator==(const Inequality&, const Inequality&) = default;
};

/// Polytope given by inequalities plus a caller-supplied bounding box that
/// must contain it. The box is trusted as a search region; a box that is
/// too small shows up as an Ehrhart-consistency failure when counting.
class HRep {
public:
    HRep(std::size_t dim, std::vector<Inequality> inequalities, std::vector<Interval> bbox);

    std::size_t dimension() const noexcept { return dim_; }
    const std::vector<Inequality>& inequalities() const noexcept { return inequalities_; }
    const std::vector<Interval>& bbox() const noexcept { return bbox_; }

    friend bool operator==(const HRep&, const HRep&) = default;

private:
    std::size_t dim_;
    std::vector<Inequality> inequalities_;
    std::vector<Interval> bbox_;
};

class LatticePolytope;

/// Cartesian product; ambient coordinates are the factors' concatenated.
/// Never holds a nested Product: nested factors are flattened on construction.
class Product {
public:
    explicit Product(std::vector<LatticePolytope> factors);

    const std::vector<LatticePolytope>& factors() const noexcept { return factors_; }

    friend bool operator==(const Product& a, const Product& b);

private:
    std::vector<LatticePolytope> factors_;
};

class LatticePolytope {
public:
    using Variant = std::variant<Simplex, Box, Product, HRep>;

    LatticePolytope(Simplex s) : v_(std::move(s)) {}
    LatticePolytope(Box b) : v_(std::move(b)) {}
    LatticePolytope(Product p) : v_(std::move(p)) {}
    LatticePolytope(HRep h) : v_(std::move(h)) {}

    const Variant& variant() const noexcept { return v_; }

    template <class T>
    const T* get_if() const noexcept {
        return std::get_if<T>(&v_);
    }

    friend bool operator==(const LatticePolytope& a, const LatticePolytope& b) { return a.v_ == b.v_; }

private:
    Variant v_;
};

std::size_t dimension(const LatticePolytope& p);
std::size_t ambient_dimension(const LatticePolytope& p);

/// Closed-set membership of a rational point. Throws InputError when the
/// point's length differs from the ambient dimension.
bool contains(const LatticePolytope& p, std::span<const Rational> point);

/// Smallest integer box containing P (for HRep, the declared bbox).
std::vector<Interval> bounding_box(const LatticePolytope& p);

LatticePolytope product(const LatticePolytope& p, const LatticePolytope& q);

/// P x [0, k]; throws InputError for k <= 0.
LatticePolytope prism(const LatticePolytope& p, const BigInt& k);

/// Non-product building blocks of P, in coordinate order.
std::vector<const LatticePolytope*> leaf_factors(const LatticePolytope& p);

}  // namespace ehrhart
