#pragma once

#include <array>
#include <memory>

#include "segconn/geometry.hpp"

namespace segconn {

/// Nested square-root expression of one variable:
///   level 0: slope * x + intercept
///   level h: a1 g(x) + a2 + a3 sqrt(sign x^2 + a4 g(x)^2 + a5 g(x) + a6)
/// with g of level h - 1. Copies share the inner chain.
class SqrtFunc {
public:
    SqrtFunc() = default;

    static SqrtFunc linear(double slope, double intercept);
    static SqrtFunc constant(double value) { return linear(0.0, value); }
    static SqrtFunc node(const std::array<double, 6>& a, int sign, const SqrtFunc& inner);

    /// Throws std::domain_error when a radicand is below -1e-12 (relative to
    /// the magnitude of its terms); slightly negative radicands count as 0.
    double eval(double x) const;
    /// Like eval, but negative radicands are clamped to 0 instead of throwing.
    double eval_clamped(double x) const;
    /// Whether every radicand is non-negative (within tolerance) at x.
    bool defined_at(double x) const;

    int level() const;
    bool is_linear() const { return !node_; }
    bool is_constant() const { return !node_ && slope_ == 0.0; }

    double slope() const { return slope_; }
    double intercept() const { return intercept_; }
    const std::array<double, 6>& coefficients() const;
    int sign() const;
    const SqrtFunc& inner() const;

private:
    struct Node;

    template <class OnNegative>
    double evaluate(double x, OnNegative&& on_negative) const;

    double slope_ = 0.0;
    double intercept_ = 0.0;
    std::shared_ptr<const Node> node_;
};

/// The continuous solution t(x) of |q + t e - g(x) f| = x on branch -1 (the
/// smaller root) or +1 (the larger root). e and f must be unit vectors.
SqrtFunc circle_track(Point q, Point e, Point f, const SqrtFunc& g, int branch);

}  // namespace segconn
