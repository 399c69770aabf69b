#include "segconn/sqrt_func.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace segconn {

struct SqrtFunc::Node {
    std::array<double, 6> a{};
    int sign = 1;
    SqrtFunc inner;
    int level = 1;
};

SqrtFunc SqrtFunc::linear(double slope, double intercept) {
    SqrtFunc f;
    f.slope_ = slope;
    f.intercept_ = intercept;
    return f;
}

SqrtFunc SqrtFunc::node(const std::array<double, 6>& a, int sign, const SqrtFunc& inner) {
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("sign must be +1 or -1");
    }
    SqrtFunc f;
    f.node_ = std::make_shared<const Node>(Node{a, sign, inner, inner.level() + 1});
    return f;
}

int SqrtFunc::level() const { return node_ ? node_->level : 0; }

const std::array<double, 6>& SqrtFunc::coefficients() const {
    static const std::array<double, 6> zero{};
    return node_ ? node_->a : zero;
}

int SqrtFunc::sign() const { return node_ ? node_->sign : 1; }

const SqrtFunc& SqrtFunc::inner() const {
    if (!node_) {
        throw std::logic_error("linear function has no inner function");
    }
    return node_->inner;
}

template <class OnNegative>
double SqrtFunc::evaluate(double x, OnNegative&& on_negative) const {
    if (!node_) {
        return slope_ * x + intercept_;
    }
    const auto& a = node_->a;
    const double g = node_->inner.evaluate(x, on_negative);
    const double t0 = node_->sign * x * x;
    const double t1 = a[3] * g * g;
    const double t2 = a[4] * g;
    double rad = t0 + t1 + t2 + a[5];
    if (rad < 0.0) {
        const double scale = std::max({1.0, std::abs(t0), std::abs(t1), std::abs(t2), std::abs(a[5])});
        if (rad < -1e-12 * scale) {
            on_negative(rad);
        }
        rad = 0.0;
    }
    return a[0] * g + a[1] + a[2] * std::sqrt(rad);
}

double SqrtFunc::eval(double x) const {
    return evaluate(x, [](double) { throw std::domain_error("square root of a negative value"); });
}

double SqrtFunc::eval_clamped(double x) const {
    return evaluate(x, [](double) {});
}

bool SqrtFunc::defined_at(double x) const {
    bool ok = true;
    evaluate(x, [&](double) { ok = false; });
    return ok;
}

SqrtFunc circle_track(Point q, Point e, Point f, const SqrtFunc& g, int branch) {
    if (branch != 1 && branch != -1) {
        throw std::invalid_argument("branch must be +1 or -1");
    }
    const double ef = dot(e, f);
    const double qe = dot(q, e);
    const double qf = dot(q, f);
    return SqrtFunc::node({ef, -qe, static_cast<double>(branch), ef * ef - 1.0, 2.0 * qf - 2.0 * qe * ef,
                           qe * qe - norm2(q)},
                          1, g);
}

}  // namespace segconn
