#pragma once

#include <vector>

#include "lborel/errors.hpp"
#include "lborel/rational.hpp"

namespace lborel {

// Truncated formal power series over Q. Operations never read or write
// past max_order; the truncation order is part of the value.
class PowerSeries {
public:
    PowerSeries() : coeff_(1, Rational(0)) {}
    explicit PowerSeries(std::vector<Rational> coeff) : coeff_(std::move(coeff)) {
        if (coeff_.empty())
            coeff_.push_back(Rational(0));
    }
    static PowerSeries zero(int max_order) {
        return PowerSeries(std::vector<Rational>(max_order + 1, Rational(0)));
    }
    static PowerSeries one(int max_order) {
        PowerSeries s = zero(max_order);
        s.coeff_[0] = Rational(1);
        return s;
    }

    int max_order() const { return static_cast<int>(coeff_.size()) - 1; }
    const Rational& operator[](int i) const { return coeff_[static_cast<std::size_t>(i)]; }
    Rational& at(int i) { return coeff_[static_cast<std::size_t>(i)]; }
    const std::vector<Rational>& coefficients() const { return coeff_; }

    PowerSeries truncate(int order) const {
        std::vector<Rational> c(coeff_.begin(),
                                coeff_.begin() + std::min<std::size_t>(coeff_.size(), order + 1));
        c.resize(order + 1, Rational(0));
        return PowerSeries(std::move(c));
    }

    friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
        int order = std::min(a.max_order(), b.max_order());
        PowerSeries r = zero(order);
        for (int i = 0; i <= order; ++i)
            r.at(i) = a[i] + b[i];
        return r;
    }

    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
        int order = std::min(a.max_order(), b.max_order());
        PowerSeries r = zero(order);
        for (int i = 0; i <= order; ++i) {
            if (a[i].is_zero())
                continue;
            for (int j = 0; i + j <= order; ++j)
                r.at(i + j) += a[i] * b[j];
        }
        return r;
    }

    bool operator==(const PowerSeries& o) const { return coeff_ == o.coeff_; }

private:
    std::vector<Rational> coeff_;
};

// Multiplicative inverse of a series with constant term 1, to the same order.
inline PowerSeries series_invert(const PowerSeries& s) {
    if (s[0] != Rational(1))
        throw InvalidSeries("series_invert requires constant term 1, got " + s[0].str());
    int order = s.max_order();
    PowerSeries r = PowerSeries::zero(order);
    r.at(0) = Rational(1);
    for (int n = 1; n <= order; ++n) {
        Rational acc(0);
        for (int i = 1; i <= n; ++i)
            acc += s[i] * r[n - i];
        r.at(n) = -acc;
    }
    return r;
}

// Coefficients q_0..q_max of Q(x) = sqrt(x)/tanh(sqrt(x)), where x carries
// formal degree 4 (one Pontryagin degree). Writing t^2 = x,
//   t/tanh(t) = cosh(t) / (sinh(t)/t),
// and both factors are even series with constant term 1:
//   cosh(t)    = sum x^i / (2i)!,
//   sinh(t)/t  = sum x^i / (2i+1)!.
// The quotient is computed by exact truncated division.
inline PowerSeries series_l_genus(int max_order) {
    PowerSeries cosh_even = PowerSeries::zero(max_order);
    PowerSeries sinh_over_t = PowerSeries::zero(max_order);
    for (int i = 0; i <= max_order; ++i) {
        cosh_even.at(i) = Rational(BigInt(1), factorial(2 * i));
        sinh_over_t.at(i) = Rational(BigInt(1), factorial(2 * i + 1));
    }
    return cosh_even * series_invert(sinh_over_t);
}

} // namespace lborel
