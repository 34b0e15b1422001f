#pragma once

// Independent construction of the L-polynomials used as the oracle against
// the formal-roots route: power sums from the logarithm of the genus
// series, rewritten through Newton's identities, then exponentiated. No
// formal root variables and no symmetric-function elimination appear here.

#include "lborel/pontryagin.hpp"
#include "lborel/power_series.hpp"

namespace lborel::testing {

// log of a series with constant term 1: n q_n = sum_{k<=n} k l_k q_{n-k}.
inline PowerSeries series_log(const PowerSeries& q) {
    int order = q.max_order();
    PowerSeries l = PowerSeries::zero(order);
    for (int n = 1; n <= order; ++n) {
        Rational acc = Rational(n) * q[n];
        for (int k = 1; k < n; ++k)
            acc -= Rational(k) * l[k] * q[n - k];
        l.at(n) = acc / Rational(n);
    }
    return l;
}

// Power sums s_w in the elementary symmetric generators e_j = p_j:
// s_w = sum_{i<w} (-1)^{i-1} e_i s_{w-i} + (-1)^{w-1} w e_w.
inline std::vector<PontryaginPolynomial> power_sums(int max_w) {
    std::vector<PontryaginPolynomial> s(max_w + 1);
    s[0] = PontryaginPolynomial::constant(Rational(0));
    for (int w = 1; w <= max_w; ++w) {
        PontryaginPolynomial acc;
        Rational sign(1);
        for (int i = 1; i < w; ++i) {
            acc = acc + sign * PontryaginPolynomial::generator(i).multiply(s[w - i], max_w);
            sign = -sign;
        }
        acc = acc + (sign * Rational(w)) * PontryaginPolynomial::generator(w);
        s[w] = acc;
    }
    return s;
}

inline std::vector<PontryaginPolynomial> l_polynomials_newton(int max_index) {
    PowerSeries genus = series_l_genus(max_index);
    PowerSeries log_genus = series_log(genus);
    std::vector<PontryaginPolynomial> s = power_sums(max_index);

    PontryaginPolynomial arg; // sum_w l_w s_w, weight-graded
    for (int w = 1; w <= max_index; ++w)
        arg = arg + log_genus[w] * s[w];

    // exp(arg) truncated by weight
    PontryaginPolynomial total = PontryaginPolynomial::constant(Rational(1));
    PontryaginPolynomial power = PontryaginPolynomial::constant(Rational(1));
    Rational factorial(1);
    for (int r = 1; r <= max_index; ++r) {
        power = power.multiply(arg, max_index);
        factorial *= Rational(r);
        total = total + factorial.inverse() * power;
    }

    std::vector<PontryaginPolynomial> out(max_index + 1);
    for (const auto& [mono, c] : total.terms()) {
        int w = partition_weight(mono);
        if (w <= max_index)
            out[static_cast<std::size_t>(w)].add_term(mono, c);
    }
    return out;
}

} // namespace lborel::testing
