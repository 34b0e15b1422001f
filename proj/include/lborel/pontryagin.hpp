#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "lborel/power_series.hpp"
#include "lborel/rational.hpp"
#include "lborel/ring.hpp"

namespace lborel {

// Monomials in abstract Pontryagin generators p_1, p_2, ... are recorded
// as partitions (weakly decreasing positive parts); the monomial
// p_{a_1} p_{a_2} ... has weight a_1 + a_2 + ... and cohomological degree
// four times the weight.
using Partition = std::vector<int>;

inline int partition_weight(const Partition& p) {
    int w = 0;
    for (int part : p)
        w += part;
    return w;
}

inline Partition merge_partitions(const Partition& a, const Partition& b) {
    Partition out = a;
    out.insert(out.end(), b.begin(), b.end());
    std::sort(out.begin(), out.end(), std::greater<int>());
    return out;
}

// Rational polynomial in the abstract Pontryagin generators.
class PontryaginPolynomial {
public:
    PontryaginPolynomial() = default;
    static PontryaginPolynomial constant(Rational c) {
        PontryaginPolynomial p;
        p.add_term({}, c);
        return p;
    }
    static PontryaginPolynomial generator(int index, Rational c = Rational(1)) {
        PontryaginPolynomial p;
        p.add_term({index}, c);
        return p;
    }

    const std::map<Partition, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Partition& mono, const Rational& c) {
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(mono, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    friend PontryaginPolynomial operator+(const PontryaginPolynomial& a,
                                          const PontryaginPolynomial& b) {
        PontryaginPolynomial out = a;
        for (const auto& [mono, c] : b.terms_)
            out.add_term(mono, c);
        return out;
    }
    friend PontryaginPolynomial operator-(const PontryaginPolynomial& a,
                                          const PontryaginPolynomial& b) {
        PontryaginPolynomial out = a;
        for (const auto& [mono, c] : b.terms_)
            out.add_term(mono, -c);
        return out;
    }
    friend PontryaginPolynomial operator*(const Rational& s, const PontryaginPolynomial& a) {
        PontryaginPolynomial out;
        for (const auto& [mono, c] : a.terms_)
            out.add_term(mono, s * c);
        return out;
    }

    PontryaginPolynomial multiply(const PontryaginPolynomial& o, int max_weight) const {
        PontryaginPolynomial out;
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_) {
                if (partition_weight(ma) + partition_weight(mb) > max_weight)
                    continue;
                out.add_term(merge_partitions(ma, mb), ca * cb);
            }
        return out;
    }

    bool operator==(const PontryaginPolynomial& o) const { return terms_ == o.terms_; }
    bool operator!=(const PontryaginPolynomial& o) const { return !(*this == o); }

    // Substitute graded elements for the generators: components[i] stands
    // for p_i. Missing indices substitute as zero.
    GradedElement substitute(const std::map<int, GradedElement>& components,
                             const RingPtr& ring) const {
        GradedElement out(ring);
        for (const auto& [mono, c] : terms_) {
            GradedElement term = GradedElement::unit(ring);
            bool dead = false;
            for (int part : mono) {
                auto it = components.find(part);
                if (it == components.end()) {
                    dead = true;
                    break;
                }
                term = term * it->second;
                if (term.is_zero()) {
                    dead = true;
                    break;
                }
            }
            if (dead)
                continue;
            out = out + c * term;
        }
        return out;
    }

    std::string str() const {
        if (terms_.empty())
            return "0";
        // descending lex over partitions matches the usual presentation:
        // p3 before p1 p2 before p1^3
        std::vector<Partition> order;
        for (const auto& [mono, c] : terms_)
            order.push_back(mono);
        std::sort(order.begin(), order.end(),
                  [](const Partition& a, const Partition& b) { return a > b; });
        std::string out;
        bool first = true;
        for (const auto& mono : order) {
            Rational c = terms_.at(mono);
            std::string mag = (c.sign() < 0 ? (-c).str() : c.str());
            if (first) {
                out += (c.sign() < 0 ? "-" : "");
                first = false;
            } else {
                out += (c.sign() < 0 ? " - " : " + ");
            }
            std::string m = monomial_str(mono);
            if (m.empty())
                out += mag;
            else if (mag == "1")
                out += m;
            else
                out += mag + " " + m;
        }
        return out;
    }

    static std::string monomial_str(const Partition& mono) {
        Partition parts = mono;
        std::sort(parts.begin(), parts.end());
        std::string out;
        std::size_t i = 0;
        while (i < parts.size()) {
            std::size_t j = i;
            while (j < parts.size() && parts[j] == parts[i])
                ++j;
            if (!out.empty())
                out += " ";
            out += "p" + std::to_string(parts[i]);
            if (j - i > 1)
                out += "^" + std::to_string(j - i);
            i = j;
        }
        return out;
    }

private:
    std::map<Partition, Rational> terms_;
};

namespace detail {

// Sparse polynomial in D formal root variables, truncated by total degree.
using Exponents = std::vector<int>;
using RootPolynomial = std::map<Exponents, Rational>;

inline RootPolynomial root_mul(const RootPolynomial& a, const RootPolynomial& b,
                               int num_vars, int max_total) {
    RootPolynomial out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            int total = 0;
            Exponents e(num_vars);
            for (int v = 0; v < num_vars; ++v) {
                e[v] = ea[v] + eb[v];
                total += e[v];
            }
            if (total > max_total)
                continue;
            auto [it, inserted] = out.try_emplace(e, ca * cb);
            if (!inserted) {
                it->second += cb * ca;
                if (it->second.is_zero())
                    out.erase(it);
            }
        }
    return out;
}

inline RootPolynomial elementary_symmetric(int j, int num_vars) {
    // e_j = sum over j-subsets of the variables
    RootPolynomial out;
    std::vector<int> idx(j);
    for (int i = 0; i < j; ++i)
        idx[i] = i;
    if (j == 0) {
        out[Exponents(num_vars, 0)] = Rational(1);
        return out;
    }
    while (true) {
        Exponents e(num_vars, 0);
        for (int i : idx)
            e[i] = 1;
        out[e] = Rational(1);
        int pos = j - 1;
        while (pos >= 0 && idx[pos] == num_vars - (j - pos))
            --pos;
        if (pos < 0)
            break;
        ++idx[pos];
        for (int i = pos + 1; i < j; ++i)
            idx[i] = idx[i - 1] + 1;
    }
    return out;
}

// Constructive fundamental theorem of symmetric polynomials: repeatedly
// strip the lex-leading term c x^lambda, which is matched by the product
// of elementary symmetric polynomials indexed by the conjugate partition.
inline PontryaginPolynomial symmetric_to_elementary(RootPolynomial f, int num_vars,
                                                    const std::vector<RootPolynomial>& e) {
    PontryaginPolynomial out;
    while (!f.empty()) {
        auto lead = std::max_element(
            f.begin(), f.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
        Exponents alpha = lead->first;
        Rational c = lead->second;
        Partition lambda;
        for (int a : alpha)
            if (a > 0)
                lambda.push_back(a);
        std::sort(lambda.begin(), lambda.end(), std::greater<int>());
        // conjugate partition
        Partition conj;
        for (int i = 1; !lambda.empty() && i <= lambda.front(); ++i) {
            int count = 0;
            for (int part : lambda)
                if (part >= i)
                    ++count;
            conj.push_back(count);
        }
        std::sort(conj.begin(), conj.end(), std::greater<int>());
        RootPolynomial prod;
        prod[Exponents(num_vars, 0)] = Rational(1);
        for (int part : conj)
            prod = root_mul(prod, e[static_cast<std::size_t>(part)], num_vars,
                            partition_weight(lambda));
        for (const auto& [mono, pc] : prod) {
            auto it = f.find(mono);
            Rational next = (it == f.end() ? Rational(0) : it->second) - c * pc;
            if (next.is_zero()) {
                if (it != f.end())
                    f.erase(it);
            } else {
                f[mono] = next;
            }
        }
        out.add_term(conj, c);
    }
    return out;
}

} // namespace detail

// The polynomials K_0..K_D of the multiplicative sequence attached to a
// genus power series Q, computed by the formal-roots construction:
// expand prod_i Q(x_i) over D degree-4 roots and rewrite each homogeneous
// piece in the elementary symmetric polynomials e_j = p_j.
inline std::vector<PontryaginPolynomial> multiplicative_sequence_polynomials(
    const PowerSeries& genus, int max_index) {
    if (genus[0] != Rational(1))
        throw InvalidSeries("genus series must have constant term 1");
    int d = max_index;
    std::vector<PontryaginPolynomial> out;
    if (d == 0) {
        out.push_back(PontryaginPolynomial::constant(Rational(1)));
        return out;
    }

    detail::RootPolynomial prod;
    prod[detail::Exponents(d, 0)] = Rational(1);
    for (int v = 0; v < d; ++v) {
        detail::RootPolynomial factor;
        for (int w = 0; w <= std::min(d, genus.max_order()); ++w) {
            if (genus[w].is_zero())
                continue;
            detail::Exponents e(d, 0);
            e[v] = w;
            factor[e] = genus[w];
        }
        prod = detail::root_mul(prod, factor, d, d);
    }

    std::vector<detail::RootPolynomial> elem;
    for (int j = 0; j <= d; ++j)
        elem.push_back(detail::elementary_symmetric(j, d));

    for (int w = 0; w <= d; ++w) {
        detail::RootPolynomial part;
        for (const auto& [e, c] : prod) {
            int total = 0;
            for (int x : e)
                total += x;
            if (total == w)
                part[e] = c;
        }
        out.push_back(detail::symmetric_to_elementary(std::move(part), d, elem));
    }
    return out;
}

// Coefficient data of a genus plus its cached polynomials, write-once.
class MultiplicativeSequence {
public:
    static constexpr int kDefaultDepth = 6;

    static MultiplicativeSequence l_sequence(int depth = kDefaultDepth) {
        MultiplicativeSequence seq;
        seq.genus_ = series_l_genus(depth);
        seq.polynomials_ = multiplicative_sequence_polynomials(seq.genus_, depth);
        return seq;
    }

    const PowerSeries& genus_series() const { return genus_; }
    int depth() const { return static_cast<int>(polynomials_.size()) - 1; }
    const PontryaginPolynomial& polynomial(int j) const {
        if (j < 0 || j > depth())
            throw CatalogueDepth("multiplicative sequence cached to depth " +
                                 std::to_string(depth()) + ", requested " + std::to_string(j));
        return polynomials_[static_cast<std::size_t>(j)];
    }

private:
    PowerSeries genus_;
    std::vector<PontryaginPolynomial> polynomials_;
};

// L_0..L_D in the abstract generators (Hirzebruch L-polynomials).
inline std::vector<PontryaginPolynomial> l_polynomials(int max_index) {
    return multiplicative_sequence_polynomials(series_l_genus(max_index), max_index);
}

} // namespace lborel
