#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lborel/errors.hpp"
#include "lborel/rational.hpp"

namespace lborel {

class GradedElement;

// Finitely presented graded-commutative ring, given by an explicit basis
// per degree and a stored multiplication table on basis elements. The
// degree-0 basis is exactly {1}; products landing above top_degree are
// zero by truncation. Odd-degree basis elements are admitted only when
// every product of two odd-degree elements vanishes, so that no Koszul
// sign convention is ever exercised.
class RingPresentation : public std::enable_shared_from_this<RingPresentation> {
public:
    std::string name;
    int top_degree = 0;
    std::vector<std::pair<std::string, int>> generators;
    std::map<int, std::vector<std::string>> basis_by_degree;

    // canonical key: lexicographically smaller name first
    std::map<std::pair<std::string, std::string>, std::map<std::string, Rational>> products;

    int degree_of(const std::string& basis_name) const {
        auto it = degree_.find(basis_name);
        if (it == degree_.end())
            throw MalformedDocument("ring '" + name + "' has no basis element '" +
                                    basis_name + "'");
        return it->second;
    }
    bool has_basis(const std::string& basis_name) const {
        return degree_.count(basis_name) > 0;
    }
    // position in the concatenated (degree-ascending) basis; used for
    // deterministic rendering and matrix bookkeeping
    int position_of(const std::string& basis_name) const {
        auto it = position_.find(basis_name);
        if (it == position_.end())
            throw MalformedDocument("ring '" + name + "' has no basis element '" +
                                    basis_name + "'");
        return it->second;
    }
    const std::vector<std::string>& basis_at(int degree) const {
        static const std::vector<std::string> empty;
        auto it = basis_by_degree.find(degree);
        return it == basis_by_degree.end() ? empty : it->second;
    }
    std::size_t total_dimension() const { return degree_.size(); }

    const std::map<std::string, Rational>& product_entry(const std::string& a,
                                                         const std::string& b) const {
        static const std::map<std::string, Rational> empty;
        auto key = a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
        auto it = products.find(key);
        return it == products.end() ? empty : it->second;
    }

    // Finalizes the lookup tables and runs the load-time axiom checks:
    // grading, unit, commutativity of the stored table, associativity on
    // all basis triples, and the odd-degree product restriction.
    void finalize_and_check();

private:
    std::map<std::string, int> degree_;
    std::map<std::string, int> position_;
};

using RingPtr = std::shared_ptr<const RingPresentation>;

// A finitely supported rational combination of named basis elements of
// one ring. Zero coefficients are never stored.
class GradedElement {
public:
    GradedElement() = default;
    explicit GradedElement(RingPtr ring) : ring_(std::move(ring)) {}
    GradedElement(RingPtr ring, const std::string& basis_name, Rational c = Rational(1))
        : ring_(std::move(ring)) {
        if (!c.is_zero()) {
            ring_->degree_of(basis_name); // existence check
            coeff_[basis_name] = std::move(c);
        }
    }

    static GradedElement unit(RingPtr ring) { return GradedElement(ring, "1"); }

    const RingPtr& ring() const { return ring_; }
    const std::map<std::string, Rational>& coefficients() const { return coeff_; }
    bool is_zero() const { return coeff_.empty(); }

    Rational coefficient(const std::string& basis_name) const {
        auto it = coeff_.find(basis_name);
        return it == coeff_.end() ? Rational(0) : it->second;
    }

    void add_term(const std::string& basis_name, const Rational& c) {
        if (c.is_zero())
            return;
        auto [it, inserted] = coeff_.try_emplace(basis_name, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                coeff_.erase(it);
        }
    }

    GradedElement homogeneous_component(int degree) const {
        GradedElement out(ring_);
        for (const auto& [name, c] : coeff_)
            if (ring_->degree_of(name) == degree)
                out.coeff_[name] = c;
        return out;
    }

    // Defined iff all supported names share one degree.
    std::optional<int> homogeneous_degree() const {
        std::optional<int> deg;
        for (const auto& [name, c] : coeff_) {
            int d = ring_->degree_of(name);
            if (!deg)
                deg = d;
            else if (*deg != d)
                return std::nullopt;
        }
        return deg;
    }

    std::vector<int> supported_degrees() const {
        std::vector<int> out;
        for (const auto& [name, c] : coeff_) {
            int d = ring_->degree_of(name);
            if (out.empty() || out.back() != d) {
                if (std::find(out.begin(), out.end(), d) == out.end())
                    out.push_back(d);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    Rational constant_term() const { return coefficient("1"); }

    friend GradedElement operator+(const GradedElement& a, const GradedElement& b) {
        require_same_ring(a, b);
        GradedElement r = a;
        for (const auto& [name, c] : b.coeff_)
            r.add_term(name, c);
        return r;
    }
    friend GradedElement operator-(const GradedElement& a, const GradedElement& b) {
        require_same_ring(a, b);
        GradedElement r = a;
        for (const auto& [name, c] : b.coeff_)
            r.add_term(name, -c);
        return r;
    }
    friend GradedElement operator*(const Rational& s, const GradedElement& a) {
        GradedElement r(a.ring_);
        if (s.is_zero())
            return r;
        for (const auto& [name, c] : a.coeff_)
            r.coeff_[name] = s * c;
        return r;
    }

    bool operator==(const GradedElement& o) const {
        return ring_ == o.ring_ && coeff_ == o.coeff_;
    }
    bool operator!=(const GradedElement& o) const { return !(*this == o); }

    std::string str() const;

private:
    static void require_same_ring(const GradedElement& a, const GradedElement& b) {
        if (a.ring_ != b.ring_)
            throw RingMismatch("elements of '" + (a.ring_ ? a.ring_->name : "?") +
                               "' and '" + (b.ring_ ? b.ring_->name : "?") + "'");
    }

    RingPtr ring_;
    std::map<std::string, Rational> coeff_;
};

// Bilinear extension of the stored product table.
inline GradedElement ring_multiply(const GradedElement& a, const GradedElement& b) {
    if (a.ring() != b.ring())
        throw RingMismatch("ring_multiply across '" + a.ring()->name + "' and '" +
                           b.ring()->name + "'");
    const auto& ring = a.ring();
    GradedElement out(ring);
    for (const auto& [an, ac] : a.coefficients()) {
        for (const auto& [bn, bc] : b.coefficients()) {
            Rational c = ac * bc;
            if (an == "1") {
                out.add_term(bn, c);
                continue;
            }
            if (bn == "1") {
                out.add_term(an, c);
                continue;
            }
            for (const auto& [rn, rc] : ring->product_entry(an, bn))
                out.add_term(rn, c * rc);
        }
    }
    return out;
}

inline GradedElement operator*(const GradedElement& a, const GradedElement& b) {
    return ring_multiply(a, b);
}

// Multiplicative inverse in the truncated ring; requires constant term 1.
// The positive-degree part is nilpotent, so the geometric series ends.
inline GradedElement inverse_unit_element(const GradedElement& c) {
    if (c.constant_term() != Rational(1))
        throw NotInvertible("element of '" + (c.ring() ? c.ring()->name : "?") +
                            "' has constant term " + c.constant_term().str());
    GradedElement n = c - GradedElement::unit(c.ring());
    GradedElement result = GradedElement::unit(c.ring());
    GradedElement power = GradedElement::unit(c.ring());
    Rational sgn(1);
    // each factor of n raises degree by >= 1, so top_degree bounds the loop
    for (int i = 0; i < c.ring()->top_degree + 1 && !power.is_zero(); ++i) {
        power = power * n;
        sgn = -sgn;
        result = result + sgn * power;
    }
    return result;
}

inline std::string GradedElement::str() const {
    if (coeff_.empty())
        return "0";
    std::vector<std::pair<std::pair<int, int>, std::string>> order;
    for (const auto& [name, c] : coeff_)
        order.push_back({{ring_->degree_of(name), ring_->position_of(name)}, name});
    std::sort(order.begin(), order.end());
    std::string out;
    bool first = true;
    for (const auto& [key, name] : order) {
        Rational c = coeff_.at(name);
        std::string mag = (c.sign() < 0 ? (-c).str() : c.str());
        if (first) {
            out += (c.sign() < 0 ? "-" : "");
            first = false;
        } else {
            out += (c.sign() < 0 ? " - " : " + ");
        }
        if (name == "1")
            out += mag;
        else if (mag == "1")
            out += name;
        else
            out += mag + " " + name;
    }
    return out;
}

inline void RingPresentation::finalize_and_check() {
    degree_.clear();
    position_.clear();
    int pos = 0;
    for (const auto& [deg, names] : basis_by_degree) {
        if (deg < 0)
            throw FailedAxiomCheck("ring '" + name + "': negative degree " +
                                   std::to_string(deg));
        if (deg > top_degree)
            throw FailedAxiomCheck("ring '" + name + "': basis above top_degree in degree " +
                                   std::to_string(deg));
        for (const auto& n : names) {
            if (degree_.count(n))
                throw FailedAxiomCheck("ring '" + name + "': duplicate basis name '" + n + "'");
            degree_[n] = deg;
            position_[n] = pos++;
        }
    }
    if (basis_at(0) != std::vector<std::string>{"1"})
        throw FailedAxiomCheck("ring '" + name + "': degree-0 basis must be exactly {1}");
    for (const auto& [gname, gdeg] : generators) {
        if (gdeg <= 0)
            throw FailedAxiomCheck("ring '" + name + "': generator '" + gname +
                                   "' with non-positive degree");
    }

    // normalize product keys, mirror for commutativity, validate grading
    std::map<std::pair<std::string, std::string>, std::map<std::string, Rational>> canon;
    for (const auto& [key, value] : products) {
        const auto& [a, b] = key;
        if (!has_basis(a) || !has_basis(b))
            throw MalformedDocument("ring '" + name + "': product over unknown basis '" +
                                    a + "*" + b + "'");
        auto ck = a <= b ? key : std::make_pair(b, a);
        auto it = canon.find(ck);
        if (it != canon.end()) {
            if (it->second != value)
                throw FailedAxiomCheck("ring '" + name + "': commutativity fails on (" +
                                       a + ", " + b + ")");
        } else {
            canon[ck] = value;
        }
    }
    for (auto& [key, value] : canon) {
        int want = degree_.at(key.first) + degree_.at(key.second);
        for (auto it = value.begin(); it != value.end();) {
            if (it->second.is_zero()) {
                it = value.erase(it);
                continue;
            }
            if (!has_basis(it->first))
                throw MalformedDocument("ring '" + name + "': product value over unknown '" +
                                        it->first + "'");
            if (degree_.at(it->first) != want)
                throw FailedAxiomCheck("ring '" + name + "': product (" + key.first + ", " +
                                       key.second + ") is not graded");
            ++it;
        }
        if (want > top_degree && !value.empty())
            throw FailedAxiomCheck("ring '" + name + "': product (" + key.first + ", " +
                                   key.second + ") above top_degree must vanish");
        if ((degree_.at(key.first) % 2) && (degree_.at(key.second) % 2) && !value.empty())
            throw FailedAxiomCheck("ring '" + name + "': nonzero product of odd-degree (" +
                                   key.first + ", " + key.second + ")");
    }
    products = std::move(canon);

    // unit row: explicit entries for 1 must agree with the unit law
    for (const auto& [key, value] : products) {
        for (const auto& side : {key.first, key.second}) {
            if (side != "1")
                continue;
            const auto& other = side == key.first ? key.second : key.first;
            std::map<std::string, Rational> expect{{other, Rational(1)}};
            if (value != expect)
                throw FailedAxiomCheck("ring '" + name + "': unit law fails on '" + other + "'");
        }
    }

    // associativity on all basis triples (truncation is by a degree ideal,
    // so checking stored values is sound)
    auto self = RingPtr(this, [](const RingPresentation*) {});
    std::vector<std::string> all;
    for (const auto& [deg, names] : basis_by_degree)
        for (const auto& n : names)
            if (n != "1")
                all.push_back(n);
    for (const auto& a : all)
        for (const auto& b : all)
            for (const auto& c : all) {
                if (degree_.at(a) + degree_.at(b) + degree_.at(c) > top_degree)
                    continue;
                GradedElement ea(self, a), eb(self, b), ec(self, c);
                if ((ea * eb) * ec != ea * (eb * ec))
                    throw FailedAxiomCheck("ring '" + name + "': associativity fails on (" +
                                           a + ", " + b + ", " + c + ")");
            }
}

} // namespace lborel
