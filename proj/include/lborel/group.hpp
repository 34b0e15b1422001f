#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lborel/errors.hpp"
#include "lborel/ratmat.hpp"

namespace lborel {

// A compact Lie group presented by exact-rational matrix data: a basis of
// its Lie algebra inside n x n matrices and one representative per
// connected component (identity first).
struct GroupData {
    std::string name;
    int dim = 0;     // d
    int embed_n = 0; // G sits in Or(embed_n)
    std::vector<RatMatrix> lie_algebra_basis;
    std::vector<RatMatrix> component_reps;
    bool connected = false;

    void check() const {
        if (dim < 0 || embed_n < 0)
            throw MalformedDocument("group '" + name + "': negative dimensions");
        if (static_cast<int>(lie_algebra_basis.size()) != dim)
            throw MalformedDocument("group '" + name + "': Lie algebra basis size " +
                                    std::to_string(lie_algebra_basis.size()) +
                                    " does not match dim " + std::to_string(dim));
        if (component_reps.empty())
            throw MalformedDocument("group '" + name + "': no component representatives");
        for (const auto& m : lie_algebra_basis)
            require_square(m, "Lie algebra basis");
        for (const auto& m : component_reps)
            require_square(m, "component representative");
        if (component_reps.front() != identity_matrix(embed_n))
            throw MalformedDocument("group '" + name +
                                    "': first component representative must be the identity");
        if (connected && component_reps.size() != 1)
            throw MalformedDocument("group '" + name +
                                    "': connected groups have one component");
    }

private:
    void require_square(const RatMatrix& m, const char* what) const {
        if (static_cast<int>(m.size()) != embed_n)
            throw MalformedDocument("group '" + name + "': " + what + " is not " +
                                    std::to_string(embed_n) + "x" + std::to_string(embed_n));
        for (const auto& row : m)
            if (static_cast<int>(row.size()) != embed_n)
                throw MalformedDocument("group '" + name + "': ragged matrix in " + what);
    }
};

struct OrientabilityVerdict {
    bool orientable = true;
    std::optional<RatMatrix> witness; // offending component representative
};

namespace detail {

inline RatVector flatten(const RatMatrix& m) {
    RatVector v;
    for (const auto& row : m)
        for (const auto& x : row)
            v.push_back(x);
    return v;
}

// Coordinates of Ad(g) b_j = g b_j g^{-1} in the Lie algebra basis; the
// basis must be closed under Ad of every component representative.
inline RatMatrix adjoint_matrix(const GroupData& g, const RatMatrix& rep) {
    auto inv = mat_inverse(rep);
    if (!inv)
        throw InvalidGroupData("group '" + g.name + "': singular component representative");
    int d = g.dim;
    int n2 = g.embed_n * g.embed_n;
    RatMatrix basis_cols(n2, RatVector(d, Rational(0)));
    for (int j = 0; j < d; ++j) {
        RatVector col = flatten(g.lie_algebra_basis[static_cast<std::size_t>(j)]);
        for (int i = 0; i < n2; ++i)
            basis_cols[i][j] = col[i];
    }
    RatMatrix ad(d, RatVector(d, Rational(0)));
    for (int j = 0; j < d; ++j) {
        RatMatrix conj = mat_mul(mat_mul(rep, g.lie_algebra_basis[static_cast<std::size_t>(j)]), *inv);
        auto coords = mat_solve(basis_cols, flatten(conj));
        if (!coords)
            throw InvalidGroupData("group '" + g.name +
                                   "': Lie algebra basis is not Ad-closed");
        for (int i = 0; i < d; ++i)
            ad[i][j] = (*coords)[static_cast<std::size_t>(i)];
    }
    return ad;
}

} // namespace detail

// A Lie group is bi-invariantly orientable iff its adjoint representation
// is orientation preserving. Connected and zero-dimensional groups always
// are; otherwise every component representative must have positive
// adjoint determinant, and a failing representative is returned as the
// witness.
inline OrientabilityVerdict check_biinvariant_orientable(const GroupData& g) {
    g.check();
    if (g.dim > 0) {
        // the basis must actually span a d-dimensional space
        RatMatrix rows;
        for (const auto& m : g.lie_algebra_basis)
            rows.push_back(detail::flatten(m));
        if (mat_rank(rows) != static_cast<std::size_t>(g.dim))
            throw InvalidGroupData("group '" + g.name +
                                   "': Lie algebra basis is linearly dependent");
    }
    // validate Ad-closure even on the fast paths
    std::vector<std::pair<RatMatrix, Rational>> dets;
    for (const auto& rep : g.component_reps) {
        RatMatrix ad = detail::adjoint_matrix(g, rep);
        dets.emplace_back(rep, g.dim == 0 ? Rational(1) : mat_det(ad));
    }
    if (g.connected || g.dim == 0)
        return {true, std::nullopt};
    for (const auto& [rep, det] : dets)
        if (!(det > Rational(0)))
            return {false, rep};
    return {true, std::nullopt};
}

} // namespace lborel
