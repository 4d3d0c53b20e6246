#pragma once

#include <optional>
#include <vector>

#include "dyadic/lattice.hpp"
#include "dyadic/quad_space.hpp"
#include "dyadic/repr.hpp"

namespace dyadic {

struct JordanComponent {
    int scale = 0;                 // r_k
    int dim = 0;
    int norm_ord = 0;              // ord of the norm of this component alone
    std::vector<int> block_sizes;  // unary and binary modular pieces
    Lattice lattice;
    FieldElem gen;                 // an element of Q(L_k) generating the norm of L_k
};

struct JordanSplitting {
    Field field;
    Matrix basis;  // columns: the adapted basis in input coordinates
    Lattice split; // block diagonal Gram on the adapted basis
    std::vector<JordanComponent> comps;
    std::vector<int> r, u;
    std::vector<int> n;            // n[0] = 0, n[k] = dim of L_(k)
    std::vector<FieldElem> normgen;  // a norm generator A_k of L^{s L_k}, k = 1..t at index k-1

    int t() const { return static_cast<int>(comps.size()); }
    // orders of a good BONG: u_k, 2r_k - u_k, u_k, ... inside each component
    std::vector<int> predicted_R() const;
    // underlying space of L_(k)
    QSpace partial_space(int k) const;
    // ord of the norm of L^{p^r}
    int norm_ord_at(int r) const;
    int rank() const { return n.back(); }
    // R_i read off the splitting, with -inf for i < 1 and +inf for i > rank
    Val Rv(int i) const;
};

JordanSplitting jordan_split(const Lattice& L);

struct Approximation {
    int index = 0;
    SquareClass X;
    std::optional<QSpace> V;
    enum class Side { none, left, right, both } side = Side::none;
    int lemma_case = 0;  // 1..4 for the named constructions, 0 for the residual case
};

// X_i approximating a_{1,i}, 0 <= i <= n
SquareClass approximate_X(const JordanSplitting& J, int i);
// V_i approximating [a_1, ..., a_i], 0 <= i <= n
Approximation approximate_V(const JordanSplitting& J, int i);

// conditions (i)-(iv) evaluated on R_i, alpha_i and the approximations X_i, V_i of both splittings
Decision repr_decide_jordan(const Lattice& N, const Lattice& M, const BongOptions& opt = {});

}  // namespace dyadic
