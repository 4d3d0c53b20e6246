#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "dyadic/bong.hpp"

namespace dyadic {

// Invariants of a pair M = <<a_1..a_m>>, N = <<b_1..b_n>>; indices are 1-based as in the formulas.
class PairInvariants {
public:
    PairInvariants(const GoodBong& M, const GoodBong& N);
    // X[i], Y[j] stand for a_{1,i}, b_{1,j} (or approximations of them), i = 0..m, j = 0..n
    PairInvariants(Field F, std::vector<int> R, std::vector<int> S, std::vector<Val> alpha, std::vector<Val> beta,
                   std::vector<SquareClass> X, std::vector<SquareClass> Y);

    const Field& field() const { return F_; }
    int m() const { return static_cast<int>(R_.size()); }
    int n() const { return static_cast<int>(S_.size()); }
    int e() const { return e_; }

    Val R(int i) const { return at(R_, i); }
    Val S(int i) const { return at(S_, i); }
    // alpha_i(M), beta_j = alpha_j(N); only for 1 <= i <= m-1 resp. 1 <= j <= n-1
    Val alpha(int i) const;
    Val beta(int j) const;

    // d[eps a_{1,i} b_{1,j}], 0 <= i <= m, 0 <= j <= n
    Val dbr(SquareClass eps, int i, int j) const;
    Val dbr(int sign, int i, int j) const;

    // 1 <= i <= min(m-1, n)
    Val A(int i) const;
    // S_{n+1} + A_{n+1}, defined when n <= m-2
    Val tail() const;
    Val A_prime(int i) const;
    // defined only when R_{i+1} + R_{i+2} > S_{i-1} + S_i
    std::optional<Val> A_tilde_prime(int i) const;
    std::optional<Val> A_tilde(int i) const;
    // R_{i+1} - R_i + d[-a_{i,i+1}], computed on M alone; 1 <= i <= m-1
    Val alpha_prime(int i) const;
    // 1 <= i <= min(m, n+1)
    bool essential(int i) const;
    std::vector<int> essential_indices() const;

    // A_{i-1} + A_i with the tail reading at i = n+1
    Val A_pair_sum(int i) const;
    // guard of condition (iii) at i: R_{i+1} > S_{i-1} and A_{i-1} + A_i > 2e + R_i - S_i
    bool iii_guard(int i) const;
    bool iv_guard(int i) const;

private:
    static Val at(const std::vector<int>& v, int i);
    Val first_A_term(int i) const;
    Field F_;
    std::vector<int> R_, S_;
    std::vector<Val> alpha_, beta_;
    std::vector<SquareClass> X_, Y_;
    int e_;
    mutable std::map<std::tuple<int, int, int>, Val> memo_;
};

struct Decision {
    bool holds = false;
    std::string failing;  // "space", "i", "ii", "iii", "iv" or empty
    int witness = 0;      // index of the failing condition
    std::string detail;   // the inequality or space statement that failed
    std::vector<std::string> trace;
    std::vector<Val> A;   // A_1 .. A_min(m-1,n)
    std::optional<Val> tailA;
};

// N -> M on the BONG data; rank N > rank M fails at the space stage
Decision repr_decide(const GoodBong& N, const GoodBong& M);
Decision repr_decide(const Lattice& N, const Lattice& M, const BongOptions& opt = {});

// the same conditions with V(i) standing for [a_1..a_i] and W(j) for [b_1..b_j]
Decision repr_decide_with(int m, int n, const QSpace& FM, const QSpace& FN, const std::function<PairInvariants()>& pair,
                          const std::function<QSpace(int)>& V, const std::function<QSpace(int)>& W);

// L isometric to K
Decision classify(const GoodBong& L, const GoodBong& K);
Decision classify(const Lattice& L, const Lattice& K, const BongOptions& opt = {});

// N ⊥ pi^s K
Lattice pad_to_equal_rank(const Lattice& N, const Lattice& M, const Lattice& K, int s);
// diagonal lattice on a complement of FN in FM; throws NotRepresented when FN does not embed
Lattice padding_complement(const Lattice& N, const Lattice& M);
// smallest s with R_1(pi^s K) > S_n + 4e + 4
int padding_shift(const Lattice& N, const Lattice& K);

}  // namespace dyadic
