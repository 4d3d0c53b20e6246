#pragma once

#include <cstdint>
#include <vector>

#include "dyadic/lattice.hpp"
#include "dyadic/val.hpp"

namespace dyadic {

// a in the set of values a(L) of binary lattices: ord a + 2e >= 0 and ord a + d(-a) >= 0
bool in_A_set(const FieldElem& a);
bool verify_good_bong(const Field& F, const Vec& a);

class GoodBong {
public:
    GoodBong() = default;
    // throws InvalidInput when a is not a good BONG
    GoodBong(Field F, Vec a);

    const Field& field() const { return F_; }
    int rank() const { return static_cast<int>(a_.size()); }
    const Vec& a() const { return a_; }
    const std::vector<int>& R() const { return R_; }
    // R_i with 1-based i; -inf below 1, +inf above n
    Val Rv(int i) const;
    // square class of a_1 ... a_i, 0 <= i <= n
    SquareClass prefix(int i) const { return prefix_[i]; }
    // [a_1, ..., a_i]
    QSpace space(int i) const;
    std::string str() const;

private:
    Field F_;
    Vec a_;
    std::vector<int> R_;
    std::vector<SquareClass> prefix_;
};

struct InvariantPack {
    std::vector<int> R;
    std::vector<Val> alpha;  // alpha_1 .. alpha_{n-1}
    std::vector<Val> W;      // length 2n - 2
};

struct BongOptions {
    uint64_t seed = 0;  // nonzero: shuffle the candidate order
    long max_nodes = 200000;
};

// good BONG of a nondegenerate lattice; throws BudgetExhausted when the search fails
GoodBong good_bong(const Lattice& L, const BongOptions& opt = {});
GoodBong dual_bong(const GoodBong& B);
InvariantPack invariants(const GoodBong& B);
std::vector<Val> alphas(const GoodBong& B);
// binary lattice with BONG a, b when ord b < ord a, unary blocks otherwise
Lattice lattice_from_bong(const GoodBong& B);

// order on sequences with x_i <= x_{i+2}; throws InvalidInput for other sequences
bool in_B(const std::vector<Val>& x);
bool r_leq(const std::vector<Val>& x, const std::vector<Val>& y);
bool r_leq(const std::vector<int>& x, const std::vector<int>& y);
std::vector<Val> to_vals(const std::vector<int>& x);
std::vector<Val> sharp(const std::vector<Val>& x);

}  // namespace dyadic
