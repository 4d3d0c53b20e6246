#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "dyadic/lattice.hpp"

namespace dyadic {

struct SearchConfig {
    int precision = 0;        // search depth in powers of pi; 0 picks the certifying depth
    long max_nodes = 20000000;
    int lift_slack = 2;       // extra depth per escalation step when a witness is not yet certified
};

enum class OracleVerdict { yes, no, inconclusive };

struct OracleResult {
    OracleVerdict verdict = OracleVerdict::no;
    std::optional<Matrix> witness;  // columns: images of the basis of N in the basis of M
    int depth = 0;                  // final search depth
    int certify_depth = 0;          // depth at which any survivor lifts to an exact embedding
    long nodes = 0;
};

const char* to_string(OracleVerdict v);

// brute-force search for X with X^T G_M X = G_N; throws BudgetExhausted
OracleResult oracle_represents(const Lattice& N, const Lattice& M, const SearchConfig& cfg = {});
// equal rank, equal volume and representation both ways
OracleVerdict oracle_isometric(const Lattice& L1, const Lattice& L2, const SearchConfig& cfg = {});
// X^T G_M X - G_N is small enough for Newton iteration to converge to an exact solution
bool certify_witness(const Lattice& N, const Lattice& M, const Matrix& X);

struct InstanceParams {
    int max_rank = 3;
    int vmin = -2, vmax = 4;
    double sublattice_fraction = 0.5;
    // rank of N equals rank of M
    bool equal_rank = false;
};

struct Instance {
    Lattice N, M;
    bool constructed = false;  // N built as a sublattice of M
};

Lattice random_gram(std::mt19937_64& g, const Field& F, int n, int vmin, int vmax);
Instance random_instance(std::mt19937_64& g, const Field& F, const InstanceParams& p);

}  // namespace dyadic
