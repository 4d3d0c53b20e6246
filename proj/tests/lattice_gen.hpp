#pragma once

#include "dyadic/bong.hpp"
#include "dyadic/lattice.hpp"
#include "test_util.hpp"

namespace testutil {

// random unimodular matrix: unit upper triangular times unit lower triangular, then a permutation
inline Matrix random_unimodular(std::mt19937_64& g, const Field& F, int n) {
    Matrix U = identity(F, n), Lo = identity(F, n);
    for (int i = 0; i < n; ++i) {
        FieldElem d = random_unit(g, F);
        U[i][i] = d;
        for (int j = i + 1; j < n; ++j) {
            U[i][j] = random_integral(g, F, 2);
            Lo[j][i] = random_integral(g, F, 2);
        }
    }
    Matrix T = matmul(U, Lo);
    for (int i = n - 1; i > 0; --i) std::swap(T[i], T[rnd(g, 0, i)]);
    return T;
}

// block diagonal sum of unary and binary modular pieces of small scale
inline Lattice random_split_lattice(std::mt19937_64& g, const Field& F, int n, int smax = 3) {
    Lattice L = Lattice::zero(F);
    int e = F.e();
    while (L.rank() < n) {
        int left = n - L.rank();
        int s = static_cast<int>(rnd(g, 0, smax));
        if (left >= 2 && rnd(g, 0, 2) == 0) {
            // pi^s [[x, 1], [1, y]] with ord x, ord y >= 0 and the norm at least pi^s
            FieldElem x = rnd(g, 0, 2) ? random_elem(g, F, 1, 2 * e + 1) : F.zero();
            FieldElem y = rnd(g, 0, 2) ? random_elem(g, F, 1, 2 * e + 1) : F.zero();
            if (rnd(g, 0, 3) == 0) x = random_unit(g, F);
            FieldElem p = F.pi_pow(s);
            Matrix G{{p * x, p}, {p, p * y}};
            if ((G[0][0] * G[1][1] - G[0][1] * G[0][1]).is_zero()) continue;
            L = L + Lattice(F, G);
        } else {
            L = L + Lattice::diag(F, {random_unit(g, F) * F.pi_pow(s)});
        }
    }
    return L;
}

inline Lattice random_lattice(std::mt19937_64& g, const Field& F, int n, int smax = 3) {
    Lattice L = random_split_lattice(g, F, n, smax);
    if (n == 0) return L;
    return L.transform(random_unimodular(g, F, n));
}

// good BONG of rank n with R_1 = r0 and steps R_{i+1} - R_i up to jmax
inline GoodBong random_good_bong(std::mt19937_64& g, const Field& F, int n, int r0 = 0, int jmax = 6) {
    int e = F.e();
    for (;;) {
        Vec a;
        std::vector<int> R;
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            bool found = false;
            for (int tries = 0; tries < 40 && !found; ++tries) {
                int r = i == 0 ? r0 : R.back() + static_cast<int>(rnd(g, -2 * e, jmax));
                if (i >= 2 && r < R[i - 2]) continue;
                FieldElem x = random_unit(g, F) * F.pi_pow(r);
                if (i > 0 && !in_A_set(x / a.back())) continue;
                a.push_back(x);
                R.push_back(r);
                found = true;
            }
            ok = found;
        }
        if (ok && verify_good_bong(F, a)) return GoodBong(F, a);
    }
}

struct BongPair {
    GoodBong N, M;
};

// M of rank m <= maxm, N of rank n <= m with S_1 near R_1; wide steps so that every guard of the theorem fires
inline BongPair random_bong_pair(std::mt19937_64& g, const Field& F, int maxm, bool equal_rank = false) {
    int e = F.e();
    int m = static_cast<int>(rnd(g, 1, maxm));
    int n = equal_rank ? m : static_cast<int>(rnd(g, 1, m));
    GoodBong M = random_good_bong(g, F, m, static_cast<int>(rnd(g, -1, 1)), 2 * e + 4);
    GoodBong N = random_good_bong(g, F, n, M.R()[0] + static_cast<int>(rnd(g, 0, 2)), 2 * e + 4);
    return {N, M};
}

}  // namespace testutil
