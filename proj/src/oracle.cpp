#include "dyadic/oracle.hpp"

#include <algorithm>
#include <climits>

#include "dyadic/errors.hpp"
#include "dyadic/jordan.hpp"

namespace dyadic {

const char* to_string(OracleVerdict v) {
    switch (v) {
        case OracleVerdict::yes: return "yes";
        case OracleVerdict::no: return "no";
        case OracleVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

int min_entry_ord(const Matrix& A) {
    int o = INT_MAX;
    for (const auto& r : A)
        for (const auto& x : r)
            if (!x.is_zero()) o = std::min(o, x.ord());
    return o;
}

// c with H^{-1} in pi^{-c} M_n(O)
int inverse_bound(const Lattice& N) { return -min_entry_ord(inverse(N.field(), N.gram())); }

struct Tangent {
    std::vector<std::vector<Word>> A;  // integral generator, m x m (left) or n x n (right)
    bool left;
};

struct Searcher {
    const LocalRing& R;
    int m, n, e, nu, depth;
    std::vector<std::vector<Word>> G;  // m x m, scale 0
    std::vector<std::vector<Word>> H;  // n x n
    std::vector<Tangent> tangents;
    std::vector<Word> pipow;
    std::vector<Word> lifts;
    std::vector<std::vector<Word>> x, gx;  // columns of X and G X
    std::vector<std::vector<char>> forced;  // per level: digit positions j*m+i fixed to zero
    long nodes = 0, max_nodes;

    Word dot(const std::vector<Word>& a, const std::vector<Word>& b) const {
        Word s = R.zero();
        for (int i = 0; i < m; ++i) s = R.add(s, R.mul(a[i], b[i]));
        return s;
    }

    // entries (a, j), a <= j, are consistent with the levels reached
    bool consistent(int k, int j) const {
        for (int a = 0; a <= j; ++a) {
            Word f = R.sub(dot(x[a], gx[j]), H[a][j]);
            int l = k + 1;
            int need = a == j ? std::min(l + e, 2 * l + nu) : l;
            if (R.ord(f) < need) return false;
        }
        return true;
    }

    // level-k digit directions reachable by exact automorphisms of M (left) and N (right);
    // their pivots can be fixed to zero without losing solutions
    std::vector<char> reduction(int k) const {
        std::vector<char> mask(m * n, 0);
        if (k < e + 1) return mask;
        std::vector<std::vector<uint32_t>> basis;  // echelon rows
        std::vector<int> piv;
        int cap = R.cap();
        for (const auto& t : tangents) {
            // Y = A X (left) or X A (right), as m x n
            std::vector<std::vector<Word>> Y(m, std::vector<Word>(n, R.zero()));
            int v = cap;
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < n; ++j) {
                    Word s = R.zero();
                    if (t.left)
                        for (int l = 0; l < m; ++l) s = R.add(s, R.mul(t.A[i][l], x[j][l]));
                    else
                        for (int l = 0; l < n; ++l) s = R.add(s, R.mul(x[l][i], t.A[l][j]));
                    Y[i][j] = s;
                    v = std::min(v, R.ord(s));
                }
            if (v >= cap || v > k - e - 1) continue;
            std::vector<uint32_t> w(m * n, 0);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < n; ++j)
                    if (R.ord(Y[i][j]) == v) w[j * m + i] = R.lead(Y[i][j], v);
            for (size_t b = 0; b < basis.size(); ++b) {
                uint32_t c = w[piv[b]];
                if (!c) continue;
                for (int p = 0; p < m * n; ++p) w[p] ^= R.rmul(c, basis[b][p]);
            }
            int p0 = -1;
            for (int p = 0; p < m * n; ++p)
                if (w[p]) {
                    p0 = p;
                    break;
                }
            if (p0 < 0) continue;
            uint32_t inv = R.rinv(w[p0]);
            for (auto& c : w) c = R.rmul(c, inv);
            for (size_t b = 0; b < basis.size(); ++b) {
                uint32_t c = basis[b][p0];
                if (!c) continue;
                for (int p = 0; p < m * n; ++p) basis[b][p] ^= R.rmul(c, w[p]);
            }
            basis.push_back(w);
            piv.push_back(p0);
        }
        for (int p : piv) mask[p] = 1;
        return mask;
    }

    bool choose(int k, int j, int i, const std::vector<Word>& x0, const std::vector<Word>& g0, int s) {
        if (i == m) {
            if (consistent(k, j) && step(s + 1)) return true;
            return false;
        }
        const auto& mask = forced[k];
        int q = mask[j * m + i] ? 1 : static_cast<int>(lifts.size());
        std::vector<Word> xs = x[j], gs = gx[j];
        for (int r = 0; r < q; ++r) {
            if (r) {
                Word d = R.mul(pipow[k], lifts[r]);
                x[j][i] = R.add(xs[i], d);
                for (int l = 0; l < m; ++l) gx[j][l] = R.add(gs[l], R.mul(G[l][i], d));
            }
            if (choose(k, j, i + 1, x0, g0, s)) return true;
            x[j] = xs;
            gx[j] = gs;
        }
        return false;
    }

    bool step(int s) {
        if (s == depth * n) return true;
        int k = s / n, j = s % n;
        if (++nodes > max_nodes) throw BudgetExhausted("oracle search exceeded " + std::to_string(max_nodes) + " nodes");
        if (j == 0) forced[k] = reduction(k);
        std::vector<Word> x0 = x[j], g0 = gx[j];
        return choose(k, j, 0, x0, g0, s);
    }
};

// generators G^{-1}(E_ab - E_ba), scaled to be integral
std::vector<std::vector<std::vector<Word>>> skew_generators(const Lattice& L) {
    const Field& F = L.field();
    int n = L.rank();
    Matrix Gi = inverse(F, L.gram());
    std::vector<std::vector<std::vector<Word>>> out;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            Matrix A(n, Vec(n, F.zero()));
            for (int i = 0; i < n; ++i) {
                A[i][b] = Gi[i][a];
                A[i][a] = -Gi[i][b];
            }
            int o = min_entry_ord(A);
            if (o == INT_MAX) continue;
            FieldElem sc = F.pi_pow(-o);
            std::vector<std::vector<Word>> W(n, std::vector<Word>(n));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) W[i][j] = (A[i][j] * sc).to_word();
            out.push_back(W);
        }
    return out;
}

}  // namespace

bool certify_witness(const Lattice& N, const Lattice& M, const Matrix& X) {
    const Field& F = M.field();
    int n = N.rank();
    if (n == 0) return true;
    for (const auto& r : X)
        for (const auto& v : r)
            if (!v.is_zero() && v.ord() < 0) return false;
    Matrix E = matmul(matmul(transpose(X), M.gram()), X);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) E[i][j] -= N.gram()[i][j];
    int t = min_entry_ord(E);
    return t == INT_MAX || t > inverse_bound(N) + 2 * F.e();
}

OracleResult oracle_represents(const Lattice& N, const Lattice& M, const SearchConfig& cfg) {
    if (!(N.field() == M.field())) throw InvalidInput("lattices over different fields");
    const Field& F = M.field();
    int m = M.rank(), n = N.rank();
    OracleResult res;
    if (n > m) return res;
    if (n == 0) {
        res.verdict = OracleVerdict::yes;
        res.witness = Matrix(m, Vec());
        return res;
    }
    int sM = M.scale_ord();
    if (N.scale_ord() < sM || N.norm_ord() < M.norm_ord()) return res;
    if (!M.space().represents(N.space())) return res;
    int e = F.e();

    // search on Jordan bases: X = P_M X' P_N^{-1}
    JordanSplitting JM = jordan_split(M), JN = jordan_split(N);
    FieldElem lam = F.pi_pow(-sM);
    Lattice Ms = JM.split.scaled(lam), Ns = JN.split.scaled(lam);
    int c = inverse_bound(Ns);
    int T = std::max(1, c + 2 * e + 1);
    res.certify_depth = T;
    const LocalRing& R = F.ring();
    if (T + 2 * e + 4 > R.cap()) throw InsufficientPrecision("oracle depth " + std::to_string(T) + " exceeds the word precision");

    Searcher S{R, m, n, e, Ms.norm_ord(), 0, {}, {}, {}, {}, {}, {}, {}, {}, 0, cfg.max_nodes};
    S.G.assign(m, std::vector<Word>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) S.G[i][j] = Ms.gram()[i][j].to_word();
    S.H.assign(n, std::vector<Word>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) S.H[i][j] = Ns.gram()[i][j].to_word();
    for (auto& A : skew_generators(Ms)) S.tangents.push_back({A, true});
    for (auto& A : skew_generators(Ns)) S.tangents.push_back({A, false});
    for (int r = 0; r < R.residue_size(); ++r) S.lifts.push_back(R.lift(static_cast<uint32_t>(r)));
    for (int k = 0; k <= T + cfg.lift_slack + 2; ++k) S.pipow.push_back(R.pi_pow(k));
    Matrix PNinv = inverse(F, JN.basis);

    int depth = cfg.precision > 0 ? std::min(cfg.precision, T) : T;
    for (;;) {
        S.depth = depth;
        S.x.assign(n, std::vector<Word>(m, R.zero()));
        S.gx.assign(n, std::vector<Word>(m, R.zero()));
        S.forced.assign(depth, {});
        bool found = S.step(0);
        res.nodes = S.nodes;
        res.depth = depth;
        if (!found) {
            res.verdict = OracleVerdict::no;
            return res;
        }
        Matrix Xs(m, Vec(n));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) Xs[i][j] = F.from_word(R.reduce(S.x[j][i], depth));
        Matrix X = matmul(matmul(JM.basis, Xs), PNinv);
        if (certify_witness(N, M, X)) {
            res.verdict = OracleVerdict::yes;
            res.witness = X;
            return res;
        }
        if (depth >= T) {
            // survivors at the certifying depth always satisfy the bound
            res.verdict = OracleVerdict::inconclusive;
            return res;
        }
        depth = std::min(T, depth + std::max(1, cfg.lift_slack));
    }
}

OracleVerdict oracle_isometric(const Lattice& L1, const Lattice& L2, const SearchConfig& cfg) {
    if (L1.rank() != L2.rank()) return OracleVerdict::no;
    if (L1.rank() == 0) return OracleVerdict::yes;
    if (L1.vol_ord() != L2.vol_ord()) return OracleVerdict::no;
    auto a = oracle_represents(L1, L2, cfg).verdict;
    if (a != OracleVerdict::yes) return a;
    return oracle_represents(L2, L1, cfg).verdict;
}

// ------------------------------------------------------------ random instances

Lattice random_gram(std::mt19937_64& g, const Field& F, int n, int vmin, int vmax) {
    auto rnd = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); };
    auto elem = [&](int v) {
        for (;;) {
            std::vector<mpq_class> c(F.degree());
            for (auto& x : c) x = mpq_class(rnd(-7, 7));
            FieldElem a(F.data(), c);
            if (a.is_zero()) continue;
            return a * F.pi_pow(v - a.ord());
        }
    };
    for (;;) {
        Matrix G(n, Vec(n, F.zero()));
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                if (i != j && rnd(0, 2) == 0) continue;
                G[i][j] = G[j][i] = elem(static_cast<int>(rnd(vmin, vmax)));
            }
        if (!det(F, G).is_zero()) return Lattice(F, G);
    }
}

Instance random_instance(std::mt19937_64& g, const Field& F, const InstanceParams& p) {
    auto rnd = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); };
    Instance I;
    int m = static_cast<int>(rnd(1, p.max_rank));
    int n = p.equal_rank ? m : static_cast<int>(rnd(1, m));
    I.M = random_gram(g, F, m, p.vmin, p.vmax);
    I.constructed = std::uniform_real_distribution<double>(0, 1)(g) < p.sublattice_fraction;
    if (!I.constructed) {
        I.N = random_gram(g, F, n, p.vmin, p.vmax);
        return I;
    }
    for (;;) {
        // random upper triangular integral m x n matrix with nonzero diagonal, columns permuted
        Matrix T(m, Vec(n, F.zero()));
        for (int j = 0; j < n; ++j) {
            T[j][j] = F.pi_pow(static_cast<int>(rnd(0, 1))) * F.integer(2 * rnd(0, 3) + 1);
            for (int i = 0; i < m; ++i) {
                bool free_entry = i < j || i >= n;
                if (!free_entry || rnd(0, 1) == 0) continue;
                T[i][j] = F.integer(rnd(-3, 3));
            }
        }
        for (int i = m - 1; i > 0; --i) std::swap(T[i], T[rnd(0, i)]);
        Matrix H = matmul(matmul(transpose(T), I.M.gram()), T);
        if (det(F, H).is_zero()) continue;
        I.N = Lattice(F, H);
        return I;
    }
}

}  // namespace dyadic
