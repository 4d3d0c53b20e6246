#include "dyadic/jordan.hpp"

#include <algorithm>
#include <climits>

#include "dyadic/bong.hpp"
#include "dyadic/errors.hpp"

namespace dyadic {

namespace {

// v_j += c v_b on the Gram matrix G and the basis matrix T
void add_multiple(Matrix& G, Matrix& T, int j, int b, const FieldElem& c) {
    int n = static_cast<int>(G.size());
    for (int x = 0; x < n; ++x) G[j][x] += c * G[b][x];
    for (int x = 0; x < n; ++x) G[x][j] += c * G[x][b];
    for (size_t x = 0; x < T.size(); ++x) T[x][j] += c * T[x][b];
}

FieldElem block_norm_generator(const Field& F, const Matrix& G) {
    if (G.size() == 1) return G[0][0];
    int e = F.e();
    int best = INT_MAX, which = -1;
    for (int i = 0; i < 2; ++i)
        if (!G[i][i].is_zero() && G[i][i].ord() < best) {
            best = G[i][i].ord();
            which = i;
        }
    if (which >= 0 && best <= G[0][1].ord() + e) return G[which][which];
    return G[0][0] + G[1][1] + F.integer(2) * G[0][1];
}

}  // namespace

JordanSplitting jordan_split(const Lattice& L) {
    const Field& F = L.field();
    int n = L.rank();
    Matrix G = L.gram();
    Matrix T = identity(F, n);
    std::vector<bool> done(n, false);
    struct Piece {
        std::vector<int> idx;
        int scale;
    };
    std::vector<Piece> pieces;
    int left = n;
    while (left > 0) {
        int best = INT_MAX, bi = -1, bj = -1;
        for (int i = 0; i < n; ++i) {
            if (done[i]) continue;
            for (int j = i; j < n; ++j) {
                if (done[j] || G[i][j].is_zero()) continue;
                int o = G[i][j].ord();
                // prefer a diagonal pivot on ties
                if (o < best || (o == best && i == j && bi != bj)) {
                    best = o;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (bi < 0) throw std::logic_error("jordan_split on a degenerate form");
        if (bi == bj) {
            FieldElem inv = G[bi][bi].inv();
            for (int j = 0; j < n; ++j)
                if (!done[j] && j != bi && !G[j][bi].is_zero()) add_multiple(G, T, j, bi, -(G[j][bi] * inv));
            done[bi] = true;
            pieces.push_back({{bi}, best});
            --left;
        } else {
            int k = bi, l = bj;
            FieldElem a = G[k][k], b = G[k][l], c = G[l][l];
            FieldElem d = a * c - b * b;
            FieldElem dinv = d.inv();
            for (int j = 0; j < n; ++j) {
                if (done[j] || j == k || j == l) continue;
                FieldElem p = G[k][j], q = G[l][j];
                if (p.is_zero() && q.is_zero()) continue;
                // solve [[a,b],[b,c]] (s,t) = (p,q)
                FieldElem s = (c * p - b * q) * dinv;
                FieldElem t = (a * q - b * p) * dinv;
                if (!s.is_zero()) add_multiple(G, T, j, k, -s);
                if (!t.is_zero()) add_multiple(G, T, j, l, -t);
            }
            done[k] = done[l] = true;
            pieces.push_back({{k, l}, best});
            left -= 2;
        }
    }
    std::stable_sort(pieces.begin(), pieces.end(), [](const Piece& x, const Piece& y) { return x.scale < y.scale; });

    JordanSplitting J;
    J.field = F;
    std::vector<int> order;
    for (const auto& p : pieces)
        for (int i : p.idx) order.push_back(i);
    J.basis = Matrix(n, Vec(n, F.zero()));
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) J.basis[r][c] = T[r][order[c]];
    Matrix S(n, Vec(n, F.zero()));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) S[i][j] = G[order[i]][order[j]];
    J.split = Lattice(F, S);

    J.n.push_back(0);
    std::vector<FieldElem> comp_gen;
    size_t pi = 0;
    int pos = 0;
    while (pi < pieces.size()) {
        JordanComponent C;
        C.scale = pieces[pi].scale;
        int start = pos;
        FieldElem gen;
        int gen_ord = INT_MAX;
        while (pi < pieces.size() && pieces[pi].scale == C.scale) {
            int sz = static_cast<int>(pieces[pi].idx.size());
            Matrix B(sz, Vec(sz));
            for (int i = 0; i < sz; ++i)
                for (int j = 0; j < sz; ++j) B[i][j] = S[pos + i][pos + j];
            FieldElem g = block_norm_generator(F, B);
            if (g.ord() < gen_ord) {
                C.gen = g;
                gen_ord = g.ord();
                gen = g;
            }
            C.block_sizes.push_back(sz);
            pos += sz;
            ++pi;
        }
        C.dim = pos - start;
        C.norm_ord = gen_ord;
        Matrix B(C.dim, Vec(C.dim));
        for (int i = 0; i < C.dim; ++i)
            for (int j = 0; j < C.dim; ++j) B[i][j] = S[start + i][start + j];
        C.lattice = Lattice(F, B);
        J.comps.push_back(C);
        J.r.push_back(C.scale);
        J.n.push_back(pos);
        comp_gen.push_back(gen);
    }
    int t = J.t();
    for (int k = 0; k < t; ++k) {
        int best = INT_MAX;
        FieldElem g;
        auto consider = [&](int o, const FieldElem& v) {
            if (o < best) {
                best = o;
                g = v;
            }
        };
        consider(J.comps[k].norm_ord, comp_gen[k]);
        for (int j = k + 1; j < t; ++j) consider(J.comps[j].norm_ord, comp_gen[j]);
        for (int j = 0; j < k; ++j)
            consider(2 * (J.r[k] - J.r[j]) + J.comps[j].norm_ord, comp_gen[j] * F.pi_pow(2 * (J.r[k] - J.r[j])));
        J.u.push_back(best);
        J.normgen.push_back(g);
    }
    return J;
}

std::vector<int> JordanSplitting::predicted_R() const {
    std::vector<int> R;
    for (int k = 0; k < t(); ++k)
        for (int i = 0; i < comps[k].dim; ++i) R.push_back(i % 2 == 0 ? u[k] : 2 * r[k] - u[k]);
    return R;
}

QSpace JordanSplitting::partial_space(int k) const {
    QSpace V = QSpace::zero(field);
    for (int j = 0; j < k; ++j) V = V + comps[j].lattice.space();
    return V;
}

int JordanSplitting::norm_ord_at(int rr) const {
    int best = INT_MAX;
    for (int j = 0; j < t(); ++j) best = std::min(best, 2 * std::max(0, rr - r[j]) + comps[j].norm_ord);
    return best;
}

Val JordanSplitting::Rv(int i) const {
    if (i < 1) return Val::neg_inf();
    if (i > rank()) return Val::inf();
    return Val::of(predicted_R()[i - 1]);
}

SquareClass approximate_X(const JordanSplitting& J, int i) {
    int n = J.rank();
    if (i < 0 || i > n) throw std::out_of_range("approximation index " + std::to_string(i));
    if (i == n) return J.partial_space(J.t()).det();
    int k = 1;
    while (J.n[k] <= i) ++k;
    SquareClass D = J.partial_space(k - 1).det();
    int l = i - J.n[k - 1];
    SquareClass X = l % 2 == 0 ? D : J.normgen[k - 1].square_class() * D;
    return (l / 2) % 2 == 0 ? X : -X;
}

Approximation approximate_V(const JordanSplitting& J, int i) {
    int n = J.rank(), t = J.t();
    if (i < 0 || i > n) throw std::out_of_range("approximation index " + std::to_string(i));
    Approximation A;
    A.index = i;
    A.X = approximate_X(J, i);
    A.side = Approximation::Side::both;
    const Field& F = J.field;
    auto nk = [&](int k) { return k < 0 ? -1 : k > t ? n + 1 : J.n[k]; };
    for (int k = 0; k <= t; ++k)
        if (J.n[k] == i) {
            A.V = J.partial_space(k);
            A.lemma_case = i == 0 || i == n ? 0 : 1;
            return A;
        }
    int k = 1;
    while (J.n[k] <= i) ++k;
    // now n_{k-1} < i < n_k
    if (i == nk(k - 1) + 1 && J.Rv(i) == J.Rv(i + 2)) {
        A.V = J.partial_space(k - 1) + QSpace::diag(F, std::vector<SquareClass>{J.normgen[k - 1].square_class()});
        A.lemma_case = 2;
        return A;
    }
    if (i == nk(k) - 1 && J.Rv(i - 1) == J.Rv(i + 1)) {
        QSpace U = J.partial_space(k);
        SquareClass g = J.normgen[k - 1].square_class();
        if (!U.represents(g)) g = g * F.delta().square_class();
        A.V = U.complement(QSpace::diag(F, std::vector<SquareClass>{g}));
        A.lemma_case = 3;
        return A;
    }
    if (i == nk(k - 1) + 1 && i == nk(k) - 1) {
        const JordanComponent& C = J.comps[k - 1];
        if (C.gen.ord() != J.u[k - 1]) throw std::logic_error("binary component norm differs from the norm of L^{s L_k}");
        A.V = J.partial_space(k - 1) + QSpace::diag(F, std::vector<SquareClass>{C.gen.square_class()});
        A.lemma_case = 4;
        return A;
    }
    std::vector<SquareClass> d(i, F.class_by_id(0));
    d.back() = A.X;
    A.V = QSpace::diag(F, d);
    A.lemma_case = 0;
    return A;
}

Decision repr_decide_jordan(const Lattice& N, const Lattice& M, const BongOptions& opt) {
    if (!(M.field() == N.field())) throw InvalidInput("lattices over different fields");
    int m = M.rank(), n = N.rank();
    QSpace FM = M.space(), FN = N.space();
    if (n > m || !FM.represents(FN)) return repr_decide_with(m, n, FM, FN, nullptr, nullptr, nullptr);
    JordanSplitting JM = jordan_split(M), JN = jordan_split(N);
    std::vector<SquareClass> X, Y;
    std::vector<QSpace> V, W;
    for (int i = 0; i <= m; ++i) {
        auto a = approximate_V(JM, i);
        X.push_back(a.X);
        V.push_back(*a.V);
    }
    for (int j = 0; j <= n; ++j) {
        auto a = approximate_V(JN, j);
        Y.push_back(a.X);
        W.push_back(*a.V);
    }
    auto pair = [&] {
        return PairInvariants(M.field(), JM.predicted_R(), JN.predicted_R(), alphas(good_bong(M, opt)), alphas(good_bong(N, opt)), X, Y);
    };
    Decision D = repr_decide_with(
        m, n, FM, FN, pair, [&](int i) { return V[i]; }, [&](int j) { return W[j]; });
    D.trace.insert(D.trace.begin(), "Jordan path: t(M) = " + std::to_string(JM.t()) + ", t(N) = " + std::to_string(JN.t()));
    return D;
}

}  // namespace dyadic
