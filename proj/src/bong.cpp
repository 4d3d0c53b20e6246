#include "dyadic/bong.hpp"

#include <algorithm>
#include <climits>
#include <random>
#include <set>

#include "dyadic/errors.hpp"
#include "dyadic/jordan.hpp"

namespace dyadic {

bool in_A_set(const FieldElem& a) {
    if (a.is_zero()) throw InvalidInput("in_A_set of zero");
    int R = a.ord();
    int e = a.field().e();
    if (R + 2 * e < 0) return false;
    return Val::of(R) + quad_defect(-a) >= Val::of(0);
}

bool verify_good_bong(const Field& F, const Vec& a) {
    int n = static_cast<int>(a.size());
    for (const auto& x : a)
        if (x.is_zero() || x.field_data() != F.data()) return false;
    for (int i = 0; i + 2 < n; ++i)
        if (a[i].ord() > a[i + 2].ord()) return false;
    for (int i = 0; i + 1 < n; ++i)
        if (!in_A_set(a[i + 1] / a[i])) return false;
    return true;
}

GoodBong::GoodBong(Field F, Vec a) : F_(F), a_(std::move(a)) {
    if (!verify_good_bong(F_, a_)) {
        std::string s;
        for (const auto& x : a_) s += (s.empty() ? "" : ", ") + x.str();
        throw InvalidInput("not a good BONG: [" + s + "]");
    }
    prefix_.push_back(F_.class_by_id(0));
    for (const auto& x : a_) {
        R_.push_back(x.ord());
        prefix_.push_back(prefix_.back() * x.square_class());
    }
}

Val GoodBong::Rv(int i) const {
    if (i < 1) return Val::neg_inf();
    if (i > rank()) return Val::inf();
    return Val::of(R_[i - 1]);
}

QSpace GoodBong::space(int i) const { return QSpace::diag(F_, Vec(a_.begin(), a_.begin() + i)); }

std::string GoodBong::str() const {
    std::string s = "<<";
    for (int i = 0; i < rank(); ++i) s += (i ? ", " : "") + a_[i].str();
    return s + ">>";
}

// ------------------------------------------------------------ construction

namespace {

struct Search {
    Field F;
    int e;
    std::vector<int> target;  // empty: goodness pruning only
    std::mt19937_64 rng;
    bool shuffle;
    long nodes = 0;
    long max_nodes;
    std::vector<FieldElem> coeffs;  // nonzero coefficient choices
    Vec out;
};

int norm_ord_of(const Matrix& G, int e) {
    int s = INT_MAX;
    int n = static_cast<int>(G.size());
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            if (G[i][j].is_zero()) continue;
            s = std::min(s, i == j ? G[i][j].ord() : G[i][j].ord() + e);
        }
    return s;
}

FieldElem quad(const Matrix& G, const Vec& c) {
    FieldElem s = c[0].field().zero();
    int n = static_cast<int>(G.size());
    for (int i = 0; i < n; ++i) {
        if (c[i].is_zero()) continue;
        for (int j = 0; j < n; ++j)
            if (!c[j].is_zero() && !G[i][j].is_zero()) s += c[i] * G[i][j] * c[j];
    }
    return s;
}

std::vector<Vec> candidates(Search& S, const Matrix& G) {
    int n = static_cast<int>(G.size());
    const Field& F = S.F;
    std::vector<Vec> out;
    std::set<std::vector<std::string>> seen;
    auto push = [&](const Vec& c) {
        std::vector<std::string> key;
        for (const auto& x : c) key.push_back(x.str());
        if (seen.insert(key).second) out.push_back(c);
    };
    Vec z(n, F.zero());
    for (int i = 0; i < n; ++i) {
        Vec c = z;
        c[i] = F.one();
        push(c);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            for (const auto& k : S.coeffs) {
                Vec c = z;
                c[i] = F.one();
                c[j] = k;
                push(c);
            }
        }
    // all 0/1 vectors
    if (n <= 8)
        for (int mask = 1; mask < (1 << n); ++mask) {
            Vec c = z;
            for (int i = 0; i < n; ++i)
                if (mask >> i & 1) c[i] = F.one();
            push(c);
        }
    // three-term combinations with the coefficient set
    if (n >= 3 && n <= 5)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int l = j + 1; l < n; ++l) {
                    if (i == j || i == l) continue;
                    for (const auto& a : S.coeffs)
                        for (const auto& b : S.coeffs) {
                            Vec c = z;
                            c[i] = F.one();
                            c[j] = a;
                            c[l] = b;
                            push(c);
                        }
                }
    if (S.shuffle) std::shuffle(out.begin(), out.end(), S.rng);
    // a few random integral vectors as a last resort
    std::uniform_int_distribution<int> dig(0, 15);
    for (int rep = 0; rep < 12; ++rep) {
        Vec c = z;
        for (int i = 0; i < n; ++i) {
            std::vector<mpq_class> co(F.degree());
            for (auto& q : co) q = dig(S.rng);
            c[i] = FieldElem(F.data(), co);
        }
        c[rep % n] += F.one();
        push(c);
    }
    return out;
}

bool dfs(Search& S, const Matrix& G) {
    int n = static_cast<int>(G.size());
    if (n == 0) return true;
    if (++S.nodes > S.max_nodes) return false;
    int i = static_cast<int>(S.out.size());
    int nu = norm_ord_of(G, S.e);
    if (!S.target.empty() && nu != S.target[i]) return false;
    if (i >= 2 && S.out[i - 2].ord() > nu) return false;
    if (n == 1) {
        S.out.push_back(G[0][0]);
        return true;
    }
    for (const Vec& c : candidates(S, G)) {
        FieldElem q = quad(G, c);
        if (q.is_zero() || q.ord() != nu) continue;
        int p = -1;
        for (int j = 0; j < n; ++j)
            if (c[j].is_unit()) {
                p = j;
                break;
            }
        if (p < 0) continue;
        Vec Gc(n, S.F.zero());
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l)
                if (!c[l].is_zero() && !G[j][l].is_zero()) Gc[j] += G[j][l] * c[l];
        FieldElem qinv = q.inv();
        Matrix H;
        for (int j = 0; j < n; ++j) {
            if (j == p) continue;
            Vec row;
            for (int l = 0; l < n; ++l) {
                if (l == p) continue;
                row.push_back(G[j][l] - Gc[j] * Gc[l] * qinv);
            }
            H.push_back(row);
        }
        int nu2 = norm_ord_of(H, S.e);
        if (!S.target.empty() && nu2 != S.target[i + 1]) continue;
        if (i >= 1 && S.out[i - 1].ord() > nu2) continue;
        S.out.push_back(q);
        if (dfs(S, H)) return true;
        S.out.pop_back();
        if (S.nodes > S.max_nodes) return false;
    }
    return false;
}

}  // namespace

GoodBong good_bong(const Lattice& L, const BongOptions& opt) {
    const Field& F = L.field();
    if (L.rank() == 0) return GoodBong(F, {});
    // work on a Jordan-adapted basis; it is also where the target orders come from
    JordanSplitting J = jordan_split(L);
    Search S{F, F.e(), J.predicted_R(), std::mt19937_64(opt.seed), opt.seed != 0, 0, opt.max_nodes, {}, {}};
    S.coeffs.push_back(F.one());
    if (F.f() > 1)
        for (uint32_t r = 2; r < static_cast<uint32_t>(1 << F.f()); ++r) S.coeffs.push_back(F.from_word(F.ring().lift(r)));
    S.coeffs.push_back(F.pi());
    S.coeffs.push_back(F.one() + F.pi());
    for (int pass = 0; pass < 2; ++pass) {
        S.out.clear();
        S.nodes = 0;
        if (dfs(S, J.split.gram())) {
            GoodBong B(F, S.out);
            return B;
        }
        S.target.clear();
    }
    throw BudgetExhausted("no good BONG found for " + L.str());
}

GoodBong dual_bong(const GoodBong& B) {
    Vec a;
    for (int i = B.rank() - 1; i >= 0; --i) a.push_back(B.a()[i].inv());
    return GoodBong(B.field(), a);
}

std::vector<Val> alphas(const GoodBong& B) {
    int n = B.rank();
    int e = B.field().e();
    const auto& R = B.R();
    std::vector<Val> dj;  // d(-a_j a_{j+1}), 0-based j
    for (int j = 0; j + 1 < n; ++j) dj.push_back((-(B.a()[j].square_class() * B.a()[j + 1].square_class())).defect());
    std::vector<Val> out;
    for (int i = 0; i + 1 < n; ++i) {
        Val m = Val::from_twice(R[i + 1] - R[i] + 2 * e);
        for (int j = 0; j <= i; ++j) m = vmin(m, Val::of(R[i + 1] - R[j]) + dj[j]);
        for (int j = i; j + 1 < n; ++j) m = vmin(m, Val::of(R[j + 1] - R[i]) + dj[j]);
        out.push_back(m);
    }
    return out;
}

InvariantPack invariants(const GoodBong& B) {
    InvariantPack P;
    P.R = B.R();
    P.alpha = alphas(B);
    for (size_t i = 0; i < P.alpha.size(); ++i) {
        P.W.push_back(Val::of(P.R[i]) + P.alpha[i]);
        P.W.push_back(Val::of(P.R[i + 1]) - P.alpha[i]);
    }
    return P;
}

Lattice lattice_from_bong(const GoodBong& B) {
    const Field& F = B.field();
    Lattice L = Lattice::zero(F);
    int n = B.rank();
    const Vec& a = B.a();
    for (int i = 0; i < n;) {
        if (i + 1 < n && B.R()[i + 1] < B.R()[i]) {
            int k = (B.R()[i] - B.R()[i + 1]) / 2;
            FieldElem eps = -(a[i + 1] / a[i]) * F.pi_pow(2 * k);
            FieldElem s = sqrt_approx(eps, 2 * k);
            FieldElem t = s * F.pi_pow(-k);
            Matrix G{{a[i], t * a[i]}, {t * a[i], a[i + 1] + t * t * a[i]}};
            L = L + Lattice(F, G);
            i += 2;
        } else {
            L = L + Lattice::diag(F, {a[i]});
            i += 1;
        }
    }
    return L;
}

// ------------------------------------------------------------ the order on B

std::vector<Val> to_vals(const std::vector<int>& x) {
    std::vector<Val> v;
    for (int a : x) v.push_back(Val::of(a));
    return v;
}

std::vector<Val> sharp(const std::vector<Val>& x) {
    std::vector<Val> v(x.rbegin(), x.rend());
    for (auto& a : v) a = -a;
    return v;
}

bool in_B(const std::vector<Val>& x) {
    for (size_t i = 0; i + 2 < x.size(); ++i)
        if (x[i] > x[i + 2]) return false;
    return true;
}

bool r_leq(const std::vector<Val>& x, const std::vector<Val>& y) {
    if (!in_B(x) || !in_B(y)) throw InvalidInput("sequence is not in B");
    size_t m = x.size(), n = y.size();
    if (m < n) return false;
    for (size_t i = 1; i <= n; ++i) {
        if (x[i - 1] <= y[i - 1]) continue;
        if (1 < i && i < m && x[i - 1] + x[i] <= y[i - 2] + y[i - 1]) continue;
        return false;
    }
    return true;
}

bool r_leq(const std::vector<int>& x, const std::vector<int>& y) { return r_leq(to_vals(x), to_vals(y)); }

}  // namespace dyadic
