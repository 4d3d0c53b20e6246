#include "dyadic/repr.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <sstream>

#include "dyadic/errors.hpp"

namespace dyadic {

namespace {

Val half_plus_e(Val x, int e) { return Val::from_twice(x.to_int() + 2 * e); }

std::string show(Val v) { return v.str(); }

}  // namespace

namespace {

std::vector<SquareClass> prefixes(const GoodBong& L) {
    std::vector<SquareClass> out;
    for (int i = 0; i <= L.rank(); ++i) out.push_back(L.prefix(i));
    return out;
}

}  // namespace

PairInvariants::PairInvariants(const GoodBong& M, const GoodBong& N)
    : PairInvariants(M.field(), M.R(), N.R(), alphas(M), alphas(N), prefixes(M), prefixes(N)) {
    if (!(M.field() == N.field())) throw InvalidInput("lattices over different fields");
}

PairInvariants::PairInvariants(Field F, std::vector<int> R, std::vector<int> S, std::vector<Val> alpha, std::vector<Val> beta,
                               std::vector<SquareClass> X, std::vector<SquareClass> Y)
    : F_(std::move(F)), R_(std::move(R)), S_(std::move(S)), alpha_(std::move(alpha)), beta_(std::move(beta)), X_(std::move(X)),
      Y_(std::move(Y)), e_(F_.e()) {
    if (X_.size() != R_.size() + 1 || Y_.size() != S_.size() + 1) throw InvalidInput("prefix classes of the wrong length");
    if (alpha_.size() + 1 != std::max<size_t>(R_.size(), 1) || beta_.size() + 1 != std::max<size_t>(S_.size(), 1))
        throw InvalidInput("alpha of the wrong length");
}

Val PairInvariants::at(const std::vector<int>& v, int i) {
    if (i < 1) return Val::neg_inf();
    if (i > static_cast<int>(v.size())) return Val::inf();
    return Val::of(v[i - 1]);
}

Val PairInvariants::alpha(int i) const {
    if (i < 1 || i > m() - 1) throw std::out_of_range("alpha index " + std::to_string(i));
    return alpha_[i - 1];
}

Val PairInvariants::beta(int j) const {
    if (j < 1 || j > n() - 1) throw std::out_of_range("beta index " + std::to_string(j));
    return beta_[j - 1];
}

Val PairInvariants::dbr(SquareClass eps, int i, int j) const {
    if (i < 0 || i > m() || j < 0 || j > n()) throw std::out_of_range("d[] index");
    auto key = std::make_tuple(eps.id(), i, j);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Val d = (eps * X_[i] * Y_[j]).defect();
    if (i >= 1 && i <= m() - 1) d = vmin(d, alpha_[i - 1]);
    if (j >= 1 && j <= n() - 1) d = vmin(d, beta_[j - 1]);
    memo_[key] = d;
    return d;
}

Val PairInvariants::dbr(int sign, int i, int j) const {
    SquareClass one = F_.class_by_id(0);
    return dbr(sign < 0 ? -one : one, i, j);
}

Val PairInvariants::first_A_term(int i) const { return half_plus_e(R(i + 1) - S(i), e_); }

Val PairInvariants::A_prime(int i) const {
    if (i < 1 || i > std::min(m() - 1, n())) throw std::out_of_range("A index " + std::to_string(i));
    Val v = R(i + 1) - S(i) + dbr(-1, i + 1, i - 1);
    if (i != 1 && i != m() - 1) v = vmin(v, R(i + 1) + R(i + 2) - S(i - 1) - S(i) + dbr(1, i + 2, i - 2));
    return v;
}

Val PairInvariants::A(int i) const { return vmin(first_A_term(i), A_prime(i)); }

Val PairInvariants::tail() const {
    int nn = n();
    if (nn < 1 || nn > m() - 2) throw std::out_of_range("tail A");
    Val v = R(nn + 2) + dbr(-1, nn + 2, nn);
    if (nn != m() - 2) v = vmin(v, R(nn + 2) + R(nn + 3) - S(nn) + dbr(1, nn + 3, nn - 1));
    return v;
}

std::optional<Val> PairInvariants::A_tilde_prime(int i) const {
    if (i < 1 || i > std::min(m() - 1, n())) throw std::out_of_range("A index " + std::to_string(i));
    if (!(R(i + 1) + R(i + 2) > S(i - 1) + S(i))) return std::nullopt;
    Val v = R(i + 1) - S(i) + dbr(-1, i + 1, i - 1);
    if (i != 1 && i != m() - 1) {
        v = vmin(v, R(i + 1) + R(i + 1) - S(i - 1) - S(i) + alpha(i + 1));
        v = vmin(v, R(i + 1) + R(i + 2) - S(i) - S(i) + beta(i - 1));
    }
    return v;
}

std::optional<Val> PairInvariants::A_tilde(int i) const {
    auto t = A_tilde_prime(i);
    if (!t) return std::nullopt;
    return vmin(first_A_term(i), *t);
}

Val PairInvariants::alpha_prime(int i) const {
    if (i < 1 || i > m() - 1) throw std::out_of_range("alpha' index");
    Val d = (-(X_[i - 1] * X_[i + 1])).defect();
    if (i - 1 >= 1) d = vmin(d, alpha_[i - 2]);
    if (i + 1 <= m() - 1) d = vmin(d, alpha_[i]);
    return R(i + 1) - R(i) + d;
}

bool PairInvariants::essential(int i) const {
    if (i < 1 || i > std::min(m(), n() + 1)) return false;
    return R(i + 1) > S(i - 1) && R(i + 1) + R(i + 2) > S(i - 2) + S(i - 1);
}

std::vector<int> PairInvariants::essential_indices() const {
    std::vector<int> out;
    for (int i = 1; i <= std::min(m(), n() + 1); ++i)
        if (essential(i)) out.push_back(i);
    return out;
}

Val PairInvariants::A_pair_sum(int i) const {
    if (i <= n()) return A(i - 1) + A(i);
    return A(n()) + tail();
}

bool PairInvariants::iii_guard(int i) const {
    if (!(R(i + 1) > S(i - 1))) return false;
    if (i <= n()) return A_pair_sum(i) > Val::of(2 * e_) + R(i) - S(i);
    return A_pair_sum(i) > Val::of(2 * e_) + R(i);
}

bool PairInvariants::iv_guard(int i) const {
    if (i != n() + 1 && !(S(i) >= R(i + 2))) return false;
    return R(i + 2) > S(i - 1) + Val::of(2 * e_) && S(i - 1) >= R(i + 1);
}

// ------------------------------------------------------------ decisions

Decision repr_decide_with(int m, int n, const QSpace& FM, const QSpace& FN, const std::function<PairInvariants()>& pair,
                     const std::function<QSpace(int)>& V, const std::function<QSpace(int)>& W) {
    Decision D;
    auto fail = [&](std::string cond, int i, std::string detail) {
        D.holds = false;
        D.failing = std::move(cond);
        D.witness = i;
        D.detail = std::move(detail);
        D.trace.push_back("(" + D.failing + ") fails" + (i ? " at i=" + std::to_string(i) : "") + ": " + D.detail);
        return D;
    };
    if (n > m) return fail("space", 0, "rank N = " + std::to_string(n) + " > rank M = " + std::to_string(m));
    if (!FM.represents(FN)) return fail("space", 0, FN.str() + " is not represented by " + FM.str());
    D.trace.push_back("space: " + FN.str() + " -> " + FM.str());
    if (n == 0) {
        D.holds = true;
        return D;
    }
    PairInvariants P = pair();
    for (int i = 1; i <= n; ++i) {
        Val R = P.R(i), S = P.S(i);
        if (R <= S) continue;
        if (1 < i && i < m && P.R(i) + P.R(i + 1) <= P.S(i - 1) + P.S(i)) continue;
        std::ostringstream os;
        os << "R_" << i << " = " << show(R) << " > S_" << i << " = " << show(S);
        if (1 < i && i < m)
            os << " and R_" << i << "+R_" << i + 1 << " = " << show(P.R(i) + P.R(i + 1)) << " > S_" << i - 1 << "+S_" << i
               << " = " << show(P.S(i - 1) + P.S(i));
        return fail("i", i, os.str());
    }
    D.trace.push_back("(i) holds");
    int top = std::min(m - 1, n);
    for (int i = 1; i <= top; ++i) D.A.push_back(P.A(i));
    if (n <= m - 2) D.tailA = P.tail();
    for (int i = 1; i <= top; ++i) {
        Val d = P.dbr(1, i, i);
        if (d >= D.A[i - 1]) continue;
        return fail("ii", i, "d[a_{1," + std::to_string(i) + "}b_{1," + std::to_string(i) + "}] = " + show(d) + " < A_" + std::to_string(i) +
                                 " = " + show(D.A[i - 1]));
    }
    D.trace.push_back("(ii) holds");
    for (int i = 2; i <= std::min(m - 1, n + 1); ++i) {
        if (!P.iii_guard(i)) continue;
        QSpace U = W(i - 1), Vi = V(i);
        if (Vi.represents(U)) {
            D.trace.push_back("(iii) i=" + std::to_string(i) + ": " + U.str() + " -> " + Vi.str());
            continue;
        }
        return fail("iii", i, "[b_1..b_" + std::to_string(i - 1) + "] = " + U.str() + " not represented by [a_1..a_" + std::to_string(i) +
                                  "] = " + Vi.str());
    }
    D.trace.push_back("(iii) holds");
    for (int i = 2; i <= std::min(m - 2, n + 1); ++i) {
        if (!P.iv_guard(i)) continue;
        QSpace U = W(i - 1), Vi = V(i + 1);
        if (Vi.represents(U)) {
            D.trace.push_back("(iv) i=" + std::to_string(i) + ": " + U.str() + " -> " + Vi.str());
            continue;
        }
        return fail("iv", i, "[b_1..b_" + std::to_string(i - 1) + "] = " + U.str() + " not represented by [a_1..a_" + std::to_string(i + 1) +
                                 "] = " + Vi.str());
    }
    D.trace.push_back("(iv) holds");
    D.holds = true;
    return D;
}

Decision repr_decide(const GoodBong& N, const GoodBong& M) {
    if (!(M.field() == N.field())) throw InvalidInput("lattices over different fields");
    int m = M.rank(), n = N.rank();
    return repr_decide_with(
        m, n, M.space(m), N.space(n), [&] { return PairInvariants(M, N); }, [&](int i) { return M.space(i); },
        [&](int j) { return N.space(j); });
}

Decision repr_decide(const Lattice& N, const Lattice& M, const BongOptions& opt) {
    return repr_decide(good_bong(N, opt), good_bong(M, opt));
}

Decision classify(const GoodBong& L, const GoodBong& K) {
    Decision D;
    auto fail = [&](std::string cond, int i, std::string detail) {
        D.holds = false;
        D.failing = std::move(cond);
        D.witness = i;
        D.detail = std::move(detail);
        D.trace.push_back("(" + D.failing + ") fails" + (i ? " at i=" + std::to_string(i) : "") + ": " + D.detail);
        return D;
    };
    if (!(L.field() == K.field())) throw InvalidInput("lattices over different fields");
    int n = L.rank();
    if (K.rank() != n) return fail("space", 0, "ranks differ");
    if (!(L.space(n) == K.space(n))) return fail("space", 0, L.space(n).str() + " != " + K.space(n).str());
    for (int i = 1; i <= n; ++i)
        if (L.R()[i - 1] != K.R()[i - 1])
            return fail("i", i, "R_" + std::to_string(i) + " = " + std::to_string(L.R()[i - 1]) + " != S_" + std::to_string(i) + " = " +
                                    std::to_string(K.R()[i - 1]));
    auto al = alphas(L), be = alphas(K);
    for (int i = 1; i < n; ++i)
        if (al[i - 1] != be[i - 1])
            return fail("ii", i, "alpha_" + std::to_string(i) + " = " + show(al[i - 1]) + " != beta_" + std::to_string(i) + " = " + show(be[i - 1]));
    int e = L.field().e();
    for (int i = 1; i < n; ++i) {
        Val d = (L.prefix(i) * K.prefix(i)).defect();
        if (d < al[i - 1])
            return fail("iii", i, "d(a_{1," + std::to_string(i) + "}b_{1," + std::to_string(i) + "}) = " + show(d) + " < alpha_" + std::to_string(i) +
                                      " = " + show(al[i - 1]));
    }
    for (int i = 2; i < n; ++i) {
        if (!(al[i - 2] + al[i - 1] > Val::of(2 * e))) continue;
        if (!L.space(i).represents(K.space(i - 1)))
            return fail("iv", i, "[b_1..b_" + std::to_string(i - 1) + "] not represented by [a_1..a_" + std::to_string(i) + "]");
    }
    D.holds = true;
    D.trace.push_back("isometric");
    return D;
}

Decision classify(const Lattice& L, const Lattice& K, const BongOptions& opt) { return classify(good_bong(L, opt), good_bong(K, opt)); }

// ------------------------------------------------------------ padding

Lattice pad_to_equal_rank(const Lattice& N, const Lattice& M, const Lattice& K, int s) {
    if (!(N.field() == M.field()) || !(K.field() == N.field())) throw InvalidInput("lattices over different fields");
    if (N.rank() + K.rank() != M.rank() || !(N.space() + K.space() == M.space()))
        throw InvalidInput("FM is not FN ⊥ FK");
    if (K.rank() == 0) return N;
    return N + K.scaled(N.field().pi_pow(2 * s));
}

Lattice padding_complement(const Lattice& N, const Lattice& M) {
    QSpace W = M.space().complement(N.space());
    Vec d;
    for (const auto& c : W.diagonal()) d.push_back(c.rep());
    return Lattice::diag(M.field(), d);
}

int padding_shift(const Lattice& N, const Lattice& K) {
    if (K.rank() == 0) return 0;
    int e = N.field().e();
    int Sn = N.rank() ? good_bong(N).R().back() : 0;
    int r1 = good_bong(K).R().front();
    int s = 0;
    while (r1 + 2 * s <= Sn + 4 * e + 4) ++s;
    while (s > 0 && r1 + 2 * (s - 1) > Sn + 4 * e + 4) --s;
    return s;
}

}  // namespace dyadic
