#include "doctest.h"

#include "dyadic/bong.hpp"
#include "dyadic/errors.hpp"
#include "dyadic/oracle.hpp"
#include "dyadic/repr.hpp"
#include "lattice_gen.hpp"

using namespace dyadic;
using namespace testutil;

namespace {

Lattice gram(const Field& F, std::vector<std::vector<long>> m) {
    Matrix G;
    for (auto& r : m) {
        Vec row;
        for (long v : r) row.push_back(F.integer(v));
        G.push_back(row);
    }
    return Lattice(F, G);
}

Lattice lat(const Field& F, std::initializer_list<long> d) {
    Vec v;
    for (long x : d) v.push_back(F.integer(x));
    return Lattice::diag(F, v);
}

std::vector<Field> small_fields() {
    return {Field::q2(), Field::parse("Q2-eisenstein([-2,0])"), Field::unramified(2), Field::parse("Q2-eisenstein([2,0,0])")};
}

// mixture of unstructured pairs and pairs built from good BONGs
BongPair any_pair(std::mt19937_64& g, const Field& F, int maxm, bool equal_rank = false) {
    if (rnd(g, 0, 1)) return random_bong_pair(g, F, maxm, equal_rank);
    InstanceParams p;
    p.max_rank = maxm;
    p.equal_rank = equal_rank;
    Instance I = random_instance(g, F, p);
    if (I.N.rank() > I.M.rank()) std::swap(I.N, I.M);
    return {good_bong(I.N), good_bong(I.M)};
}

}  // namespace

TEST_CASE("worked representation examples") {
    Field F = Field::q2();
    Lattice H = gram(F, {{0, 1}, {1, 0}});
    Lattice I2 = lat(F, {1, 1});

    Decision D = repr_decide(lat(F, {4}), I2);
    CHECK(D.holds);
    CHECK(D.failing.empty());

    D = repr_decide(lat(F, {1}), H);
    CHECK_FALSE(D.holds);
    CHECK(D.failing == "i");
    CHECK(D.witness == 1);

    D = repr_decide(lat(F, {6}), I2);
    CHECK_FALSE(D.holds);
    CHECK(D.failing == "space");

    D = repr_decide(I2, lat(F, {1}));
    CHECK_FALSE(D.holds);
    CHECK(D.failing == "space");

    PairInvariants P(good_bong(I2), good_bong(lat(F, {4})));
    CHECK(P.dbr(1, 0, 0) == Val::inf());
    CHECK(P.dbr(1, 1, 1) == Val::of(1));
    CHECK(P.A(1) == Val::of(-1));
    CHECK(P.A_prime(1) == Val::of(-1));
    CHECK(P.essential_indices() == std::vector<int>{1, 2});
    CHECK(P.A_tilde_prime(1).value() == P.A_prime(1));
    CHECK_THROWS_AS(P.A(2), std::out_of_range);
}

TEST_CASE("worked classification examples") {
    Field F = Field::q2();
    Lattice H = gram(F, {{0, 1}, {1, 0}});
    Decision D = classify(lat(F, {1, 7}), H);
    CHECK_FALSE(D.holds);
    CHECK(D.failing == "i");
    CHECK(classify(H, H).holds);
    CHECK(classify(lat(F, {1, 2}), lat(F, {1, 2})).holds);
    CHECK_FALSE(classify(lat(F, {1, 2}), lat(F, {1, 2, 4})).holds);
}

TEST_CASE("self pairs") {
    std::mt19937_64 g(101);
    for (const Field& F : small_fields()) {
        for (int it = 0; it < 60; ++it) {
            GoodBong L = random_good_bong(g, F, static_cast<int>(rnd(g, 1, 6)), 0, 2 * F.e() + 4);
            PairInvariants P(L, L);
            auto al = alphas(L);
            for (int i = 1; i < L.rank(); ++i) CHECK(P.A(i) == al[i - 1]);
            CHECK(repr_decide(L, L).holds);
            CHECK(classify(L, L).holds);
            for (int i = 1; i < L.rank(); ++i) {
                // d[-a_{i,i+1}] = d[-a_{1,i-1} a_{1,i+1}]
                Val d = P.dbr(-1, i - 1, i + 1);
                CHECK(d >= L.Rv(i) - L.Rv(i + 1) + al[i - 1]);
            }
        }
    }
}

TEST_CASE("d brackets: minimum, domination and basis independence") {
    std::mt19937_64 g(102);
    for (const Field& F : small_fields()) {
        for (int it = 0; it < 25; ++it) {
            int m = static_cast<int>(rnd(g, 1, 4)), n = static_cast<int>(rnd(g, 1, 4)), k = static_cast<int>(rnd(g, 1, 4));
            Lattice LM = random_lattice(g, F, m), LN = random_lattice(g, F, n), LK = random_lattice(g, F, k);
            GoodBong M = good_bong(LM), N = good_bong(LN), K = good_bong(LK);
            PairInvariants MN(M, N), NK(N, K), MK(M, K);
            auto classes = F.all_classes();
            for (int i = 0; i <= m; ++i)
                for (int j = 0; j <= n; ++j)
                    for (int l = 0; l <= k; ++l) {
                        SquareClass a = classes[rnd(g, 0, classes.size() - 1)];
                        SquareClass b = classes[rnd(g, 0, classes.size() - 1)];
                        CHECK(MK.dbr(a * b, i, l) >= vmin(MN.dbr(a, i, j), NK.dbr(b, j, l)));
                    }
            for (int i = 0; i <= m; ++i)
                for (int j = 0; j <= n; ++j) {
                    Val d = (M.prefix(i) * N.prefix(j)).defect();
                    if (i >= 1 && i < m) d = vmin(d, MN.alpha(i));
                    if (j >= 1 && j < n) d = vmin(d, MN.beta(j));
                    CHECK(MN.dbr(1, i, j) == d);
                }
            // another good BONG of each lattice
            BongOptions o;
            o.seed = 1 + it;
            GoodBong M2 = good_bong(LM.transform(random_unimodular(g, F, m)), o);
            GoodBong N2 = good_bong(LN.transform(random_unimodular(g, F, n)), o);
            PairInvariants MN2(M2, N2);
            for (const auto& c : classes)
                for (int i = 0; i <= m; ++i)
                    for (int j = 0; j <= n; ++j) CHECK(MN2.dbr(c, i, j) == MN.dbr(c, i, j));
            CHECK(repr_decide(N2, M2).holds == repr_decide(N, M).holds);
        }
    }
}

TEST_CASE("structure of A_i, A'_i and the tilde variants") {
    std::mt19937_64 g(103);
    int tilde_checked = 0, diff_checked = 0;
    for (const Field& F : small_fields()) {
        int e = F.e();
        for (int it = 0; it < 300; ++it) {
            auto [N, M] = any_pair(g, F, 5);
            int m = M.rank(), n = N.rank();
            if (m < 2) continue;
            PairInvariants P(M, N);
            Decision D = repr_decide(N, M);
            bool i_holds = D.holds || (D.failing != "space" && D.failing != "i");
            bool ii_holds = i_holds && (D.holds || D.failing != "ii");
            for (int i = 1; i <= std::min(m - 1, n); ++i) {
                Val Ap = P.A_prime(i);
                CHECK(P.A(i) == vmin(Val::from_twice((P.R(i + 1) - P.S(i)).to_int() + 2 * e), Ap));
                // replacements of the last term
                if (i != 1 && i != m - 1) {
                    Val base = P.R(i + 1) - P.S(i) + P.dbr(-1, i + 1, i - 1);
                    Val y = P.R(i + 1) + P.R(i + 2) - P.S(i - 1) - P.S(i);
                    if (P.R(i + 1) >= P.S(i - 1)) CHECK(vmin(base, y + P.dbr(-1, i, i - 2)) == Ap);
                    if (P.R(i + 2) >= P.S(i)) CHECK(vmin(base, y + P.dbr(-1, i + 2, i)) == Ap);
                    if (P.R(i + 1) >= P.S(i - 1) && P.R(i + 2) >= P.S(i)) CHECK(vmin(base, y + P.dbr(1, i, i)) == Ap);
                }
                auto At = P.A_tilde(i);
                CHECK(At.has_value() == (P.R(i + 1) + P.R(i + 2) > P.S(i - 1) + P.S(i)));
                if (At) {
                    Val d = P.dbr(1, i, i);
                    CHECK((d >= P.A(i)) == (d >= *At));
                    if (d >= P.A(i) || d >= *At) {
                        CHECK(P.A(i) == *At);
                        CHECK(P.A_prime(i) == *P.A_tilde_prime(i));
                        ++tilde_checked;
                    }
                }
                if (i_holds && P.R(i + 1) - P.S(i) > Val::of(2 * e))
                    CHECK((P.dbr(1, i, i) >= P.A(i)) == (M.prefix(i) * N.prefix(i) == F.class_by_id(0)));
                if (ii_holds) {
                    bool differ = P.A(i) != Ap;
                    Val rhs = Val::from_twice(2 * e - (P.R(i + 1) - P.S(i)).to_int());
                    CHECK(differ == (P.dbr(-1, i + 1, i - 1) > rhs));
                    if (differ) {
                        ++diff_checked;
                        for (int j : {i, i + 1}) {
                            if (j == 1 || j == m || j > n + 1) continue;
                            CHECK(P.iii_guard(j));
                        }
                    }
                }
            }
            for (int i = 2; i <= std::min(m - 1, n + 1); ++i)
                if (P.iii_guard(i)) CHECK(P.essential(i));
            if (n <= m - 2) CHECK_NOTHROW(P.tail());
            else CHECK_THROWS_AS(P.tail(), std::out_of_range);
        }
    }
    CHECK(tilde_checked > 50);
    CHECK(diff_checked > 10);
}

TEST_CASE("spaces of prefixes on represented pairs") {
    std::mt19937_64 g(104);
    int hits = 0;
    for (const Field& F : small_fields()) {
        int e = F.e();
        for (int it = 0; it < 300; ++it) {
            auto [N, M] = any_pair(g, F, 5);
            if (!repr_decide(N, M).holds) continue;
            for (int l = 1; l <= M.rank(); ++l)
                for (int j = 1; j <= N.rank(); ++j)
                    if (M.Rv(l) - N.Rv(j) > Val::of(2 * e)) {
                        CHECK(M.space(l - 1).represents(N.space(j)));
                        ++hits;
                    }
        }
    }
    CHECK(hits > 20);
}

TEST_CASE("duality for equal ranks") {
    std::mt19937_64 g(105);
    for (const Field& F : small_fields()) {
        for (int it = 0; it < 150; ++it) {
            auto [N, M] = any_pair(g, F, 5, true);
            int n = N.rank();
            GoodBong Md = dual_bong(M), Nd = dual_bong(N);
            CHECK(repr_decide(N, M).holds == repr_decide(Md, Nd).holds);
            PairInvariants P(M, N), Q(Nd, Md);
            for (int i = 1; i <= n; ++i) CHECK(P.essential(i) == Q.essential(n + 1 - i));
        }
    }
}

TEST_CASE("W order on represented pairs of equal rank") {
    std::mt19937_64 g(106);
    int hits = 0;
    for (const Field& F : small_fields()) {
        for (int it = 0; it < 200; ++it) {
            auto [N, M] = any_pair(g, F, 4, true);
            if (M.rank() < 2 || !repr_decide(N, M).holds) continue;
            CHECK(r_leq(invariants(M).W, invariants(N).W));
            ++hits;
        }
    }
    CHECK(hits > 20);
}

TEST_CASE("transitivity on a pool") {
    std::mt19937_64 g(107);
    Field F = Field::q2();
    std::vector<GoodBong> pool;
    while (pool.size() < 40) {
        if (rnd(g, 0, 1)) pool.push_back(random_good_bong(g, F, 3, static_cast<int>(rnd(g, -1, 2)), 4));
        else pool.push_back(good_bong(random_lattice(g, F, 3, 4)));
    }
    int sz = static_cast<int>(pool.size());
    std::vector<std::vector<char>> le(sz, std::vector<char>(sz));
    for (int a = 0; a < sz; ++a)
        for (int b = 0; b < sz; ++b) le[a][b] = repr_decide(pool[a], pool[b]).holds;
    int chains = 0;
    for (int k = 0; k < sz; ++k)
        for (int n = 0; n < sz; ++n)
            for (int m = 0; m < sz; ++m)
                if (le[k][n] && le[n][m]) {
                    CHECK(le[k][m]);
                    ++chains;
                }
    CHECK(chains > sz);
}

TEST_CASE("classification against representation at equal rank and volume") {
    std::mt19937_64 g(108);
    int iso = 0, non = 0;
    for (const Field& F : small_fields()) {
        for (int it = 0; it < 120; ++it) {
            int n = static_cast<int>(rnd(g, 1, 4));
            GoodBong L = random_good_bong(g, F, n, 0, 2 * F.e() + 3);
            GoodBong K;
            if (rnd(g, 0, 2) == 0) {
                BongOptions o;
                o.seed = 7 + it;
                K = good_bong(lattice_from_bong(L).transform(random_unimodular(g, F, n)), o);
            } else {
                // same R, fresh units
                Vec a;
                for (;;) {
                    a.clear();
                    for (int i = 0; i < n; ++i) a.push_back(random_unit(g, F) * F.pi_pow(L.R()[i]));
                    if (verify_good_bong(F, a)) break;
                }
                K = GoodBong(F, a);
            }
            bool c = classify(L, K).holds;
            CHECK(c == repr_decide(L, K).holds);
            CHECK(c == repr_decide(K, L).holds);
            c ? ++iso : ++non;
        }
    }
    CHECK(iso > 50);
    CHECK(non > 50);
}

TEST_CASE("padding to equal rank") {
    std::mt19937_64 g(109);
    int padded = 0;
    for (const Field& F : small_fields()) {
        for (int it = 0; it < 80; ++it) {
            auto [N, M] = any_pair(g, F, 4);
            if (N.rank() >= M.rank()) continue;
            Lattice LN = lattice_from_bong(N), LM = lattice_from_bong(M);
            if (!LM.space().represents(LN.space())) {
                CHECK_THROWS_AS(padding_complement(LN, LM), NotRepresented);
                continue;
            }
            Lattice K = padding_complement(LN, LM);
            int s = padding_shift(LN, K);
            bool v = repr_decide(N, M).holds;
            Lattice P1 = pad_to_equal_rank(LN, LM, K, s), P2 = pad_to_equal_rank(LN, LM, K, s + 2);
            CHECK(P1.rank() == LM.rank());
            CHECK(repr_decide(P1, LM).holds == v);
            CHECK(repr_decide(P2, LM).holds == v);
            ++padded;
        }
    }
    CHECK(padded > 40);
    Field F = Field::q2();
    Lattice N = lat(F, {1, 1});
    CHECK(pad_to_equal_rank(N, N, Lattice::zero(F), 3).gram() == N.gram());
    CHECK_THROWS_AS(pad_to_equal_rank(lat(F, {1}), lat(F, {1, 1}), lat(F, {3}), 2), InvalidInput);
}

TEST_CASE("agreement with the oracle on small pairs") {
    std::mt19937_64 g(110);
    Field F = Field::q2();
    InstanceParams p;
    p.max_rank = 2;
    int yes = 0;
    for (int it = 0; it < 80; ++it) {
        Instance I = random_instance(g, F, p);
        auto o = oracle_represents(I.N, I.M);
        REQUIRE(o.verdict != OracleVerdict::inconclusive);
        bool ov = o.verdict == OracleVerdict::yes;
        CHECK(ov == repr_decide(I.N, I.M).holds);
        if (I.constructed) CHECK(ov);
        yes += ov;
    }
    CHECK(yes > 20);
}
