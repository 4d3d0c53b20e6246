#include "doctest.h"

#include "dyadic/bong.hpp"
#include "dyadic/jordan.hpp"
#include "dyadic/oracle.hpp"
#include "dyadic/repr.hpp"
#include "lattice_gen.hpp"

using namespace dyadic;
using namespace testutil;

namespace {

Lattice lat(const Field& F, std::initializer_list<long> d) {
    Vec v;
    for (long x : d) v.push_back(F.integer(x));
    return Lattice::diag(F, v);
}

std::vector<Field> small_fields() {
    return {Field::q2(), Field::parse("Q2-eisenstein([-2,0])"), Field::unramified(2), Field::parse("Q2-eisenstein([2,0,0])")};
}

Val alpha_at(const std::vector<Val>& al, int i) {
    if (i < 1 || i > static_cast<int>(al.size())) return Val::inf();
    return al[i - 1];
}

// Definition-level check of an approximation against a good BONG
void check_approximation(const GoodBong& B, const Approximation& A) {
    int n = B.rank(), i = A.index;
    int e = B.field().e();
    auto al = alphas(B);
    REQUIRE(A.V.has_value());
    CHECK(A.V->dim() == i);
    if (i == 0 || i == n) {
        CHECK(A.X == B.prefix(i));
        CHECK(*A.V == B.space(i));
        return;
    }
    CHECK((A.X * B.prefix(i)).defect() >= al[i - 1]);
    CHECK((A.V->det() * B.prefix(i)).defect() >= al[i - 1]);
    if (alpha_at(al, i - 1) + al[i - 1] > Val::of(2 * e)) CHECK(A.V->represents(B.space(i - 1)));
    if (al[i - 1] + alpha_at(al, i + 1) > Val::of(2 * e)) CHECK(B.space(i + 1).represents(*A.V));
}

}  // namespace

TEST_CASE("Jordan splitting examples") {
    Field F = Field::q2();
    JordanSplitting J = jordan_split(lat(F, {1, 2, 4}));
    CHECK(J.t() == 3);
    CHECK(J.r == std::vector<int>{0, 1, 2});

    Lattice H(F, Matrix{{F.zero(), F.integer(1)}, {F.integer(1), F.zero()}});
    J = jordan_split(H + lat(F, {3}));
    CHECK(J.t() == 1);
    CHECK(J.r == std::vector<int>{0});
    CHECK(J.n == std::vector<int>{0, 3});

    J = jordan_split(lat(F, {1, 1, 8}));
    CHECK(J.r == std::vector<int>{0, 3});
    CHECK(J.u == std::vector<int>{0, 3});
}

TEST_CASE("Jordan splittings of random lattices") {
    std::mt19937_64 g(201);
    for (const Field& F : small_fields()) {
        for (int it = 0; it < 60; ++it) {
            int n = static_cast<int>(rnd(g, 1, 6));
            Lattice L = random_lattice(g, F, n, 4);
            JordanSplitting J = jordan_split(L);
            CHECK(J.rank() == n);
            CHECK(L.transform(J.basis).gram() == J.split.gram());
            CHECK((J.split.det() / L.det()).ord() == 0);
            int dim = 0;
            for (int k = 0; k < J.t(); ++k) {
                const auto& C = J.comps[k];
                if (k) CHECK(J.r[k] > J.r[k - 1]);
                CHECK(C.lattice.scale_ord() == J.r[k]);
                CHECK(C.lattice.vol_ord() == C.dim * J.r[k]);
                CHECK(C.lattice.norm_ord() == C.norm_ord);
                CHECK(J.normgen[k].ord() == J.u[k]);
                dim += C.dim;
                CHECK(J.n[k + 1] == dim);
            }
            CHECK(J.predicted_R() == good_bong(L).R());
            for (int r = J.r.front() - 3; r <= J.r.back() + 3; ++r) {
                int want;
                if (r <= J.r.front()) want = J.u.front();
                else if (r >= J.r.back()) want = J.u.back() + 2 * (r - J.r.back());
                else {
                    int k = 0;
                    while (!(J.r[k] <= r && r <= J.r[k + 1])) ++k;
                    want = std::min(J.u[k] + 2 * (r - J.r[k]), J.u[k + 1]);
                }
                CHECK(J.norm_ord_at(r) == want);
            }
        }
    }
}

TEST_CASE("approximation examples") {
    Field F = Field::q2();
    Lattice L = lat(F, {1, 2, 4});
    JordanSplitting J = jordan_split(L);
    CHECK(approximate_X(J, 0) == F.class_by_id(0));
    CHECK(approximate_X(J, 3) == L.space().det());
    CHECK(approximate_X(J, 1) == F.class_by_id(0));
    Approximation A = approximate_V(J, 1);
    CHECK(A.lemma_case == 1);
    CHECK(*A.V == QSpace::diag(F, Vec{F.integer(1)}));

    Lattice K = lat(F, {1, 2, 10});
    JordanSplitting JK = jordan_split(K);
    A = approximate_V(JK, 2);
    CHECK(A.lemma_case == 4);
    check_approximation(good_bong(K), A);
}

TEST_CASE("approximations satisfy their definitions") {
    std::mt19937_64 g(202);
    int cases[5] = {0, 0, 0, 0, 0};
    for (const Field& F : small_fields()) {
        for (int it = 0; it < 120; ++it) {
            int n = static_cast<int>(rnd(g, 1, 6));
            Lattice L = rnd(g, 0, 1) ? random_lattice(g, F, n, 4) : lattice_from_bong(random_good_bong(g, F, n, 0, 2 * F.e() + 4));
            GoodBong B = good_bong(L);
            JordanSplitting J = jordan_split(L);
            auto al = alphas(B);
            for (int i = 0; i <= n; ++i) {
                Approximation A = approximate_V(J, i);
                ++cases[A.lemma_case];
                check_approximation(B, A);
            }
            // the dual form read from the end of each component
            for (int k = 1; k <= J.t(); ++k)
                for (int i = J.n[k - 1] + 1; i <= J.n[k] && i < n; ++i) {
                    SquareClass D = J.partial_space(k).det();
                    int l = J.n[k] - i;
                    SquareClass X = l % 2 == 0 ? D : J.normgen[k - 1].square_class() * D;
                    if ((l / 2) % 2) X = -X;
                    CHECK((X * B.prefix(i)).defect() >= al[i - 1]);
                }
        }
    }
    for (int c = 0; c < 5; ++c) CHECK(cases[c] > 10);
}

TEST_CASE("d brackets through approximations") {
    std::mt19937_64 g(203);
    for (const Field& F : small_fields()) {
        for (int it = 0; it < 30; ++it) {
            auto [N, M] = random_bong_pair(g, F, 5);
            Lattice LM = lattice_from_bong(M), LN = lattice_from_bong(N);
            JordanSplitting JM = jordan_split(LM), JN = jordan_split(LN);
            std::vector<SquareClass> X, Y;
            for (int i = 0; i <= M.rank(); ++i) X.push_back(approximate_X(JM, i));
            for (int j = 0; j <= N.rank(); ++j) Y.push_back(approximate_X(JN, j));
            PairInvariants P(M, N), Q(F, JM.predicted_R(), JN.predicted_R(), alphas(M), alphas(N), X, Y);
            for (const auto& c : F.all_classes())
                for (int i = 0; i <= M.rank(); ++i)
                    for (int j = 0; j <= N.rank(); ++j) CHECK(P.dbr(c, i, j) == Q.dbr(c, i, j));
        }
    }
}

TEST_CASE("Jordan path decisions") {
    Field F = Field::q2();
    Lattice H(F, Matrix{{F.zero(), F.integer(1)}, {F.integer(1), F.zero()}});
    Decision D = repr_decide_jordan(lat(F, {1}), H);
    CHECK(D.failing == "i");
    CHECK(D.witness == 1);
    CHECK(repr_decide_jordan(lat(F, {4}), lat(F, {1, 1})).holds);
    CHECK(repr_decide_jordan(lat(F, {6}), lat(F, {1, 1})).failing == "space");

    std::mt19937_64 g(204);
    std::map<std::string, int> seen;
    for (const Field& F2 : small_fields()) {
        for (int it = 0; it < 150; ++it) {
            Lattice LN, LM;
            if (rnd(g, 0, 1)) {
                auto [N, M] = random_bong_pair(g, F2, 6);
                LN = lattice_from_bong(N);
                LM = lattice_from_bong(M).transform(random_unimodular(g, F2, M.rank()));
            } else {
                InstanceParams p;
                p.max_rank = 4;
                Instance I = random_instance(g, F2, p);
                LN = I.N;
                LM = I.M;
            }
            Decision A = repr_decide(LN, LM), B = repr_decide_jordan(LN, LM);
            CHECK(A.holds == B.holds);
            CHECK(A.failing == B.failing);
            CHECK(A.witness == B.witness);
            ++seen[A.failing];
            CHECK(repr_decide_jordan(LM, LM).holds);
        }
    }
    CHECK(seen["ii"] > 10);
    CHECK(seen["iii"] > 5);
}
