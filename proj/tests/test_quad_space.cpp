#include "doctest.h"

#include "dyadic/quad_space.hpp"
#include "test_util.hpp"

#include <functional>
#include <set>

using namespace dyadic;
using namespace testutil;

namespace {

// isotropy of a diagonal form from the Hilbert symbol definition only
bool iso_oracle(const Field& F, const std::vector<SquareClass>& a);

bool repr_oracle(const Field& F, const std::vector<SquareClass>& a, SquareClass x) {
    if (a.size() == 1) return a[0] == x;
    auto b = a;
    b.push_back(-x);
    return iso_oracle(F, b);
}

bool iso_oracle(const Field& F, const std::vector<SquareClass>& a) {
    size_t n = a.size();
    if (n < 2) return false;
    if (n == 2) return (-(a[0] * a[1])).is_one();
    if (n == 3) return hilbert(-(a[1] * a[0]), -(a[2] * a[0])) == 1;
    std::vector<SquareClass> head{a[0], a[1]};
    std::vector<SquareClass> tail;
    for (size_t i = 2; i < n; ++i) tail.push_back(-a[i]);
    if (iso_oracle(F, head) || iso_oracle(F, tail)) return true;
    for (SquareClass x : F.all_classes())
        if (repr_oracle(F, head, x) && repr_oracle(F, tail, x)) return true;
    return false;
}

std::vector<SquareClass> random_diag(std::mt19937_64& g, const Field& F, int n) {
    std::vector<SquareClass> v;
    int N = F.num_classes();
    for (int i = 0; i < n; ++i) v.push_back(F.class_by_id(static_cast<int>(rnd(g, 0, N - 1))));
    return v;
}

}  // namespace

TEST_CASE("quadratic space worked values") {
    Field F = Field::q2();
    auto c = [&](long v) { return F.integer(v).square_class(); };
    QSpace H = QSpace::diag(F, std::vector<SquareClass>{c(1), c(-1)});
    CHECK(H.isotropic());
    CHECK(H.det() == c(-1));
    QSpace V = QSpace::diag(F, std::vector<SquareClass>{c(1), c(1)});
    CHECK(!V.isotropic());
    CHECK(V.represents(c(5)));
    CHECK(V.represents(c(2)));
    CHECK(!V.represents(c(3)));
    CHECK(!V.represents(c(6)));
    CHECK(V.represents(c(4)));
    QSpace aniso4 = QSpace::diag(F, std::vector<SquareClass>{c(1), c(1), c(1), c(1)});
    CHECK(!aniso4.isotropic());
    CHECK(QSpace::diag(F, std::vector<SquareClass>{c(1), c(1), c(1)}).represents(c(3)) == true);
    CHECK(!QSpace::diag(F, std::vector<SquareClass>{c(1), c(1), c(1)}).represents(c(7)));
    CHECK_THROWS_AS(QSpace(F, 2, c(-1), -1), InvalidInput);
    CHECK_THROWS_AS(QSpace(F, 1, c(3), -1), InvalidInput);
    CHECK_THROWS_AS(V.complement(QSpace::diag(F, std::vector<SquareClass>{c(3)})), NotRepresented);
}

TEST_CASE("isotropy and representation match the recursive oracle") {
    std::mt19937_64 g(11);
    for (const Field& F : test_fields()) {
        int trials = F.num_classes() > 64 ? 150 : 600;
        for (int t = 0; t < trials; ++t) {
            int n = static_cast<int>(rnd(g, 1, 5));
            auto a = random_diag(g, F, n);
            QSpace V = QSpace::diag(F, a);
            CHECK(V.isotropic() == iso_oracle(F, a));
            SquareClass x = random_diag(g, F, 1)[0];
            CHECK(V.represents(x) == repr_oracle(F, a, x));
        }
    }
}

TEST_CASE("orthogonal sum, complement and diagonal round trip") {
    std::mt19937_64 g(12);
    for (const Field& F : test_fields()) {
        for (int t = 0; t < 300; ++t) {
            auto a = random_diag(g, F, static_cast<int>(rnd(g, 0, 3)));
            auto b = random_diag(g, F, static_cast<int>(rnd(g, 0, 3)));
            auto ab = a;
            ab.insert(ab.end(), b.begin(), b.end());
            QSpace A = QSpace::diag(F, a), B = QSpace::diag(F, b), AB = QSpace::diag(F, ab);
            CHECK(A + B == AB);
            CHECK(AB.represents(A));
            CHECK(AB.complement(A) == B);
            CHECK(QSpace::diag(F, AB.diagonal()) == AB);
            // realizability: every realizable triple is reached by some diagonal
            QSpace H = QSpace::diag(F, std::vector<SquareClass>{F.class_by_id(0), -F.class_by_id(0)});
            CHECK((AB + H).isotropic());
        }
    }
}

TEST_CASE("realizable triples are exactly the invariants of diagonal forms") {
    Field F = Field::q2();
    auto all = F.all_classes();
    for (int n = 0; n <= 3; ++n) {
        std::set<std::pair<int, int>> seen;
        std::vector<SquareClass> cur;
        std::function<void()> rec = [&]() {
            if (static_cast<int>(cur.size()) == n) {
                QSpace V = QSpace::diag(F, cur);
                seen.insert({V.det().id(), V.hasse()});
                return;
            }
            for (auto x : all) {
                cur.push_back(x);
                rec();
                cur.pop_back();
            }
        };
        rec();
        for (auto d : all)
            for (int s : {1, -1}) CHECK(QSpace::realizable(n, d, s) == (seen.count({d.id(), s}) > 0));
    }
}

TEST_CASE("four statements have even parity") {
    std::mt19937_64 g(13);
    for (const Field& F : test_fields()) {
        for (int t = 0; t < 400; ++t) {
            int i = static_cast<int>(rnd(g, 2, 4));
            CHECK(four_statement_parity(ParityCase::I, F, random_diag(g, F, i), random_diag(g, F, i),
                                        random_diag(g, F, i - 1)));
            CHECK(four_statement_parity(ParityCase::II, F, random_diag(g, F, i + 1), random_diag(g, F, i),
                                        random_diag(g, F, i - 1)));
            CHECK(four_statement_parity(ParityCase::III, F, random_diag(g, F, i), random_diag(g, F, i - 1),
                                        random_diag(g, F, i - 1)));
        }
        int i = 1;
        CHECK(four_statement_parity(ParityCase::I, F, random_diag(g, F, i), random_diag(g, F, i),
                                    random_diag(g, F, 0)));
        CHECK(four_statement_parity(ParityCase::II, F, random_diag(g, F, 2), random_diag(g, F, 1),
                                    random_diag(g, F, 0)));
    }
}
