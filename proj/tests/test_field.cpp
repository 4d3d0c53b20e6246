#include <map>
#include <set>

#include "doctest.h"
#include "dyadic/field.hpp"
#include "test_util.hpp"

using namespace dyadic;
using testutil::random_elem;
using testutil::test_fields;

namespace {

// max ord(u - x^2) over x modulo pi^N; inf once it passes 2e
Val defect_brute(const Field& F, const FieldElem& a) {
    FieldElem w = a;
    int v = a.ord();
    if (v % 2) return Val::of(0);
    w = a * F.pi_pow(-v);
    const LocalRing& R = F.ring();
    Word u = w.to_word();
    const int e = F.e(), q = R.residue_size();
    const int N = 2 * e + 2;
    long cnt = 1;
    for (int i = 0; i < N; ++i) cnt *= q;
    int best = 0;
    for (long idx = 0; idx < cnt; ++idx) {
        long t = idx;
        Word x, p = R.one();
        for (int i = 0; i < N; ++i) {
            x = R.add(x, R.mul(R.lift(static_cast<uint32_t>(t % q)), p));
            t /= q;
            p = R.mul(p, R.pi());
        }
        best = std::max(best, R.ord(R.sub(u, R.mul(x, x))));
    }
    return best > 2 * e ? Val::inf() : Val::of(best);
}

long v2l(long x) {
    long k = 0;
    while (x % 2 == 0) {
        x /= 2;
        ++k;
    }
    return k;
}

// classical closed form over Q2 for integers
int hilbert_q2_formula(long a, long b) {
    long al = v2l(a), be = v2l(b);
    long u = a >> al, v = b >> be;
    auto eps = [](long x) { return (((x - 1) / 2) % 2 + 2) % 2; };
    auto omg = [](long x) { return (((x * x - 1) / 8) % 2 + 2) % 2; };
    long s = eps(u) * eps(v) + al * omg(v) + be * omg(u);
    return s % 2 ? -1 : 1;
}

}  // namespace

TEST_CASE("defect worked values over Q2") {
    Field F = Field::q2();
    CHECK(quad_defect(F.integer(3)) == Val::of(1));
    CHECK(quad_defect(F.integer(5)) == Val::of(2));
    CHECK(quad_defect(F.integer(2)) == Val::of(0));
    CHECK(quad_defect(F.integer(-1)) == Val::of(1));
    CHECK(quad_defect(F.integer(1)).is_inf());
    CHECK(quad_defect(F.integer(17)).is_inf());
    CHECK(quad_defect(F.parse_elem("-1/4")) == Val::of(1));
}

TEST_CASE("square class representatives over Q2") {
    Field F = Field::q2();
    std::vector<std::string> reps;
    for (auto c : F.all_classes()) reps.push_back(c.str());
    CHECK(reps == std::vector<std::string>{"1", "5", "3", "7", "2", "10", "6", "14"});
    CHECK(F.delta() == F.integer(5));
}

TEST_CASE("Hilbert symbol worked values over Q2") {
    Field F = Field::q2();
    CHECK(hilbert(F.integer(2), F.integer(5)) == -1);
    CHECK(hilbert(F.integer(-1), F.integer(-1)) == -1);
    CHECK(hilbert(F.integer(5), F.integer(5)) == 1);
    CHECK(in_norm_group(F.integer(5), F.integer(3)));
}

TEST_CASE("Hilbert symbol matches the closed form over Q2") {
    Field F = Field::q2();
    for (long a = -40; a <= 40; ++a)
        for (long b = -40; b <= 40; ++b) {
            if (!a || !b) continue;
            INFO(a << " " << b);
            REQUIRE(hilbert(F.integer(a), F.integer(b)) == hilbert_q2_formula(a, b));
        }
}

TEST_CASE("defect agrees with brute force") {
    std::mt19937_64 g(11);
    for (const Field& F : test_fields()) {
        if (F.degree() > 2) continue;  // brute force cost
        for (int it = 0; it < 60; ++it) {
            FieldElem a = random_elem(g, F);
            INFO(F.name() << " " << a.str());
            REQUIRE(quad_defect(a) == defect_brute(F, a));
        }
    }
}

TEST_CASE("class table structure") {
    for (const Field& F : test_fields()) {
        INFO(F.name());
        int expect = 1 << (2 + F.e() * F.f());
        CHECK(F.num_classes() == expect);
        auto cls = F.all_classes();
        // defect is constant on classes and determines squares
        int squares = 0, deltas = 0;
        for (auto c : cls) {
            Val d = c.defect();
            if (d.is_inf()) ++squares;
            if (d == Val::of(2 * F.e())) ++deltas;
            CHECK(quad_defect(c.rep()) == d);
            CHECK(c.rep().square_class() == c);
            CHECK(quad_defect(c.rep() * F.integer(9) * F.pi_pow(2)) == d);
        }
        CHECK(squares == 1);
        CHECK(deltas == 1);
        CHECK(quad_defect(F.delta()) == Val::of(2 * F.e()));
    }
}

TEST_CASE("classes coincide exactly when the quotient has infinite defect") {
    std::mt19937_64 g(5);
    for (const Field& F : test_fields()) {
        for (int it = 0; it < 200; ++it) {
            FieldElem a = random_elem(g, F), b = random_elem(g, F);
            if (it % 3 == 0) {
                FieldElem x = random_elem(g, F);
                b = a * x * x;
            }
            INFO(F.name() << " " << a.str() << " " << b.str());
            bool same = a.square_class() == b.square_class();
            CHECK(same == quad_defect(a / b).is_inf());
            CHECK((a * b).square_class() == a.square_class() * b.square_class());
            CHECK((-a).square_class() == -a.square_class());
        }
    }
}

TEST_CASE("defect domination and residue-field dichotomy") {
    std::mt19937_64 g(7);
    for (const Field& F : test_fields()) {
        auto cls = F.all_classes();
        for (auto a : cls)
            for (auto b : cls) {
                Val da = a.defect(), db = b.defect(), dab = (a * b).defect();
                CHECK(dab >= vmin(da, db));
                if (F.f() == 1 && da == db && !da.is_inf()) CHECK(dab > da);
            }
        if (F.f() > 1) {
            for (auto a : cls) {
                Val da = a.defect();
                if (da == Val::of(0) || da == Val::of(2 * F.e()) || da.is_inf()) continue;
                bool found = false;
                for (auto b : cls)
                    if (b.defect() == da && (a * b).defect() == da) found = true;
                CHECK(found);
            }
        }
    }
}

TEST_CASE("Hilbert symbol laws") {
    std::mt19937_64 g(3);
    for (const Field& F : test_fields()) {
        INFO(F.name());
        auto cls = F.all_classes();
        const int e = F.e();
        for (auto a : cls) {
            bool nondeg = a.is_one();
            for (auto b : cls) {
                int h = hilbert(a, b);
                CHECK(h == hilbert(b, a));
                if (h == -1) nondeg = true;
                if ((a.defect() + b.defect()) > Val::of(2 * e)) CHECK(h == 1);
                for (auto c : cls) CHECK(hilbert(a * b, c) == hilbert(a, c) * hilbert(b, c));
            }
            CHECK(nondeg);
            CHECK(hilbert(a, -a) == 1);
            SquareClass dl = F.delta().square_class();
            CHECK(hilbert(dl, a) == (a.odd() ? -1 : 1));
        }
        for (int it = 0; it < 40; ++it) {
            FieldElem a = random_elem(g, F), b = random_elem(g, F);
            CHECK(hilbert_search(a, b) == hilbert(a, b));
            FieldElem one_minus = F.one() - a;
            if (!one_minus.is_zero()) CHECK(hilbert(a, one_minus) == 1);
        }
    }
}

TEST_CASE("expansions and precision") {
    Field F = Field::q2();
    Expansion x = F.integer(5).expansion(6);
    CHECK(x.valuation == 0);
    CHECK(x.digits == std::vector<uint32_t>{1, 0, 1, 0, 0, 0});
    CHECK(x.ord() == 0);
    CHECK(quad_defect(F, x) == Val::of(2));
    Expansion y = F.integer(12).expansion(4);
    CHECK(y.ord() == 2);
    CHECK_THROWS_AS(quad_defect(F, y), InsufficientPrecision);
    CHECK(quad_defect(F, F.integer(12).expansion(5)) == Val::of(1));
    Expansion z = F.integer(64).expansion(5);
    CHECK_THROWS_AS(z.ord(), InsufficientPrecision);

    std::mt19937_64 g(9);
    for (const Field& G : test_fields()) {
        for (int it = 0; it < 30; ++it) {
            FieldElem a = random_elem(g, G);
            Expansion lo = a.expansion(a.ord() + 2 * G.e() + 1);
            Expansion hi = a.expansion(a.ord() + 2 * G.e() + 9);
            CHECK(std::equal(lo.digits.begin(), lo.digits.end(), hi.digits.begin()));
            CHECK(quad_defect(G, lo) == quad_defect(G, hi));
            CHECK(quad_defect(G, hi) == quad_defect(a));
        }
    }
}

TEST_CASE("field literals") {
    CHECK(Field::parse("Q2").name() == "Q2");
    CHECK(Field::parse("Q2-unram(2)").degree() == 2);
    Field E = Field::parse("Q2-eisenstein([-2,0])");
    CHECK(E.e() == 2);
    CHECK(E.pi().ord() == 1);
    CHECK(E.integer(2).ord() == 2);
    CHECK((E.pi() * E.pi()) == E.integer(2));
    CHECK_THROWS_AS(Field::parse("Q2-eisenstein([1,0])"), UnsupportedField);
    CHECK_THROWS_AS(Field::parse("Q3"), UnsupportedField);
    Field F = Field::q2();
    CHECK(F.parse_elem("3*pi^-2") == F.parse_elem("3/4"));
    CHECK(F.parse_elem("-1/4").ord() == -2);
    CHECK_THROWS_AS(F.parse_elem("3*"), InvalidInput);
    CHECK_THROWS_AS(F.with_precision(3), InvalidInput);
    Field U = Field::unramified(2);
    FieldElem w = U.gen();
    CHECK((w * w + w + U.one()).is_zero());
    CHECK((w.inv() * w) == U.one());
}
