#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dyadic/errors.hpp"
#include "dyadic/local_ring.hpp"
#include "dyadic/val.hpp"

namespace dyadic {

struct FieldData;
class FieldElem;
class SquareClass;

// A finite extension of Q2 with e == 1 or f == 1. Handles are cheap;
// the underlying data is interned and lives for the whole process.
class Field {
public:
    Field() = default;

    static Field q2();
    static Field unramified(int f);
    // Eisenstein polynomial x^e + c[e-1] x^(e-1) + ... + c[0]
    static Field eisenstein(const std::vector<mpq_class>& c);
    // "Q2", "Q2-unram(3)", "Q2-eisenstein([2,0])"
    static Field parse(std::string_view text);
    static Field from_data(const FieldData* d) { return Field(d); }

    bool valid() const { return d_ != nullptr; }
    const FieldData* data() const { return d_; }
    int e() const;
    int f() const;
    int degree() const;
    const std::string& name() const;

    // absolute pi-adic precision cap for expansions
    int precision() const { return prec_; }
    Field with_precision(int p) const;

    FieldElem zero() const;
    FieldElem one() const;
    FieldElem integer(long v) const;
    FieldElem rational(const mpq_class& q) const;
    FieldElem pi() const;
    FieldElem pi_pow(int k) const;
    FieldElem gen() const;
    FieldElem from_word(const Word& w) const;
    FieldElem parse_elem(std::string_view text) const;
    // unit with defect 2e, canonical representative
    FieldElem delta() const;

    const LocalRing& ring() const;
    std::vector<SquareClass> all_classes() const;
    int num_classes() const;
    SquareClass class_by_id(int id) const;

    friend bool operator==(const Field& a, const Field& b) { return a.d_ == b.d_; }

private:
    explicit Field(const FieldData* d);
    const FieldData* d_ = nullptr;
    int prec_ = 0;
};

// Truncated pi-adic expansion: valuation, unit digits, absolute precision.
struct Expansion {
    int valuation = 0;
    std::vector<uint32_t> digits;  // digits[0] is the leading (unit) digit
    int abs_precision = 0;
    bool exact_zero = false;

    // exact valuation; throws InsufficientPrecision when every tracked digit is zero
    int ord() const;
    std::string str() const;
};

// Exact element of the number field Q[x]/(P), which is dense in the
// dyadic field cut out by P. Coefficients on the power basis of x.
class FieldElem {
public:
    FieldElem() = default;
    FieldElem(const FieldData* F, std::vector<mpq_class> c);

    const FieldData* field_data() const { return F_; }
    Field field() const;
    const std::vector<mpq_class>& coeffs() const { return c_; }

    bool is_zero() const;
    // valuation; INT32_MAX for zero
    int ord() const;
    Val ord_val() const;
    bool is_integral() const;
    bool is_unit() const { return !is_zero() && ord() == 0; }

    FieldElem operator-() const;
    friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator/(const FieldElem& a, const FieldElem& b);
    FieldElem& operator+=(const FieldElem& b) { return *this = *this + b; }
    FieldElem& operator-=(const FieldElem& b) { return *this = *this - b; }
    FieldElem& operator*=(const FieldElem& b) { return *this = *this * b; }
    FieldElem inv() const;
    FieldElem pow(int k) const;
    friend bool operator==(const FieldElem& a, const FieldElem& b);

    // reduction modulo 2^64 O; requires integrality
    Word to_word() const;
    SquareClass square_class() const;
    Expansion expansion(int abs_prec) const;
    std::string str() const;

private:
    const FieldData* F_ = nullptr;
    std::vector<mpq_class> c_;
};

// Element of F*/F*^2, identified by an index into the field's class table.
// Index layout: parity * U + unit class, where U is the number of unit classes.
class SquareClass {
public:
    SquareClass() = default;
    SquareClass(const FieldData* F, int id) : F_(F), id_(id) {}

    int id() const { return id_; }
    const FieldData* field_data() const { return F_; }
    bool odd() const;
    bool is_one() const { return id_ == 0; }

    SquareClass operator*(SquareClass o) const;
    SquareClass& operator*=(SquareClass o) { return *this = *this * o; }
    SquareClass operator-() const;

    FieldElem rep() const;
    // quadratic defect as an exponent: 0, odd < 2e, 2e, or inf
    Val defect() const;
    std::string str() const;

    friend bool operator==(SquareClass a, SquareClass b) { return a.id_ == b.id_ && a.F_ == b.F_; }
    friend bool operator<(SquareClass a, SquareClass b) { return a.id_ < b.id_; }

private:
    const FieldData* F_ = nullptr;
    int id_ = 0;
};

// quadratic defect, computed directly on the element by square stripping
Val quad_defect(const FieldElem& a);
// defect of a truncated expansion; needs 2e+1 unit digits when the valuation is even
Val quad_defect(const Field& F, const Expansion& a);
// Hilbert symbol from the cached table (+1 or -1)
int hilbert(SquareClass a, SquareClass b);
int hilbert(const FieldElem& a, const FieldElem& b);
// Hilbert symbol by a fresh primitive-solution search on the given elements
int hilbert_search(const FieldElem& a, const FieldElem& b);
// x with ord(u - x^2) >= k, for a unit u with d(u) >= k and k <= 2e
FieldElem sqrt_approx(const FieldElem& u, int k);
// b is a norm from F(sqrt a)
bool in_norm_group(const FieldElem& a, const FieldElem& b);

}  // namespace dyadic
