#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "dyadic/field.hpp"

namespace dyadic {

struct ClassTable {
    int U = 0;  // number of unit classes
    int L = 0;  // units are classified modulo pi^L, L = 2e + 1
    std::vector<Word> unit_rep;
    std::vector<std::vector<uint32_t>> unit_digits;
    std::map<Word, int> key[2];      // parity 0: u mod pi^L; parity 1: pi*u mod pi^(L+1)
    std::vector<std::vector<int>> umul;
    int minus_one = 0;
    int delta = 0;
    std::vector<Val> defect;         // indexed by full id
    std::vector<FieldElem> rep;      // indexed by full id
    std::vector<Word> rep_word;      // integral, ord 0 or 1
    mutable std::vector<signed char> hilb;
};

struct FieldData {
    std::string name;
    int e = 1, f = 1, n = 1;
    std::vector<mpq_class> p;  // P = x^n + sum p[i] x^i
    LocalRing ring;
    int default_prec = 32;

    mutable std::once_flag once;
    mutable std::unique_ptr<ClassTable> table;
    const ClassTable& classes() const;
};

// unit-part normalisation: multiply x by a square so the result is
// integral with ord in {0, 1}; returns that ord
int normalise_by_squares(const FieldElem& x, FieldElem& out);

Val defect_of_unit(const LocalRing& R, const Word& u);
bool ternary_isotropic(const LocalRing& R, const Word& a, const Word& b);

}  // namespace dyadic
