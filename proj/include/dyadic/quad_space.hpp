#pragma once

#include <array>
#include <vector>

#include "dyadic/field.hpp"

namespace dyadic {

// Isometry class of a nondegenerate quadratic space: dimension,
// determinant class and Hasse invariant, with S(V + [a]) = S(V)(det V, a).
class QSpace {
public:
    QSpace() = default;
    // throws InvalidInput for triples no space realizes
    QSpace(Field F, int dim, SquareClass det, int hasse);

    static QSpace zero(Field F);
    static QSpace diag(Field F, const std::vector<SquareClass>& a);
    static QSpace diag(Field F, const std::vector<FieldElem>& a);
    static bool realizable(int dim, SquareClass det, int hasse);

    const Field& field() const { return F_; }
    int dim() const { return dim_; }
    SquareClass det() const { return det_; }
    int hasse() const { return hasse_; }

    QSpace operator+(const QSpace& o) const;  // orthogonal sum
    bool represents(const QSpace& u) const;
    bool represents(SquareClass a) const;
    bool isotropic() const;
    // W with *this = u + W; throws NotRepresented
    QSpace complement(const QSpace& u) const;
    std::vector<SquareClass> diagonal() const;
    std::string str() const;

    friend bool operator==(const QSpace& a, const QSpace& b) {
        return a.dim_ == b.dim_ && a.det_ == b.det_ && a.hasse_ == b.hasse_;
    }

private:
    Field F_;
    int dim_ = 0;
    SquareClass det_;
    int hasse_ = 1;
};

enum class ParityCase { I, II, III };

// The four statements of the even-parity representation lemma. Lengths:
// case I: |a| = i, |b| = i, |c| = i-1; case II: |a| = i+1, |b| = i,
// |c| = i-1; case III: |a| = i, |b| = i-1, |c| = i-1.
std::array<bool, 4> four_statements(ParityCase which, const Field& F, const std::vector<SquareClass>& a,
                                    const std::vector<SquareClass>& b, const std::vector<SquareClass>& c);
// true when an even number of the four statements hold
bool four_statement_parity(ParityCase which, const Field& F, const std::vector<SquareClass>& a,
                           const std::vector<SquareClass>& b, const std::vector<SquareClass>& c);

}  // namespace dyadic
