#pragma once

#include <string>
#include <vector>

#include "dyadic/field.hpp"
#include "dyadic/quad_space.hpp"

namespace dyadic {

using Vec = std::vector<FieldElem>;
using Matrix = std::vector<Vec>;

Matrix identity(const Field& F, int n);
Matrix transpose(const Matrix& A);
Matrix matmul(const Matrix& A, const Matrix& B);
FieldElem det(const Field& F, const Matrix& A);
// throws InvalidInput when A is singular
Matrix inverse(const Field& F, const Matrix& A);

// Lattice given by a Gram matrix on a basis: diagonal entries are Q(x_i),
// off-diagonal entries B(x_i, x_j), with Q(x) = B(x, x).
class Lattice {
public:
    Lattice() = default;
    Lattice(Field F, Matrix gram);

    static Lattice diag(Field F, const Vec& a);
    static Lattice zero(Field F) { return Lattice(F, Matrix{}); }

    const Field& field() const { return F_; }
    int rank() const { return static_cast<int>(G_.size()); }
    const Matrix& gram() const { return G_; }
    const FieldElem& operator()(int i, int j) const { return G_[i][j]; }

    FieldElem det() const;
    int vol_ord() const { return det().ord(); }
    // ord of the scale and norm ideals
    int scale_ord() const;
    int norm_ord() const;
    bool is_integral() const;

    // Gram matrix multiplied by c
    Lattice scaled(const FieldElem& c) const;
    Lattice dual() const;
    // Gram of the basis given by the columns of T
    Lattice transform(const Matrix& T) const;
    Lattice operator+(const Lattice& o) const;

    FieldElem B(const Vec& x, const Vec& y) const;
    FieldElem Q(const Vec& x) const { return B(x, x); }

    QSpace space() const;
    // Q-values of an orthogonal basis of the underlying space
    Vec orthogonal_values() const;
    std::string str() const;

private:
    Field F_;
    Matrix G_;
};

}  // namespace dyadic
