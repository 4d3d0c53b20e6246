#include "dyadic/lattice.hpp"

#include <climits>

#include "dyadic/errors.hpp"

namespace dyadic {

Matrix identity(const Field& F, int n) {
    Matrix I(n, Vec(n, F.zero()));
    for (int i = 0; i < n; ++i) I[i][i] = F.one();
    return I;
}

Matrix transpose(const Matrix& A) {
    if (A.empty()) return {};
    Matrix T(A[0].size(), Vec(A.size()));
    for (size_t i = 0; i < A.size(); ++i)
        for (size_t j = 0; j < A[0].size(); ++j) T[j][i] = A[i][j];
    return T;
}

Matrix matmul(const Matrix& A, const Matrix& B) {
    if (A.empty() || B.empty()) return {};
    size_t n = A.size(), k = B.size(), m = B[0].size();
    if (A[0].size() != k) throw ShapeMismatch("matrix product shapes");
    Field F = A[0][0].field();
    Matrix C(n, Vec(m, F.zero()));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (A[i][l].is_zero()) continue;
            for (size_t j = 0; j < m; ++j)
                if (!B[l][j].is_zero()) C[i][j] += A[i][l] * B[l][j];
        }
    return C;
}

FieldElem det(const Field& F, const Matrix& A0) {
    Matrix A = A0;
    int n = static_cast<int>(A.size());
    FieldElem d = F.one();
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int r = c; r < n; ++r)
            if (!A[r][c].is_zero() && (p < 0 || A[r][c].ord() < A[p][c].ord())) p = r;
        if (p < 0) return F.zero();
        if (p != c) {
            std::swap(A[p], A[c]);
            d = -d;
        }
        d *= A[c][c];
        FieldElem inv = A[c][c].inv();
        for (int r = c + 1; r < n; ++r) {
            if (A[r][c].is_zero()) continue;
            FieldElem f = A[r][c] * inv;
            for (int j = c; j < n; ++j) A[r][j] -= f * A[c][j];
        }
    }
    return d;
}

Matrix inverse(const Field& F, const Matrix& A0) {
    int n = static_cast<int>(A0.size());
    Matrix A = A0, I = identity(F, n);
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int r = c; r < n; ++r)
            if (!A[r][c].is_zero() && (p < 0 || A[r][c].ord() < A[p][c].ord())) p = r;
        if (p < 0) throw InvalidInput("singular matrix");
        std::swap(A[p], A[c]);
        std::swap(I[p], I[c]);
        FieldElem inv = A[c][c].inv();
        for (int j = 0; j < n; ++j) {
            A[c][j] *= inv;
            I[c][j] *= inv;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c || A[r][c].is_zero()) continue;
            FieldElem f = A[r][c];
            for (int j = 0; j < n; ++j) {
                A[r][j] -= f * A[c][j];
                I[r][j] -= f * I[c][j];
            }
        }
    }
    return I;
}

Lattice::Lattice(Field F, Matrix gram) : F_(F), G_(std::move(gram)) {
    int n = rank();
    for (const auto& row : G_)
        if (static_cast<int>(row.size()) != n) throw ShapeMismatch("gram matrix is not square");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (G_[i][j].field_data() != F_.data()) throw InvalidInput("gram entry from another field");
            if (!(G_[i][j] == G_[j][i])) throw InvalidInput("gram matrix is not symmetric");
        }
    if (n > 0 && det().is_zero()) throw InvalidInput("degenerate gram matrix");
}

Lattice Lattice::diag(Field F, const Vec& a) {
    int n = static_cast<int>(a.size());
    Matrix G(n, Vec(n, F.zero()));
    for (int i = 0; i < n; ++i) G[i][i] = a[i];
    return Lattice(F, G);
}

FieldElem Lattice::det() const { return dyadic::det(F_, G_); }

int Lattice::scale_ord() const {
    int s = INT_MAX;
    for (const auto& row : G_)
        for (const auto& x : row)
            if (!x.is_zero()) s = std::min(s, x.ord());
    return s;
}

int Lattice::norm_ord() const {
    int s = INT_MAX;
    int n = rank();
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            if (G_[i][j].is_zero()) continue;
            s = std::min(s, i == j ? G_[i][j].ord() : G_[i][j].ord() + F_.e());
        }
    return s;
}

bool Lattice::is_integral() const { return rank() == 0 || scale_ord() >= 0; }

Lattice Lattice::scaled(const FieldElem& c) const {
    Matrix G = G_;
    for (auto& row : G)
        for (auto& x : row) x *= c;
    return Lattice(F_, G);
}

Lattice Lattice::dual() const { return Lattice(F_, inverse(F_, G_)); }

Lattice Lattice::transform(const Matrix& T) const {
    if (static_cast<int>(T.size()) != rank()) throw ShapeMismatch("basis change has the wrong number of rows");
    return Lattice(F_, matmul(transpose(T), matmul(G_, T)));
}

Lattice Lattice::operator+(const Lattice& o) const {
    int n = rank(), m = o.rank();
    Matrix G(n + m, Vec(n + m, F_.zero()));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G[i][j] = G_[i][j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) G[n + i][n + j] = o.G_[i][j];
    return Lattice(F_, G);
}

FieldElem Lattice::B(const Vec& x, const Vec& y) const {
    FieldElem s = F_.zero();
    int n = rank();
    for (int i = 0; i < n; ++i) {
        if (x[i].is_zero()) continue;
        for (int j = 0; j < n; ++j)
            if (!y[j].is_zero() && !G_[i][j].is_zero()) s += x[i] * G_[i][j] * y[j];
    }
    return s;
}

Vec Lattice::orthogonal_values() const {
    Matrix G = G_;
    int n = rank();
    Vec out;
    std::vector<bool> used(n, false);
    for (int step = 0; step < n; ++step) {
        int p = -1;
        for (int i = 0; i < n; ++i)
            if (!used[i] && !G[i][i].is_zero() && (p < 0 || G[i][i].ord() < G[p][p].ord())) p = i;
        if (p < 0) {
            // totally isotropic remainder: e_i + e_j has Q = 2 B(e_i, e_j)
            int a = -1, b = -1;
            for (int i = 0; i < n && a < 0; ++i)
                for (int j = 0; j < n; ++j)
                    if (!used[i] && !used[j] && i != j && !G[i][j].is_zero()) {
                        a = i;
                        b = j;
                        break;
                    }
            if (a < 0) throw std::logic_error("orthogonal_values on a degenerate form");
            for (int j = 0; j < n; ++j) G[a][j] += G[b][j];
            for (int j = 0; j < n; ++j) G[j][a] = G[a][j];
            G[a][a] = G[a][a] + G[b][a];
            p = a;
        }
        used[p] = true;
        out.push_back(G[p][p]);
        FieldElem inv = G[p][p].inv();
        for (int i = 0; i < n; ++i) {
            if (used[i] || G[i][p].is_zero()) continue;
            FieldElem f = G[i][p] * inv;
            for (int j = 0; j < n; ++j)
                if (!used[j]) G[i][j] -= f * G[p][j];
        }
        for (int i = 0; i < n; ++i)
            if (!used[i])
                for (int j = 0; j < n; ++j)
                    if (!used[j]) G[j][i] = G[i][j];
    }
    return out;
}

QSpace Lattice::space() const { return QSpace::diag(F_, orthogonal_values()); }

std::string Lattice::str() const {
    std::string s = "[";
    for (int i = 0; i < rank(); ++i) {
        s += i ? ", [" : "[";
        for (int j = 0; j < rank(); ++j) s += (j ? ", " : "") + G_[i][j].str();
        s += "]";
    }
    return s + "]";
}

}  // namespace dyadic
