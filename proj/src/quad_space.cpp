#include "dyadic/quad_space.hpp"

namespace dyadic {

namespace {

SquareClass one_class(const Field& F) { return F.class_by_id(0); }

SquareClass prod(const Field& F, const std::vector<SquareClass>& v, size_t lo, size_t hi) {
    SquareClass r = one_class(F);
    for (size_t i = lo; i < hi; ++i) r *= v[i];
    return r;
}

}  // namespace

bool QSpace::realizable(int dim, SquareClass det, int hasse) {
    if (hasse != 1 && hasse != -1) return false;
    if (dim < 0) return false;
    if (dim == 0) return det.is_one() && hasse == 1;
    if (dim == 1) return hasse == 1;
    if (dim == 2) return !(-det).is_one() || hasse == 1;
    return true;
}

QSpace::QSpace(Field F, int dim, SquareClass det, int hasse) : F_(F), dim_(dim), det_(det), hasse_(hasse) {
    if (!realizable(dim, det, hasse))
        throw InvalidInput("no quadratic space with dim " + std::to_string(dim) + ", det " + det.str() +
                           ", hasse " + std::to_string(hasse));
}

QSpace QSpace::zero(Field F) { return QSpace(F, 0, one_class(F), 1); }

QSpace QSpace::diag(Field F, const std::vector<SquareClass>& a) {
    SquareClass d = one_class(F);
    int s = 1;
    for (SquareClass x : a) {
        s *= hilbert(d, x);
        d *= x;
    }
    return QSpace(F, static_cast<int>(a.size()), d, s);
}

QSpace QSpace::diag(Field F, const std::vector<FieldElem>& a) {
    std::vector<SquareClass> c;
    for (const auto& x : a) c.push_back(x.square_class());
    return diag(F, c);
}

QSpace QSpace::operator+(const QSpace& o) const {
    return QSpace(F_, dim_ + o.dim_, det_ * o.det_, hasse_ * o.hasse_ * hilbert(det_, o.det_));
}

QSpace QSpace::complement(const QSpace& u) const {
    int d = dim_ - u.dim_;
    SquareClass dw = det_ * u.det_;
    if (d < 0) throw NotRepresented("dimension too large");
    int s = hasse_ * u.hasse_ * hilbert(u.det_, dw);
    if (!realizable(d, dw, s)) throw NotRepresented(u.str() + " is not represented by " + str());
    return QSpace(F_, d, dw, s);
}

bool QSpace::represents(const QSpace& u) const {
    int d = dim_ - u.dim_;
    if (d < 0) return false;
    SquareClass dw = det_ * u.det_;
    return realizable(d, dw, hasse_ * u.hasse_ * hilbert(u.det_, dw));
}

bool QSpace::represents(SquareClass a) const { return represents(QSpace::diag(F_, std::vector<SquareClass>{a})); }

bool QSpace::isotropic() const {
    if (dim_ < 2) return false;
    // V isotropic iff V = H + W for some W
    int d = dim_ - 2;
    SquareClass dw = -det_;
    SquareClass m1 = -one_class(F_);
    return realizable(d, dw, hasse_ * hilbert(m1, dw));
}

std::vector<SquareClass> QSpace::diagonal() const {
    std::vector<SquareClass> out;
    QSpace cur = *this;
    auto all = F_.all_classes();
    while (cur.dim_ > 0) {
        bool done = false;
        for (SquareClass a : all) {
            QSpace u = QSpace::diag(F_, std::vector<SquareClass>{a});
            if (!cur.represents(u)) continue;
            out.push_back(a);
            cur = cur.complement(u);
            done = true;
            break;
        }
        if (!done) throw std::logic_error("diagonalisation failed");
    }
    return out;
}

std::string QSpace::str() const {
    return "QSpace(dim=" + std::to_string(dim_) + ", det=" + det_.str() + ", hasse=" + std::to_string(hasse_) + ")";
}

std::array<bool, 4> four_statements(ParityCase which, const Field& F, const std::vector<SquareClass>& a,
                                    const std::vector<SquareClass>& b, const std::vector<SquareClass>& c) {
    auto sp = [&](const std::vector<SquareClass>& v, size_t k) {
        return QSpace::diag(F, std::vector<SquareClass>(v.begin(), v.begin() + static_cast<long>(k)));
    };
    auto P = [&](const std::vector<SquareClass>& v, size_t k) { return prod(F, v, 0, k); };
    std::array<bool, 4> s{};
    size_t i;
    switch (which) {
        case ParityCase::I:
            i = a.size();
            if (i < 1 || b.size() != i || c.size() != i - 1) throw ShapeMismatch("parity case I lengths");
            s[0] = sp(a, i).represents(sp(b, i - 1));
            s[1] = sp(b, i).represents(sp(c, i - 1));
            s[2] = sp(a, i).represents(sp(c, i - 1));
            s[3] = hilbert(P(a, i) * P(b, i), P(b, i - 1) * P(c, i - 1)) == 1;
            break;
        case ParityCase::II:
            i = b.size();
            if (i < 1 || a.size() != i + 1 || c.size() != i - 1) throw ShapeMismatch("parity case II lengths");
            s[0] = sp(a, i + 1).represents(sp(b, i));
            s[1] = sp(b, i).represents(sp(c, i - 1));
            s[2] = sp(a, i).represents(sp(c, i - 1));
            s[3] = hilbert(P(a, i) * P(b, i), -(P(a, i + 1) * P(c, i - 1))) == 1;
            break;
        case ParityCase::III:
            i = a.size();
            if (i < 2 || b.size() != i - 1 || c.size() != i - 1) throw ShapeMismatch("parity case III lengths");
            s[0] = sp(a, i).represents(sp(b, i - 1));
            s[1] = sp(b, i - 1).represents(sp(c, i - 2));
            s[2] = sp(a, i).represents(sp(c, i - 1));
            s[3] = hilbert(P(b, i - 1) * P(c, i - 1), -(P(a, i) * P(c, i - 2))) == 1;
            break;
    }
    return s;
}

bool four_statement_parity(ParityCase which, const Field& F, const std::vector<SquareClass>& a,
                           const std::vector<SquareClass>& b, const std::vector<SquareClass>& c) {
    auto s = four_statements(which, F, a, b, c);
    int t = s[0] + s[1] + s[2] + s[3];
    return t % 2 == 0;
}

}  // namespace dyadic
