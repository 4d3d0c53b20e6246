#include <algorithm>
#include <cctype>
#include <climits>
#include <functional>
#include <set>
#include <sstream>

#include "field_internal.hpp"

namespace dyadic {

namespace {

int v2_int(const mpz_class& z) { return static_cast<int>(mpz_scan1(z.get_mpz_t(), 0)); }

// 2-adic valuation of a nonzero rational
int v2(const mpq_class& q) { return v2_int(q.get_num()) - v2_int(q.get_den()); }

uint64_t mpz_low64(const mpz_class& z) {
    mpz_class r;
    mpz_fdiv_r_2exp(r.get_mpz_t(), z.get_mpz_t(), 64);
    return mpz_get_ui(r.get_mpz_t());
}

uint64_t inv_odd64(uint64_t a) {
    uint64_t x = a;  // correct to 3 bits
    for (int i = 0; i < 6; ++i) x *= 2 - a * x;
    return x;
}

// q in Z_(2) reduced modulo 2^64
uint64_t rat_to_u64(const mpq_class& q) {
    if (q == 0) return 0;
    mpz_class num = q.get_num(), den = q.get_den();
    int dv = v2_int(den);
    if (dv > 0) {
        if (v2_int(num) < dv) throw InvalidInput("coefficient is not 2-integral");
        mpz_tdiv_q_2exp(num.get_mpz_t(), num.get_mpz_t(), dv);
        mpz_tdiv_q_2exp(den.get_mpz_t(), den.get_mpz_t(), dv);
    }
    return mpz_low64(num) * inv_odd64(mpz_low64(den));
}

std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

std::map<std::string, std::unique_ptr<FieldData>>& registry() {
    static std::map<std::string, std::unique_ptr<FieldData>> r;
    return r;
}

bool binary_irreducible(uint32_t poly, int deg) {
    // trial division by every polynomial of degree 1 .. deg/2
    auto mod = [](uint32_t a, uint32_t b) {
        int db = 31 - __builtin_clz(b);
        while (a && 31 - __builtin_clz(a) >= db) a ^= b << ((31 - __builtin_clz(a)) - db);
        return a;
    };
    for (uint32_t g = 2; g < (1u << (deg / 2 + 1)); ++g)
        if (mod(poly, g) == 0) return false;
    return true;
}

const FieldData* intern(std::unique_ptr<FieldData> fd) {
    std::lock_guard<std::mutex> lk(registry_mutex());
    auto& reg = registry();
    auto it = reg.find(fd->name);
    if (it != reg.end()) return it->second.get();
    const FieldData* raw = fd.get();
    reg.emplace(fd->name, std::move(fd));
    return raw;
}

std::string rat_str(const mpq_class& q) { return q.get_str(); }

}  // namespace

// ---------------------------------------------------------------- Field

Field::Field(const FieldData* d) : d_(d), prec_(d->default_prec) {}

static std::unique_ptr<FieldData> make_unramified(int f) {
    if (f < 1 || f > kMaxDegree) throw UnsupportedField("residue degree out of range: " + std::to_string(f));
    auto fd = std::make_unique<FieldData>();
    fd->e = 1;
    fd->f = f;
    fd->n = f;
    std::vector<uint64_t> low(f, 0);
    if (f == 1) {
        fd->name = "Q2";
        fd->p = {mpq_class(0)};
    } else {
        uint32_t poly = 0;
        for (uint32_t cand = (1u << f) | 1; cand < (2u << f); cand += 2)
            if (binary_irreducible(cand, f)) {
                poly = cand;
                break;
            }
        fd->name = "Q2-unram(" + std::to_string(f) + ")";
        fd->p.resize(f);
        for (int i = 0; i < f; ++i) {
            int bit = (poly >> i) & 1;
            fd->p[i] = bit;
            low[i] = bit ? ~uint64_t{0} : 0;
        }
    }
    fd->ring = LocalRing(1, f, low, Word{});
    fd->default_prec = 32;
    return fd;
}

Field Field::q2() { return unramified(1); }

Field Field::unramified(int f) { return Field(intern(make_unramified(f))); }

Field Field::eisenstein(const std::vector<mpq_class>& c) {
    int e = static_cast<int>(c.size());
    if (e < 2) throw UnsupportedField("Eisenstein degree must be at least 2 (use Q2)");
    if (e > kMaxDegree) throw UnsupportedField("Eisenstein degree too large");
    for (int i = 0; i < e; ++i) {
        if (c[i] != 0 && v2(c[i]) < 1) throw UnsupportedField("polynomial is not Eisenstein");
    }
    if (c[0] == 0 || v2(c[0]) != 1) throw UnsupportedField("polynomial is not Eisenstein");
    auto fd = std::make_unique<FieldData>();
    fd->e = e;
    fd->f = 1;
    fd->n = e;
    fd->p = c;
    std::string name = "Q2-eisenstein([";
    for (int i = 0; i < e; ++i) name += (i ? "," : "") + rat_str(c[i]);
    fd->name = name + "])";
    std::vector<uint64_t> low(e);
    Word eta;
    for (int i = 0; i < e; ++i) {
        low[i] = rat_to_u64(-c[i]);
        eta.c[i] = rat_to_u64(-c[i] / 2);
    }
    fd->ring = LocalRing(e, 1, low, eta);
    fd->default_prec = std::max(32, 4 * e + 4);
    return Field(intern(std::move(fd)));
}

Field Field::parse(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s == "Q2" || s == "Q_2") return q2();
    auto starts = [&](const char* pre) { return s.rfind(pre, 0) == 0; };
    if (starts("Q2-unram(") && s.back() == ')') {
        std::string num = s.substr(9, s.size() - 10);
        try {
            size_t pos = 0;
            int f = std::stoi(num, &pos);
            if (pos != num.size()) throw std::invalid_argument("trailing");
            return unramified(f);
        } catch (const std::logic_error&) {
            throw UnsupportedField("bad residue degree in field literal: " + std::string(text));
        }
    }
    if (starts("Q2-eisenstein([") && s.size() > 17 && s.substr(s.size() - 2) == "])") {
        std::string body = s.substr(15, s.size() - 17);
        std::vector<mpq_class> c;
        std::stringstream ss(body);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                c.emplace_back(tok);
                c.back().canonicalize();
            } catch (const std::invalid_argument&) {
                throw UnsupportedField("bad coefficient in field literal: " + tok);
            }
        }
        return eisenstein(c);
    }
    throw UnsupportedField("unknown field literal: " + std::string(text));
}

int Field::e() const { return d_->e; }
int Field::f() const { return d_->f; }
int Field::degree() const { return d_->n; }
const std::string& Field::name() const { return d_->name; }
const LocalRing& Field::ring() const { return d_->ring; }

Field Field::with_precision(int p) const {
    if (p < 4 * e() + 4) throw InvalidInput("precision must be at least 4e+4");
    if (p > 64) throw InvalidInput("precision above 64 is not supported");
    Field r = *this;
    r.prec_ = p;
    return r;
}

FieldElem Field::zero() const { return FieldElem(d_, std::vector<mpq_class>(d_->n)); }
FieldElem Field::one() const { return integer(1); }

FieldElem Field::integer(long v) const { return rational(mpq_class(v)); }

FieldElem Field::rational(const mpq_class& q) const {
    std::vector<mpq_class> c(d_->n);
    c[0] = q;
    return FieldElem(d_, std::move(c));
}

FieldElem Field::gen() const {
    if (d_->n == 1) return rational(-d_->p[0]);
    std::vector<mpq_class> c(d_->n);
    c[1] = 1;
    return FieldElem(d_, std::move(c));
}

FieldElem Field::pi() const { return d_->e > 1 ? gen() : integer(2); }

FieldElem Field::pi_pow(int k) const { return pi().pow(k); }

FieldElem Field::from_word(const Word& w) const {
    std::vector<mpq_class> c(d_->n);
    for (int i = 0; i < d_->n; ++i) {
        int64_t s = static_cast<int64_t>(w.c[i]);
        c[i] = mpq_class(mpz_class(std::to_string(s)));
    }
    return FieldElem(d_, std::move(c));
}

FieldElem Field::delta() const { return d_->classes().rep[d_->classes().delta]; }

int Field::num_classes() const { return 2 * d_->classes().U; }

SquareClass Field::class_by_id(int id) const {
    if (id < 0 || id >= num_classes()) throw InvalidInput("square class index out of range");
    return SquareClass(d_, id);
}

std::vector<SquareClass> Field::all_classes() const {
    std::vector<SquareClass> r;
    for (int i = 0; i < num_classes(); ++i) r.emplace_back(d_, i);
    return r;
}

// ---------------------------------------------------------- element literals

namespace {

class ElemParser {
public:
    ElemParser(const Field& F, std::string_view s) : F_(F), s_(s) {}

    FieldElem run() {
        FieldElem v = expr();
        skip();
        if (i_ != s_.size()) fail("unexpected character");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& why) {
        throw InvalidInput("bad element literal '" + std::string(s_) + "': " + why);
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char ch) {
        skip();
        if (i_ < s_.size() && s_[i_] == ch) {
            ++i_;
            return true;
        }
        return false;
    }
    long integer() {
        skip();
        size_t st = i_;
        if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (st == i_ || (i_ == st + 1 && !std::isdigit(static_cast<unsigned char>(s_[st])))) fail("expected integer");
        return std::stol(std::string(s_.substr(st, i_ - st)));
    }
    FieldElem expr() {
        FieldElem v = term();
        for (;;) {
            if (eat('+'))
                v = v + term();
            else if (eat('-'))
                v = v - term();
            else
                return v;
        }
    }
    FieldElem term() {
        bool neg = false;
        while (true) {
            if (eat('-'))
                neg = !neg;
            else if (!eat('+'))
                break;
        }
        FieldElem v = factor();
        for (;;) {
            if (eat('*'))
                v = v * factor();
            else if (eat('/'))
                v = v / factor();
            else
                break;
        }
        return neg ? -v : v;
    }
    FieldElem factor() {
        skip();
        FieldElem base;
        if (eat('(')) {
            base = expr();
            if (!eat(')')) fail("missing )");
        } else if (s_.substr(i_, 2) == "pi") {
            i_ += 2;
            base = F_.pi();
        } else if (i_ < s_.size() && (s_[i_] == 'w' || s_[i_] == 't')) {
            ++i_;
            base = F_.gen();
        } else if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            size_t st = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            base = F_.rational(mpq_class(mpz_class(std::string(s_.substr(st, i_ - st)))));
        } else {
            fail("expected a number, pi or w");
        }
        if (eat('^')) {
            long k = integer();
            if (base.is_zero() && k < 0) fail("zero to a negative power");
            base = base.pow(static_cast<int>(k));
        }
        return base;
    }

    Field F_;
    std::string_view s_;
    size_t i_ = 0;
};

}  // namespace

FieldElem Field::parse_elem(std::string_view text) const {
    try {
        return ElemParser(*this, text).run();
    } catch (const std::domain_error& e) {
        throw InvalidInput(std::string("bad element literal: ") + e.what());
    }
}

// ------------------------------------------------------------ FieldElem

FieldElem::FieldElem(const FieldData* F, std::vector<mpq_class> c) : F_(F), c_(std::move(c)) {
    for (auto& q : c_) q.canonicalize();
}

Field FieldElem::field() const { return Field::from_data(F_); }

bool FieldElem::is_zero() const {
    for (const auto& q : c_)
        if (q != 0) return false;
    return true;
}

int FieldElem::ord() const {
    int best = INT_MAX;
    for (int i = 0; i < static_cast<int>(c_.size()); ++i) {
        if (c_[i] == 0) continue;
        int o = F_->e > 1 ? F_->e * v2(c_[i]) + i : v2(c_[i]);
        best = std::min(best, o);
    }
    return best;
}

Val FieldElem::ord_val() const { return is_zero() ? Val::inf() : Val::of(ord()); }

bool FieldElem::is_integral() const { return is_zero() || ord() >= 0; }

FieldElem FieldElem::operator-() const {
    std::vector<mpq_class> c(c_);
    for (auto& q : c) q = -q;
    return FieldElem(F_, std::move(c));
}

static void same_field(const FieldElem& a, const FieldElem& b) {
    if (a.field_data() != b.field_data()) throw InvalidInput("elements of different fields");
}

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    same_field(a, b);
    std::vector<mpq_class> c(a.c_);
    for (size_t i = 0; i < c.size(); ++i) c[i] += b.c_[i];
    return FieldElem(a.F_, std::move(c));
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) {
    same_field(a, b);
    std::vector<mpq_class> c(a.c_);
    for (size_t i = 0; i < c.size(); ++i) c[i] -= b.c_[i];
    return FieldElem(a.F_, std::move(c));
}

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    same_field(a, b);
    const int n = a.F_->n;
    if (n == 1) return FieldElem(a.F_, {a.c_[0] * b.c_[0]});
    std::vector<mpq_class> t(2 * n - 1);
    for (int i = 0; i < n; ++i) {
        if (a.c_[i] == 0) continue;
        for (int j = 0; j < n; ++j)
            if (b.c_[j] != 0) t[i + j] += a.c_[i] * b.c_[j];
    }
    const auto& p = a.F_->p;
    for (int k = 2 * n - 2; k >= n; --k) {
        if (t[k] == 0) continue;
        mpq_class top = t[k];
        t[k] = 0;
        for (int i = 0; i < n; ++i)
            if (p[i] != 0) t[k - n + i] -= top * p[i];
    }
    t.resize(n);
    return FieldElem(a.F_, std::move(t));
}

FieldElem FieldElem::inv() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    const int n = F_->n;
    if (n == 1) return FieldElem(F_, {1 / c_[0]});
    // columns: coefficients of this * x^j; solve M y = e_0
    std::vector<std::vector<mpq_class>> M(n, std::vector<mpq_class>(n + 1));
    FieldElem col = *this;
    std::vector<mpq_class> xc(n);
    xc[1] = 1;
    FieldElem x(F_, xc);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) M[i][j] = col.c_[i];
        col = col * x;
    }
    M[0][n] = 1;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        while (M[piv][c] == 0) ++piv;
        std::swap(M[piv], M[c]);
        for (int r = 0; r < n; ++r) {
            if (r == c || M[r][c] == 0) continue;
            mpq_class fct = M[r][c] / M[c][c];
            for (int k = c; k <= n; ++k) M[r][k] -= fct * M[c][k];
        }
    }
    std::vector<mpq_class> y(n);
    for (int i = 0; i < n; ++i) y[i] = M[i][n] / M[i][i];
    return FieldElem(F_, std::move(y));
}

FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inv(); }

FieldElem FieldElem::pow(int k) const {
    FieldElem base = k < 0 ? inv() : *this;
    unsigned m = static_cast<unsigned>(k < 0 ? -static_cast<long>(k) : k);
    std::vector<mpq_class> one(F_->n);
    one[0] = 1;
    FieldElem r(F_, one);
    while (m) {
        if (m & 1) r = r * base;
        m >>= 1;
        if (m) base = base * base;
    }
    return r;
}

bool operator==(const FieldElem& a, const FieldElem& b) { return a.F_ == b.F_ && a.c_ == b.c_; }

Word FieldElem::to_word() const {
    if (!is_integral()) throw InvalidInput("element is not integral: " + str());
    Word w;
    for (int i = 0; i < F_->n; ++i) w.c[i] = rat_to_u64(c_[i]);
    return w;
}

std::string FieldElem::str() const {
    if (!F_) return "<null>";
    const int n = F_->n;
    if (n == 1) return rat_str(c_[0]);
    std::string var = F_->e > 1 ? "pi" : "w";
    std::string out;
    for (int i = 0; i < n; ++i) {
        if (c_[i] == 0) continue;
        mpq_class q = c_[i];
        bool neg = q < 0;
        if (neg) q = -q;
        std::string body;
        if (i == 0)
            body = rat_str(q);
        else {
            body = (q == 1 ? "" : rat_str(q) + "*") + var + (i > 1 ? "^" + std::to_string(i) : "");
        }
        if (out.empty())
            out = (neg ? "-" : "") + body;
        else
            out += (neg ? " - " : " + ") + body;
    }
    return out.empty() ? "0" : out;
}

int normalise_by_squares(const FieldElem& x, FieldElem& out) {
    const FieldData* F = x.field_data();
    int v = x.ord();
    int parity = ((v % 2) + 2) % 2;
    int shift = parity - v;  // even; want x * pi^shift up to squares
    std::vector<mpq_class> one(F->n);
    one[0] = 1;
    FieldElem lam(F, one);
    if (F->e == 1) {
        std::vector<mpq_class> c(F->n);
        mpq_class two_pow = 1;
        mpz_class t = 1;
        mpz_mul_2exp(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned>(std::abs(shift)));
        two_pow = shift >= 0 ? mpq_class(t) : mpq_class(1) / mpq_class(t);
        c[0] = two_pow;
        lam = FieldElem(F, c);
    } else {
        // pi^(2k) ~ pi^(2k + 2em) / 4^m, with the exponent kept nonnegative
        int k2 = shift;
        int m = 0;
        while (k2 < 0) {
            k2 += 2 * F->e;
            ++m;
        }
        std::vector<mpq_class> xc(F->n);
        xc[1] = 1;
        FieldElem th(F, xc);
        lam = th.pow(k2);
        if (m) {
            std::vector<mpq_class> c(F->n);
            mpz_class t = 1;
            mpz_mul_2exp(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned>(2 * m));
            c[0] = mpq_class(1) / mpq_class(t);
            lam = lam * FieldElem(F, c);
        }
    }
    out = x * lam;
    return parity;
}

SquareClass FieldElem::square_class() const {
    if (is_zero()) throw InvalidInput("zero has no square class");
    const ClassTable& T = F_->classes();
    FieldElem w;
    int parity = normalise_by_squares(*this, w);
    Word k = F_->ring.reduce(w.to_word(), T.L + parity);
    auto it = T.key[parity].find(k);
    if (it == T.key[parity].end()) throw std::logic_error("square class lookup failed");
    return SquareClass(F_, parity * T.U + it->second);
}

Expansion FieldElem::expansion(int abs_prec) const {
    Expansion ex;
    ex.abs_precision = abs_prec;
    if (is_zero()) {
        ex.exact_zero = true;
        ex.valuation = abs_prec;
        return ex;
    }
    int v = ord();
    ex.valuation = v;
    int rel = abs_prec - v;
    if (rel <= 0) {
        ex.valuation = abs_prec;
        return ex;
    }
    if (rel > 60) throw InsufficientPrecision("expansion longer than 60 digits is not tracked");
    FieldElem u = *this * Field::from_data(F_).pi_pow(-v);
    const LocalRing& R = F_->ring;
    Word w = u.to_word();
    for (int i = 0; i < rel; ++i) {
        uint32_t d = R.residue(w);
        ex.digits.push_back(d);
        w = R.div_pi(R.sub(w, R.lift(d)));
    }
    return ex;
}

int Expansion::ord() const {
    if (exact_zero) throw InvalidInput("ord of zero");
    for (size_t i = 0; i < digits.size(); ++i)
        if (digits[i]) return valuation + static_cast<int>(i);
    throw InsufficientPrecision("all tracked digits are zero");
}

std::string Expansion::str() const {
    if (exact_zero) return "0";
    std::ostringstream os;
    os << "pi^" << valuation << "*(";
    for (size_t i = 0; i < digits.size(); ++i) os << (i ? "," : "") << digits[i];
    os << ")+O(pi^" << abs_precision << ")";
    return os.str();
}

// ---------------------------------------------------------- local algorithms

Val defect_of_unit(const LocalRing& R, const Word& u) {
    const int e = R.e();
    Word x = R.lift(R.rsqrt(R.residue(u)));
    for (;;) {
        Word z = R.sub(u, R.mul(x, x));
        int k = R.ord(z);
        if (k > 2 * e) return Val::inf();
        if (k < 2 * e && (k & 1)) return Val::of(k);
        uint32_t r = R.lead(z, k);
        if (k == 2 * e) {
            uint32_t xr = R.residue(x);
            uint32_t c = R.rmul(r, R.rinv(R.rmul(xr, xr)));
            return R.rtrace(c) == 0 ? Val::inf() : Val::of(2 * e);
        }
        Word y = R.lift(R.rsqrt(r));
        x = R.add(x, R.mul(y, R.pi_pow(k / 2)));
    }
}

bool ternary_isotropic(const LocalRing& R, const Word& a, const Word& b) {
    // primitive zero of z^2 - a x^2 - b y^2, digit by digit in three charts
    const int e = R.e();
    const int depth = e + 3;
    const int q = R.residue_size();
    std::vector<Word> pip(depth + 1);
    for (int i = 0; i <= depth; ++i) pip[i] = R.pi_pow(i);
    std::vector<Word> lifts(q);
    for (int d = 0; d < q; ++d) lifts[d] = R.lift(static_cast<uint32_t>(d));

    auto form = [&](const Word& z, const Word& x, const Word& y) {
        Word t = R.mul(z, z);
        t = R.sub(t, R.mul(a, R.mul(x, x)));
        return R.sub(t, R.mul(b, R.mul(y, y)));
    };
    // vars[0]=z, vars[1]=x, vars[2]=y; fixed is set to 1; forced_zero marks vars in pi*O
    std::function<bool(std::array<Word, 3>&, int, int, int, int)> rec;
    rec = [&](std::array<Word, 3>& v, int fixed, int fz, int t, int u_) -> bool {
        (void)u_;
        if (t == depth) return true;
        int fr[2], nf = 0;
        for (int i = 0; i < 3; ++i)
            if (i != fixed) fr[nf++] = i;
        for (int d0 = 0; d0 < q; ++d0) {
            if (t == 0 && (fz >> fr[0] & 1) && d0) continue;
            for (int d1 = 0; d1 < q; ++d1) {
                if (t == 0 && (fz >> fr[1] & 1) && d1) continue;
                std::array<Word, 3> w = v;
                w[fr[0]] = R.add(w[fr[0]], R.mul(lifts[d0], pip[t]));
                w[fr[1]] = R.add(w[fr[1]], R.mul(lifts[d1], pip[t]));
                int s = t + 1;
                int need = std::min(s + e, 2 * s);
                if (R.ord(form(w[0], w[1], w[2])) < need) continue;
                if (rec(w, fixed, fz, s, 0)) return true;
            }
        }
        return false;
    };
    std::array<Word, 3> v{};
    v = {R.one(), R.zero(), R.zero()};
    if (rec(v, 0, 0, 0, 0)) return true;
    v = {R.zero(), R.one(), R.zero()};
    if (rec(v, 1, 0b001, 0, 0)) return true;
    v = {R.zero(), R.zero(), R.one()};
    return rec(v, 2, 0b011, 0, 0);
}

// -------------------------------------------------------------- class table

const ClassTable& FieldData::classes() const {
    std::call_once(once, [this] {
        auto T = std::make_unique<ClassTable>();
        const LocalRing& R = ring;
        const int L = 2 * e + 1;
        const int q = R.residue_size();
        T->L = L;
        std::vector<Word> pip(L + 2);
        for (int i = 0; i <= L + 1; ++i) pip[i] = R.pi_pow(i);
        std::vector<Word> lifts(q);
        for (int d = 0; d < q; ++d) lifts[d] = R.lift(static_cast<uint32_t>(d));

        // squares of units modulo pi^L; x only matters mod pi^(e+1)
        std::set<Word> sq;
        {
            const int Lx = e + 1;
            long cnt = (q - 1);
            for (int i = 1; i < Lx; ++i) cnt *= q;
            for (long idx = 0; idx < cnt; ++idx) {
                long t = idx;
                Word x;
                for (int i = Lx - 1; i >= 1; --i) {
                    x = R.add(x, R.mul(lifts[t % q], pip[i]));
                    t /= q;
                }
                x = R.add(x, lifts[1 + t]);
                sq.insert(R.reduce(R.mul(x, x), L));
            }
        }

        long cnt = q - 1;
        for (int i = 1; i < L; ++i) cnt *= q;
        std::vector<uint32_t> dig(L);
        std::vector<Word> units;
        units.reserve(cnt);
        for (long idx = 0; idx < cnt; ++idx) {
            long t = idx;
            for (int i = L - 1; i >= 1; --i) {
                dig[i] = static_cast<uint32_t>(t % q);
                t /= q;
            }
            dig[0] = static_cast<uint32_t>(1 + t);
            Word u;
            for (int i = 0; i < L; ++i)
                if (dig[i]) u = R.add(u, R.mul(lifts[dig[i]], pip[i]));
            u = R.reduce(u, L);
            units.push_back(u);
            if (T->key[0].count(u)) continue;
            int c = T->U++;
            T->unit_rep.push_back(u);
            T->unit_digits.push_back(dig);
            for (const Word& s : sq) T->key[0][R.reduce(R.mul(u, s), L)] = c;
        }
        for (const Word& u : units) T->key[1][R.reduce(R.mul(R.pi(), u), L + 1)] = T->key[0].at(u);

        const int U = T->U;
        T->umul.assign(U, std::vector<int>(U));
        for (int i = 0; i < U; ++i)
            for (int j = 0; j < U; ++j)
                T->umul[i][j] = T->key[0].at(R.reduce(R.mul(T->unit_rep[i], T->unit_rep[j]), L));
        T->minus_one = T->key[0].at(R.reduce(R.neg(R.one()), L));

        // exact representatives: sum of digits times powers of the uniformizer
        std::vector<mpq_class> onec(n);
        onec[0] = 1;
        FieldElem one_e(this, onec);
        FieldElem pi_e = e > 1 ? FieldElem(this, [&] {
            std::vector<mpq_class> c(n);
            c[1] = 1;
            return c;
        }())
                               : FieldElem(this, [&] {
                                     std::vector<mpq_class> c(n);
                                     c[0] = 2;
                                     return c;
                                 }());
        auto digit_elem = [&](uint32_t d) {
            std::vector<mpq_class> c(n);
            if (e > 1)
                c[0] = d & 1;
            else
                for (int i = 0; i < n; ++i) c[i] = (d >> i) & 1;
            return FieldElem(this, c);
        };
        T->rep.resize(2 * U);
        T->rep_word.resize(2 * U);
        T->defect.resize(2 * U);
        for (int c = 0; c < U; ++c) {
            FieldElem acc(this, std::vector<mpq_class>(n));
            FieldElem pw = one_e;
            for (int i = 0; i < L; ++i) {
                if (T->unit_digits[c][i]) acc = acc + digit_elem(T->unit_digits[c][i]) * pw;
                pw = pw * pi_e;
            }
            T->rep[c] = acc;
            T->rep[U + c] = acc * pi_e;
            T->rep_word[c] = acc.to_word();
            T->rep_word[U + c] = T->rep[U + c].to_word();
            T->defect[c] = defect_of_unit(R, T->rep_word[c]);
            T->defect[U + c] = Val::of(0);
        }
        T->delta = -1;
        for (int c = 0; c < U; ++c)
            if (T->defect[c] == Val::of(2 * e)) T->delta = c;
        T->hilb.assign(4 * U * U, 0);
        table = std::move(T);
    });
    return *table;
}

// ------------------------------------------------------------- SquareClass

bool SquareClass::odd() const { return id_ >= F_->classes().U; }

SquareClass SquareClass::operator*(SquareClass o) const {
    if (F_ != o.F_) throw InvalidInput("square classes of different fields");
    const ClassTable& T = F_->classes();
    int p = (id_ / T.U) ^ (o.id_ / T.U);
    return SquareClass(F_, p * T.U + T.umul[id_ % T.U][o.id_ % T.U]);
}

SquareClass SquareClass::operator-() const { return *this * SquareClass(F_, F_->classes().minus_one); }

FieldElem SquareClass::rep() const { return F_->classes().rep[id_]; }

Val SquareClass::defect() const { return F_->classes().defect[id_]; }

std::string SquareClass::str() const { return rep().str(); }

Val quad_defect(const FieldElem& a) {
    if (a.is_zero()) throw InvalidInput("defect of zero");
    FieldElem w;
    int parity = normalise_by_squares(a, w);
    if (parity) return Val::of(0);
    return defect_of_unit(a.field_data()->ring, w.to_word());
}

Val quad_defect(const Field& F, const Expansion& a) {
    int v = a.ord();
    if (v % 2) return Val::of(0);
    size_t lead = static_cast<size_t>(v - a.valuation);
    size_t avail = a.digits.size() - lead;
    if (avail < static_cast<size_t>(2 * F.e() + 1))
        throw InsufficientPrecision("defect needs 2e+1 unit digits, have " + std::to_string(avail));
    const LocalRing& R = F.ring();
    Word u, p = R.one();
    for (size_t i = lead; i < a.digits.size(); ++i) {
        u = R.add(u, R.mul(R.lift(a.digits[i]), p));
        p = R.mul(p, R.pi());
    }
    return defect_of_unit(R, u);
}

int hilbert(SquareClass a, SquareClass b) {
    const FieldData* F = a.field_data();
    if (F != b.field_data()) throw InvalidInput("square classes of different fields");
    const ClassTable& T = F->classes();
    const int N = 2 * T.U;
    signed char& slot = T.hilb[a.id() * N + b.id()];
    if (!slot) {
        bool iso = ternary_isotropic(F->ring, T.rep_word[a.id()], T.rep_word[b.id()]);
        slot = iso ? 1 : -1;
        T.hilb[b.id() * N + a.id()] = slot;
    }
    return slot;
}

int hilbert(const FieldElem& a, const FieldElem& b) { return hilbert(a.square_class(), b.square_class()); }

int hilbert_search(const FieldElem& a, const FieldElem& b) {
    if (a.field_data() != b.field_data()) throw InvalidInput("elements of different fields");
    if (a.is_zero() || b.is_zero()) throw InvalidInput("Hilbert symbol of zero");
    FieldElem wa, wb;
    normalise_by_squares(a, wa);
    normalise_by_squares(b, wb);
    return ternary_isotropic(a.field_data()->ring, wa.to_word(), wb.to_word()) ? 1 : -1;
}

FieldElem sqrt_approx(const FieldElem& u, int k) {
    if (!u.is_unit()) throw InvalidInput("sqrt_approx needs a unit");
    const FieldData* F = u.field_data();
    const LocalRing& R = F->ring;
    if (k > 2 * F->e) throw InvalidInput("sqrt_approx only reaches 2e");
    Word w = u.to_word();
    Word x = R.lift(R.rsqrt(R.residue(w)));
    for (;;) {
        Word z = R.sub(w, R.mul(x, x));
        int j = R.ord(z);
        if (j >= k) break;
        if (j & 1 || j >= 2 * F->e) throw InvalidInput("defect of " + u.str() + " is below " + std::to_string(k));
        Word y = R.lift(R.rsqrt(R.lead(z, j)));
        x = R.add(x, R.mul(y, R.pi_pow(j / 2)));
    }
    return Field::from_data(F).from_word(R.reduce(x, std::max(k, 1)));
}

bool in_norm_group(const FieldElem& a, const FieldElem& b) { return hilbert(a, b) == 1; }

}  // namespace dyadic
