#include "dyadic/local_ring.hpp"

#include <bit>
#include <stdexcept>

namespace dyadic {

namespace {

uint64_t mask_bits(int b) {
    if (b <= 0) return 0;
    if (b >= 64) return ~uint64_t{0};
    return (uint64_t{1} << b) - 1;
}

}  // namespace

LocalRing::LocalRing(int e, int f, const std::vector<uint64_t>& low, const Word& eta)
    : e_(e), f_(f), n_(e * f) {
    if (n_ < 1 || n_ > kMaxDegree) throw std::invalid_argument("degree out of range");
    for (int i = 0; i < n_; ++i) low_[i] = low[i];
    if (e_ == 1) {
        // P mod 2 is the residue modulus; low_ holds -p_i
        rmod_ = 1u << f_;
        for (int i = 0; i < f_; ++i)
            if ((0 - low_[i]) & 1) rmod_ |= 1u << i;
    } else {
        rmod_ = 0b11;  // F_2, x + 1 keeps rmul trivial
        eta_inv_ = inv_unit(eta);
        Word t = one();
        for (int i = 0; i + 1 < e_; ++i) t = mul(t, gen());
        theta_em1_ = t;
    }
}

Word LocalRing::from_int(int64_t v) const {
    Word w;
    w.c[0] = static_cast<uint64_t>(v);
    return w;
}

Word LocalRing::gen() const {
    Word w;
    if (n_ == 1) {
        w.c[0] = low_[0];
        return w;
    }
    w.c[1] = 1;
    return w;
}

Word LocalRing::pi() const { return e_ > 1 ? gen() : from_int(2); }

Word LocalRing::pi_pow(int k) const {
    Word r = one(), p = pi();
    while (k > 0) {
        if (k & 1) r = mul(r, p);
        p = mul(p, p);
        k >>= 1;
    }
    return r;
}

Word LocalRing::add(const Word& a, const Word& b) const {
    Word r;
    for (int i = 0; i < n_; ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
}

Word LocalRing::sub(const Word& a, const Word& b) const {
    Word r;
    for (int i = 0; i < n_; ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
}

Word LocalRing::neg(const Word& a) const {
    Word r;
    for (int i = 0; i < n_; ++i) r.c[i] = 0 - a.c[i];
    return r;
}

Word LocalRing::mul(const Word& a, const Word& b) const {
    if (n_ == 1) {
        Word r;
        r.c[0] = a.c[0] * b.c[0];
        return r;
    }
    uint64_t t[2 * kMaxDegree] = {};
    for (int i = 0; i < n_; ++i) {
        if (!a.c[i]) continue;
        for (int j = 0; j < n_; ++j) t[i + j] += a.c[i] * b.c[j];
    }
    for (int k = 2 * n_ - 2; k >= n_; --k) {
        uint64_t top = t[k];
        if (!top) continue;
        t[k] = 0;
        for (int i = 0; i < n_; ++i) t[k - n_ + i] += top * low_[i];
    }
    Word r;
    for (int i = 0; i < n_; ++i) r.c[i] = t[i];
    return r;
}

Word LocalRing::mul_int(const Word& a, int64_t k) const {
    Word r;
    for (int i = 0; i < n_; ++i) r.c[i] = a.c[i] * static_cast<uint64_t>(k);
    return r;
}

int LocalRing::ord(const Word& a) const {
    int best = cap();
    for (int i = 0; i < n_; ++i) {
        if (!a.c[i]) continue;
        int v = std::countr_zero(a.c[i]);
        int o = e_ > 1 ? e_ * v + i : v;
        if (o < best) best = o;
    }
    return best;
}

uint32_t LocalRing::residue(const Word& a) const {
    if (e_ > 1) return static_cast<uint32_t>(a.c[0] & 1);
    uint32_t r = 0;
    for (int i = 0; i < n_; ++i) r |= static_cast<uint32_t>(a.c[i] & 1) << i;
    return r;
}

uint32_t LocalRing::lead(const Word& a, int k) const {
    if (e_ > 1) return ord(a) == k ? 1 : 0;
    uint32_t r = 0;
    for (int i = 0; i < n_; ++i) r |= static_cast<uint32_t>((a.c[i] >> k) & 1) << i;
    return r;
}

Word LocalRing::lift(uint32_t r) const {
    Word w;
    if (e_ > 1) {
        w.c[0] = r & 1;
        return w;
    }
    for (int i = 0; i < n_; ++i) w.c[i] = (r >> i) & 1;
    return w;
}

Word LocalRing::div_pi(const Word& a) const {
    if (e_ == 1) {
        Word r;
        for (int i = 0; i < n_; ++i) r.c[i] = a.c[i] >> 1;
        return r;
    }
    Word w = mul(a, theta_em1_);
    for (int i = 0; i < n_; ++i) w.c[i] >>= 1;
    return mul(w, eta_inv_);
}

Word LocalRing::inv_unit(const Word& a) const {
    uint32_t r = residue(a);
    if (!r) throw std::domain_error("inverse of a non-unit");
    Word x = lift(rinv(r));
    Word two = from_int(2);
    for (int it = 0; it < 12; ++it) x = mul(x, sub(two, mul(a, x)));
    return x;
}

Word LocalRing::reduce(const Word& a, int L) const {
    Word r = a;
    if (e_ == 1) {
        uint64_t m = mask_bits(L);
        for (int i = 0; i < n_; ++i) r.c[i] &= m;
        return r;
    }
    int q = L / e_, rem = L % e_;
    for (int i = 0; i < n_; ++i) r.c[i] &= mask_bits(i < rem ? q + 1 : q);
    return r;
}

uint32_t LocalRing::rmul(uint32_t a, uint32_t b) const {
    if (f_ == 1) return a & b & 1;
    uint32_t p = 0;
    for (int i = 0; i < f_; ++i)
        if ((b >> i) & 1) p ^= a << i;
    for (int k = 2 * f_ - 2; k >= f_; --k)
        if ((p >> k) & 1) p ^= rmod_ << (k - f_);
    return p;
}

uint32_t LocalRing::rsqrt(uint32_t a) const {
    // Frobenius is bijective; sqrt(a) = a^(2^(f-1))
    uint32_t r = a;
    for (int i = 0; i + 1 < f_; ++i) r = rmul(r, r);
    return r;
}

uint32_t LocalRing::rinv(uint32_t a) const {
    if (f_ == 1) return a & 1;
    // a^(2^f - 2)
    uint32_t r = 1, base = a;
    uint32_t ex = (1u << f_) - 2;
    while (ex) {
        if (ex & 1) r = rmul(r, base);
        base = rmul(base, base);
        ex >>= 1;
    }
    return r;
}

int LocalRing::rtrace(uint32_t a) const {
    uint32_t s = 0, x = a;
    for (int i = 0; i < f_; ++i) {
        s ^= x;
        x = rmul(x, x);
    }
    return static_cast<int>(s & 1);
}

}  // namespace dyadic
