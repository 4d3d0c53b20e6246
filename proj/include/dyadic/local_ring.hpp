#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <vector>

namespace dyadic {

constexpr int kMaxDegree = 8;

// An element of the valuation ring reduced modulo 2^64: coefficients on
// the power basis of the field generator, each taken mod 2^64.
struct Word {
    std::array<uint64_t, kMaxDegree> c{};
    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word&, const Word&) = default;
};

// Arithmetic in O/2^64 O. When e > 1 the generator is the uniformizer
// (Eisenstein case); when e == 1 the uniformizer is 2 and the generator
// reduces to a generator of the residue field.
class LocalRing {
public:
    LocalRing() = default;
    // low[i]: theta^n = sum low[i] theta^i. eta = theta^e / 2 (ignored when e == 1).
    LocalRing(int e, int f, const std::vector<uint64_t>& low, const Word& eta);

    int e() const { return e_; }
    int f() const { return f_; }
    int n() const { return n_; }
    // ord values >= cap() mean "zero at this width"
    int cap() const { return e_ > 1 ? 64 * e_ : 64; }

    Word zero() const { return Word{}; }
    Word one() const { return from_int(1); }
    Word from_int(int64_t v) const;
    Word gen() const;
    Word pi() const;
    Word pi_pow(int k) const;

    Word add(const Word& a, const Word& b) const;
    Word sub(const Word& a, const Word& b) const;
    Word neg(const Word& a) const;
    Word mul(const Word& a, const Word& b) const;
    Word mul_int(const Word& a, int64_t k) const;

    int ord(const Word& a) const;
    bool is_zero_mod(const Word& a, int L) const { return ord(a) >= L; }
    // residue of a unit, as a bit vector over the F2-basis 1, theta, ...
    uint32_t residue(const Word& a) const;
    // residue of a / pi^k, assuming ord a == k
    uint32_t lead(const Word& a, int k) const;
    Word lift(uint32_t r) const;
    Word div_pi(const Word& a) const;
    Word inv_unit(const Word& a) const;
    // canonical representative modulo pi^L
    Word reduce(const Word& a, int L) const;

    // residue field F_{2^f}
    int residue_size() const { return 1 << f_; }
    uint32_t rmul(uint32_t a, uint32_t b) const;
    uint32_t rsqrt(uint32_t a) const;
    uint32_t rinv(uint32_t a) const;
    int rtrace(uint32_t a) const;

private:
    int e_ = 1, f_ = 1, n_ = 1;
    std::array<uint64_t, kMaxDegree> low_{};
    uint32_t rmod_ = 0;  // residue modulus bits, including x^f
    Word eta_inv_{};
    Word theta_em1_{};  // theta^(e-1)
};

}  // namespace dyadic
