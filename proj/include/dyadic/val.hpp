#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace dyadic {

// Extended half-integers. Stored as twice the value so that the /2 in
// the alpha and A formulas stays exact. Two infinities serve as the
// out-of-range sentinels.
class Val {
public:
    constexpr Val() = default;

    static constexpr Val of(int64_t n) { return Val(2 * n, 0); }
    static constexpr Val from_twice(int64_t t) { return Val(t, 0); }
    static constexpr Val inf() { return Val(0, 1); }
    static constexpr Val neg_inf() { return Val(0, -1); }

    constexpr bool is_inf() const { return kind_ == 1; }
    constexpr bool is_neg_inf() const { return kind_ == -1; }
    constexpr bool finite() const { return kind_ == 0; }
    constexpr int64_t twice() const { return t_; }
    constexpr bool is_integer() const { return kind_ == 0 && (t_ % 2) == 0; }
    int64_t to_int() const;

    // (x)/2; only legal on integers
    Val half() const;

    std::string str() const;

    Val operator-() const { return Val(-t_, -kind_); }
    friend Val operator+(Val a, Val b);
    friend Val operator-(Val a, Val b) { return a + (-b); }
    Val& operator+=(Val b) { return *this = *this + b; }

    friend constexpr bool operator==(Val a, Val b) { return a.kind_ == b.kind_ && a.t_ == b.t_; }
    friend constexpr std::strong_ordering operator<=>(Val a, Val b) {
        if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
        if (a.kind_ != 0) return std::strong_ordering::equal;
        return a.t_ <=> b.t_;
    }

private:
    constexpr Val(int64_t t, int kind) : t_(kind ? 0 : t), kind_(kind) {}
    int64_t t_ = 0;
    int kind_ = 0;
};

inline Val vmin(Val a, Val b) { return b < a ? b : a; }
inline Val vmax(Val a, Val b) { return a < b ? b : a; }

}  // namespace dyadic
