#include "dyadic/val.hpp"

#include <stdexcept>

namespace dyadic {

int64_t Val::to_int() const {
    if (!is_integer()) throw std::logic_error("value is not an integer: " + str());
    return t_ / 2;
}

Val Val::half() const {
    if (kind_ != 0) return *this;
    if (t_ % 2) throw std::logic_error("halving a half-integer");
    return Val(t_ / 2, 0);
}

std::string Val::str() const {
    if (kind_ == 1) return "inf";
    if (kind_ == -1) return "-inf";
    if (t_ % 2 == 0) return std::to_string(t_ / 2);
    return std::to_string(t_) + "/2";
}

Val operator+(Val a, Val b) {
    if (a.kind_ != 0 || b.kind_ != 0) {
        if (a.kind_ + b.kind_ == 0 && a.kind_ != 0) throw std::logic_error("inf - inf");
        return Val(0, a.kind_ != 0 ? a.kind_ : b.kind_);
    }
    return Val(a.t_ + b.t_, 0);
}

}  // namespace dyadic
