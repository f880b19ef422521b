#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace gq {

/// One-point compactified integer: a finite 64-bit value or the point at
/// infinity.  Finite arithmetic is checked; overflow is an error, never a
/// silent wrap.
class ExtInt {
public:
    constexpr ExtInt() : value_(0), infinite_(false) {}
    constexpr ExtInt(std::int64_t v) : value_(v), infinite_(false) {}

    static constexpr ExtInt infinity() {
        ExtInt e;
        e.infinite_ = true;
        return e;
    }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr bool is_finite() const { return !infinite_; }

    std::int64_t finite_value() const {
        if (infinite_) throw std::domain_error("ExtInt: finite_value() of infinity");
        return value_;
    }

    // Every finite integer compares below infinity.
    friend constexpr bool operator==(const ExtInt& a, const ExtInt& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
        return a.value_ == b.value_;
    }
    friend constexpr std::strong_ordering operator<=>(const ExtInt& a, const ExtInt& b) {
        if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
        if (a.infinite_) return std::strong_ordering::greater;
        if (b.infinite_) return std::strong_ordering::less;
        return a.value_ <=> b.value_;
    }

    // Infinity absorbs translation; finite + finite is checked.
    friend ExtInt operator+(const ExtInt& a, std::int64_t d) {
        if (a.infinite_) return a;
        std::int64_t r = 0;
        if (__builtin_add_overflow(a.value_, d, &r))
            throw std::overflow_error("ExtInt: addition overflow");
        return ExtInt(r);
    }
    friend ExtInt operator+(const ExtInt& a, const ExtInt& b) {
        if (b.infinite_) return b;
        return a + b.value_;
    }

    std::string str() const { return infinite_ ? "inf" : std::to_string(value_); }

private:
    std::int64_t value_;
    bool infinite_;
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("integer addition overflow");
    return r;
}

inline std::int64_t checked_neg(std::int64_t a) {
    if (a == INT64_MIN) throw std::overflow_error("integer negation overflow");
    return -a;
}

} // namespace gq
