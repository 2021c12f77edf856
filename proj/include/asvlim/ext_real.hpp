#pragma once

#include <limits>
#include <ostream>
#include <stdexcept>

namespace asvlim {

/// Tagged extended real in [-inf, +inf]. Infinite endpoints are explicit
/// states, so comparisons that drive control flow never touch IEEE infinities.
class ExtReal {
  public:
    constexpr ExtReal() = default;

    static constexpr ExtReal finite(double v) { return ExtReal(Tag::Finite, v); }
    static constexpr ExtReal pos_inf() { return ExtReal(Tag::PosInf, 0.0); }
    static constexpr ExtReal neg_inf() { return ExtReal(Tag::NegInf, 0.0); }

    constexpr bool is_finite() const { return tag_ == Tag::Finite; }
    constexpr bool is_pos_inf() const { return tag_ == Tag::PosInf; }
    constexpr bool is_neg_inf() const { return tag_ == Tag::NegInf; }
    constexpr bool is_infinite() const { return tag_ != Tag::Finite; }

    double value() const {
        if (!is_finite())
            throw std::domain_error("ExtReal::value: not finite");
        return value_;
    }

    /// Finite value, or +-HUGE_VAL for the infinite tags (printing, plotting).
    constexpr double as_double() const {
        switch (tag_) {
            case Tag::PosInf: return std::numeric_limits<double>::infinity();
            case Tag::NegInf: return -std::numeric_limits<double>::infinity();
            default: return value_;
        }
    }

    friend constexpr bool operator==(const ExtReal& a, const ExtReal& b) {
        if (a.tag_ != b.tag_) return false;
        return a.tag_ != Tag::Finite || a.value_ == b.value_;
    }
    friend constexpr bool operator<(const ExtReal& a, const ExtReal& b) {
        if (a.tag_ == Tag::NegInf) return b.tag_ != Tag::NegInf;
        if (a.tag_ == Tag::PosInf) return false;
        if (b.tag_ == Tag::PosInf) return true;
        if (b.tag_ == Tag::NegInf) return false;
        return a.value_ < b.value_;
    }
    friend constexpr bool operator>(const ExtReal& a, const ExtReal& b) { return b < a; }
    friend constexpr bool operator<=(const ExtReal& a, const ExtReal& b) { return !(b < a); }
    friend constexpr bool operator>=(const ExtReal& a, const ExtReal& b) { return !(a < b); }
    friend constexpr bool operator!=(const ExtReal& a, const ExtReal& b) { return !(a == b); }

    friend constexpr bool operator<(const ExtReal& a, double b) { return a < finite(b); }
    friend constexpr bool operator<(double a, const ExtReal& b) { return finite(a) < b; }
    friend constexpr bool operator>(const ExtReal& a, double b) { return finite(b) < a; }
    friend constexpr bool operator>(double a, const ExtReal& b) { return b < finite(a); }
    friend constexpr bool operator<=(const ExtReal& a, double b) { return !(finite(b) < a); }
    friend constexpr bool operator<=(double a, const ExtReal& b) { return !(b < finite(a)); }
    friend constexpr bool operator>=(const ExtReal& a, double b) { return !(a < finite(b)); }
    friend constexpr bool operator>=(double a, const ExtReal& b) { return !(finite(a) < b); }
    friend constexpr bool operator==(const ExtReal& a, double b) { return a == finite(b); }
    friend constexpr bool operator==(double a, const ExtReal& b) { return finite(a) == b; }

    friend std::ostream& operator<<(std::ostream& os, const ExtReal& x) {
        if (x.is_pos_inf()) return os << "+inf";
        if (x.is_neg_inf()) return os << "-inf";
        return os << x.value_;
    }

  private:
    enum class Tag { Finite, PosInf, NegInf };
    constexpr ExtReal(Tag tag, double v) : tag_(tag), value_(v) {}

    Tag tag_ = Tag::Finite;
    double value_ = 0.0;
};

}  // namespace asvlim
