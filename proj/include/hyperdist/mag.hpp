#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace hyperdist {

// Coarse upper-bound magnitude: value = frac * 2^exp with frac in [0.5, 1).
// All operations round up, so a Mag never under-reports an error radius.
class Mag {
public:
    Mag() : frac_(0.0), exp_(0) {}

    static Mag zero() { return Mag(); }

    static Mag from_double(double v) {
        Mag m;
        if (v <= 0.0) return m;
        if (!std::isfinite(v)) return inf();
        int e;
        m.frac_ = std::frexp(v, &e) * (1.0 + 1e-9);
        m.exp_ = e;
        m.normalize();
        return m;
    }

    // 2^e as a Mag
    static Mag pow2(long e) {
        Mag m;
        m.frac_ = 0.5;
        m.exp_ = e + 1;
        return m;
    }

    static Mag inf() {
        Mag m;
        m.frac_ = 0.75;
        m.exp_ = kInfExp;
        return m;
    }

    bool is_zero() const { return frac_ == 0.0; }
    bool is_inf() const { return exp_ >= kInfExp; }

    friend Mag operator+(const Mag& a, const Mag& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.is_inf() || b.is_inf()) return inf();
        const Mag& hi = (a.exp_ >= b.exp_) ? a : b;
        const Mag& lo = (a.exp_ >= b.exp_) ? b : a;
        long d = hi.exp_ - lo.exp_;
        Mag m;
        m.exp_ = hi.exp_;
        m.frac_ = hi.frac_ + ((d > 80) ? std::ldexp(0.5, -79) : std::ldexp(lo.frac_, -static_cast<int>(d)));
        m.frac_ *= 1.0 + 1e-9;
        m.normalize();
        return m;
    }

    friend Mag operator*(const Mag& a, const Mag& b) {
        if (a.is_zero() || b.is_zero()) return Mag();
        if (a.is_inf() || b.is_inf()) return inf();
        Mag m;
        m.frac_ = a.frac_ * b.frac_ * (1.0 + 1e-9);
        m.exp_ = a.exp_ + b.exp_;
        m.normalize();
        return m;
    }

    Mag& operator+=(const Mag& o) { *this = *this + o; return *this; }
    Mag& operator*=(const Mag& o) { *this = *this * o; return *this; }

    Mag mul2exp(long e) const {
        if (is_zero()) return *this;
        Mag m = *this;
        m.exp_ += e;
        return m;
    }

    static Mag max(const Mag& a, const Mag& b) { return (a < b) ? b : a; }

    friend bool operator<(const Mag& a, const Mag& b) {
        if (a.is_zero()) return !b.is_zero();
        if (b.is_zero()) return false;
        if (a.exp_ != b.exp_) return a.exp_ < b.exp_;
        return a.frac_ < b.frac_;
    }

    double to_double() const {
        if (is_zero()) return 0.0;
        if (exp_ > 500) return std::numeric_limits<double>::infinity();
        if (exp_ < -1000) return std::ldexp(1.0, -1000);
        return std::ldexp(frac_, static_cast<int>(exp_));
    }

    // log10 of the bound (-inf for zero)
    double log10() const {
        if (is_zero()) return -std::numeric_limits<double>::infinity();
        return std::log10(frac_) + static_cast<double>(exp_) * 0.30102999566398119521;
    }

private:
    static constexpr long kInfExp = 1L << 40;

    void normalize() {
        if (frac_ <= 0.0) { frac_ = 0.0; exp_ = 0; return; }
        int e;
        frac_ = std::frexp(frac_, &e);
        exp_ += e;
        if (exp_ > kInfExp) exp_ = kInfExp;
    }

    double frac_;
    long exp_;
};

} // namespace hyperdist
