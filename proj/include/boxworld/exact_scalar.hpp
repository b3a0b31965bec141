#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <string>

#include "boxworld/errors.hpp"
#include "boxworld/rational.hpp"

namespace boxworld {

namespace detail {

// Rational interval [lo, hi] with lo <= hi; used for exact sign decisions.
struct RatInterval {
    Rational lo, hi;
};

// Interval bracketing r = 2^(1/4) with rational endpoints, lo^4 < 2 < hi^4.
// Bisection keeps the invariant; mid^4 = 2 cannot happen for rational mid.
inline void refine_root_interval(RatInterval& iv, int steps) {
    for (int i = 0; i < steps; ++i) {
        Rational mid = (iv.lo + iv.hi) / 2;
        Rational m2 = mid * mid;
        if (m2 * m2 < 2) {
            iv.lo = mid;
        } else {
            iv.hi = mid;
        }
    }
}

inline const RatInterval& base_root_interval() {
    static const RatInterval iv = [] {
        RatInterval v{Rational(1), Rational(5, 4)};
        refine_root_interval(v, 40);
        return v;
    }();
    return iv;
}

}  // namespace detail

// Element of the real number field Q(r), r = 2^(1/4), stored as
// c0 + c1 r + c2 r^2 + c3 r^3 with rational coefficients. {1, r, r^2, r^3}
// is a Q-basis, so the representation is unique and equality is
// component-wise. Multiplication reduces modulo r^4 = 2. Values are
// immutable in practice and safe to share across threads.
class ExactScalar {
public:
    ExactScalar() = default;
    ExactScalar(int v) : c_{Rational(v), Rational(0), Rational(0), Rational(0)} {}
    ExactScalar(long long v) : c_{Rational(v), Rational(0), Rational(0), Rational(0)} {}
    ExactScalar(const Rational& v) : c_{v, Rational(0), Rational(0), Rational(0)} {}
    ExactScalar(Rational c0, Rational c1, Rational c2, Rational c3)
        : c_{std::move(c0), std::move(c1), std::move(c2), std::move(c3)} {}

    static ExactScalar from_ratio(long long num, long long den) {
        return ExactScalar(Rational(num, den));
    }
    // r = 2^(1/4)
    static ExactScalar quartic_root_two() { return ExactScalar(0, 1, 0, 0); }
    // r^2 = sqrt(2)
    static ExactScalar sqrt_two() { return ExactScalar(0, 0, 1, 0); }
    // 1/sqrt(2) = r^2/2
    static ExactScalar inv_sqrt_two() { return ExactScalar(0, 0, Rational(1, 2), 0); }
    // B_Q = 1/2 + 1/sqrt(2), the quantum bound on the CH value
    static ExactScalar tsirelson_bound() {
        return ExactScalar(Rational(1, 2), 0, Rational(1, 2), 0);
    }

    const Rational& coeff(std::size_t k) const { return c_[k]; }

    bool is_zero() const {
        return c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero();
    }
    bool is_rational() const { return c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero(); }

    friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
        return ExactScalar(a.c_[0] + b.c_[0], a.c_[1] + b.c_[1], a.c_[2] + b.c_[2],
                           a.c_[3] + b.c_[3]);
    }
    friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) {
        return ExactScalar(a.c_[0] - b.c_[0], a.c_[1] - b.c_[1], a.c_[2] - b.c_[2],
                           a.c_[3] - b.c_[3]);
    }
    friend ExactScalar operator-(const ExactScalar& a) {
        return ExactScalar(-a.c_[0], -a.c_[1], -a.c_[2], -a.c_[3]);
    }
    friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
        const auto& x = a.c_;
        const auto& y = b.c_;
        // polynomial product reduced by r^4 = 2
        return ExactScalar(
            x[0] * y[0] + 2 * (x[1] * y[3] + x[2] * y[2] + x[3] * y[1]),
            x[0] * y[1] + x[1] * y[0] + 2 * (x[2] * y[3] + x[3] * y[2]),
            x[0] * y[2] + x[1] * y[1] + x[2] * y[0] + 2 * (x[3] * y[3]),
            x[0] * y[3] + x[1] * y[2] + x[2] * y[1] + x[3] * y[0]);
    }
    friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
        return a * b.inverse();
    }

    ExactScalar& operator+=(const ExactScalar& o) { return *this = *this + o; }
    ExactScalar& operator-=(const ExactScalar& o) { return *this = *this - o; }
    ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }
    ExactScalar& operator/=(const ExactScalar& o) { return *this = *this / o; }

    // Multiplicative inverse, by solving the 4x4 rational system a*x = 1 in
    // the basis {1, r, r^2, r^3}.
    ExactScalar inverse() const {
        if (is_zero()) throw division_by_zero_error("inverse of zero");
        // columns of the multiplication-by-a matrix: a*r^k
        Rational m[4][5] = {
            {c_[0], 2 * c_[3], 2 * c_[2], 2 * c_[1], Rational(1)},
            {c_[1], c_[0], 2 * c_[3], 2 * c_[2], Rational(0)},
            {c_[2], c_[1], c_[0], 2 * c_[3], Rational(0)},
            {c_[3], c_[2], c_[1], c_[0], Rational(0)},
        };
        for (int col = 0; col < 4; ++col) {
            int pivot = -1;
            for (int row = col; row < 4; ++row) {
                if (!m[row][col].is_zero()) {
                    pivot = row;
                    break;
                }
            }
            if (pivot < 0) throw division_by_zero_error("singular multiplication matrix");
            if (pivot != col) {
                for (int k = col; k < 5; ++k) std::swap(m[pivot][k], m[col][k]);
            }
            Rational inv = 1 / m[col][col];
            for (int k = col; k < 5; ++k) m[col][k] *= inv;
            for (int row = 0; row < 4; ++row) {
                if (row == col || m[row][col].is_zero()) continue;
                Rational f = m[row][col];
                for (int k = col; k < 5; ++k) m[row][k] -= f * m[col][k];
            }
        }
        return ExactScalar(m[0][4], m[1][4], m[2][4], m[3][4]);
    }

    // Exact sign of the real value. Nonzero coefficients imply a nonzero
    // value (basis property), so interval refinement around r terminates.
    int sign() const {
        if (is_zero()) return 0;
        detail::RatInterval iv = detail::base_root_interval();
        for (;;) {
            auto [lo, hi] = value_interval(iv);
            if (lo.sign() > 0) return 1;
            if (hi.sign() < 0) return -1;
            detail::refine_root_interval(iv, 8);
        }
    }

    friend bool operator==(const ExactScalar& a, const ExactScalar& b) { return a.c_ == b.c_; }
    friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }
    friend bool operator<(const ExactScalar& a, const ExactScalar& b) {
        return (a - b).sign() < 0;
    }
    friend bool operator>(const ExactScalar& a, const ExactScalar& b) { return b < a; }
    friend bool operator<=(const ExactScalar& a, const ExactScalar& b) { return !(b < a); }
    friend bool operator>=(const ExactScalar& a, const ExactScalar& b) { return !(a < b); }

    // Lossy embedding into doubles; diagnostics and plotting only.
    double to_double() const {
        const double r = 1.189207115002721;  // 2^(1/4)
        return c_[0].convert_to<double>() + c_[1].convert_to<double>() * r +
               c_[2].convert_to<double>() * (r * r) + c_[3].convert_to<double>() * (r * r * r);
    }

    // Exact ASCII form "p0/q0 + p1/q1 r + p2/q2 r^2 + p3/q3 r^3".
    std::string to_string() const {
        return rational_to_string(c_[0]) + " + " + rational_to_string(c_[1]) + " r + " +
               rational_to_string(c_[2]) + " r^2 + " + rational_to_string(c_[3]) + " r^3";
    }

    // Correctly rounded-to-nearest decimal rendering with the given number of
    // fractional digits. Display only; exact strings are the source of truth.
    std::string to_decimal(unsigned digits) const {
        const Rational approx = approximate(digits + 2);
        const Int scale = boost::multiprecision::pow(Int(10), digits);
        Rational mag = abs(approx) * scale + Rational(1, 2);
        Int n = numerator(mag) / denominator(mag);  // floor of a non-negative value
        std::string out;
        if (approx.sign() < 0 && n != 0) out += "-";
        Int ip = n / scale;
        out += ip.str();
        if (digits > 0) {
            std::string frac = Int(n % scale).str();
            out += "." + std::string(digits - frac.size(), '0') + frac;
        }
        return out;
    }

    // Rational approximation within 10^-k of the exact value.
    Rational approximate(unsigned k) const {
        Rational tol = Rational(Int(1), boost::multiprecision::pow(Int(10), k));
        detail::RatInterval iv = detail::base_root_interval();
        for (;;) {
            auto [lo, hi] = value_interval(iv);
            if (hi - lo < tol) return (lo + hi) / 2;
            detail::refine_root_interval(iv, 8);
        }
    }

    // Principal square root within Q(r), or nullopt when the root leaves the
    // field. Reduces to square roots in the subfield Q(sqrt(2)).
    std::optional<ExactScalar> exact_sqrt() const;

    friend std::ostream& operator<<(std::ostream& os, const ExactScalar& v) {
        return os << v.to_string();
    }

private:
    std::array<Rational, 4> c_{};

    std::pair<Rational, Rational> value_interval(const detail::RatInterval& riv) const {
        const Rational p1l = riv.lo, p1h = riv.hi;
        const Rational p2l = p1l * p1l, p2h = p1h * p1h;
        const Rational p3l = p2l * p1l, p3h = p2h * p1h;
        Rational lo = c_[0], hi = c_[0];
        auto acc = [&](const Rational& c, const Rational& pl, const Rational& ph) {
            if (c.sign() >= 0) {
                lo += c * pl;
                hi += c * ph;
            } else {
                lo += c * ph;
                hi += c * pl;
            }
        };
        acc(c_[1], p1l, p1h);
        acc(c_[2], p2l, p2h);
        acc(c_[3], p3l, p3h);
        return {lo, hi};
    }
};

inline ExactScalar operator+(int a, const ExactScalar& b) { return ExactScalar(a) + b; }
inline ExactScalar operator-(int a, const ExactScalar& b) { return ExactScalar(a) - b; }
inline ExactScalar operator*(int a, const ExactScalar& b) { return ExactScalar(a) * b; }

namespace detail {

// a + b*sqrt(2), an element of the quadratic subfield Q(sqrt(2)).
struct Q2 {
    Rational a, b;

    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    friend Q2 operator+(const Q2& x, const Q2& y) { return {x.a + y.a, x.b + y.b}; }
    friend Q2 operator-(const Q2& x, const Q2& y) { return {x.a - y.a, x.b - y.b}; }
    friend Q2 operator*(const Q2& x, const Q2& y) {
        return {x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a};
    }
    friend Q2 operator/(const Q2& x, const Q2& y) {
        Rational norm = y.a * y.a - 2 * y.b * y.b;  // nonzero for y != 0
        return {(x.a * y.a - 2 * x.b * y.b) / norm, (x.b * y.a - x.a * y.b) / norm};
    }
};

inline int sign_q2(const Q2& v) {
    const int sa = v.a.sign(), sb = v.b.sign();
    if (sa == 0 && sb == 0) return 0;
    if (sa >= 0 && sb >= 0) return 1;
    if (sa <= 0 && sb <= 0) return -1;
    // mixed signs: compare a^2 against 2 b^2
    const int cmp = Rational(v.a * v.a - 2 * v.b * v.b).sign();
    return cmp == 0 ? 0 : (cmp > 0 ? sa : sb);
}

// Principal (non-negative) square root within Q(sqrt(2)), if it exists.
inline std::optional<Q2> sqrt_q2(const Q2& s) {
    if (sign_q2(s) < 0) return std::nullopt;
    if (s.is_zero()) return Q2{Rational(0), Rational(0)};
    if (s.b.is_zero()) {
        if (auto c = rational_sqrt(s.a)) return Q2{*c, Rational(0)};
        if (auto d = rational_sqrt(s.a / 2)) return Q2{Rational(0), *d};
        return std::nullopt;
    }
    // (c + d sqrt2)^2 = s  =>  2c^4 - 2 s.a c^2 + s.b^2 = 0
    auto g = rational_sqrt(s.a * s.a - 2 * s.b * s.b);
    if (!g) return std::nullopt;
    for (int sgn : {1, -1}) {
        Rational h = (s.a + sgn * *g) / 2;
        if (h.sign() < 0) continue;
        auto c = rational_sqrt(h);
        if (!c || c->is_zero()) continue;
        Q2 root{*c, s.b / (2 * *c)};
        if (sign_q2(root) < 0) root = Q2{-root.a, -root.b};
        if ((root * root - s).is_zero()) return root;
    }
    return std::nullopt;
}

}  // namespace detail

inline std::optional<ExactScalar> ExactScalar::exact_sqrt() const {
    if (sign() < 0) return std::nullopt;
    using detail::Q2;
    // x = u + r v with u, v in Q(sqrt2): x^2 = (u^2 + sqrt2 v^2) + 2uv r
    const Q2 even{c_[0], c_[2]};
    const Q2 odd{c_[1], c_[3]};
    auto build = [](const Q2& u, const Q2& v) {
        return ExactScalar(u.a, v.a, u.b, v.b);
    };
    if (odd.is_zero()) {
        if (auto u = detail::sqrt_q2(even)) return build(*u, Q2{Rational(0), Rational(0)});
        // try x = r v: sqrt2 v^2 = even
        const Q2 v2 = even / Q2{Rational(0), Rational(1)};
        if (auto v = detail::sqrt_q2(v2)) return build(Q2{Rational(0), Rational(0)}, *v);
        return std::nullopt;
    }
    // 4u^4 - 4 even u^2 + sqrt2 odd^2 = 0
    const Q2 disc = even * even - Q2{Rational(0), Rational(1)} * odd * odd;
    auto g = detail::sqrt_q2(disc);
    if (!g) return std::nullopt;
    for (int sgn : {1, -1}) {
        const Q2 gg = sgn > 0 ? *g : Q2{-g->a, -g->b};
        const Q2 w{(even.a + gg.a) / 2, (even.b + gg.b) / 2};
        auto u = detail::sqrt_q2(w);
        if (!u || u->is_zero()) continue;
        const Q2 v = odd / Q2{2 * u->a, 2 * u->b};
        ExactScalar x = build(*u, v);
        if (x * x == *this) return x.sign() >= 0 ? x : -x;
    }
    return std::nullopt;
}

}  // namespace boxworld
