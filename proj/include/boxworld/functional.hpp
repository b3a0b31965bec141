#pragma once

#include <vector>

#include "boxworld/box.hpp"

namespace boxworld {

// Covector on the 16-dimensional box space, plus an affine offset (zero for
// everything in this library; kept so shifted inequalities need no new type).
struct LinearFunctional {
    std::array<ExactScalar, 16> w{};
    ExactScalar offset{};

    ExactScalar evaluate(const BipartiteBox& box) const {
        ExactScalar v = offset;
        for (std::size_t i = 0; i < 16; ++i) v += w[i] * box.p[i];
        return v;
    }

    friend bool operator==(const LinearFunctional&, const LinearFunctional&) = default;
};

inline LinearFunctional operator+(const LinearFunctional& a, const LinearFunctional& b) {
    LinearFunctional out;
    for (std::size_t i = 0; i < 16; ++i) out.w[i] = a.w[i] + b.w[i];
    out.offset = a.offset + b.offset;
    return out;
}

inline LinearFunctional operator-(const LinearFunctional& a, const LinearFunctional& b) {
    LinearFunctional out;
    for (std::size_t i = 0; i < 16; ++i) out.w[i] = a.w[i] - b.w[i];
    out.offset = a.offset - b.offset;
    return out;
}

inline LinearFunctional operator*(const ExactScalar& s, const LinearFunctional& f) {
    LinearFunctional out;
    for (std::size_t i = 0; i < 16; ++i) out.w[i] = s * f.w[i];
    out.offset = s * f.offset;
    return out;
}

// Clauser-Horne functional: P(11|00) + P(00|10) + P(00|01) - P(00|11).
// Local boxes satisfy 0 <= CH <= 1; the PR box reaches 3/2.
inline const LinearFunctional& ch_functional() {
    static const LinearFunctional ch = [] {
        LinearFunctional f;
        f.w[box_index(1, 1, 0, 0)] = 1;
        f.w[box_index(0, 0, 1, 0)] = 1;
        f.w[box_index(0, 0, 0, 1)] = 1;
        f.w[box_index(0, 0, 1, 1)] = ExactScalar(-1);
        return f;
    }();
    return ch;
}

inline ExactScalar ch_value(const BipartiteBox& box) { return ch_functional().evaluate(box); }

// Deterministic coupler: sums the four (x,y) = (0,0) entries, so it
// evaluates to exactly 1 on every normalized box (signalling or not) and
// acts as the identity element of the coupler family.
inline const LinearFunctional& deterministic_coupler() {
    static const LinearFunctional d = [] {
        LinearFunctional f;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) f.w[box_index(a, b, 0, 0)] = 1;
        return f;
    }();
    return d;
}

// chi = (CH - X_b * chi_D) / (X_t - X_b). Evaluates to 1 on boxes with
// CH = X_t and to 0 on boxes with CH = X_b.
struct Coupler {
    LinearFunctional functional;
    ExactScalar x_top;
    ExactScalar x_bottom;
};

inline Coupler make_coupler(const ExactScalar& x_top, const ExactScalar& x_bottom) {
    if ((x_top - x_bottom).sign() <= 0)
        throw degenerate_error("coupler needs X_b < X_t, got X_t = " + x_top.to_string() +
                               ", X_b = " + x_bottom.to_string());
    const ExactScalar scale = ExactScalar(1) / (x_top - x_bottom);
    Coupler c{scale * (ch_functional() - x_bottom * deterministic_coupler()), x_top, x_bottom};
    return c;
}

inline ExactScalar evaluate(const Coupler& coupler, const BipartiteBox& box) {
    return coupler.functional.evaluate(box);
}

// True iff the coupler outputs with a valid probability on every listed box.
// By linearity it is enough to call this on the extremal allowed boxes.
inline bool coupler_valid_on(const Coupler& coupler, const std::vector<BipartiteBox>& boxes) {
    for (const auto& box : boxes) {
        const ExactScalar v = evaluate(coupler, box);
        if (v.sign() < 0 || (v - 1).sign() > 0) return false;
    }
    return true;
}

}  // namespace boxworld
