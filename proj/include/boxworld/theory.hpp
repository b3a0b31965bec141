#pragma once

#include <string>
#include <utility>
#include <vector>

#include "boxworld/box.hpp"
#include "boxworld/functional.hpp"
#include "boxworld/swap.hpp"

namespace boxworld {

// Classification of a coupler (X_t, X_b) for a theory whose CH values are
// bounded by X_t: valid couplers satisfy
//   1/2 - (X_t - 1/2)^2 < X_b <= (3/2 - X_t)/2
// with the perfect bound inclusive and the minimal bound exclusive.
enum class CouplerClass { NoSwapping, MinimalBoundary, Valid, Perfect, CreatesNonlocality };

inline std::string to_string(CouplerClass c) {
    switch (c) {
        case CouplerClass::NoSwapping: return "NoSwapping";
        case CouplerClass::MinimalBoundary: return "MinimalBoundary";
        case CouplerClass::Valid: return "Valid";
        case CouplerClass::Perfect: return "Perfect";
        case CouplerClass::CreatesNonlocality: return "CreatesNonlocality";
    }
    return "?";
}

namespace detail {
inline void require_x_top(const ExactScalar& x_top, bool exclusive_top = false) {
    const ExactScalar three_half(Rational(3, 2));
    const bool above_one = (x_top - 1).sign() > 0;
    const int top_cmp = (x_top - three_half).sign();
    const bool below_top = exclusive_top ? top_cmp < 0 : top_cmp <= 0;
    if (!above_one || !below_top)
        throw domain_error("X_t = " + x_top.to_string() + " outside " +
                           (exclusive_top ? "(1, 3/2)" : "(1, 3/2]"));
}
}  // namespace detail

// Largest X_b compatible with not creating non-locality: (3/2 - X_t)/2.
inline ExactScalar perfect_xb(const ExactScalar& x_top) {
    detail::require_x_top(x_top);
    return (ExactScalar(Rational(3, 2)) - x_top) / ExactScalar(2);
}

// Open lower boundary below which swapping fails: 1/2 - (X_t - 1/2)^2.
inline ExactScalar minimal_xb(const ExactScalar& x_top) {
    detail::require_x_top(x_top);
    const ExactScalar d = x_top - ExactScalar(Rational(1, 2));
    return ExactScalar(Rational(1, 2)) - d * d;
}

inline CouplerClass classify(const ExactScalar& x_top, const ExactScalar& x_bottom) {
    detail::require_x_top(x_top);
    const int vs_perfect = (x_bottom - perfect_xb(x_top)).sign();
    if (vs_perfect > 0) return CouplerClass::CreatesNonlocality;
    if (vs_perfect == 0) return CouplerClass::Perfect;
    const int vs_minimal = (x_bottom - minimal_xb(x_top)).sign();
    if (vs_minimal > 0) return CouplerClass::Valid;
    if (vs_minimal == 0) return CouplerClass::MinimalBoundary;
    return CouplerClass::NoSwapping;
}

// Noise weight of the model's top box: CH(isotropic(xi)) = X_t.
inline ExactScalar top_xi(const ExactScalar& x_top) {
    detail::require_x_top(x_top);
    return (2 * x_top + 1) / ExactScalar(4);
}

// CH range [Z_b, Z_t] of bipartite boxes built from two noisy local boxes:
// Z_b = (1 - (2 xi - 1)^2)/2, Z_t = 1 - Z_b.
inline std::pair<ExactScalar, ExactScalar> noisy_local_bounds(const ExactScalar& xi) {
    if ((xi - ExactScalar(Rational(1, 2))).sign() < 0 || (xi - 1).sign() > 0)
        throw range_error("noisy-local bounds need xi in [1/2, 1], got " + xi.to_string());
    const ExactScalar d = 2 * xi - 1;
    const ExactScalar z_b = (1 - d * d) / ExactScalar(2);
    return {z_b, 1 - z_b};
}

// A theory with CH values in [X_b, X_t]: one isotropic non-local genuine box
// at the top and the noisy local family at the same noise level.
struct TheoryModel {
    ExactScalar x_top;
    ExactScalar x_bottom;
    ExactScalar xi;
    BoxLabel genuine_nonlocal;

    static TheoryModel make(const ExactScalar& x_top, const ExactScalar& x_bottom) {
        detail::require_x_top(x_top);
        TheoryModel m{x_top, x_bottom, top_xi(x_top),
                      BoxLabel{BoxLabel::Kind::Isotropic, {0, 0, 0, 0}, top_xi(x_top)}};
        return m;
    }

    BipartiteBox top_box() const { return make_isotropic(xi); }

    // The 16 bipartite noisy local boxes L^xi_{ab} (x) L^xi_{gd}.
    std::vector<BipartiteBox> genuine_local_boxes() const {
        std::vector<BipartiteBox> out;
        out.reserve(16);
        for (int alpha = 0; alpha < 2; ++alpha)
            for (int beta = 0; beta < 2; ++beta)
                for (int gamma = 0; gamma < 2; ++gamma)
                    for (int delta = 0; delta < 2; ++delta)
                        out.push_back(tensor(make_noisy_local_pair(alpha, beta, xi),
                                             make_noisy_local_pair(gamma, delta, xi)));
        return out;
    }

    // Extremal genuine boxes: the top isotropic box plus the local family.
    std::vector<BipartiteBox> genuine_extremal_boxes() const {
        std::vector<BipartiteBox> out = genuine_local_boxes();
        out.push_back(top_box());
        return out;
    }
};

// Perfect coupler consistency on the boxes the model can actually prepare:
// X_b^perfect <= Z_b, strictly so except in the fully non-local theory.
inline bool perfect_coupler_consistent(const ExactScalar& x_top) {
    detail::require_x_top(x_top);
    const ExactScalar z_b = noisy_local_bounds(top_xi(x_top)).first;
    const int cmp = (perfect_xb(x_top) - z_b).sign();
    if ((x_top - ExactScalar(Rational(3, 2))).sign() == 0) return cmp <= 0;
    return cmp < 0;
}

// The perfect coupler of the maximally non-local theory stops swapping
// exactly at Tsirelson's bound, where the minimal-coupler boundary crosses
// zero: both identities hold exactly.
inline bool tsirelson_emergence_one() {
    const Coupler genuine = make_coupler(ExactScalar(Rational(3, 2)), ExactScalar(0));
    const ExactScalar bq = ExactScalar::tsirelson_bound();
    return swap_threshold(genuine) == bq && minimal_xb(bq).is_zero();
}

// In the weakly non-local limit the coupler forces CH(L^xi) >= 1/4 on the
// noisy local boxes; the non-local box generating that family is exactly
// the Tsirelson box.
inline bool tsirelson_emergence_two() {
    // solve Z_b(xi) = 1/4 with xi >= 1/2: (2 xi - 1)^2 = 1/2
    const auto root = ExactScalar(Rational(1, 2)).exact_sqrt();
    if (!root) return false;
    const ExactScalar xi = (1 + *root) / ExactScalar(2);
    if (noisy_local_bounds(xi).first != ExactScalar(Rational(1, 4))) return false;
    return ch_value(make_isotropic(xi)) == ExactScalar::tsirelson_bound();
}

// A theory with X_b = 1 - X_t never admits a coupler: the symmetric lower
// bound always violates the strict minimal inequality.
inline bool symmetric_theory_has_no_coupler(const ExactScalar& x_top) {
    detail::require_x_top(x_top, /*exclusive_top=*/true);
    return classify(x_top, 1 - x_top) == CouplerClass::NoSwapping;
}

}  // namespace boxworld
