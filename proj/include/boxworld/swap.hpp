#pragma once

#include "boxworld/box.hpp"
#include "boxworld/functional.hpp"

namespace boxworld {

// Weight of PR in box = mu * PR + (1 - mu) * antiPR.
struct IsotropicDecomposition {
    ExactScalar mu;
};

// Exact decomposition onto the PR/anti-PR segment; errors out when the box
// is off-segment (entry-wise residual check) or the weight leaves [0, 1].
inline IsotropicDecomposition decompose_isotropic(const BipartiteBox& box) {
    // PR carries 1/2 at (a,b,x,y) = (0,0,0,0), anti-PR carries 0 there
    const ExactScalar mu = 2 * box.at(0, 0, 0, 0);
    if (mu.sign() < 0 || (mu - 1).sign() > 0)
        throw not_isotropic_error("box is not a PR/anti-PR mixture");
    const BipartiteBox pr = make_pr();
    const BipartiteBox ap = make_anti_pr();
    for (std::size_t i = 0; i < 16; ++i)
        if (box.p[i] != mu * pr.p[i] + (1 - mu) * ap.p[i])
            throw not_isotropic_error("box is not a PR/anti-PR mixture");
    return {mu};
}

// Result of applying a coupler to Bob's halves of two boxes.
struct SwapOutcome {
    ExactScalar p_success;     // P(b' = 0)
    BipartiteBox success_box;  // P_S(ac|xz), conditioned on b' = 0
    BipartiteBox failure_box;  // P_f(ac|xz), conditioned on b' = 1
    ExactScalar ch_success;
    ExactScalar ch_failure;
};

// P(b' = 0) is determined entirely by the box Bob holds locally: the product
// of his two marginals. Works for arbitrary non-signalling inputs.
inline ExactScalar success_probability(const Coupler& coupler, const BipartiteBox& box_ab,
                                       const BipartiteBox& box_bc) {
    const SinglePartyBox bob_first = bob_marginal(box_ab);    // second slot of AB
    const SinglePartyBox bob_second = alice_marginal(box_bc); // first slot of BC
    return evaluate(coupler, tensor(bob_first, bob_second));
}

// Applies the coupler to two boxes on the PR/anti-PR segment. The b' = 0
// branch expands the four product actions bilinearly (PR.PR -> PR/2,
// mixed products -> antiPR/2 under the CH part; every product -> the
// maximally mixed box under the deterministic part). The b' = 1 branch is
// the complement, which pins the failure box so that
// p * P_S + (1-p) * P_f reproduces the product of the outer marginals.
inline SwapOutcome swap_boxes(const Coupler& coupler, const BipartiteBox& box_ab,
                              const BipartiteBox& box_bc) {
    const ExactScalar mu = decompose_isotropic(box_ab).mu;
    const ExactScalar nu = decompose_isotropic(box_bc).mu;
    const ExactScalar w_pr = (mu * nu + (1 - mu) * (1 - nu)) / ExactScalar(2);
    const ExactScalar w_ap = (mu * (1 - nu) + (1 - mu) * nu) / ExactScalar(2);

    const BipartiteBox pr = make_pr();
    const BipartiteBox ap = make_anti_pr();
    const BipartiteBox mm = make_maximally_mixed();
    const ExactScalar scale = ExactScalar(1) / (coupler.x_top - coupler.x_bottom);

    BipartiteBox branch0;  // unnormalized b' = 0 sub-box
    for (std::size_t i = 0; i < 16; ++i)
        branch0.p[i] = scale * (w_pr * pr.p[i] + w_ap * ap.p[i] - coupler.x_bottom * mm.p[i]);

    const ExactScalar p = deterministic_coupler().evaluate(branch0);
    if (p.sign() <= 0 || (p - 1).sign() >= 0)
        throw degenerate_error("success probability " + p.to_string() +
                               " leaves a conditional box undefined");

    SwapOutcome out;
    out.p_success = p;
    for (std::size_t i = 0; i < 16; ++i) {
        out.success_box.p[i] = branch0.p[i] / p;
        out.failure_box.p[i] = (mm.p[i] - branch0.p[i]) / (1 - p);
    }
    out.ch_success = ch_value(out.success_box);
    out.ch_failure = ch_value(out.failure_box);
    return out;
}

// Eq-2 check: the b'-averaged box Alice and Charlie share must factor into
// the product of their input marginals, exactly.
inline bool verify_coupler_nonsignalling(const Coupler& coupler, const BipartiteBox& box_ab,
                                         const BipartiteBox& box_bc) {
    const SwapOutcome out = swap_boxes(coupler, box_ab, box_bc);
    const BipartiteBox product = tensor(alice_marginal(box_ab), bob_marginal(box_bc));
    for (std::size_t i = 0; i < 16; ++i) {
        const ExactScalar mixed =
            out.p_success * out.success_box.p[i] + (1 - out.p_success) * out.failure_box.p[i];
        if (mixed != product.p[i]) return false;
    }
    return true;
}

// CH value of equal-noise inputs at which the swapped box reaches CH = 1:
// v* = 1/2 + sqrt((1 - 2 X_b)/2). Errors out when the square root leaves
// Q(2^(1/4)); callers that only plot can fall back to to_double().
inline ExactScalar swap_threshold(const Coupler& coupler) {
    const ExactScalar radicand = (1 - 2 * coupler.x_bottom) / ExactScalar(2);
    if (radicand.sign() < 0)
        throw unrepresentable_threshold_error("no real threshold for X_b = " +
                                              coupler.x_bottom.to_string());
    const auto root = radicand.exact_sqrt();
    if (!root)
        throw unrepresentable_threshold_error("sqrt(" + radicand.to_string() +
                                              ") lies outside Q(2^(1/4))");
    return ExactScalar(Rational(1, 2)) + *root;
}

}  // namespace boxworld
