#pragma once

#include <array>
#include <optional>
#include <vector>

#include "boxworld/errors.hpp"
#include "boxworld/exact_scalar.hpp"

namespace boxworld {

// Canonical layout of the 16-vector: (a, b, x, y) row-major. The CH covector
// and every functional use the same order.
inline constexpr std::size_t box_index(int a, int b, int x, int y) {
    return static_cast<std::size_t>(((a * 2 + b) * 2 + x) * 2 + y);
}

// P(b|y), index b*2 + y.
struct SinglePartyBox {
    std::array<ExactScalar, 4> q{};

    const ExactScalar& at(int b, int y) const { return q[static_cast<std::size_t>(b * 2 + y)]; }
    ExactScalar& at(int b, int y) { return q[static_cast<std::size_t>(b * 2 + y)]; }

    friend bool operator==(const SinglePartyBox&, const SinglePartyBox&) = default;
};

// Joint conditional probabilities P(ab|xy) of a bipartite box.
struct BipartiteBox {
    std::array<ExactScalar, 16> p{};

    const ExactScalar& at(int a, int b, int x, int y) const { return p[box_index(a, b, x, y)]; }
    ExactScalar& at(int a, int b, int x, int y) { return p[box_index(a, b, x, y)]; }

    friend bool operator==(const BipartiteBox&, const BipartiteBox&) = default;
};

struct BoxReport {
    bool nonneg = false;
    bool normalized = false;
    bool nonsignalling = false;

    bool all() const { return nonneg && normalized && nonsignalling; }
};

// Local deterministic box: a = alpha*x + beta, b = gamma*y + delta (mod 2).
inline BipartiteBox make_deterministic(int alpha, int beta, int gamma, int delta) {
    BipartiteBox box;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) box.at((alpha & x) ^ beta, (gamma & y) ^ delta, x, y) = 1;
    return box;
}

// PR-box family: entries 1/2 where a + b = xy + alpha*x + beta*y + gamma (mod 2).
inline BipartiteBox make_pr_variant(int alpha, int beta, int gamma) {
    BipartiteBox box;
    const ExactScalar half = ExactScalar(Rational(1, 2));
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int x = 0; x < 2; ++x)
                for (int y = 0; y < 2; ++y)
                    if ((a ^ b) == ((x & y) ^ (alpha & x) ^ (beta & y) ^ gamma))
                        box.at(a, b, x, y) = half;
    return box;
}

inline BipartiteBox make_pr() { return make_pr_variant(0, 0, 0); }
inline BipartiteBox make_anti_pr() { return make_pr_variant(0, 0, 1); }

inline BipartiteBox make_maximally_mixed() {
    BipartiteBox box;
    for (auto& e : box.p) e = ExactScalar(Rational(1, 4));
    return box;
}

// xi * PR + (1 - xi) * antiPR.
inline BipartiteBox make_isotropic(const ExactScalar& xi) {
    if (xi.sign() < 0 || (xi - 1).sign() > 0)
        throw range_error("isotropic weight must lie in [0, 1], got " + xi.to_string());
    const BipartiteBox pr = make_pr();
    const BipartiteBox ap = make_anti_pr();
    BipartiteBox box;
    for (std::size_t i = 0; i < 16; ++i) box.p[i] = xi * pr.p[i] + (1 - xi) * ap.p[i];
    return box;
}

// Single-party deterministic box b = alpha*y + beta (mod 2).
inline SinglePartyBox make_single_deterministic(int alpha, int beta) {
    SinglePartyBox box;
    for (int y = 0; y < 2; ++y) box.at((alpha & y) ^ beta, y) = 1;
    return box;
}

// Noisy local box: xi * L_{alpha,beta} + (1-xi) * L_{alpha,beta^1}.
inline SinglePartyBox make_noisy_local_pair(int alpha, int beta, const ExactScalar& xi) {
    if (xi.sign() < 0 || (xi - 1).sign() > 0)
        throw range_error("noise weight must lie in [0, 1], got " + xi.to_string());
    const SinglePartyBox l0 = make_single_deterministic(alpha, beta);
    const SinglePartyBox l1 = make_single_deterministic(alpha, beta ^ 1);
    SinglePartyBox box;
    for (std::size_t i = 0; i < 4; ++i) box.q[i] = xi * l0.q[i] + (1 - xi) * l1.q[i];
    return box;
}

// Product box P(ab|xy) = P_A(a|x) * P_B(b|y); non-signalling by construction.
inline BipartiteBox tensor(const SinglePartyBox& first, const SinglePartyBox& second) {
    BipartiteBox box;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int x = 0; x < 2; ++x)
                for (int y = 0; y < 2; ++y) box.at(a, b, x, y) = first.at(a, x) * second.at(b, y);
    return box;
}

// First-party marginal P(a|x); evaluated at y = 0 (y-independent for
// non-signalling boxes).
inline SinglePartyBox alice_marginal(const BipartiteBox& box) {
    SinglePartyBox m;
    for (int a = 0; a < 2; ++a)
        for (int x = 0; x < 2; ++x) m.at(a, x) = box.at(a, 0, x, 0) + box.at(a, 1, x, 0);
    return m;
}

// Second-party marginal P(b|y); evaluated at x = 0.
inline SinglePartyBox bob_marginal(const BipartiteBox& box) {
    SinglePartyBox m;
    for (int b = 0; b < 2; ++b)
        for (int y = 0; y < 2; ++y) m.at(b, y) = box.at(0, b, 0, y) + box.at(1, b, 0, y);
    return m;
}

// Bob's conditional box P(b|y, a, x) after Alice inputs x and reads a.
// Each y-column is divided by its own P(a|x,y), so the result is normalized
// column-wise; errors out when the conditioning event has probability zero.
inline SinglePartyBox condition_on_alice(const BipartiteBox& box, int x, int a) {
    SinglePartyBox out;
    for (int y = 0; y < 2; ++y) {
        const ExactScalar pa = box.at(a, 0, x, y) + box.at(a, 1, x, y);
        if (pa.is_zero())
            throw undefined_conditional_error("P(a=" + std::to_string(a) +
                                              "|x=" + std::to_string(x) + ") = 0");
        for (int b = 0; b < 2; ++b) out.at(b, y) = box.at(a, b, x, y) / pa;
    }
    return out;
}

// Exact report of the three box invariants. Never throws.
inline BoxReport verify_box(const BipartiteBox& box) {
    BoxReport rep;
    rep.nonneg = true;
    for (const auto& e : box.p)
        if (e.sign() < 0) rep.nonneg = false;
    rep.normalized = true;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            ExactScalar total;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) total += box.at(a, b, x, y);
            if (total != ExactScalar(1)) rep.normalized = false;
        }
    rep.nonsignalling = true;
    for (int a = 0; a < 2; ++a)
        for (int x = 0; x < 2; ++x)
            if (box.at(a, 0, x, 0) + box.at(a, 1, x, 0) != box.at(a, 0, x, 1) + box.at(a, 1, x, 1))
                rep.nonsignalling = false;
    for (int b = 0; b < 2; ++b)
        for (int y = 0; y < 2; ++y)
            if (box.at(0, b, 0, y) + box.at(1, b, 0, y) != box.at(0, b, 1, y) + box.at(1, b, 1, y))
                rep.nonsignalling = false;
    return rep;
}

// Convex combination; weights and boxes must match in size.
inline BipartiteBox mix_boxes(const std::vector<ExactScalar>& weights,
                              const std::vector<BipartiteBox>& boxes) {
    if (weights.size() != boxes.size() || boxes.empty())
        throw domain_error("mix_boxes needs matching, non-empty weights and boxes");
    BipartiteBox out;
    for (std::size_t k = 0; k < boxes.size(); ++k)
        for (std::size_t i = 0; i < 16; ++i) out.p[i] += weights[k] * boxes[k].p[i];
    return out;
}

// The 24 extremal non-signalling boxes: 16 deterministic boxes in
// (alpha, beta, gamma, delta) lexicographic order followed by the 8 PR
// variants in (alpha, beta, gamma) order. The structure is verified against
// a brute-force facet-rank enumeration in the test suite.
inline const std::vector<BipartiteBox>& enumerate_ns_vertices() {
    static const std::vector<BipartiteBox> vertices = [] {
        std::vector<BipartiteBox> v;
        v.reserve(24);
        for (int alpha = 0; alpha < 2; ++alpha)
            for (int beta = 0; beta < 2; ++beta)
                for (int gamma = 0; gamma < 2; ++gamma)
                    for (int delta = 0; delta < 2; ++delta)
                        v.push_back(make_deterministic(alpha, beta, gamma, delta));
        for (int alpha = 0; alpha < 2; ++alpha)
            for (int beta = 0; beta < 2; ++beta)
                for (int gamma = 0; gamma < 2; ++gamma) v.push_back(make_pr_variant(alpha, beta, gamma));
        return v;
    }();
    return vertices;
}

// Optional metadata describing how a box was constructed.
struct BoxLabel {
    enum class Kind {
        Deterministic,
        PrVariant,
        AntiPr,
        Isotropic,
        NoisyLocal,
        MaximallyMixed,
        Custom
    };

    Kind kind = Kind::Custom;
    std::array<int, 4> bits{};          // alpha/beta/gamma/delta as applicable
    std::optional<ExactScalar> xi{};    // Isotropic and NoisyLocal
};

inline BipartiteBox make_box(const BoxLabel& label) {
    using Kind = BoxLabel::Kind;
    for (int bit : label.bits)
        if (bit != 0 && bit != 1) throw range_error("box parameters must be bits");
    switch (label.kind) {
        case Kind::Deterministic:
            return make_deterministic(label.bits[0], label.bits[1], label.bits[2], label.bits[3]);
        case Kind::PrVariant:
            return make_pr_variant(label.bits[0], label.bits[1], label.bits[2]);
        case Kind::AntiPr:
            return make_anti_pr();
        case Kind::Isotropic:
            if (!label.xi) throw domain_error("isotropic label needs xi");
            return make_isotropic(*label.xi);
        case Kind::NoisyLocal:
            if (!label.xi) throw domain_error("noisy-local label needs xi");
            return tensor(make_noisy_local_pair(label.bits[0], label.bits[1], *label.xi),
                          make_noisy_local_pair(label.bits[2], label.bits[3], *label.xi));
        case Kind::MaximallyMixed:
            return make_maximally_mixed();
        case Kind::Custom:
            break;
    }
    throw domain_error("custom labels carry no construction recipe");
}

}  // namespace boxworld
