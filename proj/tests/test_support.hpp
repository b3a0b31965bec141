#pragma once

// Shared helpers for the suite: seeded generators for rationals, scalars and
// non-signalling boxes, plus small independent oracles.

#include <random>
#include <vector>

#include "boxworld/boxworld.hpp"

namespace testsupport {

using namespace boxworld;

inline std::mt19937_64 seeded_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Rational random_rational(std::mt19937_64& g, int num_range = 20, int den_max = 12) {
    std::uniform_int_distribution<int> num(-num_range, num_range);
    std::uniform_int_distribution<int> den(1, den_max);
    return Rational(num(g), den(g));
}

inline ExactScalar random_scalar(std::mt19937_64& g) {
    return ExactScalar(random_rational(g), random_rational(g), random_rational(g),
                       random_rational(g));
}

inline ExactScalar random_nonzero_scalar(std::mt19937_64& g) {
    for (;;) {
        ExactScalar v = random_scalar(g);
        if (!v.is_zero()) return v;
    }
}

// Random rational point of the non-signalling polytope (convex combination
// of the 24 vertices).
inline BipartiteBox random_ns_box(std::mt19937_64& g) {
    const auto& vertices = enumerate_ns_vertices();
    std::uniform_int_distribution<int> wdist(0, 8);
    std::vector<long long> raw(vertices.size());
    long long total = 0;
    for (auto& w : raw) {
        w = wdist(g);
        total += w;
    }
    if (total == 0) {
        raw[0] = 1;
        total = 1;
    }
    std::vector<ExactScalar> weights;
    weights.reserve(raw.size());
    for (long long w : raw) weights.push_back(ExactScalar(Rational(w, total)));
    return mix_boxes(weights, vertices);
}

// CH value straight from the table, kept separate from the functional path.
inline ExactScalar ch_oracle(const BipartiteBox& b) {
    return b.at(1, 1, 0, 0) + b.at(0, 0, 1, 0) + b.at(0, 0, 0, 1) - b.at(0, 0, 1, 1);
}

// Normalized but signalling table: Bob's output tracks Alice's input
// (b = x), so Bob's marginal depends on x.
inline BipartiteBox signalling_table() {
    BipartiteBox box;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) box.at(0, x, x, y) = 1;
    return box;
}

inline std::vector<Rational> box_as_rational_vector(const BipartiteBox& b) {
    std::vector<Rational> v;
    v.reserve(16);
    for (const auto& e : b.p) {
        if (!e.is_rational()) throw std::runtime_error("box entry not rational");
        v.push_back(e.coeff(0));
    }
    return v;
}

inline std::vector<ExactScalar> box_as_vector(const BipartiteBox& b) {
    return std::vector<ExactScalar>(b.p.begin(), b.p.end());
}

}  // namespace testsupport
