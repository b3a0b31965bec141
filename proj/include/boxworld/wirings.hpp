#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "boxworld/functional.hpp"

namespace boxworld {

// Behavioral classes of the extremal consistent measurements on the full
// non-signalling polytope. All of them are wirings: classical circuitry
// around the two boxes.
enum class WiringKind { Deterministic, And, OneSided, Xor, Sequential };

inline std::string to_string(WiringKind k) {
    switch (k) {
        case WiringKind::Deterministic: return "deterministic";
        case WiringKind::And: return "and";
        case WiringKind::OneSided: return "one-sided";
        case WiringKind::Xor: return "xor";
        case WiringKind::Sequential: return "sequential";
    }
    return "?";
}

struct Wiring {
    LinearFunctional functional;
    WiringKind kind;
    std::string provenance;  // construction record, e.g. facets used
};

inline std::string facet_name(int a, int b, int x, int y) {
    return "p(" + std::to_string(a) + std::to_string(b) + "|" + std::to_string(x) +
           std::to_string(y) + ")";
}

// The 16 coordinate functionals P(ab|xy) >= 0, in canonical index order.
inline const std::vector<LinearFunctional>& positivity_facets() {
    static const std::vector<LinearFunctional> facets = [] {
        std::vector<LinearFunctional> out(16);
        for (std::size_t i = 0; i < 16; ++i) out[i].w[i] = 1;
        return out;
    }();
    return facets;
}

// Evaluation pattern on the 24 canonical vertices; two functionals with the
// same pattern act identically on every non-signalling box.
inline std::vector<ExactScalar> vertex_evaluations(const LinearFunctional& f) {
    const auto& vertices = enumerate_ns_vertices();
    std::vector<ExactScalar> out;
    out.reserve(vertices.size());
    for (const auto& v : vertices) out.push_back(f.evaluate(v));
    return out;
}

inline bool wiring_valid_on_vertices(const LinearFunctional& f) {
    for (const auto& v : vertex_evaluations(f))
        if (v.sign() < 0 || (v - 1).sign() > 0) return false;
    return true;
}

namespace detail {

struct StrategyBehavior {
    std::vector<ExactScalar> eval;
    WiringKind kind;
};

// Evaluation tables of explicit classical strategies, used to classify
// wirings by behavior instead of by hand-labeling.
inline const std::vector<StrategyBehavior>& strategy_behaviors() {
    static const std::vector<StrategyBehavior> table = [] {
        const auto& vertices = enumerate_ns_vertices();
        std::vector<StrategyBehavior> out;
        auto add = [&](WiringKind kind, auto&& eval_on) {
            StrategyBehavior sb;
            sb.kind = kind;
            for (const auto& v : vertices) sb.eval.push_back(eval_on(v));
            out.push_back(std::move(sb));
        };
        // constant output
        add(WiringKind::Deterministic, [](const BipartiteBox&) { return ExactScalar(1); });
        add(WiringKind::Deterministic, [](const BipartiteBox&) { return ExactScalar(0); });
        // fixed inputs, accept one joint outcome (or its complement)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int x = 0; x < 2; ++x)
                    for (int y = 0; y < 2; ++y) {
                        add(WiringKind::And,
                            [=](const BipartiteBox& v) { return v.at(a, b, x, y); });
                        add(WiringKind::And,
                            [=](const BipartiteBox& v) { return 1 - v.at(a, b, x, y); });
                    }
        // input one box only
        for (int o = 0; o < 2; ++o)
            for (int i = 0; i < 2; ++i) {
                add(WiringKind::OneSided, [=](const BipartiteBox& v) {
                    return v.at(o, 0, i, 0) + v.at(o, 1, i, 0);
                });
                add(WiringKind::OneSided, [=](const BipartiteBox& v) {
                    return v.at(0, o, 0, i) + v.at(1, o, 0, i);
                });
            }
        // fixed inputs, accept on output parity
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                for (int c = 0; c < 2; ++c)
                    add(WiringKind::Xor, [=](const BipartiteBox& v) {
                        return v.at(0, c, x, y) + v.at(1, c ^ 1, x, y);
                    });
        // second input depends on the first box's output
        for (int i = 0; i < 2; ++i)
            for (int s = 0; s < 2; ++s)
                for (int eps = 0; eps < 2; ++eps)
                    for (int phi = 0; phi < 2; ++phi) {
                        add(WiringKind::Sequential, [=](const BipartiteBox& v) {
                            ExactScalar sum;
                            for (int a = 0; a < 2; ++a) sum += v.at(a, (eps & a) ^ phi, i, a ^ s);
                            return sum;
                        });
                        add(WiringKind::Sequential, [=](const BipartiteBox& v) {
                            ExactScalar sum;
                            for (int b = 0; b < 2; ++b) sum += v.at((eps & b) ^ phi, b, b ^ s, i);
                            return sum;
                        });
                    }
        return out;
    }();
    return table;
}

}  // namespace detail

// Classifies a functional by matching its vertex evaluations against the
// generated strategy tables.
inline WiringKind classify_wiring(const LinearFunctional& f) {
    const auto eval = vertex_evaluations(f);
    for (const auto& sb : detail::strategy_behaviors())
        if (sb.eval == eval) return sb.kind;
    throw unclassifiable_error("no classical strategy reproduces this functional");
}

// The two deterministic wirings plus the 32 AND wirings (each positivity
// facet and its complement against the deterministic wiring).
inline std::vector<Wiring> and_wirings() {
    std::vector<Wiring> out;
    out.reserve(32);
    const auto& facets = positivity_facets();
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int x = 0; x < 2; ++x)
                for (int y = 0; y < 2; ++y) {
                    const auto& facet = facets[box_index(a, b, x, y)];
                    const std::string name = facet_name(a, b, x, y);
                    out.push_back({facet, WiringKind::And, "and/direct/" + name});
                    out.push_back({deterministic_coupler() - facet, WiringKind::And,
                                   "and/complement/" + name});
                }
    return out;
}

// Sums of two distinct direct AND wirings that stay within [0, 1] on every
// vertex, deduplicated by behavior: 56 of the 120 pairs survive the vertex
// check and collapse to 48 distinct measurements (each one-sided wiring
// arises from two no-signalling-equivalent pairs).
inline std::vector<Wiring> pairwise_sums() {
    const auto& facets = positivity_facets();
    std::map<std::vector<ExactScalar>, std::pair<LinearFunctional, std::vector<std::string>>>
        by_behavior;
    for (std::size_t i = 0; i < 16; ++i) {
        for (std::size_t j = i + 1; j < 16; ++j) {
            const LinearFunctional sum = facets[i] + facets[j];
            if (!wiring_valid_on_vertices(sum)) continue;
            const int ai = static_cast<int>(i);
            const int aj = static_cast<int>(j);
            const std::string pair_name =
                facet_name(ai >> 3, (ai >> 2) & 1, (ai >> 1) & 1, ai & 1) + "+" +
                facet_name(aj >> 3, (aj >> 2) & 1, (aj >> 1) & 1, aj & 1);
            auto& slot = by_behavior[vertex_evaluations(sum)];
            slot.first = sum;
            slot.second.push_back(pair_name);
        }
    }
    std::vector<Wiring> out;
    out.reserve(by_behavior.size());
    for (auto& [eval, entry] : by_behavior) {
        std::sort(entry.second.begin(), entry.second.end());
        std::string provenance = "sum/";
        for (std::size_t k = 0; k < entry.second.size(); ++k) {
            if (k) provenance += ";";
            provenance += entry.second[k];
        }
        out.push_back({entry.first, classify_wiring(entry.first), provenance});
    }
    return out;
}

// All 82 extremal consistent measurements, ordered lexicographically by
// provenance. Extremality of each one is verified in the test suite by
// exact linear feasibility.
inline std::vector<Wiring> enumerate_all_wirings() {
    std::vector<Wiring> out;
    out.push_back({deterministic_coupler(), WiringKind::Deterministic, "deterministic/output-0"});
    out.push_back({LinearFunctional{}, WiringKind::Deterministic, "deterministic/output-1"});
    for (auto& w : and_wirings()) out.push_back(std::move(w));
    for (auto& w : pairwise_sums()) out.push_back(std::move(w));

    // drop behavioral duplicates, keeping the provenance-first representative
    std::sort(out.begin(), out.end(),
              [](const Wiring& a, const Wiring& b) { return a.provenance < b.provenance; });
    std::map<std::vector<ExactScalar>, std::size_t> seen;
    std::vector<Wiring> unique;
    for (auto& w : out) {
        auto eval = vertex_evaluations(w.functional);
        if (seen.emplace(std::move(eval), unique.size()).second) unique.push_back(std::move(w));
    }
    return unique;
}

}  // namespace boxworld
