#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "test_support.hpp"

using namespace boxworld;

namespace {

std::vector<Rational> behavior_as_rationals(const LinearFunctional& f) {
    std::vector<Rational> out;
    for (const auto& v : vertex_evaluations(f)) {
        REQUIRE(v.is_rational());
        out.push_back(v.coeff(0));
    }
    return out;
}

}  // namespace

TEST_CASE("positivity facets") {
    const auto& facets = positivity_facets();
    REQUIRE(facets.size() == 16);

    // the P(11|00) facet reads the PR box entry
    CHECK(facets[box_index(1, 1, 0, 0)].evaluate(make_pr()) == ExactScalar(Rational(1, 2)));

    for (const auto& facet : facets)
        for (const auto& vertex : enumerate_ns_vertices())
            CHECK(facet.evaluate(vertex).sign() >= 0);
}

TEST_CASE("AND wirings") {
    const auto wirings = and_wirings();
    REQUIRE(wirings.size() == 32);
    for (const auto& w : wirings) {
        CHECK(w.kind == WiringKind::And);
        CHECK(wiring_valid_on_vertices(w.functional));
    }

    // complement of a complement is the original
    const LinearFunctional& facet = positivity_facets()[box_index(1, 1, 0, 0)];
    const LinearFunctional complement = deterministic_coupler() - facet;
    CHECK(deterministic_coupler() - complement == facet);

    // the P(11|00) AND wiring: input x = y = 0, output b' = ab ^ 1
    CHECK(classify_wiring(facet) == WiringKind::And);
    CHECK(facet.evaluate(make_deterministic(0, 1, 0, 1)) == ExactScalar(1));
    CHECK(facet.evaluate(make_deterministic(0, 0, 0, 0)) == ExactScalar(0));
}

TEST_CASE("pairwise sums of AND wirings") {
    const auto& facets = positivity_facets();

    // exhaustive pair census against the vertex check
    std::size_t candidates = 0, valid_pairs = 0, invalid_pairs = 0;
    std::pair<std::size_t, std::size_t> some_invalid{16, 16};
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = i + 1; j < 16; ++j) {
            ++candidates;
            if (wiring_valid_on_vertices(facets[i] + facets[j])) {
                ++valid_pairs;
            } else {
                ++invalid_pairs;
                some_invalid = {i, j};
            }
        }
    CHECK(candidates == 120);
    CHECK(valid_pairs == 56);
    CHECK(invalid_pairs == 64);

    // any invalid pair has a deterministic-vertex witness evaluating to 2
    REQUIRE(some_invalid.first < 16);
    {
        const LinearFunctional bad = facets[some_invalid.first] + facets[some_invalid.second];
        bool witnessed = false;
        for (const auto& vertex : enumerate_ns_vertices())
            if (bad.evaluate(vertex) == ExactScalar(2)) witnessed = true;
        CHECK(witnessed);
    }

    // the P(11|00) + P(00|11) pair is such a case: the deterministic box
    // a = x^1, b = y^1 hits both entries
    {
        const LinearFunctional bad =
            facets[box_index(1, 1, 0, 0)] + facets[box_index(0, 0, 1, 1)];
        CHECK_FALSE(wiring_valid_on_vertices(bad));
        CHECK(bad.evaluate(make_deterministic(1, 1, 1, 1)) == ExactScalar(2));
    }

    // the 56 valid pairs collapse to 48 distinct behaviors
    const auto sums = pairwise_sums();
    CHECK(sums.size() == 48);

    // every survivor evaluates in {0, 1/2, 1} on the vertices
    for (const auto& w : sums)
        for (const auto& v : vertex_evaluations(w.functional)) {
            const bool ok = v == ExactScalar(0) || v == ExactScalar(Rational(1, 2)) ||
                            v == ExactScalar(1);
            CHECK(ok);
        }

    // the one-sided wirings are exactly the doubly-generated ones
    std::size_t doubly = 0;
    for (const auto& w : sums)
        if (w.provenance.find(';') != std::string::npos) {
            ++doubly;
            CHECK(w.kind == WiringKind::OneSided);
        }
    CHECK(doubly == 8);
}

TEST_CASE("classification of wirings") {
    CHECK(classify_wiring(deterministic_coupler()) == WiringKind::Deterministic);
    CHECK(classify_wiring(LinearFunctional{}) == WiringKind::Deterministic);
    CHECK(classify_wiring(positivity_facets()[box_index(1, 1, 0, 0)]) == WiringKind::And);

    // the CH functional is not a wiring of the full polytope
    CHECK_THROWS_AS(classify_wiring(ch_functional()), unclassifiable_error);
}

TEST_CASE("enumeration of all 82 wirings") {
    const auto wirings = enumerate_all_wirings();
    REQUIRE(wirings.size() == 82);

    std::map<WiringKind, std::size_t> histogram;
    for (const auto& w : wirings) {
        histogram[w.kind]++;
        CHECK(wiring_valid_on_vertices(w.functional));
    }
    CHECK(histogram[WiringKind::Deterministic] == 2);
    CHECK(histogram[WiringKind::And] == 32);
    CHECK(histogram[WiringKind::OneSided] == 8);
    CHECK(histogram[WiringKind::Xor] == 8);
    CHECK(histogram[WiringKind::Sequential] == 32);

    // provenance ordering is deterministic and duplicate-free
    std::set<std::string> provenances;
    for (const auto& w : wirings) provenances.insert(w.provenance);
    CHECK(provenances.size() == 82);
    for (std::size_t i = 1; i < wirings.size(); ++i)
        CHECK(wirings[i - 1].provenance < wirings[i].provenance);
}

TEST_CASE("closure under complement") {
    const auto wirings = enumerate_all_wirings();
    std::set<std::vector<Rational>> behaviors;
    for (const auto& w : wirings) behaviors.insert(behavior_as_rationals(w.functional));
    REQUIRE(behaviors.size() == 82);
    for (const auto& w : wirings) {
        const auto complement = behavior_as_rationals(deterministic_coupler() - w.functional);
        CHECK(behaviors.count(complement) == 1);
    }
}

TEST_CASE("every wiring is extremal") {
    const auto wirings = enumerate_all_wirings();
    std::vector<std::vector<Rational>> behaviors;
    behaviors.reserve(wirings.size());
    for (const auto& w : wirings) behaviors.push_back(behavior_as_rationals(w.functional));

    for (std::size_t i = 0; i < behaviors.size(); ++i) {
        std::vector<std::vector<Rational>> others;
        others.reserve(behaviors.size() - 1);
        for (std::size_t j = 0; j < behaviors.size(); ++j)
            if (j != i) others.push_back(behaviors[j]);
        CHECK_FALSE(convex_combination(others, behaviors[i]).has_value());
    }
}
