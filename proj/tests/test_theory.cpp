#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace boxworld;

namespace {
const ExactScalar kHalf(Rational(1, 2));
const ExactScalar kThreeHalf(Rational(3, 2));
const ExactScalar kBq = ExactScalar::tsirelson_bound();
}  // namespace

TEST_CASE("perfect coupler boundary") {
    CHECK(perfect_xb(kThreeHalf) == ExactScalar(0));
    CHECK(perfect_xb(kBq) == (1 - ExactScalar::inv_sqrt_two()) / ExactScalar(2));
    // approaches 1/4 from below as X_t -> 1
    ExactScalar prev_gap(1);
    for (int k = 1; k <= 6; ++k) {
        const ExactScalar x_top = ExactScalar(1) + ExactScalar(Rational(1, 1 << k));
        const ExactScalar gap = ExactScalar(Rational(1, 4)) - perfect_xb(x_top);
        CHECK(gap.sign() > 0);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK_THROWS_AS(perfect_xb(ExactScalar(1)), domain_error);
    CHECK_THROWS_AS(perfect_xb(ExactScalar(Rational(8, 5))), domain_error);
}

TEST_CASE("minimal coupler boundary") {
    CHECK(minimal_xb(kThreeHalf) == ExactScalar(Rational(-1, 2)));
    CHECK(minimal_xb(kBq) == ExactScalar(0));
    ExactScalar prev_gap(1);
    for (int k = 1; k <= 6; ++k) {
        const ExactScalar x_top = ExactScalar(1) + ExactScalar(Rational(1, 1 << k));
        const ExactScalar gap = ExactScalar(Rational(1, 4)) - minimal_xb(x_top);
        CHECK(gap.sign() > 0);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
}

TEST_CASE("region consistency: minimal stays below perfect") {
    ExactScalar prev_diff(10);
    for (int k = 40; k >= 1; --k) {  // descending X_t grid towards 1
        const ExactScalar x_top = ExactScalar(1) + ExactScalar(Rational(k, 80));
        const ExactScalar diff = perfect_xb(x_top) - minimal_xb(x_top);
        CHECK(diff.sign() > 0);
        CHECK(diff < prev_diff);  // shrinks monotonically towards the X_t -> 1 limit
        prev_diff = diff;
    }
}

TEST_CASE("classification of couplers") {
    CHECK(classify(kThreeHalf, ExactScalar(0)) == CouplerClass::Perfect);
    CHECK(classify(kBq, ExactScalar(0)) == CouplerClass::MinimalBoundary);
    // boundary of the no-swapping region for the fully non-local theory
    CHECK(classify(kThreeHalf, ExactScalar(Rational(-1, 2))) == CouplerClass::MinimalBoundary);
    CHECK(classify(kThreeHalf, ExactScalar(Rational(-3, 5))) == CouplerClass::NoSwapping);
    CHECK(classify(kThreeHalf, ExactScalar(Rational(-1, 4))) == CouplerClass::Valid);
    CHECK(classify(kThreeHalf, ExactScalar(Rational(1, 10))) == CouplerClass::CreatesNonlocality);
    CHECK(classify(ExactScalar(Rational(5, 4)), ExactScalar(Rational(1, 2))) ==
          CouplerClass::CreatesNonlocality);

    CHECK_THROWS_AS(classify(ExactScalar(1), ExactScalar(0)), domain_error);
    CHECK_THROWS_AS(classify(ExactScalar(Rational(1, 2)), ExactScalar(0)), domain_error);
    CHECK_THROWS_AS(classify(ExactScalar(2), ExactScalar(0)), domain_error);
}

TEST_CASE("noisy local bounds") {
    CHECK(noisy_local_bounds(ExactScalar(1)) ==
          std::pair{ExactScalar(0), ExactScalar(1)});

    const ExactScalar xi_q = kHalf + ExactScalar(0, 0, Rational(1, 4), 0);
    CHECK(noisy_local_bounds(xi_q) ==
          std::pair{ExactScalar(Rational(1, 4)), ExactScalar(Rational(3, 4))});

    CHECK_THROWS_AS(noisy_local_bounds(ExactScalar(Rational(1, 4))), range_error);
    CHECK_THROWS_AS(noisy_local_bounds(ExactScalar(Rational(6, 5))), range_error);

    // exhaustive: the min/max CH over the 16 tensor boxes equals (Z_b, Z_t)
    for (const auto& xi : {ExactScalar(Rational(1, 2)), ExactScalar(Rational(2, 3)),
                           ExactScalar(Rational(7, 8)), xi_q, ExactScalar(1)}) {
        const auto [z_b, z_t] = noisy_local_bounds(xi);
        ExactScalar lo(10), hi(-10);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c)
                    for (int d = 0; d < 2; ++d) {
                        const ExactScalar v = ch_value(tensor(make_noisy_local_pair(a, b, xi),
                                                              make_noisy_local_pair(c, d, xi)));
                        lo = std::min(lo, v);
                        hi = std::max(hi, v);
                    }
        CHECK(lo == z_b);
        CHECK(hi == z_t);
    }
}

TEST_CASE("perfect coupler consistency against the noisy local family") {
    CHECK(perfect_coupler_consistent(kThreeHalf));  // equality X_b = Z_b = 0
    CHECK(perfect_xb(kThreeHalf) == noisy_local_bounds(top_xi(kThreeHalf)).first);

    CHECK(perfect_coupler_consistent(kBq));
    CHECK((perfect_xb(kBq) - noisy_local_bounds(top_xi(kBq)).first).sign() < 0);

    CHECK(perfect_coupler_consistent(ExactScalar(Rational(5, 4))));
    CHECK((perfect_xb(ExactScalar(Rational(5, 4))) -
           noisy_local_bounds(top_xi(ExactScalar(Rational(5, 4)))).first)
              .sign() < 0);
}

TEST_CASE("theory models") {
    const TheoryModel model = TheoryModel::make(kBq, ExactScalar(0));
    CHECK(model.xi == top_xi(kBq));
    CHECK(ch_value(model.top_box()) == kBq);
    CHECK(model.genuine_local_boxes().size() == 16);

    // every genuine box is a valid box with CH inside [Z_b, X_t]
    const auto [z_b, z_t] = noisy_local_bounds(model.xi);
    for (const auto& box : model.genuine_extremal_boxes()) {
        CHECK(verify_box(box).all());
        const ExactScalar v = ch_value(box);
        CHECK(v >= z_b);
        CHECK(v <= kBq);
    }

    // the perfect coupler evaluates within [0,1] on all of them
    const Coupler perfect = make_coupler(kBq, perfect_xb(kBq));
    CHECK(coupler_valid_on(perfect, model.genuine_extremal_boxes()));
}

TEST_CASE("Tsirelson emergence, first occurrence") {
    CHECK(tsirelson_emergence_one());

    // perturbed couplers miss the bound
    const Coupler perturbed = make_coupler(kThreeHalf, ExactScalar(Rational(1, 100)));
    CHECK(swap_threshold(perturbed) != kBq);
    // post-quantum models keep deterministic boxes: minimal_xb < 0 there
    CHECK(minimal_xb(kBq + ExactScalar(Rational(1, 100))).sign() < 0);
}

TEST_CASE("Tsirelson emergence, second occurrence") {
    CHECK(tsirelson_emergence_two());

    // Z_b(xi) = 1/4 forces (2 xi - 1)^2 = 1/2
    const auto root = ExactScalar(Rational(1, 2)).exact_sqrt();
    REQUIRE(root.has_value());
    const ExactScalar xi = (1 + *root) / ExactScalar(2);
    CHECK((2 * xi - 1) * (2 * xi - 1) == kHalf);
    CHECK(noisy_local_bounds(xi).first == ExactScalar(Rational(1, 4)));

    // wrong targets give non-Tsirelson boxes
    // Z_b = 0  => xi = 1     => CH = 3/2
    CHECK(noisy_local_bounds(ExactScalar(1)).first == ExactScalar(0));
    CHECK(ch_value(make_isotropic(ExactScalar(1))) != kBq);
    // Z_b = 3/8 => xi = 3/4  => CH = 1
    CHECK(noisy_local_bounds(ExactScalar(Rational(3, 4))).first == ExactScalar(Rational(3, 8)));
    CHECK(ch_value(make_isotropic(ExactScalar(Rational(3, 4)))) != kBq);
}

TEST_CASE("post-quantum iff deterministic boxes can be kept") {
    for (int k = 1; k <= 40; ++k) {
        const ExactScalar x_top = ExactScalar(1) + ExactScalar(Rational(k, 80));
        const int cmp = (x_top - kBq).sign();
        if (cmp > 0) CHECK(minimal_xb(x_top).sign() < 0);
        if (cmp < 0) CHECK(minimal_xb(x_top).sign() > 0);
    }
    CHECK(minimal_xb(kBq).sign() == 0);
}

TEST_CASE("symmetric theories admit no couplers") {
    CHECK(symmetric_theory_has_no_coupler(ExactScalar(Rational(5, 4))));
    CHECK(symmetric_theory_has_no_coupler(kBq));
    CHECK(symmetric_theory_has_no_coupler(ExactScalar(Rational(1499, 1000))));
    for (int k = 1; k <= 10; ++k)
        CHECK(symmetric_theory_has_no_coupler(ExactScalar(1) + ExactScalar(Rational(k, 22))));

    CHECK_THROWS_AS(symmetric_theory_has_no_coupler(kThreeHalf), domain_error);
    CHECK_THROWS_AS(symmetric_theory_has_no_coupler(ExactScalar(1)), domain_error);
}

TEST_CASE("duality: where a perfect coupler stops swapping, a minimal coupler sits") {
    // thresholds representable in the field
    const std::vector<ExactScalar> tops = {kThreeHalf, kBq, ExactScalar(Rational(61, 50)),
                                           ExactScalar(Rational(57, 50))};
    for (const auto& x_top : tops) {
        const ExactScalar x_bot = perfect_xb(x_top);
        const ExactScalar threshold = swap_threshold(make_coupler(x_top, x_bot));
        CHECK(minimal_xb(threshold) == x_bot);
        CHECK(classify(threshold, x_bot) == CouplerClass::MinimalBoundary);
    }
    // the genuine-box perfect coupler maps exactly onto the minimal quantum coupler
    CHECK(swap_threshold(make_coupler(kThreeHalf, ExactScalar(0))) == kBq);
}

TEST_CASE("classification agrees with direct swap checks") {
    // light version of the acceptance grid: membership via coupler_valid_on
    // and creates-nonlocality witnesses via ch_success
    for (int i = 1; i <= 8; ++i) {
        const ExactScalar x_top = ExactScalar(1) + ExactScalar(Rational(i, 16));
        const TheoryModel model = TheoryModel::make(x_top, ExactScalar(0));
        const BipartiteBox top = model.top_box();
        for (int j = -6; j <= 6; ++j) {
            const ExactScalar x_bot(Rational(j, 16));
            if ((x_top - x_bot).sign() <= 0) continue;
            const Coupler c = make_coupler(x_top, x_bot);
            const ExactScalar v = swap_boxes(c, top, top).ch_success;
            const CouplerClass cls = classify(x_top, x_bot);
            CouplerClass direct;
            if ((v - x_top).sign() > 0) direct = CouplerClass::CreatesNonlocality;
            else if (v == x_top) direct = CouplerClass::Perfect;
            else if ((v - 1).sign() > 0) direct = CouplerClass::Valid;
            else if (v == ExactScalar(1)) direct = CouplerClass::MinimalBoundary;
            else direct = CouplerClass::NoSwapping;
            CHECK(cls == direct);
            if (cls == CouplerClass::Valid || cls == CouplerClass::Perfect)
                CHECK(coupler_valid_on(c, model.genuine_extremal_boxes()));
        }
    }
}
