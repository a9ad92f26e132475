#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qstat/specfun.hpp"
#include "qstat/two_level.hpp"

using namespace qstat;
using namespace qstat::two_level;

TEST_CASE("Bose characteristic temperatures") {
    CharTemps ct = char_temps({8.0, 96.0, 16.0, 1.0}, Statistics::bose);
    REQUIRE(ct.b1.has_value());
    CHECK(*ct.b1 == doctest::Approx(0.21).epsilon(0.025));
    CHECK_FALSE(ct.b2.has_value());

    ct = char_temps({8.0, 256.0, 8.0, 1.0}, Statistics::bose);
    REQUIRE(ct.b1.has_value());
    REQUIRE(ct.b2.has_value());
    CHECK(*ct.b1 == doctest::Approx(0.18).epsilon(0.01));
    CHECK(*ct.b2 == doctest::Approx(1.19).epsilon(0.005));
    CHECK(*ct.b1 < *ct.b2);

    // Scaling: temperatures are proportional to the level spacing.
    const CharTemps scaled = char_temps({8.0, 256.0, 8.0, 2.5}, Statistics::bose);
    CHECK(*scaled.b1 == doctest::Approx(2.5 * *ct.b1).epsilon(1e-12));
}

TEST_CASE("Fermi characteristic temperatures and their windows") {
    // z2 = 1: the completion is the filling of the tiny upper level (T_F4).
    CharTemps ct = char_temps({16.0, 1.0, 14.0, 1.0}, Statistics::fermi);
    REQUIRE(ct.f1.has_value());
    REQUIRE(ct.f4.has_value());
    CHECK_FALSE(ct.f2.has_value());  // N > z2 puts the argument out of domain
    CHECK_FALSE(ct.f3.has_value());  // requires N > z1
    CHECK(*ct.f1 == doctest::Approx(0.36).epsilon(0.01));
    CHECK(*ct.f4 == doctest::Approx(2.88).epsilon(0.005));
    CHECK(*ct.f1 < *ct.f4);

    ct = char_temps({16.0, 1000.0, 14.0, 1.0}, Statistics::fermi);
    REQUIRE(ct.f1.has_value());
    REQUIRE(ct.f2.has_value());
    CHECK(*ct.f1 == doctest::Approx(0.11).epsilon(0.02));
    CHECK(*ct.f2 == doctest::Approx(1.19).epsilon(0.005));

    ct = char_temps({16.0, 2400.0, 34.0, 1.0}, Statistics::fermi);
    REQUIRE(ct.f3.has_value());
    REQUIRE(ct.f2.has_value());
    CHECK(*ct.f3 == doctest::Approx(0.12).epsilon(0.02));
    CHECK(*ct.f2 == doctest::Approx(1.18).epsilon(0.005));
    CHECK(*ct.f3 < *ct.f2);
    CHECK_FALSE(ct.f1.has_value());
}

TEST_CASE("single-point characteristic temperatures from the scans") {
    // A-type marker points.
    CharTemps ct = char_temps({8.0, 3.0, 2.0, 1.0}, Statistics::bose);
    REQUIRE(ct.b1.has_value());
    CHECK(*ct.b1 == doctest::Approx(5.85).epsilon(0.002));

    ct = char_temps({16.0, 3.0, 18.0, 1.0}, Statistics::fermi);
    REQUIRE(ct.f3.has_value());
    REQUIRE(ct.f4.has_value());
    CHECK(*ct.f3 == doctest::Approx(0.35).epsilon(0.01));
    CHECK(*ct.f4 == doctest::Approx(2.06).epsilon(0.005));

    ct = char_temps({16.0, 25.0, 40.0, 1.0}, Statistics::fermi);
    REQUIRE(ct.f3.has_value());
    CHECK(*ct.f3 == doctest::Approx(1.65).epsilon(0.005));
}

TEST_CASE("region classification") {
    CHECK(classify_region({8.0, 2.0, 2.0, 1.0}, Statistics::bose) == Region::bose_i);
    CHECK(classify_region({8.0, 40.0, 2.0, 1.0}, Statistics::bose) == Region::bose_iii);
    CHECK(classify_region({8.0, 96.0, 16.0, 1.0}, Statistics::bose) == Region::bose_ii);
    CHECK(classify_region({16.0, 16.0, 14.0, 1.0}, Statistics::fermi) == Region::fermi_iia);
    CHECK(classify_region({16.0, 128.0, 34.0, 1.0}, Statistics::fermi) == Region::fermi_iib);
    CHECK(classify_region({16.0, 1.0, 14.0, 1.0}, Statistics::fermi) ==
          Region::fermi_iiia_prime);
    CHECK(classify_region({16.0, 1000.0, 14.0, 1.0}, Statistics::fermi) ==
          Region::fermi_iiia);
    CHECK(classify_region({16.0, 2400.0, 34.0, 1.0}, Statistics::fermi) ==
          Region::fermi_iiib);
    CHECK(classify_region({16.0, 3.0, 18.0, 1.0}, Statistics::fermi) ==
          Region::fermi_iiib_prime);
    CHECK(classify_region({4.0, 2.0, 9.0, 1.0}, Statistics::fermi) ==
          Region::fermi_forbidden);
    // Deep case-A freeze: tiny upper level, few particles.
    CHECK(classify_region({16.0, 1.0, 2.0, 1.0}, Statistics::fermi) == Region::fermi_ia);
    CHECK(std::string(region_label(Region::fermi_iiia_prime)) == "F-III_A'");
}

TEST_CASE("zero-temperature entropy closed forms") {
    CHECK(zero_temperature_entropy({16.0, 16.0, 16.0, 1.0}, Statistics::fermi) ==
          doctest::Approx(0.0));
    CHECK(zero_temperature_entropy({8.0, 96.0, 16.0, 1.0}, Statistics::bose) ==
          doctest::Approx(12.41).epsilon(0.004));
    CHECK(zero_temperature_entropy({16.0, 128.0, 34.0, 1.0}, Statistics::fermi) ==
          doctest::Approx(49.7).epsilon(0.001));
    // Fully occupied Fermi system: zero in the Planck sense.
    CHECK(zero_temperature_entropy({16.0, 8.0, 24.0, 1.0}, Statistics::fermi) ==
          doctest::Approx(0.0));
}

TEST_CASE("limiting entropy: plateau vs high-T limit") {
    LimitingEntropy le = limiting_entropy({8.0, 96.0, 16.0, 1.0}, Statistics::bose);
    CHECK(le.tag == LimitTag::high_t_limit);
    CHECK(le.value == doctest::Approx(43.74).epsilon(0.002));

    le = limiting_entropy({8.0, 256.0, 8.0, 1.0}, Statistics::bose);
    CHECK(le.tag == LimitTag::completion_plateau);
    CHECK(le.value == doctest::Approx(33.87).epsilon(0.002));

    le = limiting_entropy({16.0, 2400.0, 34.0, 1.0}, Statistics::fermi);
    CHECK(le.tag == LimitTag::completion_plateau);
    CHECK(le.value == doctest::Approx(175.8).epsilon(0.001));

    // T_F4 plateau: upper level full, entropy carried by the lower level.
    le = limiting_entropy({16.0, 1.0, 14.0, 1.0}, Statistics::fermi);
    CHECK(le.tag == LimitTag::completion_plateau);
    CHECK(le.value == doctest::Approx(6.3).epsilon(0.01));

    // Region I: the state never changes.
    le = limiting_entropy({8.0, 2.0, 2.0, 1.0}, Statistics::bose);
    CHECK(le.value ==
          doctest::Approx(zero_temperature_entropy({8.0, 2.0, 2.0, 1.0}, Statistics::bose))
              .epsilon(1e-9));
}

TEST_CASE("entropy plateaus match the full solver at high T") {
    for (auto [kind, z1, z2, n] :
         {std::tuple{Statistics::bose, 8.0, 96.0, 16.0},
          std::tuple{Statistics::bose, 8.0, 256.0, 8.0},
          std::tuple{Statistics::fermi, 16.0, 128.0, 34.0},
          std::tuple{Statistics::fermi, 16.0, 1.0, 14.0}}) {
        const TwoLevelParams params{z1, z2, n, 1.0};
        const SystemSpec system = make_system(params, kind);
        const auto le = limiting_entropy(params, kind);
        const auto state = solve_mu(1000.0, system);
        CHECK(std::abs(state.entropy - le.value) <= 1e-3);
    }
}

TEST_CASE("third law: solver entropy approaches the closed form as T -> 0") {
    for (auto [kind, z1, z2, n] :
         {std::tuple{Statistics::bose, 8.0, 96.0, 16.0},
          std::tuple{Statistics::fermi, 16.0, 16.0, 14.0},
          std::tuple{Statistics::fermi, 16.0, 128.0, 34.0}}) {
        const TwoLevelParams params{z1, z2, n, 1.0};
        const SystemSpec system = make_system(params, kind);
        const auto state = solve_mu(1e-4, system);
        CHECK(state.entropy ==
              doctest::Approx(zero_temperature_entropy(params, kind)).epsilon(1e-9));
    }
}

TEST_CASE("pinning switches exactly at the characteristic temperatures") {
    for (auto [kind, z1, z2, n] :
         {std::tuple{Statistics::bose, 8.0, 96.0, 16.0},
          std::tuple{Statistics::bose, 8.0, 256.0, 8.0},
          std::tuple{Statistics::fermi, 16.0, 1.0, 14.0},
          std::tuple{Statistics::fermi, 16.0, 1000.0, 14.0},
          std::tuple{Statistics::fermi, 16.0, 2400.0, 34.0}}) {
        const TwoLevelParams params{z1, z2, n, 1.0};
        const SystemSpec system = make_system(params, kind);
        const CharTemps ct = char_temps(params, kind);
        for (const auto& t : {ct.b1, ct.b2, ct.f1, ct.f2, ct.f3, ct.f4}) {
            if (!t) continue;
            const auto below = solve_mu(*t * (1.0 - 1e-6), system);
            const auto above = solve_mu(*t * (1.0 + 1e-6), system);
            bool changed = false;
            for (std::size_t j = 0; j < below.occupancies.size(); ++j) {
                if (below.occupancies[j].pinned != above.occupancies[j].pinned) {
                    changed = true;
                }
            }
            CHECK(changed);
        }
    }
}

TEST_CASE("region label predicts the sweep behaviour") {
    // Frozen regions stay in the ground state up to 1000 delta_eps; onset
    // regions unfreeze just above their onset temperature; completion
    // regions reach a pinned final state just above their completion
    // temperature (probes scale with the system's own switching points).
    for (double n : {2.0, 8.0, 16.0}) {
        for (int i = 0; i < 20; ++i) {
            for (int k = 0; k < 20; ++k) {
                const double phi = 0.08 + (i * 0.1);  // up to ~2
                const double eta = 0.05 * std::pow(400.0, k / 19.0);
                const double z1 = n / phi;
                const double z2 = eta * z1;
                if (z1 < 1.0 || z2 < 1.0) continue;
                for (auto kind : {Statistics::bose, Statistics::fermi}) {
                    if (kind == Statistics::fermi && n > z1 + z2) continue;
                    const TwoLevelParams params{z1, z2, n, 1.0};
                    const Region region = classify_region(params, kind);
                    const SystemSpec system = make_system(params, kind);
                    const auto cold = ground_state(system);
                    const CharTemps ct = char_temps(params, kind);
                    const bool case_a = n <= z1;
                    const auto onset = (kind == Statistics::bose)
                                           ? ct.b1
                                           : (case_a ? ct.f1 : ct.f3);
                    auto completion = (kind == Statistics::bose) ? ct.b2 : ct.f2;
                    if (!completion && kind == Statistics::fermi) completion = ct.f4;
                    auto frozen_at = [&](double tau) {
                        const auto state = solve_mu(tau, system);
                        return std::abs(state.occupancies[0].n -
                                        cold.occupancies[0].n) <= 1e-6 &&
                               std::abs(state.occupancies[1].n -
                                        cold.occupancies[1].n) <= 1e-6;
                    };
                    switch (region) {
                        case Region::bose_i:
                        case Region::fermi_ia:
                        case Region::fermi_ib:
                            CHECK(frozen_at(1000.0));
                            break;
                        case Region::bose_ii:
                        case Region::fermi_iia:
                        case Region::fermi_iib: {
                            REQUIRE(onset.has_value());
                            CHECK_FALSE(frozen_at(2.0 * *onset));
                            CHECK(solve_mu(4.0 * *onset, system).active_count == 2);
                            break;
                        }
                        default: {
                            REQUIRE(onset.has_value());
                            REQUIRE(completion.has_value());
                            CHECK_FALSE(frozen_at(2.0 * *completion));
                            CHECK(solve_mu(2.0 * *completion, system).active_count <= 1);
                            break;
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("threshold etas: reference scan values") {
    ThresholdEtas th = threshold_etas(Statistics::bose, 8.0, 2.0);
    REQUIRE(th.onset.has_value());
    REQUIRE(th.completion_empty.has_value());
    CHECK(*th.onset == doctest::Approx(0.33).epsilon(0.02));
    CHECK(*th.completion_empty == doctest::Approx(4.02).epsilon(0.0025));

    th = threshold_etas(Statistics::fermi, 16.0, 2.0);
    CHECK(*th.onset == doctest::Approx(0.17).epsilon(0.01));
    CHECK(*th.completion_empty == doctest::Approx(4.72).epsilon(0.01));
    CHECK_FALSE(th.completion_full.has_value());

    th = threshold_etas(Statistics::fermi, 16.0, 14.0);
    CHECK_FALSE(th.onset.has_value());  // phi > 1/2: onset exists for every eta
    CHECK(*th.completion_full == doctest::Approx(0.086).epsilon(0.01));
    CHECK(*th.completion_empty == doctest::Approx(27.5).epsilon(0.01));

    th = threshold_etas(Statistics::fermi, 16.0, 18.0);
    CHECK(*th.forbidden_edge == doctest::Approx(0.125));
    CHECK(*th.completion_full == doctest::Approx(0.22).epsilon(0.01));
    CHECK(*th.completion_empty == doctest::Approx(35.1).epsilon(0.01));

    th = threshold_etas(Statistics::fermi, 16.0, 40.0);
    CHECK(*th.forbidden_edge == doctest::Approx(1.5));
    CHECK(*th.onset == doctest::Approx(1.52).epsilon(0.01));
    CHECK(*th.completion_empty == doctest::Approx(76.9).epsilon(0.01));
}

TEST_CASE("T_F4 domain window is enforced before the sign test") {
    // eta above phi: the upper level alone exceeds N, so T_F4's argument
    // (N - z2)/z1 leaves [0, 1] and the temperature must be reported absent.
    const CharTemps ct = char_temps({16.0, 32.0, 14.0, 1.0}, Statistics::fermi);
    CHECK_FALSE(ct.f4.has_value());
}

TEST_CASE("region boundaries reproduce the reference endpoints") {
    GridSpec grid{0.005, 2.0, 160, 0.05, 6.0, 120};
    const auto curves = region_boundaries(Statistics::bose, 2.0, grid);
    const BoundaryCurve* onset = nullptr;
    const BoundaryCurve* completion = nullptr;
    for (const auto& curve : curves) {
        if (curve.name == "onset") onset = &curve;
        if (curve.name == "completion-empty") completion = &curve;
    }
    REQUIRE(onset != nullptr);
    REQUIRE(completion != nullptr);

    // Endpoint a: eta -> 0.22 as phi -> 0 (printed to 2 decimals).
    CHECK(onset->points.front().phi == doctest::Approx(0.005));
    CHECK(onset->points.front().eta == doctest::Approx(0.22).epsilon(0.05));
    // Endpoint b: eta -> 4.5 as phi -> 0 (printed to 1 decimal; limit e^1.5).
    CHECK(completion->points.front().eta == doctest::Approx(4.5).epsilon(0.012));
    // Junction c = (2, 1): both curves end there.
    CHECK(onset->points.back().phi == doctest::Approx(2.0));
    CHECK(onset->points.back().eta == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(completion->points.back().eta == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("capacity jump signs: up at onset, down at completion") {
    const auto jumps = capacity_jumps({8.0, 256.0, 8.0, 1.0}, Statistics::bose);
    REQUIRE(jumps.size() == 2);
    CHECK(jumps[0].temperature < jumps[1].temperature);
    CHECK(jumps[0].d_cv > 0.0);
    CHECK(jumps[1].d_cv < 0.0);
    CHECK(jumps[0].d_cp > jumps[0].d_cv);
}

TEST_CASE("characteristic temperature ordering invariants") {
    for (double n : {2.0, 8.0, 14.0, 18.0, 40.0}) {
        for (double eta = 0.05; eta <= 64.0; eta *= 1.7) {
            const double z1 = 16.0;
            const TwoLevelParams params{z1, eta * z1, n, 1.0};
            for (auto kind : {Statistics::bose, Statistics::fermi}) {
                if (kind == Statistics::fermi && n > z1 + eta * z1) continue;
                const CharTemps ct = char_temps(params, kind);
                if (ct.b1 && ct.b2) CHECK(*ct.b1 < *ct.b2);
                if (ct.f1 && ct.f2) CHECK(*ct.f1 < *ct.f2);
                if (ct.f3 && ct.f2) CHECK(*ct.f3 < *ct.f2);
                if (ct.f1 && ct.f4) CHECK(*ct.f1 < *ct.f4);
                for (const auto& t : {ct.b1, ct.b2, ct.f1, ct.f2, ct.f3, ct.f4}) {
                    if (t) CHECK(*t > 0.0);
                }
            }
        }
    }
}
