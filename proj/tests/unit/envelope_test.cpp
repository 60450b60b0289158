#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "geolab/envelope.hpp"
#include "geolab/errors.hpp"
#include "geolab/samples.hpp"
#include "oracles.hpp"

namespace geolab {
namespace {

// h = 1/32 so that the notch kinks at 0 and 2 are grid nodes.
GridSpec notch_grid() { return GridSpec::make(16.0, 1025); }

TEST(PshEnvelope, AdmissibleObstacleIsFixed) {
    const GridSpec g = GridSpec::make(15.0, 513);
    const auto psi = samples::fubini_study_potential(g);
    const EnvelopeResult r = psh_envelope(ObstacleFamily::with_sampled_bounds(g, {{psi.values().begin(), psi.values().end()}}));
    EXPECT_LE(max_abs_diff(r.envelope.values(), psi.values()), 1e-12);
    EXPECT_TRUE(r.contact.all());
}

TEST(PshEnvelope, NotchMatchesAffineMinorantOracle) {
    const GridSpec g = notch_grid();
    const ObstacleFamily family = samples::notch_family(g);
    const EnvelopeResult r = psh_envelope(family);
    const std::vector<double> ref = oracle::affine_minorant_sup(g.x_axis().points(), r.obstacle, 2001);
    EXPECT_LE(max_abs_diff(r.envelope.values(), ref), 1e-6);
    // Closed form: 0 left of 0, x/2 on the bridge, x - 1 right of 2.
    for (int i = 0; i < g.nx(); ++i) {
        const double x = g.x(i);
        const double expected = x <= 0.0 ? 0.0 : (x <= 2.0 ? 0.5 * x : x - 1.0);
        EXPECT_NEAR(r.envelope[i], expected, 1e-12);
        EXPECT_LE(r.envelope[i], r.obstacle[i] + 1e-15);
        const bool on_bridge = x > 1e-12 && x < 2.0 - 1e-12;
        EXPECT_EQ(r.contact.contact[i] == 0, on_bridge) << "x=" << x;
    }
}

TEST(PshEnvelope, DominatedMembersAreIgnored) {
    const GridSpec g = GridSpec::make(15.0, 257);
    samples::Rng rng(3);
    const ObstacleFamily one = samples::random_smooth_family(g, rng, 1, 0.5);
    std::vector<double> f = one.members()[0].values;
    std::vector<double> f3(f);
    for (double& v : f3) v += 3.0;
    const EnvelopeResult a = psh_envelope(ObstacleFamily::with_sampled_bounds(g, {f}));
    const EnvelopeResult b = psh_envelope(ObstacleFamily::with_sampled_bounds(g, {f, f3}));
    EXPECT_EQ(a.envelope.values()[0], b.envelope.values()[0]);
    EXPECT_EQ(max_abs_diff(a.envelope.values(), b.envelope.values()), 0.0);
    EXPECT_EQ(a.contact.contact, b.contact.contact);
}

TEST(ObstacleFamily, ValidatesMembersAndMetadata) {
    const GridSpec g = GridSpec::make(10.0, 101);
    EXPECT_THROW(ObstacleFamily(g, {}), DomainError);
    EXPECT_THROW(ObstacleFamily(g, {{std::vector<double>(100, 0.0), 0.0, 0.0}}), StructuralError);
    std::vector<double> bad(101, 0.0);
    bad[3] = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(ObstacleFamily(g, {{bad, 1.0, 1.0}}), DataError);
    std::vector<double> quad(101);
    for (int i = 0; i < 101; ++i) quad[i] = 0.5 * g.x(i) * g.x(i);
    // Sampled Hessian is 1 and Lipschitz constant about 10; understated metadata is rejected.
    EXPECT_THROW(ObstacleFamily(g, {{quad, 20.0, 0.5}}), ValidationError);
    EXPECT_THROW(ObstacleFamily(g, {{quad, 5.0, 2.0}}), ValidationError);
    EXPECT_NO_THROW(ObstacleFamily(g, {{quad, 10.0, 1.0 + 1e-12}}));
}

TEST(MaVanishing, NotchBridgeCarriesNoMass) {
    const GridSpec g = notch_grid();
    const EnvelopeResult r = psh_envelope(samples::notch_family(g));
    const VanishingReport v = ma_vanishing_check(r.envelope, r.contact);
    EXPECT_TRUE(v.passed);
    EXPECT_LE(v.max_noncontact_mass, 1e-9);
    EXPECT_GT(v.checked_nodes, 50);
    ASSERT_EQ(v.free_boundary_x.size(), 2u);
    EXPECT_NEAR(v.free_boundary_x[0], g.h(), 1e-12);
    EXPECT_NEAR(v.free_boundary_x[1], 2.0 - g.h(), 1e-12);
    // All the mass sits at the two ends of the bridge.
    const MADensity m = ma_density(r.envelope);
    EXPECT_NEAR(m.weights[512], 0.5, 1e-12);
    EXPECT_NEAR(m.weights[512 + 64], 0.5, 1e-12);
    EXPECT_NEAR(m.total(), 1.0, 1e-12);
}

TEST(MaVanishing, AdmissibleObstacleIsVacuous) {
    const GridSpec g = GridSpec::make(15.0, 257);
    const auto psi = samples::fubini_study_potential(g);
    const EnvelopeResult r = psh_envelope(ObstacleFamily::with_sampled_bounds(g, {{psi.values().begin(), psi.values().end()}}));
    const VanishingReport v = ma_vanishing_check(r.envelope, r.contact);
    EXPECT_EQ(v.checked_nodes, 0);
    EXPECT_TRUE(v.passed);
}

TEST(MaVanishing, NonEnvelopeBelowObstacleFails) {
    // psi_FS - 1 lies strictly below psi_FS: no contact, curvature everywhere.
    const GridSpec g = GridSpec::make(15.0, 257);
    const auto psi = samples::fubini_study_potential(g);
    std::vector<double> lower(psi.values().begin(), psi.values().end());
    for (double& v : lower) v -= 1.0;
    const ContactSet none = contact_set(lower, psi.values(), 1e-8);
    EXPECT_EQ(none.count(), 0);
    const VanishingReport v = ma_vanishing_check(SymmetricPotential(g, lower), none);
    EXPECT_FALSE(v.passed);
    EXPECT_NEAR(v.max_noncontact_mass, 0.25 * g.h(), 1e-3 * g.h());
}

TEST(Modulus, FubiniStudyQuarter) {
    const GridSpec g = GridSpec::make(15.0, 2049);
    const int probes[] = {1, 2, 4};
    const ModulusReport m = envelope_midpoint_modulus(samples::fubini_study_potential(g), probes);
    EXPECT_FALSE(m.unbounded);
    EXPECT_NEAR(m.per_probe[0], 0.25, 1e-4);
    EXPECT_LE(m.modulus, 0.25 + 1e-12);
}

TEST(Modulus, KinkIsUnbounded) {
    const GridSpec g = GridSpec::make(8.0, 257);
    const int probes[] = {1, 2, 4};
    const ModulusReport m = envelope_midpoint_modulus(SymmetricPotential::sample(g, [](double x) { return std::max(0.0, x); }), probes);
    EXPECT_TRUE(m.unbounded);
    EXPECT_NEAR(m.per_probe[0], 1.0 / g.h(), 1e-9);
    EXPECT_NEAR(m.per_probe[1], 0.5 / g.h(), 1e-9);
}

TEST(Modulus, OversizedProbeSkipped) {
    const GridSpec g = GridSpec::make(8.0, 33);
    const int probes[] = {1, 40};
    const ModulusReport m = envelope_midpoint_modulus(samples::fubini_study_potential(g), probes);
    ASSERT_EQ(m.skipped.size(), 1u);
    EXPECT_EQ(m.skipped[0], 40);
    EXPECT_FALSE(m.note.empty());
}

class SmoothFamilies : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(SmoothFamilies, HessianAndLipschitzTransfer) {
    const GridSpec g = GridSpec::make(15.0, 1025);
    samples::Rng rng(GetParam());
    const double cap = rng.uniform(0.2, 1.0);
    const ObstacleFamily family = samples::random_smooth_family(g, rng, 3, cap);
    ASSERT_LE(family.max_hessian(), cap * (1 + 1e-9));
    const EnvelopeResult r = psh_envelope(family);
    const int probes[] = {1, 2, 4, 8};
    const ModulusReport m = envelope_midpoint_modulus(r.envelope, probes);
    EXPECT_FALSE(m.unbounded);
    EXPECT_LE(m.modulus, family.max_hessian() + 10.0 * Tolerances{}.convex);
    EXPECT_LE(sampled_lipschitz(r.envelope.values(), g.h()), std::min(1.0, family.max_lipschitz()) + 1e-12);
    for (int i = 0; i < g.nx(); ++i) EXPECT_LE(r.envelope[i], r.obstacle[i] + 1e-15);
}

TEST_P(SmoothFamilies, TranslationCommutesWithEnvelope) {
    const GridSpec g = GridSpec::make(15.0, 513);
    samples::Rng rng(GetParam());
    const ObstacleFamily family = samples::random_smooth_family(g, rng, 3, 0.5);
    const std::vector<double> f = family.pointwise_min();
    const int s = 5;
    const std::vector<double> window(f.begin() + s, f.end());
    const Axis in_place{g.x(s), g.h(), g.nx() - s};
    const Axis shifted{g.x(0), g.h(), g.nx() - s};
    EXPECT_EQ(convex_envelope_1d(in_place, window), convex_envelope_1d(shifted, window));
}

TEST_P(SmoothFamilies, IdempotentAndOrderPreserving) {
    const GridSpec g = GridSpec::make(15.0, 513);
    samples::Rng rng(GetParam());
    const ObstacleFamily family = samples::random_smooth_family(g, rng, 3, 0.5);
    const EnvelopeResult r = psh_envelope(family);
    const EnvelopeResult again =
        psh_envelope(ObstacleFamily::with_sampled_bounds(g, {{r.envelope.values().begin(), r.envelope.values().end()}}));
    EXPECT_LE(max_abs_diff(again.envelope.values(), r.envelope.values()), 1e-12);
    EXPECT_TRUE(again.contact.all());

    std::vector<std::vector<double>> raised;
    for (const Obstacle& o : family.members()) {
        std::vector<double> v(o.values);
        for (double& x : v) x += 0.2;
        raised.push_back(std::move(v));
    }
    const EnvelopeResult up = psh_envelope(ObstacleFamily::with_sampled_bounds(g, raised));
    for (int i = 0; i < g.nx(); ++i) EXPECT_LE(r.envelope[i], up.envelope[i] + 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Seeds, SmoothFamilies, ::testing::Range<std::uint64_t>(1, 11));

} // namespace
} // namespace geolab
