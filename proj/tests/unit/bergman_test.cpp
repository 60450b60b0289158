#include <gtest/gtest.h>

#include <cmath>

#include "geolab/bergman.hpp"
#include "geolab/errors.hpp"
#include "geolab/samples.hpp"
#include "oracles.hpp"

namespace geolab {
namespace {

TEST(GramNorms, FubiniStudyBetaIntegrals) {
    const GridSpec g = GridSpec::make(15.0, 4097);
    const auto psi = samples::fubini_study_potential(g);
    for (int k : {1, 2, 5, 10, 25, 50}) {
        const std::vector<double> n = gram_norms(psi, k);
        ASSERT_EQ(n.size(), static_cast<std::size_t>(k + 1));
        for (int j = 0; j <= k; ++j) {
            const double ref = oracle::beta_norm(j, k);
            EXPECT_NEAR(n[j] / ref, 1.0, 1e-8) << "k=" << k << " j=" << j;
        }
    }
}

TEST(GramNorms, LinearBundleHalves) {
    const GridSpec g = GridSpec::make(15.0, 2049);
    const std::vector<double> n = gram_norms(samples::fubini_study_potential(g), 1);
    EXPECT_NEAR(n[0], 0.5, 1e-9);
    EXPECT_NEAR(n[1], 0.5, 1e-9);
}

TEST(GramNorms, ReflectionReversesIndices) {
    // psi(x) -> psi(-x) + x keeps admissibility and maps N_j to N_{k-j}.
    const GridSpec g = GridSpec::make(15.0, 1025);
    samples::Rng rng(17);
    const SymmetricPotential psi = oracle::random_smooth_potential(g, rng);
    std::vector<double> refl(static_cast<std::size_t>(g.nx()));
    for (int i = 0; i < g.nx(); ++i) refl[i] = psi[g.nx() - 1 - i] + g.x(i);
    const int k = 30;
    const auto a = log_gram_norms(psi, k);
    const auto b = log_gram_norms(SymmetricPotential(g, refl), k);
    for (int j = 0; j <= k; ++j) EXPECT_NEAR(a[j], b[k - j], 1e-10) << "j=" << j;
}

TEST(GramNorms, LargeTensorPowersStayFinite) {
    const GridSpec g = GridSpec::make(30.0, 2049);
    const auto logs = log_gram_norms(samples::fubini_study_potential(g), 200);
    for (int j = 0; j <= 200; ++j) {
        ASSERT_TRUE(std::isfinite(logs[j]));
        EXPECT_NEAR(logs[j], std::log(oracle::beta_norm(j, 200)), 1e-6);
    }
}

TEST(GramNorms, RejectsBadInputs) {
    const GridSpec g = GridSpec::make(15.0, 257);
    EXPECT_THROW(gram_norms(samples::fubini_study_potential(g), 0), DomainError);
    const auto steep = SymmetricPotential::sample(g, [](double x) { return 2.0 * std::max(0.0, x); });
    EXPECT_THROW(gram_norms(steep, 3), ValidationError);
}

TEST(BergmanDensity, FubiniStudyFixedPoint) {
    const GridSpec g = GridSpec::make(15.0, 4097);
    const auto psi = samples::fubini_study_potential(g);
    for (int k : {1, 10, 50, 200}) {
        const BergmanProfile b = bergman_density(psi, k);
        double worst = 0.0;
        for (int i = 0; i < g.nx(); ++i) {
            const double ratio = b.density[i] / ((k + 1) * fubini_study_density(g.x(i)));
            worst = std::max(worst, std::abs(ratio - 1.0));
        }
        EXPECT_LE(worst, 1e-6) << "k=" << k;
        EXPECT_NEAR(b.trace / (k + 1), 1.0, 1e-6) << "k=" << k;
    }
}

TEST(BergmanDensity, TraceAndPositivityForGenericPotentials) {
    const GridSpec g = GridSpec::make(15.0, 2049);
    samples::Rng rng(23);
    for (int trial = 0; trial < 4; ++trial) {
        const SymmetricPotential psi = oracle::random_smooth_potential(g, rng);
        for (int k : {5, 40, 120}) {
            const BergmanProfile b = bergman_density(psi, k);
            EXPECT_NEAR(b.trace / (k + 1), 1.0, 1e-6);
            for (double d : b.density) EXPECT_GT(d, 0.0);
        }
    }
}

TEST(ConvergenceStudy, FubiniStudyErrorsWithinTwoOverK) {
    const GridSpec g = GridSpec::make(15.0, 2049);
    const auto psi = samples::fubini_study_potential(g);
    const std::vector<int> ks{25, 50, 100, 200};
    const std::vector<double> probes{-2.0, -1.0, 0.0, 1.0, 2.0};
    const ConvergenceTable t = convergence_study(psi, ks, probes);
    EXPECT_EQ(t.rows.size(), ks.size() * probes.size());
    for (const ConvergenceRow& r : t.rows) EXPECT_LE(r.rel_error, 2.0 / r.k) << "k=" << r.k << " x=" << r.x;
    EXPECT_GE(t.fitted_order, 0.9);
}

TEST(ConvergenceStudy, GenericSmoothPotentialConvergesMonotonically) {
    const GridSpec g = GridSpec::make(15.0, 2049);
    samples::Rng rng(29);
    const samples::SoftplusMixture m = samples::random_mixture(rng, 3, 2.0, 0.8, 2.0);
    const SymmetricPotential psi = SymmetricPotential::sample(g, m);
    const std::vector<int> ks{25, 50, 100, 200};
    const std::vector<double> probes{-1.0, 0.0, 1.0};
    const ConvergenceTable t = convergence_study(psi, ks, probes);
    for (std::size_t n = 1; n < ks.size(); ++n) EXPECT_LT(t.max_error(ks[n]), t.max_error(ks[n - 1]));
    for (double x : t.probes) {
        double prev = 1e300;
        for (int k : ks) {
            for (const ConvergenceRow& r : t.rows) {
                if (r.k == k && r.x == x) {
                    EXPECT_LT(r.rel_error, prev) << "x=" << x << " k=" << k;
                    prev = r.rel_error;
                }
            }
        }
    }
}

TEST(ConvergenceStudy, ProbesNearBreaksAreSkipped) {
    const GridSpec g = GridSpec::make(15.0, 1025);
    const auto psi = samples::fubini_study_potential(g);
    const std::vector<int> ks{10};
    const std::vector<double> probes{-1.0, 0.5, 20.0};
    const std::vector<double> breaks{0.5 + g.h()};
    const ConvergenceTable t = convergence_study(psi, ks, probes, breaks);
    ASSERT_EQ(t.skipped_probes.size(), 2u);
    EXPECT_EQ(t.skipped_probes[0], 0.5);
    EXPECT_EQ(t.skipped_probes[1], 20.0);
    EXPECT_EQ(t.notes.size(), 2u);
    EXPECT_EQ(t.rows.size(), 1u);
    const std::string csv = t.to_delimited(',');
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "k,x,bk_over_k,ma_density,rel_error");
}

} // namespace
} // namespace geolab
