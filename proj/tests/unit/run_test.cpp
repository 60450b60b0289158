#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>

#include "geolab/config.hpp"
#include "geolab/io.hpp"
#include "geolab/run.hpp"
#include "geolab/samples.hpp"

namespace geolab {
namespace {

namespace fs = std::filesystem;

class RunTest : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / ("geolab_run_" + std::string(info->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    std::string write_fs(const std::string& name, double shift, int nx = 257, double radius = 10.0) {
        const GridSpec g = GridSpec::make(radius, nx);
        const auto psi = SymmetricPotential::sample(g, [shift](double x) { return fubini_study(x - shift); });
        io::write_potential(path(name), psi);
        return path(name);
    }

    io::KeyValueDoc report(const std::string& sub) const {
        return io::KeyValueDoc::from_text(io::read_text(dir_ / sub / "report.txt"));
    }

    int execute(const std::string& text, std::string* log_out = nullptr) {
        std::ostringstream log;
        const int code = run(parse_config(text), log);
        if (log_out) *log_out = log.str();
        return code;
    }

    fs::path dir_;
};

TEST_F(RunTest, EqualEndpointsGiveTimeIndependentGeodesic) {
    const std::string p = write_fs("fs.txt", 0.0);
    ASSERT_EQ(execute("kind=geodesic nt=9 psi0=" + p + " psi1=" + p + " out=" + path("g")), exit_ok);
    const io::KeyValueDoc doc = report("g");
    EXPECT_EQ(io::parse_double(*doc.find("lipschitz_t"), "lip"), 0.0);
    EXPECT_EQ(*doc.find("verdict.theorem11"), "pass");
    EXPECT_EQ(*doc.find("grid.nx"), "257");
    for (const char* f : {"config.txt", "slab.txt", "hessian_sup.dat", "energy.dat"})
        EXPECT_TRUE(fs::exists(dir_ / "g" / f)) << f;
}

TEST_F(RunTest, DiagnoseWritesSlicesAndBreaks) {
    const std::string a = write_fs("a.txt", 0.0);
    const std::string b = write_fs("b.txt", 1.0);
    ASSERT_EQ(execute("kind=diagnose nt=9 method=hull psi0=" + a + " psi1=" + b + " out=" + path("d")), exit_ok);
    for (const char* f : {"slice_t0.dat", "slice_t8.dat", "second_difference_mid.dat", "c2_breaks.csv"})
        EXPECT_TRUE(fs::exists(dir_ / "d" / f)) << f;
    EXPECT_EQ(*report("d").find("method"), "hull");
}

TEST_F(RunTest, SweepWithoutBudgetExitsWithConvergenceCode) {
    const std::string a = write_fs("a.txt", 0.0);
    const std::string b = write_fs("b.txt", 2.0);
    std::string log;
    EXPECT_EQ(execute("kind=geodesic nt=9 method=sweep max_iter=1 psi0=" + a + " psi1=" + b + " out=" + path("s"), &log),
              exit_convergence);
    EXPECT_NE(log.find("error"), std::string::npos);
}

TEST_F(RunTest, InadmissiblePotentialExitsWithValidationCode) {
    const GridSpec g = GridSpec::make(10.0, 257);
    io::write_potential(path("bad.txt"), SymmetricPotential::sample(g, [](double x) { return 2.0 * fubini_study(x); }));
    const std::string ok = write_fs("ok.txt", 0.0);
    EXPECT_EQ(execute("kind=geodesic nt=5 psi0=" + path("bad.txt") + " psi1=" + ok + " out=" + path("v")),
              exit_validation);
    EXPECT_EQ(execute("kind=geodesic nt=5 psi0=" + path("missing.txt") + " psi1=" + ok + " out=" + path("v")),
              exit_validation);
}

TEST_F(RunTest, GridConflictsAreStructural) {
    const std::string a = write_fs("a.txt", 0.0);
    const std::string b = write_fs("b.txt", 0.0, 129);
    EXPECT_EQ(execute("kind=geodesic nt=5 psi0=" + a + " psi1=" + b + " out=" + path("c")), exit_validation);
    EXPECT_EQ(execute("kind=geodesic nt=5 nx=513 psi0=" + a + " psi1=" + a + " out=" + path("c")), exit_validation);
}

TEST_F(RunTest, EnvelopeRunWritesArtifacts) {
    const GridSpec g = GridSpec::make(16.0, 1025);
    io::write_text(dir_ / "notch.txt", io::obstacle_family_to_text(samples::notch_family(g)));
    ASSERT_EQ(execute("kind=envelope obstacles=" + path("notch.txt") + " out=" + path("e")), exit_ok);
    const io::KeyValueDoc doc = report("e");
    EXPECT_EQ(*doc.find("verdict.vanishing"), "pass");
    for (const char* f : {"envelope.txt", "obstacle_min.txt", "contact.dat"}) EXPECT_TRUE(fs::exists(dir_ / "e" / f));
    const SymmetricPotential env = io::read_potential(dir_ / "e" / "envelope.txt", 2, 0);
    EXPECT_EQ(env.grid().nx(), 1025);
}

TEST_F(RunTest, BergmanRunWritesConvergenceTable) {
    const std::string p = write_fs("fs.txt", 0.0, 1025, 15.0);
    ASSERT_EQ(execute("kind=bergman k=10,20 psi0=" + p + " out=" + path("b")), exit_ok);
    EXPECT_TRUE(fs::exists(dir_ / "b" / "convergence.csv"));
    EXPECT_TRUE(fs::exists(dir_ / "b" / "density_k20.dat"));
    const double trace = io::parse_double(*report("b").find("trace.k20"), "trace");
    EXPECT_NEAR(trace, 21.0, 1e-6);
}

TEST_F(RunTest, BenchRowsAreOrderedBySize) {
    ASSERT_EQ(execute("kind=bench bench_sizes=256,512,1024 bench_ops=legendre,hull out=" + path("bench")), exit_ok);
    const std::string csv = io::read_text(dir_ / "bench" / "bench.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "op,nx,median_seconds");
    const BenchTable t = bench({256, 512}, {"legendre"}, 3, 0.001);
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_LT(t.rows[0].size, t.rows[1].size);
    EXPECT_GT(t.rows[0].median_seconds, 0.0);
}

TEST_F(RunTest, OutputsDoNotDependOnThreadCount) {
    const std::string a = write_fs("a.txt", -1.0);
    const std::string b = write_fs("b.txt", 1.5);
    std::string slab[2];
    const char* threads[2] = {"1", "4"};
    for (int n = 0; n < 2; ++n) {
        ::setenv("GEOLAB_THREADS", threads[n], 1);
        const std::string out = path(std::string("t") + threads[n]);
        ASSERT_EQ(execute("kind=geodesic nt=9 method=sweep psi0=" + a + " psi1=" + b + " out=" + out), exit_ok);
        slab[n] = io::read_text(fs::path(out) / "slab.txt") + io::read_text(fs::path(out) / "report.txt");
    }
    ::unsetenv("GEOLAB_THREADS");
    EXPECT_EQ(slab[0], slab[1]);
}

} // namespace
} // namespace geolab
