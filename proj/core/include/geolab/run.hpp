#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "geolab/config.hpp"

namespace geolab {

struct BenchRow {
    std::string op;
    int size = 0;
    /// Median over the repeats of the per-call wall time.
    double median_seconds = 0.0;
};

struct BenchTable {
    std::vector<BenchRow> rows;
    /// Largest legendre time ratio per doubling of nx (0 with fewer than two
    /// sizes); each ratio is the median over rounds of same-round ratios.
    double legendre_max_ratio = 0.0;
    /// legendre_max_ratio <= 2.5.
    bool legendre_scaling_ok = true;

    std::vector<BenchRow> for_op(const std::string& op) const;
    std::string to_delimited(char sep = ',') const;
};

/// Default nx sizes per operation.
std::vector<int> default_bench_sizes(const std::string& op);

/**
 * Median-of-`repeats` timings for each selected operation (legendre, hull,
 * sweep; an empty selection runs all three) at ascending sizes. Empty sizes
 * pick the per-operation defaults. Each round times every size once; a
 * sample repeats the call until it covers at least `min_sample_seconds` and
 * reports the per-call time. One untimed call per size precedes the rounds.
 */
BenchTable bench(const std::vector<int>& sizes, const std::vector<std::string>& ops, int repeats = 7,
                 double min_sample_seconds = 0.05);

/// Exit codes of run().
inline constexpr int exit_ok = 0;
inline constexpr int exit_validation = 1;
inline constexpr int exit_convergence = 2;

/**
 * Executes one configured run, writing its artifacts under config.out, and
 * maps failures to exit codes: 0 success, 2 for a sweep that did not
 * converge, 1 for every other error. Messages go to `log`.
 */
int run(const RunConfig& config, std::ostream& log);

} // namespace geolab
