#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "thermex/engine.hpp"

namespace thermex {

// 2D occupancy histogram over (indoor temperature x heating signal). Bins
// are uniform, left-closed right-open with the last bin right-closed.
// Temperatures outside the range land in `overflow` instead of being
// dropped, so counts + overflow always equals the number of rows binned.
struct CoverageMap {
    std::vector<double> temp_edges;   // n_temp + 1 ascending values, degC
    std::vector<double> signal_edges; // n_signal + 1 ascending values
    std::vector<std::uint64_t> counts; // row-major [temp][signal]
    std::uint64_t overflow = 0;

    std::size_t n_temp() const { return temp_edges.size() - 1; }
    std::size_t n_signal() const { return signal_edges.size() - 1; }
    std::uint64_t& at(std::size_t ti, std::size_t si) {
        return counts[ti * n_signal() + si];
    }
    std::uint64_t at(std::size_t ti, std::size_t si) const {
        return counts[ti * n_signal() + si];
    }
    std::uint64_t total() const;
};

struct CoverageGrid {
    // 0.25 K bins over the range the standard building actually reaches
    // under sustained excitation (full power parks it near 80 degC).
    double temp_min = 5.0; // degC
    double temp_max = 85.0;
    int n_temp_bins = 320;
    int n_signal_bins = 21; // over [0,1]
};

CoverageMap bin_trace(const Trace& trace, const CoverageGrid& grid = {});

// Fraction of bins with at least one count.
double occupied_fraction(const CoverageMap& m);

// Fraction of signal-axis bins whose column has at least one count.
double signal_axis_fraction(const CoverageMap& m);

// Jaccard index over the occupied-bin sets; 0 when both maps are empty.
// Throws ConfigError when the maps' edges differ.
double overlap(const CoverageMap& a, const CoverageMap& b);

// Counts-weighted alternative: sum of min(a,b) over cells after normalizing
// each map to unit mass (overflow excluded).
double histogram_intersection(const CoverageMap& a, const CoverageMap& b);

// Elementwise sum; the merge is associative so maps can be reduced in any
// grouping.
CoverageMap merge(const CoverageMap& a, const CoverageMap& b);

// Matrix CSV (rows = temperature bins ascending, columns = signal bins
// ascending) plus a JSON sidecar with the edges, overflow tally, and
// occupancy summary at path + ".meta.json".
void write_coverage_csv(const CoverageMap& m, const std::filesystem::path& path);

} // namespace thermex
