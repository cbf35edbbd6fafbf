#include "thermex/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <nlohmann/json.hpp>

#include "thermex/errors.hpp"

namespace thermex {

std::uint64_t CoverageMap::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

namespace {

std::vector<double> uniform_edges(double lo, double hi, int n) {
    std::vector<double> edges(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
        edges[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / n;
    edges.back() = hi;
    return edges;
}

// Locates v against explicit edges: left-closed right-open, last bin
// right-closed; -1 below, n above. The floor estimate is corrected against
// the actual edge values so a value exactly on an interior edge always joins
// the right-hand bin.
int locate(const std::vector<double>& edges, double v) {
    const int n = static_cast<int>(edges.size()) - 1;
    if (v < edges.front())
        return -1;
    if (v > edges.back())
        return n;
    if (v == edges.back())
        return n - 1;
    const double width = (edges.back() - edges.front()) / n;
    int idx = std::clamp(
        static_cast<int>(std::floor((v - edges.front()) / width)), 0, n - 1);
    while (idx + 1 < n && v >= edges[static_cast<std::size_t>(idx) + 1])
        ++idx;
    while (idx > 0 && v < edges[static_cast<std::size_t>(idx)])
        --idx;
    return idx;
}

} // namespace

CoverageMap bin_trace(const Trace& trace, const CoverageGrid& grid) {
    if (grid.n_temp_bins < 1 || grid.n_signal_bins < 1)
        throw ConfigError("coverage: bin counts must be >= 1");
    if (!(grid.temp_min < grid.temp_max))
        throw ConfigError("coverage: temperature range is degenerate");

    CoverageMap m;
    m.temp_edges = uniform_edges(grid.temp_min, grid.temp_max,
                                 grid.n_temp_bins);
    m.signal_edges = uniform_edges(0.0, 1.0, grid.n_signal_bins);
    m.counts.assign(static_cast<std::size_t>(grid.n_temp_bins) *
                        static_cast<std::size_t>(grid.n_signal_bins),
                    0);

    for (const TraceRow& r : trace.rows) {
        const int ti = locate(m.temp_edges, r.t_air_c);
        if (ti < 0 || ti >= grid.n_temp_bins) {
            ++m.overflow;
            continue;
        }
        const int si = std::clamp(locate(m.signal_edges, r.control_signal), 0,
                                  grid.n_signal_bins - 1);
        ++m.at(static_cast<std::size_t>(ti), static_cast<std::size_t>(si));
    }
    return m;
}

double occupied_fraction(const CoverageMap& m) {
    if (m.counts.empty())
        return 0.0;
    const auto occupied = static_cast<double>(
        std::count_if(m.counts.begin(), m.counts.end(),
                      [](std::uint64_t c) { return c > 0; }));
    return occupied / static_cast<double>(m.counts.size());
}

double signal_axis_fraction(const CoverageMap& m) {
    const std::size_t ns = m.n_signal();
    if (ns == 0)
        return 0.0;
    std::size_t occupied = 0;
    for (std::size_t si = 0; si < ns; ++si) {
        for (std::size_t ti = 0; ti < m.n_temp(); ++ti) {
            if (m.at(ti, si) > 0) {
                ++occupied;
                break;
            }
        }
    }
    return static_cast<double>(occupied) / static_cast<double>(ns);
}

namespace {

void require_same_edges(const CoverageMap& a, const CoverageMap& b) {
    if (a.temp_edges != b.temp_edges || a.signal_edges != b.signal_edges)
        throw ConfigError("coverage maps have mismatched bin edges");
}

} // namespace

double overlap(const CoverageMap& a, const CoverageMap& b) {
    require_same_edges(a, b);
    std::uint64_t inter = 0;
    std::uint64_t uni = 0;
    for (std::size_t i = 0; i < a.counts.size(); ++i) {
        const bool in_a = a.counts[i] > 0;
        const bool in_b = b.counts[i] > 0;
        inter += in_a && in_b;
        uni += in_a || in_b;
    }
    return uni == 0 ? 0.0
                    : static_cast<double>(inter) / static_cast<double>(uni);
}

double histogram_intersection(const CoverageMap& a, const CoverageMap& b) {
    require_same_edges(a, b);
    const double ta = static_cast<double>(a.total());
    const double tb = static_cast<double>(b.total());
    if (ta == 0.0 || tb == 0.0)
        return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < a.counts.size(); ++i)
        sum += std::min(static_cast<double>(a.counts[i]) / ta,
                        static_cast<double>(b.counts[i]) / tb);
    return sum;
}

CoverageMap merge(const CoverageMap& a, const CoverageMap& b) {
    require_same_edges(a, b);
    CoverageMap out = a;
    for (std::size_t i = 0; i < out.counts.size(); ++i)
        out.counts[i] += b.counts[i];
    out.overflow += b.overflow;
    return out;
}

void write_coverage_csv(const CoverageMap& m,
                        const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw RunError("write_coverage_csv: cannot open " + path.string());
    for (std::size_t ti = 0; ti < m.n_temp(); ++ti) {
        for (std::size_t si = 0; si < m.n_signal(); ++si) {
            if (si)
                out << ',';
            out << m.at(ti, si);
        }
        out << '\n';
    }

    nlohmann::json meta{{"temp_edges", m.temp_edges},
                        {"signal_edges", m.signal_edges},
                        {"overflow", m.overflow},
                        {"total", m.total()},
                        {"occupied_fraction", occupied_fraction(m)},
                        {"signal_axis_fraction", signal_axis_fraction(m)}};
    std::ofstream mout(path.string() + ".meta.json",
                       std::ios::binary | std::ios::trunc);
    if (!mout)
        throw RunError("write_coverage_csv: cannot open metadata sidecar");
    mout << meta.dump(2) << '\n';
}

} // namespace thermex
