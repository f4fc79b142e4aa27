#pragma once

#include <cstdint>
#include <map>

namespace staynet {

/// Exact integer histogram used for stay durations (>= 1 day), society gaps
/// (>= 0 days) and overlap lengths. Mergeable, so partial histograms from
/// concurrent folds combine to the same result.
struct DurationHistogram {
    std::map<std::int64_t, std::uint64_t> bins;
    std::uint64_t total = 0;

    void add(std::int64_t value, std::uint64_t n = 1) {
        bins[value] += n;
        total += n;
    }

    void merge(const DurationHistogram& other) {
        for (const auto& [value, n] : other.bins) bins[value] += n;
        total += other.total;
    }

    friend bool operator==(const DurationHistogram&, const DurationHistogram&) = default;
};

/// Decade bin of a positive count: floor(log10 n), so bin k covers
/// [10^k, 10^(k+1) - 1].
int decade_bin(std::uint64_t n);

/// Bin bounds, e.g. decade_low(2) == 100, decade_high(2) == 999.
std::uint64_t decade_low(int k);
std::uint64_t decade_high(int k);

struct DecadeHistogram {
    std::map<int, std::uint64_t> bins;
    std::uint64_t total = 0;

    void add(std::uint64_t n) {
        bins[decade_bin(n)] += 1;
        total += 1;
    }

    void merge(const DecadeHistogram& other) {
        for (const auto& [k, n] : other.bins) bins[k] += n;
        total += other.total;
    }

    friend bool operator==(const DecadeHistogram&, const DecadeHistogram&) = default;
};

} // namespace staynet
