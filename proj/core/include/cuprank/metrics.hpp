#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cuprank {

/// Raw engagement counts for one experiment arm.
struct ArmCounts {
    std::string label;
    std::uint64_t users = 0;
    std::uint64_t searches = 0;
    std::uint64_t clicks = 0;
    std::optional<std::uint64_t> converted_users;  // users with >= 1 click
};

/// A point estimate with its symmetric 95% half-width.
struct Estimate {
    double value = 0.0;
    double ci95 = 0.0;

    double low() const { return value - ci95; }
    double high() const { return value + ci95; }
    bool overlaps(const Estimate& other) const {
        return low() <= other.high() && other.low() <= high();
    }
};

/// Derived engagement metrics for one arm.
struct ArmReport {
    ArmCounts counts;
    std::optional<Estimate> conversion;  // present when converted_users known
    Estimate clicks_per_user;
    Estimate ctr;
};

/// Per-metric lift between two arms. Significance is non-overlapping 95%
/// confidence intervals.
struct MetricLift {
    std::string metric;
    double absolute = 0.0;
    double relative = 0.0;  // absolute / baseline value
    bool significant = false;
};

struct Comparison {
    std::string baseline_label;
    std::string variant_label;
    std::vector<MetricLift> lifts;
};

/// Full evaluation output: one report per arm plus pairwise comparison of
/// the first arm (baseline) against each other arm.
struct MetricsReport {
    std::vector<ArmReport> arms;
    std::vector<Comparison> comparisons;
};

/// clicks / searches. Throws DataError when searches == 0.
double ctr(std::uint64_t clicks, std::uint64_t searches);

/// clicks / users. Throws DataError when users == 0.
double clicks_per_user(std::uint64_t clicks, std::uint64_t users);

/// converted_users / users. Throws DataError when users == 0.
double conversion(std::uint64_t converted_users, std::uint64_t users);

/// Wald 95% half-width for a proportion: 1.96 * sqrt(p(1-p)/n).
double ci95_proportion(double p, std::uint64_t n);

/// Normal-approximation 95% half-width for a nonnegative rate with Poisson
/// variance: 1.96 * sqrt(r/n).
double ci95_rate(double r, std::uint64_t n);

/// Builds the derived metrics for one arm from its raw counts.
ArmReport build_arm_report(const ArmCounts& counts);

/// Lift and significance per metric; metrics missing from either arm
/// (e.g. conversion without converted counts) are skipped.
Comparison compare(const ArmReport& baseline, const ArmReport& variant);

MetricsReport build_report(const std::vector<ArmCounts>& arms);

/// Machine-readable JSON rendering (one canonical line).
std::string report_to_json(const MetricsReport& report);

/// Human table: one row per arm, columns matching
/// users / searches / clicks / conversion / clicks-per-user / CTR,
/// followed by lift lines.
std::string report_to_table(const MetricsReport& report);

}  // namespace cuprank
