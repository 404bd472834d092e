#include "cuprank/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "cuprank/errors.hpp"

namespace cuprank {

namespace {
constexpr double kZ95 = 1.96;

std::string format_estimate(const Estimate& e, bool percent) {
    char buf[64];
    if (percent) {
        std::snprintf(buf, sizeof(buf), "%.1f±%.1f%%", e.value * 100.0, e.ci95 * 100.0);
    } else {
        std::snprintf(buf, sizeof(buf), "%.3f±%.3f", e.value, e.ci95);
    }
    return buf;
}
}  // namespace

double ctr(std::uint64_t clicks, std::uint64_t searches) {
    if (searches == 0) throw DataError("ctr: searches must be > 0");
    return static_cast<double>(clicks) / static_cast<double>(searches);
}

double clicks_per_user(std::uint64_t clicks, std::uint64_t users) {
    if (users == 0) throw DataError("clicks_per_user: users must be > 0");
    return static_cast<double>(clicks) / static_cast<double>(users);
}

double conversion(std::uint64_t converted_users, std::uint64_t users) {
    if (users == 0) throw DataError("conversion: users must be > 0");
    return static_cast<double>(converted_users) / static_cast<double>(users);
}

double ci95_proportion(double p, std::uint64_t n) {
    if (n == 0) throw DataError("ci95_proportion: n must be > 0");
    if (p < 0.0 || p > 1.0) throw DataError("ci95_proportion: p must be in [0, 1]");
    return kZ95 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

double ci95_rate(double r, std::uint64_t n) {
    if (n == 0) throw DataError("ci95_rate: n must be > 0");
    if (r < 0.0) throw DataError("ci95_rate: rate must be >= 0");
    return kZ95 * std::sqrt(r / static_cast<double>(n));
}

ArmReport build_arm_report(const ArmCounts& counts) {
    ArmReport report;
    report.counts = counts;
    if (counts.converted_users) {
        const double p = conversion(*counts.converted_users, counts.users);
        report.conversion = Estimate{p, ci95_proportion(p, counts.users)};
    }
    const double rate = clicks_per_user(counts.clicks, counts.users);
    report.clicks_per_user = Estimate{rate, ci95_rate(rate, counts.users)};
    const double c = ctr(counts.clicks, counts.searches);
    report.ctr = Estimate{c, ci95_proportion(c, counts.searches)};
    return report;
}

namespace {
MetricLift lift_of(const std::string& name, const Estimate& base, const Estimate& variant) {
    MetricLift lift;
    lift.metric = name;
    lift.absolute = variant.value - base.value;
    lift.relative = base.value != 0.0 ? lift.absolute / base.value : 0.0;
    lift.significant = !base.overlaps(variant);
    return lift;
}
}  // namespace

Comparison compare(const ArmReport& baseline, const ArmReport& variant) {
    Comparison cmp;
    cmp.baseline_label = baseline.counts.label;
    cmp.variant_label = variant.counts.label;
    if (baseline.conversion && variant.conversion)
        cmp.lifts.push_back(lift_of("conversion", *baseline.conversion, *variant.conversion));
    cmp.lifts.push_back(lift_of("clicks_per_user", baseline.clicks_per_user, variant.clicks_per_user));
    cmp.lifts.push_back(lift_of("ctr", baseline.ctr, variant.ctr));
    return cmp;
}

MetricsReport build_report(const std::vector<ArmCounts>& arms) {
    if (arms.empty()) throw DataError("build_report: no arms");
    MetricsReport report;
    for (const auto& arm : arms) report.arms.push_back(build_arm_report(arm));
    for (std::size_t i = 1; i < report.arms.size(); ++i) {
        report.comparisons.push_back(compare(report.arms[0], report.arms[i]));
    }
    return report;
}

std::string report_to_json(const MetricsReport& report) {
    nlohmann::json doc;
    auto arms = nlohmann::json::array();
    for (const auto& arm : report.arms) {
        nlohmann::json a;
        a["label"] = arm.counts.label;
        a["users"] = arm.counts.users;
        a["searches"] = arm.counts.searches;
        a["clicks"] = arm.counts.clicks;
        if (arm.counts.converted_users) a["converted_users"] = *arm.counts.converted_users;
        if (arm.conversion)
            a["conversion"] = {{"value", arm.conversion->value}, {"ci95", arm.conversion->ci95}};
        a["clicks_per_user"] = {{"value", arm.clicks_per_user.value},
                                {"ci95", arm.clicks_per_user.ci95}};
        a["ctr"] = {{"value", arm.ctr.value}, {"ci95", arm.ctr.ci95}};
        arms.push_back(std::move(a));
    }
    doc["arms"] = std::move(arms);

    auto comparisons = nlohmann::json::array();
    for (const auto& cmp : report.comparisons) {
        nlohmann::json c;
        c["baseline"] = cmp.baseline_label;
        c["variant"] = cmp.variant_label;
        auto lifts = nlohmann::json::array();
        for (const auto& lift : cmp.lifts) {
            lifts.push_back({{"metric", lift.metric},
                             {"absolute", lift.absolute},
                             {"relative", lift.relative},
                             {"significant", lift.significant}});
        }
        c["lifts"] = std::move(lifts);
        comparisons.push_back(std::move(c));
    }
    doc["comparisons"] = std::move(comparisons);
    return doc.dump();
}

std::string report_to_table(const MetricsReport& report) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof(line), "%-14s %10s %10s %10s %14s %14s %12s\n", "Ranker", "Users",
                  "Searches", "Clicks", "Conversion", "Clicks/user", "CTR");
    out << line;
    for (const auto& arm : report.arms) {
        const std::string conv =
            arm.conversion ? format_estimate(*arm.conversion, true) : std::string("n/a");
        std::snprintf(line, sizeof(line), "%-14s %10llu %10llu %10llu %14s %14s %12s\n",
                      arm.counts.label.c_str(),
                      static_cast<unsigned long long>(arm.counts.users),
                      static_cast<unsigned long long>(arm.counts.searches),
                      static_cast<unsigned long long>(arm.counts.clicks), conv.c_str(),
                      format_estimate(arm.clicks_per_user, false).c_str(),
                      format_estimate(arm.ctr, true).c_str());
        out << line;
    }
    for (const auto& cmp : report.comparisons) {
        out << "\n" << cmp.variant_label << " vs " << cmp.baseline_label << ":\n";
        for (const auto& lift : cmp.lifts) {
            std::snprintf(line, sizeof(line), "  %-16s %+.4f absolute, %+.1f%% relative, %s\n",
                          lift.metric.c_str(), lift.absolute, lift.relative * 100.0,
                          lift.significant ? "significant" : "not significant");
            out << line;
        }
    }
    return out.str();
}

}  // namespace cuprank
