#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

namespace ipc {

// One-sample Kolmogorov-Smirnov statistic against a continuous CDF.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

// Pearson chi-square statistic for observed counts against cell probabilities.
double chi_square_stat(const std::vector<std::int64_t>& observed,
                       const std::vector<double>& probs);

// Upper quantile of the chi-square distribution (Wilson-Hilferty approximation).
double chi_square_quantile(int dof, double p);

// Total variation between an empirical sample of positive integers and a
// reference pmf, on the truncated support {1..support_max} plus a tail bucket
// holding everything else.
double tv_against_pmf(const std::vector<std::int64_t>& samples,
                      const std::function<double(std::int64_t)>& pmf,
                      std::int64_t support_max);

// Total variation between two shape histograms after merging all but the
// top_k most frequent (pooled) cells into one bucket.
double two_sample_tv(const std::map<std::string, std::int64_t>& a,
                     const std::map<std::string, std::int64_t>& b, std::size_t top_k = 30);

// Total variation between two integer-valued histograms (exact supports).
double histogram_tv(const std::map<std::int64_t, std::int64_t>& a,
                    const std::map<std::int64_t, std::int64_t>& b);

struct StatReport {
    std::string estimand;
    std::int64_t n = 0;
    std::vector<std::pair<std::string, std::int64_t>> histogram;
    std::string reference_law;
    std::string reference_params;
    std::string stat_kind;  // "ks" | "tv" | "chi2" | "relerr"
    double stat_value = 0.0;
    double threshold = 0.0;
    bool pass() const { return stat_value < threshold; }
};

void save_report_json(const StatReport& report, const std::string& path);
std::string report_to_json(const StatReport& report);

// Simple replica-parallel driver: calls fn(replica) over [0, n) on a pool of
// worker threads.
void parallel_for(std::int64_t n, int threads, const std::function<void(std::int64_t)>& fn);

// Merge helper: histogram from integer samples.
std::map<std::int64_t, std::int64_t> count_values(const std::vector<std::int64_t>& samples);

int default_threads();

} // namespace ipc
