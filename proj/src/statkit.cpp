#include "ipc/statkit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "ipc/pointset.hpp"

namespace ipc {

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw Error("ks_statistic: no samples");
    std::sort(samples.begin(), samples.end());
    double n = static_cast<double>(samples.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double f = cdf(samples[i]);
        double lo = static_cast<double>(i) / n;
        double hi = static_cast<double>(i + 1) / n;
        worst = std::max(worst, std::max(std::abs(f - lo), std::abs(f - hi)));
    }
    return worst;
}

double chi_square_stat(const std::vector<std::int64_t>& observed,
                       const std::vector<double>& probs) {
    if (observed.size() != probs.size()) throw Error("chi_square_stat: size mismatch");
    std::int64_t total = 0;
    for (std::int64_t c : observed) total += c;
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        double expected = probs[i] * static_cast<double>(total);
        if (expected <= 0.0) throw Error("chi_square_stat: empty expected cell");
        double d = static_cast<double>(observed[i]) - expected;
        stat += d * d / expected;
    }
    return stat;
}

double chi_square_quantile(int dof, double p) {
    // Wilson-Hilferty: chi2_p ~ k (1 - 2/(9k) + z_p sqrt(2/(9k)))^3
    // inverse-normal via Acklam-style rational approximation
    auto inv_norm = [](double q) {
        // Beasley-Springer-Moro
        static const double a[] = {2.50662823884, -18.61500062529, 41.39119773534,
                                   -25.44106049637};
        static const double b[] = {-8.47351093090, 23.08336743743, -21.06224101826,
                                   3.13082909833};
        static const double c[] = {0.3374754822726147, 0.9761690190917186, 0.1607979714918209,
                                   0.0276438810333863, 0.0038405729373609, 0.0003951896511919,
                                   0.0000321767881768, 0.0000002888167364, 0.0000003960315187};
        double x = q - 0.5;
        if (std::abs(x) < 0.42) {
            double r = x * x;
            return x * (((a[3] * r + a[2]) * r + a[1]) * r + a[0]) /
                   ((((b[3] * r + b[2]) * r + b[1]) * r + b[0]) * r + 1.0);
        }
        double r = q > 0.5 ? 1.0 - q : q;
        double s = std::log(-std::log(r));
        double t = c[0];
        double pw = 1.0;
        for (int i = 1; i < 9; ++i) {
            pw *= s;
            t += c[i] * pw;
        }
        return q > 0.5 ? t : -t;
    };
    double k = static_cast<double>(dof);
    double z = inv_norm(p);
    double term = 1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k));
    return k * term * term * term;
}

double tv_against_pmf(const std::vector<std::int64_t>& samples,
                      const std::function<double(std::int64_t)>& pmf,
                      std::int64_t support_max) {
    if (samples.empty()) throw Error("tv_against_pmf: no samples");
    std::vector<double> emp(static_cast<std::size_t>(support_max) + 1, 0.0);
    double tail_emp = 0.0;
    double inc = 1.0 / static_cast<double>(samples.size());
    for (std::int64_t s : samples) {
        if (s >= 1 && s <= support_max) emp[static_cast<std::size_t>(s)] += inc;
        else tail_emp += inc;
    }
    double tv = 0.0;
    double tail_ref = 1.0;
    for (std::int64_t v = 1; v <= support_max; ++v) {
        double ref = pmf(v);
        tail_ref -= ref;
        tv += std::abs(emp[static_cast<std::size_t>(v)] - ref);
    }
    tv += std::abs(tail_emp - std::max(0.0, tail_ref));
    return 0.5 * tv;
}

double two_sample_tv(const std::map<std::string, std::int64_t>& a,
                     const std::map<std::string, std::int64_t>& b, std::size_t top_k) {
    std::map<std::string, std::int64_t> pooled = a;
    for (const auto& [k, v] : b) pooled[k] += v;
    std::vector<std::pair<std::int64_t, std::string>> order;
    for (const auto& [k, v] : pooled) order.emplace_back(v, k);
    std::sort(order.rbegin(), order.rend());
    if (order.size() > top_k) order.resize(top_k);

    double na = 0.0, nb = 0.0;
    for (const auto& [k, v] : a) na += static_cast<double>(v);
    for (const auto& [k, v] : b) nb += static_cast<double>(v);
    if (na == 0.0 || nb == 0.0) throw Error("two_sample_tv: empty histogram");

    double tv = 0.0;
    double rest_a = 1.0, rest_b = 1.0;
    for (const auto& [cnt, key] : order) {
        auto ia = a.find(key);
        auto ib = b.find(key);
        double pa = ia == a.end() ? 0.0 : static_cast<double>(ia->second) / na;
        double pb = ib == b.end() ? 0.0 : static_cast<double>(ib->second) / nb;
        rest_a -= pa;
        rest_b -= pb;
        tv += std::abs(pa - pb);
    }
    tv += std::abs(rest_a - rest_b);
    return 0.5 * tv;
}

double histogram_tv(const std::map<std::int64_t, std::int64_t>& a,
                    const std::map<std::int64_t, std::int64_t>& b) {
    double na = 0.0, nb = 0.0;
    for (const auto& [k, v] : a) na += static_cast<double>(v);
    for (const auto& [k, v] : b) nb += static_cast<double>(v);
    if (na == 0.0 || nb == 0.0) throw Error("histogram_tv: empty histogram");
    std::map<std::int64_t, double> diff;
    for (const auto& [k, v] : a) diff[k] += static_cast<double>(v) / na;
    for (const auto& [k, v] : b) diff[k] -= static_cast<double>(v) / nb;
    double tv = 0.0;
    for (const auto& [k, d] : diff) tv += std::abs(d);
    return 0.5 * tv;
}

std::string report_to_json(const StatReport& report) {
    nlohmann::json j;
    j["estimand"] = report.estimand;
    j["n"] = report.n;
    nlohmann::json hist = nlohmann::json::array();
    for (const auto& [label, count] : report.histogram)
        hist.push_back({{"bin", label}, {"count", count}});
    j["histogram"] = std::move(hist);
    j["reference"] = {{"law", report.reference_law}, {"params", report.reference_params}};
    j["stat"] = {{"kind", report.stat_kind},
                 {"value", report.stat_value},
                 {"threshold", report.threshold}};
    j["verdict"] = report.pass() ? "pass" : "fail";
    return j.dump(2);
}

void save_report_json(const StatReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open file for writing: " + path);
    out << report_to_json(report) << "\n";
}

void parallel_for(std::int64_t n, int threads, const std::function<void(std::int64_t)>& fn) {
    if (threads <= 1 || n <= 1) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                while (true) {
                    std::int64_t i = next.fetch_add(1);
                    if (i >= n) break;
                    fn(i);
                }
            } catch (...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::map<std::int64_t, std::int64_t> count_values(const std::vector<std::int64_t>& samples) {
    std::map<std::int64_t, std::int64_t> out;
    for (std::int64_t s : samples) ++out[s];
    return out;
}

int default_threads() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 4 : static_cast<int>(hw);
}

} // namespace ipc
