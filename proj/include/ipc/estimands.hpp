#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ipc/statkit.hpp"

namespace ipc {

struct RunConfig {
    std::uint64_t seed = 20260824;
    int threads = 0;       // 0 = hardware concurrency
    double scale = 1.0;    // scales replica counts (tests use < 1)

    int resolved_threads() const { return threads > 0 ? threads : default_threads(); }
    std::int64_t scaled(std::int64_t n) const {
        auto v = static_cast<std::int64_t>(static_cast<double>(n) * scale);
        return v < 100 ? 100 : v;
    }
};

// A named verification campaign: `run` simulates and tests against the
// reference law; `run_null` draws from the reference law itself and applies
// the same statistic (used for calibration).
struct Estimand {
    std::string name;
    std::function<StatReport(const RunConfig&)> run;
    std::function<StatReport(const RunConfig&)> run_null;
};

const std::vector<Estimand>& estimand_registry();
const Estimand* find_estimand(const std::string& name);

} // namespace ipc
