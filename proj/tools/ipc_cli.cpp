// Command-line front end: single simulations, verification suites, histogram
// export, box decompositions, and window stabilization.
//
// Exit codes: 0 success, 1 statistical failure, 2 configuration error,
// 3 kernel/certification failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ipc/boxforest.hpp"
#include "ipc/estimands.hpp"
#include "ipc/gw.hpp"
#include "ipc/kernel.hpp"
#include "ipc/pointset.hpp"
#include "ipc/rng.hpp"
#include "ipc/stationary.hpp"
#include "ipc/statkit.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitStatFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitKernel = 3;

struct Options {
    std::uint64_t seed = 20260824;
    std::int64_t replicas = 1000;
    std::int64_t width = 100;
    double cap = 5.0;
    std::string target = "0:0";
    int radius = 2;
    std::string q_variant = "one-minus-theta";
    std::string format = "csv";
    std::string out = "out";
    std::string in;
    int threads = 0;
    double scale = 1.0;
    bool run_null = false;
    std::vector<std::string> estimands;
};

nlohmann::json resolved_config(const Options& o, const std::string& subcommand) {
    return {{"subcommand", subcommand}, {"seed", o.seed},       {"replicas", o.replicas},
            {"width", o.width},         {"cap", o.cap},         {"target", o.target},
            {"radius", o.radius},       {"q_variant", o.q_variant},
            {"format", o.format},       {"out", o.out},         {"threads", o.threads},
            {"scale", o.scale},         {"null", o.run_null},   {"estimands", o.estimands}};
}

bool parse_target(const std::string& s, ipc::IntervalSpec& out) {
    auto colon = s.find(':');
    try {
        if (colon == std::string::npos) {
            out.lo = 0;
            out.hi = std::stoll(s);
        } else {
            out.lo = std::stoll(s.substr(0, colon));
            out.hi = std::stoll(s.substr(colon + 1));
        }
    } catch (const std::exception&) {
        return false;
    }
    return out.lo <= out.hi;
}

int cmd_simulate(const Options& o) {
    ipc::GeneratorSpec spec{ipc::GeneratorKind::PoissonUnitRate, o.seed, 0.0};
    ipc::PointSet ps = ipc::PointSet::generate(spec, {0, o.width}, o.cap);
    ipc::IpcTree tree;
    try {
        tree = ipc::run_ipc_sequential(ps);
    } catch (const ipc::ExhaustionError& e) {
        std::cerr << "kernel exhaustion: " << e.what()
                  << " (raise --cap to reveal more of the realization)\n";
        return kExitKernel;
    }
    std::vector<ipc::Box> boxes = ipc::boxes_from_tree(tree);
    std::vector<ipc::PondRecord> ponds = ipc::decompose_ponds(ps, tree, /*horizon=*/256);

    {
        std::ofstream f(o.out + "_tree.csv");
        f << "vertex,parent,weight,claimed_x\n";
        char buf[160];
        for (std::int64_t n = 1; n <= o.width; ++n) {
            std::snprintf(buf, sizeof buf, "%lld,%lld,%.17g,%.17g\n", static_cast<long long>(n),
                          static_cast<long long>(tree.parent_of(n)), tree.weight_of(n),
                          tree.claimed_x_of(n));
            f << buf;
        }
    }
    {
        std::ofstream f(o.out + "_boxes.csv");
        f << "vertex,left,height\n";
        char buf[96];
        for (std::int64_t n = 1; n <= o.width; ++n) {
            const ipc::Box& b = boxes[static_cast<std::size_t>(n - 1)];
            std::snprintf(buf, sizeof buf, "%lld,%lld,%.17g\n", static_cast<long long>(n),
                          static_cast<long long>(b.left), b.height);
            f << buf;
        }
    }
    {
        std::ofstream f(o.out + "_ponds.csv");
        f << "start,outlet,height,size,path_len,certified\n";
        char buf[128];
        for (const ipc::PondRecord& p : ponds) {
            std::snprintf(buf, sizeof buf, "%lld,%lld,%.17g,%lld,%lld,%d\n",
                          static_cast<long long>(p.start), static_cast<long long>(p.outlet),
                          p.height, static_cast<long long>(p.size),
                          static_cast<long long>(p.path_len), p.certified ? 1 : 0);
            f << buf;
        }
    }
    std::ofstream cfg(o.out + "_config.json");
    cfg << resolved_config(o, "simulate").dump(2) << "\n";
    std::cout << "wrote " << o.out << "_{tree,boxes,ponds}.csv\n";
    return kExitOk;
}

int cmd_verify(const Options& o) {
    std::vector<std::string> names = o.estimands;
    if (names.empty() || (names.size() == 1 && names[0] == "all"))
        for (const auto& e : ipc::estimand_registry()) names.push_back(e.name);
    if (!names.empty() && names[0] == "all") names.erase(names.begin());

    ipc::RunConfig cfg;
    cfg.seed = o.seed;
    cfg.threads = o.threads;
    cfg.scale = o.scale;

    bool all_pass = true;
    for (const std::string& name : names) {
        const ipc::Estimand* e = ipc::find_estimand(name);
        if (!e) {
            std::cerr << "unknown estimand: " << name << "\n";
            return kExitConfig;
        }
        ipc::StatReport report = o.run_null ? e->run_null(cfg) : e->run(cfg);
        std::string path = o.out + "/" + name + ".json";
        try {
            ipc::save_report_json(report, path);
        } catch (const ipc::Error&) {
            path = name + ".json";
            ipc::save_report_json(report, path);
        }
        std::printf("%-24s n=%-9lld %s=%.5g (< %.3g)  %s\n", name.c_str(),
                    static_cast<long long>(report.n), report.stat_kind.c_str(),
                    report.stat_value, report.threshold, report.pass() ? "pass" : "FAIL");
        all_pass = all_pass && report.pass();
    }
    return all_pass ? kExitOk : kExitStatFailure;
}

int cmd_export_hist(const Options& o) {
    if (o.in.empty()) {
        std::cerr << "export-hist requires --in <report.json>\n";
        return kExitConfig;
    }
    std::ifstream f(o.in);
    if (!f) {
        std::cerr << "cannot open " << o.in << "\n";
        return kExitConfig;
    }
    nlohmann::json j;
    try {
        f >> j;
    } catch (const std::exception& e) {
        std::cerr << "malformed report: " << e.what() << "\n";
        return kExitConfig;
    }
    if (o.format == "json") {
        std::ofstream out(o.out);
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    std::ofstream out(o.out);
    out << "bin,count\n";
    for (const auto& row : j.value("histogram", nlohmann::json::array())) {
        std::string bin = row.value("bin", "");
        for (auto& c : bin)
            if (c == ',') c = ';';
        out << bin << "," << row.value("count", 0LL) << "\n";
    }
    std::ofstream side(o.out + ".ref.json");
    side << j.value("reference", nlohmann::json::object()).dump(2) << "\n";
    return kExitOk;
}

int cmd_boxes(const Options& o) {
    ipc::GeneratorSpec spec{ipc::GeneratorKind::PoissonUnitRate, o.seed, 0.0};
    ipc::PointSet ps = ipc::PointSet::generate(spec, {0, o.width}, o.cap);
    ipc::IpcTree tree;
    try {
        tree = ipc::run_ipc_sequential(ps);
    } catch (const ipc::ExhaustionError& e) {
        std::cerr << "kernel exhaustion: " << e.what() << "\n";
        return kExitKernel;
    }
    std::vector<ipc::Box> boxes = ipc::boxes_from_tree(tree);
    ipc::BoxForest forest = ipc::build_box_forest(boxes, tree.interval);
    std::ofstream f(o.out);
    f << "vertex,left,height,enclosing\n";
    char buf[128];
    for (std::int64_t n = 1; n <= o.width; ++n) {
        std::int64_t a = forest.next_of(n);
        std::snprintf(buf, sizeof buf, "%lld,%lld,%.17g,%s\n", static_cast<long long>(n),
                      static_cast<long long>(boxes[static_cast<std::size_t>(n - 1)].left),
                      boxes[static_cast<std::size_t>(n - 1)].height,
                      a == ipc::kUndetermined ? "" : std::to_string(a).c_str());
        f << buf;
    }
    std::cout << "wrote " << o.out << "\n";
    return kExitOk;
}

int cmd_stabilize(const Options& o) {
    ipc::StabilizeOptions opt;
    opt.seed = o.seed;
    if (!parse_target(o.target, opt.target)) {
        std::cerr << "bad --target (expected LO:HI or HI): " << o.target << "\n";
        return kExitConfig;
    }
    ipc::StabilizedWindow w = ipc::stabilize(opt);
    nlohmann::json j;
    j["config"] = resolved_config(o, "stabilize");
    j["certified"] = w.certified;
    j["weights_below_one"] = w.weights_below_one;
    j["doublings_used"] = w.doublings_used;
    j["window"] = {{"lo", w.run.window.lo}, {"hi", w.run.window.hi}};
    nlohmann::json vertices = nlohmann::json::array();
    if (w.certified) {
        for (std::int64_t n = opt.target.lo; n <= opt.target.hi; ++n) {
            if (n == w.run.window.lo) continue;
            vertices.push_back({{"vertex", n},
                                {"parent", w.run.tree.parent_of(n)},
                                {"weight", w.run.tree.weight_of(n)},
                                {"box_left", w.run.box_of(n).left},
                                {"box_height", w.run.box_of(n).height}});
        }
    }
    j["vertices"] = std::move(vertices);
    std::ofstream f(o.out);
    if (f) f << j.dump(2) << "\n";
    else std::cout << j.dump(2) << "\n";
    if (!w.certified) {
        std::cerr << "stabilization did not certify within the doubling budget\n";
        return kExitKernel;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"point-set invasion simulator and verification harness"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&o](CLI::App* sub) {
        sub->add_option("--seed", o.seed, "base RNG seed");
        sub->add_option("--out", o.out, "output path or directory");
        sub->add_option("--format", o.format, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    CLI::App* sim = app.add_subcommand("simulate", "run one realization, write CSVs");
    add_common(sim);
    sim->add_option("--width", o.width, "window width (vertices 0..width)");
    sim->add_option("--cap", o.cap, "height cap of the realization");

    CLI::App* verify = app.add_subcommand("verify", "run verification campaigns");
    add_common(verify);
    verify->add_option("--estimand", o.estimands, "estimand names (or 'all')");
    verify->add_option("--threads", o.threads, "worker threads (0 = cores)");
    verify->add_option("--scale", o.scale, "replica-count scale factor");
    verify->add_option("--replicas", o.replicas,
                       "unused alias kept for script compatibility");
    verify->add_flag("--null", o.run_null, "draw from the reference law (calibration)");
    verify->add_option("--q-variant", o.q_variant, "one-minus-theta|dual")
        ->check(CLI::IsMember({"one-minus-theta", "dual"}));

    CLI::App* exporth = app.add_subcommand("export-hist", "export a report histogram");
    add_common(exporth);
    exporth->add_option("--in", o.in, "input StatReport JSON")->required();

    CLI::App* boxes = app.add_subcommand("boxes", "box decomposition of one realization");
    add_common(boxes);
    boxes->add_option("--width", o.width, "window width");
    boxes->add_option("--cap", o.cap, "height cap");

    CLI::App* stab = app.add_subcommand("stabilize", "certify a window of the two-sided limit");
    add_common(stab);
    stab->add_option("--target", o.target, "target vertex range LO:HI");
    stab->add_option("--radius", o.radius, "unused for now; reserved");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (sim->parsed()) return cmd_simulate(o);
        if (verify->parsed()) return cmd_verify(o);
        if (exporth->parsed()) return cmd_export_hist(o);
        if (boxes->parsed()) return cmd_boxes(o);
        if (stab->parsed()) return cmd_stabilize(o);
    } catch (const ipc::ExhaustionError& e) {
        std::cerr << "kernel error: " << e.what() << "\n";
        return kExitKernel;
    } catch (const ipc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitKernel;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
