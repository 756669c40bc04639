#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ipc/boxforest.hpp"
#include "ipc/estimands.hpp"
#include "ipc/gw.hpp"
#include "ipc/kernel.hpp"
#include "ipc/pointset.hpp"
#include "ipc/stationary.hpp"

namespace py = pybind11;
using namespace ipc;

namespace {

QVariant parse_variant(const std::string& name) {
    if (name == "one-minus-theta") return QVariant::OneMinusTheta;
    if (name == "dual") return QVariant::Dual;
    throw Error("unknown q-map variant: " + name + " (use 'one-minus-theta' or 'dual')");
}

py::dict report_to_dict(const StatReport& r) {
    py::dict d;
    d["estimand"] = r.estimand;
    d["n"] = r.n;
    d["reference_law"] = r.reference_law;
    d["reference_params"] = r.reference_params;
    d["stat_kind"] = r.stat_kind;
    d["stat_value"] = r.stat_value;
    d["threshold"] = r.threshold;
    d["pass"] = r.pass();
    py::dict h;
    for (const auto& [k, v] : r.histogram) h[py::str(k)] = v;
    d["histogram"] = h;
    return d;
}

} // namespace

PYBIND11_MODULE(_ipcsim, m) {
    m.doc() = "half-plane invasion percolation: kernel, box forest, stationary "
              "constructions, exact laws and verification campaigns";

    py::register_exception<Error>(m, "IpcError");

    py::class_<IntervalSpec>(m, "Interval")
        .def(py::init<std::int64_t, std::int64_t>(), py::arg("lo"), py::arg("hi"))
        .def_readonly("lo", &IntervalSpec::lo)
        .def_readonly("hi", &IntervalSpec::hi)
        .def("width", &IntervalSpec::width)
        .def("__repr__", [](const IntervalSpec& iv) {
            return "Interval(" + std::to_string(iv.lo) + ", " + std::to_string(iv.hi) + ")";
        });

    py::class_<Box>(m, "Box")
        .def_readonly("left", &Box::left)
        .def_readonly("height", &Box::height)
        .def("__repr__", [](const Box& b) {
            return "Box(left=" + std::to_string(b.left) +
                   ", height=" + std::to_string(b.height) + ")";
        });

    py::class_<WindowRun>(m, "WindowRun")
        .def_readonly("window", &WindowRun::window)
        .def("parent_of", [](const WindowRun& r, std::int64_t n) {
            if (n <= r.window.lo || n > r.window.hi) throw Error("vertex outside window");
            return r.tree.parent_of(n);
        })
        .def("weight_of", [](const WindowRun& r, std::int64_t n) {
            if (n <= r.window.lo || n > r.window.hi) throw Error("vertex outside window");
            return r.tree.weight_of(n);
        })
        .def("box_of", [](const WindowRun& r, std::int64_t n) {
            if (n <= r.window.lo || n > r.window.hi) throw Error("vertex outside window");
            return r.box_of(n);
        })
        .def("parents", [](const WindowRun& r) {
            std::vector<std::int64_t> out;
            for (std::int64_t n = r.window.lo + 1; n <= r.window.hi; ++n)
                out.push_back(r.tree.parent_of(n));
            return out;
        })
        .def("weights", [](const WindowRun& r) {
            std::vector<double> out;
            for (std::int64_t n = r.window.lo + 1; n <= r.window.hi; ++n)
                out.push_back(r.tree.weight_of(n));
            return out;
        });

    m.def("run_window", &run_window, py::arg("seed"), py::arg("lo"), py::arg("hi"),
          py::arg("initial_cap") = 1.5, py::arg("max_cap") = 1024.0,
          "Run the invasion over [lo, hi] with automatic cap raising.");

    m.def(
        "backward_trace",
        [](const WindowRun& run, std::int64_t from, double stop_above) {
            return backward_trace(run, from, stop_above);
        },
        py::arg("run"), py::arg("from_vertex"), py::arg("stop_above"),
        "Iterated enclosing-box ancestry: (vertex, box height) pairs.");

    py::class_<StabilizedWindow>(m, "StabilizedWindow")
        .def_readonly("certified", &StabilizedWindow::certified)
        .def_readonly("weights_below_one", &StabilizedWindow::weights_below_one)
        .def_readonly("doublings_used", &StabilizedWindow::doublings_used)
        .def_readonly("run", &StabilizedWindow::run);

    m.def(
        "stabilize",
        [](std::uint64_t seed, std::int64_t lo, std::int64_t hi, int max_doublings,
           std::int64_t initial_margin_factor, int consecutive) {
            StabilizeOptions opt;
            opt.seed = seed;
            opt.target = {lo, hi};
            opt.max_doublings = max_doublings;
            opt.initial_margin_factor = initial_margin_factor;
            opt.consecutive = consecutive;
            return stabilize(opt);
        },
        py::arg("seed"), py::arg("lo"), py::arg("hi"), py::arg("max_doublings") = 20,
        py::arg("initial_margin_factor") = 4, py::arg("consecutive") = 3,
        "Grow the window leftward until (parent, weight, box) certify for every "
        "target vertex.");

    py::class_<PondRecord>(m, "Pond")
        .def_readonly("start", &PondRecord::start)
        .def_readonly("outlet", &PondRecord::outlet)
        .def_readonly("start_height", &PondRecord::start_height)
        .def_readonly("height", &PondRecord::height)
        .def_readonly("size", &PondRecord::size)
        .def_readonly("path_len", &PondRecord::path_len)
        .def_readonly("hang_sizes", &PondRecord::hang_sizes)
        .def_readonly("certified", &PondRecord::certified);

    py::class_<HarvestResult>(m, "HarvestResult")
        .def_readonly("ponds", &HarvestResult::ponds)
        .def_readonly("complete", &HarvestResult::complete)
        .def_readonly("width", &HarvestResult::width);

    m.def(
        "harvest_ponds",
        [](std::uint64_t seed, double stop_below, std::int64_t min_outlets,
           std::int64_t horizon, std::int64_t max_width) {
            HarvestOptions opt;
            opt.seed = seed;
            opt.stop_below = stop_below;
            opt.min_outlets = min_outlets;
            opt.horizon = horizon;
            opt.max_width = max_width;
            return harvest_ponds(opt);
        },
        py::arg("seed"), py::arg("stop_below") = 1.0, py::arg("min_outlets") = 1,
        py::arg("horizon") = 512, py::arg("max_width") = 200000,
        "Half-line pond decomposition: grow rightward until the record chain "
        "drops below stop_below with min_outlets certified outlets.");

    m.def("forward_max_process", &forward_max_process, py::arg("ponds"),
          "Future-maximum weight per backbone edge over the certified ponds.");

    // exact laws
    m.def("theta", &theta, py::arg("lam"));
    m.def("theta_prime", &theta_prime, py::arg("lam"));
    m.def("dual_m", &dual_m, py::arg("lam"));
    m.def("dual_inverse", &dual_inverse, py::arg("m"));
    m.def("borel_pmf", &borel_pmf, py::arg("n"));
    m.def("pgw_size_pmf", &pgw_size_pmf, py::arg("mu"), py::arg("n"));
    m.def("phi_pmf", &phi_pmf, py::arg("y"), py::arg("n"));
    m.def("pond_size_given_height", &pond_size_given_height, py::arg("y"), py::arg("n"));
    m.def("geometric_pmf", &geometric_pmf, py::arg("x"), py::arg("k"));
    m.def("cayley_distance_pmf", &cayley_distance_pmf, py::arg("n"), py::arg("k"));
    m.def(
        "q_map", [](double lam, const std::string& variant) {
            return q_map(lam, parse_variant(variant));
        },
        py::arg("lam"), py::arg("variant") = "one-minus-theta");

    // verification campaigns
    m.def("list_estimands", [] {
        std::vector<std::string> names;
        for (const auto& e : estimand_registry()) names.push_back(e.name);
        return names;
    });
    m.def(
        "run_estimand",
        [](const std::string& name, std::uint64_t seed, int threads, double scale,
           bool null_run) {
            const Estimand* e = find_estimand(name);
            if (!e) throw Error("unknown estimand: " + name);
            RunConfig cfg;
            cfg.seed = seed;
            cfg.threads = threads;
            cfg.scale = scale;
            StatReport r = null_run ? e->run_null(cfg) : e->run(cfg);
            return report_to_dict(r);
        },
        py::arg("name"), py::arg("seed") = 20260824, py::arg("threads") = 0,
        py::arg("scale") = 1.0, py::arg("null_run") = false,
        "Run one verification campaign (or its null calibration twin) and "
        "return the statistic report.");
}
