// Python surface for the C++ core: dense matrices cross as numpy arrays,
// experiments run straight from config text and come back as plain dicts.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <stdexcept>

#include "sngdlab/config.hpp"
#include "sngdlab/dataset.hpp"
#include "sngdlab/errors.hpp"
#include "sngdlab/experiment.hpp"
#include "sngdlab/matrix.hpp"
#include "sngdlab/network.hpp"
#include "sngdlab/sqrt_solvers.hpp"

namespace py = pybind11;
using namespace sngd;

namespace {

using NpArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

Matrix to_matrix(const NpArray& a) {
    if (a.ndim() != 2) throw DimensionError("expected a 2-D float array");
    Matrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
    std::memcpy(m.values().data(), a.data(), sizeof(double) * m.size());
    return m;
}

py::array_t<double> to_numpy(const Matrix& m) {
    py::array_t<double> a({m.rows(), m.cols()});
    std::memcpy(a.mutable_data(), m.values().data(), sizeof(double) * m.size());
    return a;
}

SqrtMethod method_from_name(const std::string& name) {
    if (name == "denman_beavers") return SqrtMethod::DenmanBeavers;
    if (name == "newton_schulz") return SqrtMethod::NewtonSchulz;
    throw Error("unknown sqrt method: " + name + " (use denman_beavers or newton_schulz)");
}

py::dict sqrt_result_dict(const SqrtResult& r) {
    py::dict d;
    d["sqrt"] = to_numpy(r.sqrt);
    d["inv_sqrt"] = to_numpy(r.inv_sqrt);
    d["iterations"] = r.iterations;
    d["residual"] = r.residual;
    return d;
}

py::dict summary_dict(const RunSummary& s) {
    py::dict d;
    d["run_id"] = s.run_id;
    d["optimizer"] = s.optimizer;
    d["csv_path"] = s.csv_path;
    d["final_train_loss"] = s.final_train_loss;
    d["final_test_loss"] = s.final_test_loss;
    d["final_test_accuracy"] = s.final_test_accuracy;
    d["best_test_accuracy"] = s.best_test_accuracy;
    d["mean_epoch_wall_ms"] = s.mean_epoch_wall_ms;
    d["total_steps"] = s.total_steps;
    d["refresh_failures"] = s.refresh_failures;
    py::list rows;
    for (const MetricsRecord& r : s.records) {
        py::dict row;
        row["epoch"] = r.epoch;
        row["step"] = r.step;
        row["train_loss"] = r.train_loss;
        row["test_loss"] = r.test_loss;
        row["test_accuracy"] = r.test_accuracy;
        row["epoch_wall_ms"] = r.epoch_wall_ms;
        row["fisher_refreshes"] = r.fisher_refreshes;
        row["sqrt_iterations_total"] = r.sqrt_iterations_total;
        rows.append(row);
    }
    d["records"] = rows;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "structured natural gradient descent laboratory (C++ core)";
    mod.attr("__version__") = "0.1.0";

    py::register_exception<ConfigError>(mod, "ConfigError", PyExc_ValueError);

    mod.def("matmul",
            [](const NpArray& a, const NpArray& b) {
                return to_numpy(matmul(to_matrix(a), to_matrix(b)));
            },
            py::arg("a"), py::arg("b"), "Dense matrix product (row-major, deterministic).");

    mod.def("random_spd",
            [](std::size_t order, double cond, std::uint64_t seed) {
                return to_numpy(random_spd(order, cond, seed));
            },
            py::arg("order"), py::arg("cond"), py::arg("seed"),
            "Seeded random SPD matrix with the given condition number.");

    mod.def("spd_sqrt",
            [](const NpArray& a, const std::string& method, double tol, int max_iter) {
                return sqrt_result_dict(spd_sqrt(to_matrix(a), method_from_name(method), tol,
                                                 max_iter));
            },
            py::arg("a"), py::arg("method") = "denman_beavers", py::arg("tol") = kDefaultSqrtTol,
            py::arg("max_iter") = kDefaultSqrtMaxIter,
            "Iterative SPD square root; returns dict with sqrt, inv_sqrt, iterations, residual.");

    mod.def("spd_sqrt_eig",
            [](const NpArray& a) { return sqrt_result_dict(spd_sqrt_eig_oracle(to_matrix(a))); },
            py::arg("a"), "Jacobi eigendecomposition square root (the reference oracle).");

    mod.def("gen_synthetic",
            [](const std::string& kind, std::size_t n, std::size_t d, std::uint64_t seed) {
                const Dataset data = gen_synthetic(synthetic_from_string(kind), n, d, seed);
                py::dict out;
                out["inputs"] = to_numpy(data.inputs);
                out["labels"] = data.labels;
                out["class_count"] = data.class_count;
                out["name"] = data.name;
                return out;
            },
            py::arg("kind"), py::arg("n"), py::arg("d") = 2, py::arg("seed") = 1,
            "Deterministic toy dataset: two_gaussians, spiral or linear_teacher.");

    mod.def("canonical_config",
            [](const std::string& text) { return serialize_config(parse_config_text(text)); },
            py::arg("text"),
            "Parse config text and return the canonical key=value rendering.");

    mod.def("run_experiment",
            [](const std::string& config_text, bool no_timing) {
                return summary_dict(run_experiment(parse_config_text(config_text), no_timing));
            },
            py::arg("config_text"), py::arg("no_timing") = true,
            "Train per the config text, write the metrics CSV, return the run summary.");
}
