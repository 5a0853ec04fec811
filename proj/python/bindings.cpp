#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "schlicht/briot_bouquet.hpp"
#include "schlicht/errors.hpp"
#include "schlicht/explore.hpp"
#include "schlicht/membership.hpp"
#include "schlicht/operators.hpp"
#include "schlicht/semigroup.hpp"
#include "schlicht/series.hpp"

namespace py = pybind11;
using namespace schlicht;

namespace
{

// Reports cross the boundary as plain dicts, same shape as the CLI JSON.
template <class T> py::object as_dict(const T &v)
{
    const nlohmann::json j = v;
    return py::module_::import("json").attr("loads")(j.dump());
}

DiskGrid grid_from(const std::optional<std::vector<double>> &radii, int angles, int depth)
{
    auto g = DiskGrid::standard();
    if (radii) {
        g.radii = *radii;
        g.gated_radius.reset();
    }
    g.angles_per_ring = angles;
    g.refinement_depth = depth;
    g.validate();
    return g;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Taylor-series tools for the classes M_{alpha,beta}";
    m.attr("__version__") = SCHLICHT_VERSION;
    m.attr("default_truncation_order") = default_truncation_order;

    py::register_exception<disk_escape_error>(m, "DiskEscapeError", PyExc_RuntimeError);
    py::register_exception<step_underflow_error>(m, "StepUnderflowError", PyExc_RuntimeError);
    py::register_exception<solver_error>(m, "SolverError", PyExc_RuntimeError);

    py::class_<TaylorSeries>(m, "TaylorSeries")
        .def(py::init<std::vector<cplx>>(), py::arg("coeffs"))
        .def_static("constant", &TaylorSeries::constant)
        .def_static("identity", &TaylorSeries::identity)
        .def_static("geometric", &TaylorSeries::geometric, py::arg("order"), py::arg("k") = 1)
        .def_property_readonly("order", &TaylorSeries::order)
        .def_property_readonly("coeffs",
                               [](const TaylorSeries &s) { return std::vector<cplx>(s.coeffs().begin(), s.coeffs().end()); })
        .def("__getitem__", &TaylorSeries::operator[])
        .def("__call__", [](const TaylorSeries &s, cplx z) { return evaluate(s, z); })
        .def("truncated", &TaylorSeries::truncated)
        .def("__add__", [](const TaylorSeries &a, const TaylorSeries &b) { return a + b; })
        .def("__sub__", [](const TaylorSeries &a, const TaylorSeries &b) { return a - b; })
        .def("__mul__", [](const TaylorSeries &a, const TaylorSeries &b) { return a * b; })
        .def("__truediv__", [](const TaylorSeries &a, const TaylorSeries &b) { return a / b; })
        .def("__rmul__", [](const TaylorSeries &s, cplx c) { return scale(s, c); })
        .def("__eq__", [](const TaylorSeries &a, const TaylorSeries &b) { return a == b; })
        .def("__repr__", [](const TaylorSeries &s) { return "<TaylorSeries order=" + std::to_string(s.order()) + ">"; });

    m.def("derivative", &derivative);
    m.def("integrate0", &integrate0);
    m.def("log1", &log1);
    m.def("exp0", &exp0);
    m.def("pow_real", &pow_real);
    m.def("max_coeff_diff", &max_coeff_diff);
    m.def("tail_estimate", &tail_estimate);

    py::class_<NormalizedFunction>(m, "NormalizedFunction")
        .def(py::init<TaylorSeries>())
        .def_static("normalize", &NormalizedFunction::normalize, py::arg("series"), py::arg("drift_tol") = 1e-10)
        .def_property_readonly("series", &NormalizedFunction::series)
        .def_property_readonly("order", &NormalizedFunction::order)
        .def_property_readonly("a2", &NormalizedFunction::a2)
        .def_property_readonly("a3", &NormalizedFunction::a3)
        .def("__call__", [](const NormalizedFunction &f, cplx z) { return evaluate(f.series(), z); });

    m.def("named_function", [](const std::string &name, int order) { return named_function(name, order); },
          py::arg("name"), py::arg("order") = default_truncation_order);
    m.def("named_function_list", &named_function_list);

    py::class_<ClassParams>(m, "ClassParams")
        .def(py::init<double, double>(), py::arg("alpha"), py::arg("beta"))
        .def_property_readonly("alpha", &ClassParams::alpha)
        .def_property_readonly("beta", &ClassParams::beta)
        .def_property_readonly("threshold", &ClassParams::threshold)
        .def_property_readonly("mu", &ClassParams::mu);

    m.def("g_operator", &g_operator);
    m.def("fekete_szego", &fekete_szego);
    m.def("omega_transform", &omega_transform);
    m.def("mocanu_g", &mocanu_g);
    m.def("mocanu_f", &mocanu_f);

    // membership
    m.def(
        "min_margin",
        [](const NormalizedFunction &f, const std::string &cls, std::optional<double> alpha,
           std::optional<double> beta, std::optional<std::vector<double>> radii, int angles, int depth) {
            const auto grid = grid_from(radii, angles, depth);
            const auto id = class_id_from_string(cls);
            if (id == ClassId::m_alpha_beta) {
                return as_dict(min_margin(f, id, ClassParams(alpha.value_or(0.0), beta.value_or(0.0)), grid));
            }
            return as_dict(min_margin(f, id, grid));
        },
        py::arg("f"), py::arg("cls"), py::arg("alpha") = py::none(), py::arg("beta") = py::none(),
        py::arg("radii") = py::none(), py::arg("angles") = 720, py::arg("depth") = 2);
    m.def("delta_region_contains", &delta_region_contains);
    m.def("thm_n1_audit", [](const NormalizedFunction &f, const ClassParams &p) {
        return as_dict(thm_n1_audit(f, p, DiskGrid::standard()));
    });
    m.def("marx_strohhacker_audit",
          [](const NormalizedFunction &f) { return as_dict(marx_strohhacker_audit(f)); });

    // Briot-Bouquet and extremals
    py::class_<BriotBouquetProblem>(m, "BriotBouquetProblem")
        .def(py::init<TaylorSeries, double, double>(), py::arg("h"), py::arg("B"), py::arg("Gamma"));
    m.def("solve_bb", &solve_bb);
    m.def("bb_residual", &bb_residual);
    m.def("f_from_q", &f_from_q);
    m.def("default_lambda_grid", &default_lambda_grid);
    m.def(
        "extremal_mocanu",
        [](double beta, int k, int order) { return as_dict(extremal_mocanu(beta, k, order)); },
        py::arg("beta"), py::arg("k"), py::arg("order") = default_truncation_order);
    m.def(
        "extremal_alpha",
        [](double alpha, int k, int order) { return as_dict(extremal_alpha(alpha, k, order)); },
        py::arg("alpha"), py::arg("k"), py::arg("order") = default_truncation_order);

    // sampling
    py::class_<HerglotzSampler>(m, "HerglotzSampler")
        .def(py::init<int, std::uint64_t>(), py::arg("num_atoms"), py::arg("seed"))
        .def_static("random", &HerglotzSampler::random)
        .def("series", &HerglotzSampler::series);
    m.def("sample_m0beta", &sample_m0beta, py::arg("beta"), py::arg("sampler"),
          py::arg("order") = default_truncation_order);
    m.def("sample_malpha", &sample_malpha, py::arg("alpha"), py::arg("sampler"),
          py::arg("order") = default_truncation_order);
    m.def("sample_generator", &sample_generator, py::arg("sampler"), py::arg("order") = default_truncation_order);
    m.def("sample_members", &sample_members, py::arg("params"), py::arg("count"), py::arg("seed"),
          py::arg("order") = default_truncation_order);

    // semigroup
    m.def(
        "evolve",
        [](const NormalizedFunction &f, cplx z0, std::vector<double> times, bool check_generator, int direction) {
            EvolveOptions opts;
            opts.check_generator = check_generator;
            opts.direction = direction;
            py::gil_scoped_release release;
            const auto traj = evolve(f, z0, times, opts);
            return traj.points;
        },
        py::arg("f"), py::arg("z0"), py::arg("times"), py::arg("check_generator") = true, py::arg("direction") = 1);
    m.def("alpha_growth_bound", &alpha_growth_bound);

    // audits
    m.def(
        "fs_bound_audit",
        [](const ClassParams &p, int trials, std::uint64_t seed) {
            py::gil_scoped_release release;
            const auto rep = fs_bound_audit(sample_members(p, trials, seed), p, default_lambda_grid());
            py::gil_scoped_acquire acquire;
            return as_dict(rep);
        },
        py::arg("params"), py::arg("trials"), py::arg("seed"));
    m.def(
        "filtration_audit",
        [](const std::string &line, double from, const std::vector<double> &to, int samples, std::uint64_t seed) {
            FiltrationOptions opts;
            opts.samples = samples;
            opts.seed = seed;
            if (line == "beta") {
                return as_dict(filtration_audit_beta(from, to, opts));
            }
            if (line == "alpha") {
                return as_dict(filtration_audit_alpha(from, to, opts));
            }
            throw std::invalid_argument("line must be 'alpha' or 'beta'");
        },
        py::arg("line"), py::arg("source"), py::arg("targets"), py::arg("samples") = 200, py::arg("seed") = 1);
    m.def(
        "schwarz_lemma_audit",
        [](int trials, std::uint64_t seed, const std::vector<cplx> &s) {
            return as_dict(schwarz_lemma_audit(trials, seed, s));
        },
        py::arg("trials"), py::arg("seed"),
        py::arg("s_values") = std::vector<cplx>{0.0, 1.0, -1.0, 2.0, -2.0, cplx(0.0, 1.0)});
}
