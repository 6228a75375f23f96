#include <pybind11/pybind11.h>
#include <pybind11/complex.h>
#include <pybind11/stl.h>

#include "mtsfm/ambiguity.hpp"
#include "mtsfm/design.hpp"
#include "mtsfm/eoa.hpp"
#include "mtsfm/errors.hpp"
#include "mtsfm/isl_optimizer.hpp"
#include "mtsfm/version.hpp"
#include "mtsfm/waveform.hpp"

namespace py = pybind11;
using namespace mtsfm;

PYBIND11_MODULE(_mtsfm, m) {
    m.doc() = "MTSFM waveform synthesis, ambiguity analysis and sidelobe optimization";

    py::register_exception<NoMainlobeNull>(m, "NoMainlobeNull");
    py::register_exception<DegenerateEllipse>(m, "DegenerateEllipse");
    py::register_exception<InfeasibleConstraint>(m, "InfeasibleConstraint");

    py::class_<FourierCoefficients>(m, "FourierCoefficients")
        .def(py::init([](double a0, std::vector<double> a, std::vector<double> b) {
                 FourierCoefficients c{a0, std::move(a), std::move(b)};
                 c.validate();
                 return c;
             }),
             py::arg("a0") = 0.0, py::arg("a") = std::vector<double>{},
             py::arg("b") = std::vector<double>{})
        .def_readwrite("a0", &FourierCoefficients::a0)
        .def_readwrite("a", &FourierCoefficients::a)
        .def_readwrite("b", &FourierCoefficients::b)
        .def_property_readonly("harmonics", &FourierCoefficients::harmonics)
        .def_static("sine_only", &FourierCoefficients::sine_only, py::arg("b"))
        .def_static("zeros", &FourierCoefficients::zeros, py::arg("harmonics"));

    py::class_<ModulationIndices>(m, "ModulationIndices")
        .def_readonly("alpha", &ModulationIndices::alpha)
        .def_readonly("beta", &ModulationIndices::beta)
        .def_static("from_coefficients", &ModulationIndices::from, py::arg("coeffs"),
                    py::arg("duration"));

    py::class_<WaveformSpec>(m, "WaveformSpec")
        .def(py::init([](double duration, FourierCoefficients coeffs, int oversample) {
                 WaveformSpec s{duration, std::move(coeffs), oversample};
                 s.validate();
                 return s;
             }),
             py::arg("duration"), py::arg("coeffs"), py::arg("oversample") = 8)
        .def_readwrite("duration", &WaveformSpec::duration)
        .def_readwrite("coeffs", &WaveformSpec::coeffs)
        .def_readwrite("oversample", &WaveformSpec::oversample)
        .def("bandwidth_span", &WaveformSpec::bandwidth_span)
        .def("grid_size", &WaveformSpec::grid_size);

    py::class_<SampledWaveform>(m, "SampledWaveform")
        .def_readonly("dt", &SampledWaveform::dt)
        .def_readonly("samples", &SampledWaveform::samples)
        .def_readonly("energy", &SampledWaveform::energy)
        .def("__len__", &SampledWaveform::size)
        .def("time_at", &SampledWaveform::time_at, py::arg("n"));

    m.def("eval_frequency", &eval_frequency, py::arg("spec"), py::arg("t"));
    m.def("eval_phase", &eval_phase, py::arg("spec"), py::arg("t"));
    m.def("synthesize", &synthesize, py::arg("spec"));
    m.def("synthesize_with_samples", &synthesize_with_samples, py::arg("spec"),
          py::arg("n_samples"));

    py::class_<AfGrid>(m, "AfGrid")
        .def_readonly("delays", &AfGrid::delays)
        .def_readonly("dopplers", &AfGrid::dopplers)
        .def_readonly("magnitude", &AfGrid::magnitude)
        .def("at", &AfGrid::at, py::arg("doppler_idx"), py::arg("delay_idx"));

    py::class_<AcfCurve>(m, "AcfCurve")
        .def(py::init([](double dt, std::vector<double> power) {
                 return AcfCurve{dt, std::move(power)};
             }),
             py::arg("dt"), py::arg("power"))
        .def_readonly("dt", &AcfCurve::dt)
        .def_readonly("power", &AcfCurve::power)
        .def("delay_at", &AcfCurve::delay_at, py::arg("k"));

    py::class_<AcfReport>(m, "AcfReport")
        .def_readonly("curve", &AcfReport::curve)
        .def_readonly("null_delay", &AcfReport::null_delay)
        .def_readonly("pslr_db", &AcfReport::pslr_db)
        .def_readonly("isl_db", &AcfReport::isl_db);

    m.def("ambiguity", &ambiguity, py::arg("waveform"), py::arg("delays"), py::arg("dopplers"));
    m.def("acf", &acf, py::arg("waveform"));
    m.def("find_mainlobe_null", &find_mainlobe_null, py::arg("curve"));
    m.def("pslr_db", &pslr_db, py::arg("curve"), py::arg("null_delay"));
    m.def("isl_linear", &isl_linear, py::arg("curve"), py::arg("null_delay"));
    m.def("isl_db", &isl_db, py::arg("curve"), py::arg("null_delay"));
    m.def("analyze_acf", &analyze_acf, py::arg("waveform"));

    py::class_<EoaParameters>(m, "EoaParameters")
        .def(py::init([](double beta_rms_sq, double tau_rms_sq, double rho, double rho_norm) {
                 return EoaParameters{beta_rms_sq, tau_rms_sq, rho, rho_norm};
             }),
             py::arg("beta_rms_sq"), py::arg("tau_rms_sq"), py::arg("rho"),
             py::arg("rho_norm") = 0.0)
        .def_readonly("beta_rms_sq", &EoaParameters::beta_rms_sq)
        .def_readonly("tau_rms_sq", &EoaParameters::tau_rms_sq)
        .def_readonly("rho", &EoaParameters::rho)
        .def_readonly("rho_norm", &EoaParameters::rho_norm);

    m.def("eoa_closed_form", &eoa_closed_form, py::arg("coeffs"), py::arg("duration"));
    m.def("eoa_numeric", &eoa_numeric, py::arg("waveform"), py::arg("spec"));
    m.def("eoa_contour", &eoa_contour, py::arg("params"), py::arg("xi"), py::arg("n_points"));

    py::class_<DesignTarget>(m, "DesignTarget")
        .def(py::init([](double beta_rms, double duration, std::size_t harmonics) {
                 DesignTarget t{beta_rms, duration, harmonics};
                 t.validate();
                 return t;
             }),
             py::arg("beta_rms"), py::arg("duration"), py::arg("harmonics") = 2)
        .def_readwrite("beta_rms", &DesignTarget::beta_rms)
        .def_readwrite("duration", &DesignTarget::duration)
        .def_readwrite("harmonics", &DesignTarget::harmonics);

    m.def("two_coeff_family", &two_coeff_family, py::arg("target"), py::arg("b1"),
          py::arg("branch"));
    m.def("max_rho_coefficients", &max_rho_coefficients, py::arg("target"));
    m.def("max_rho_norm_bound", &max_rho_norm_bound, py::arg("harmonics"));
    m.def("lfm_equivalent_target", &lfm_equivalent_target, py::arg("time_bandwidth"),
          py::arg("duration"), py::arg("harmonics") = 2);
    m.def("lfm_limit_coefficients", &lfm_limit_coefficients, py::arg("swept_bandwidth"),
          py::arg("harmonics"));
    m.def("table1_seeds", &table1_seeds, py::arg("target"));

    py::class_<IslProblem>(m, "IslProblem")
        .def(py::init<>())
        .def_readwrite("seed", &IslProblem::seed)
        .def_readwrite("pad", &IslProblem::pad)
        .def_readwrite("delta", &IslProblem::delta)
        .def_readwrite("epsilon", &IslProblem::epsilon)
        .def_readwrite("rho_abs_tol", &IslProblem::rho_abs_tol)
        .def_readwrite("max_evals", &IslProblem::max_evals)
        .def_readwrite("rng_seed", &IslProblem::rng_seed);

    py::class_<IslContext>(m, "IslContext")
        .def(py::init<const IslProblem&>(), py::arg("problem"))
        .def("objective", &IslContext::objective, py::arg("b"))
        .def("spec_of", &IslContext::spec_of, py::arg("b"))
        .def_property_readonly("n_samples", &IslContext::n_samples)
        .def_property_readonly("rho_constraint_active", &IslContext::rho_constraint_active);

    py::class_<IslHistoryEntry>(m, "IslHistoryEntry")
        .def_readonly("objective", &IslHistoryEntry::objective)
        .def_readonly("max_violation", &IslHistoryEntry::max_violation);

    py::class_<ConstraintViolations>(m, "ConstraintViolations")
        .def_readonly("beta_rms", &ConstraintViolations::beta_rms)
        .def_readonly("rho", &ConstraintViolations::rho);

    m.def("objective",
          static_cast<double (*)(const std::vector<double>&, const IslContext&)>(&objective),
          py::arg("b"), py::arg("ctx"));
    m.def("constraints",
          static_cast<ConstraintViolations (*)(const std::vector<double>&, const IslContext&)>(
              &constraints),
          py::arg("b"), py::arg("ctx"));

    py::class_<IslResult>(m, "IslResult")
        .def_readonly("coeffs", &IslResult::coeffs)
        .def_readonly("initial_report", &IslResult::initial_report)
        .def_readonly("final_report", &IslResult::final_report)
        .def_readonly("initial_eoa", &IslResult::initial_eoa)
        .def_readonly("final_eoa", &IslResult::final_eoa)
        .def_readonly("history", &IslResult::history)
        .def_readonly("feasible", &IslResult::feasible)
        .def_readonly("improved", &IslResult::improved)
        .def_readonly("rho_constraint_active", &IslResult::rho_constraint_active)
        .def_readonly("evals_used", &IslResult::evals_used);

    m.def("minimize_isl", &minimize_isl, py::arg("problem"),
          py::call_guard<py::gil_scoped_release>());

    m.attr("NO_NULL_PENALTY") = kNoNullPenalty;
    m.attr("__version__") = kVersion;
}
