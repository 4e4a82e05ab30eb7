#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "psqm/constants.hpp"
#include "psqm/errors.hpp"
#include "psqm/moments.hpp"
#include "psqm/phase_space.hpp"
#include "psqm/runner.hpp"
#include "psqm/schrodinger.hpp"
#include "psqm/transform.hpp"
#include "psqm/verify.hpp"

namespace py = pybind11;
using namespace psqm;

namespace {

CommandKind parse_command(const std::string& name) {
  if (name == "state") return CommandKind::state;
  if (name == "phase-space") return CommandKind::phase_space;
  if (name == "moments") return CommandKind::moments;
  if (name == "eigensolve") return CommandKind::eigensolve;
  if (name == "kernel") return CommandKind::kernel;
  if (name == "constants") return CommandKind::constants;
  if (name == "verify") return CommandKind::verify;
  throw config_error("unknown command \"" + name + "\"");
}

}  // namespace

PYBIND11_MODULE(_psqm, m) {
  m.doc() = "Phase-space quantum mechanics core (C++)";

  py::register_exception<config_error>(m, "ConfigError");
  py::register_exception<io_error>(m, "IoError");
  py::register_exception<convergence_error>(m, "ConvergenceError");

  py::class_<Grid1D>(m, "Grid1D")
      .def_readonly("x0", &Grid1D::x0)
      .def_readonly("dx", &Grid1D::dx)
      .def_readonly("n", &Grid1D::n)
      .def("x", &Grid1D::x)
      .def("span", &Grid1D::span)
      .def("__repr__", [](const Grid1D& g) {
        return "Grid1D(x0=" + format_double(g.x0) +
               ", dx=" + format_double(g.dx) + ", n=" + std::to_string(g.n) +
               ")";
      });
  m.def("make_grid", &make_grid, py::arg("x0"), py::arg("dx"), py::arg("n"),
        "Uniform lattice x_i = x0 + i*dx; n must be a power of two >= 16.");

  py::class_<MomentumGrid>(m, "MomentumGrid")
      .def_readonly("dp", &MomentumGrid::dp)
      .def_readonly("n", &MomentumGrid::n)
      .def_readonly("hbar", &MomentumGrid::hbar)
      .def("p", &MomentumGrid::p);
  m.def("momentum_grid", &momentum_grid, py::arg("grid"),
        py::arg("hbar") = 1.0);

  py::class_<PlaneWaveSpec>(m, "PlaneWaveSpec")
      .def(py::init<long>(), py::arg("k_index") = 0)
      .def_readwrite("k_index", &PlaneWaveSpec::k_index);
  py::class_<GaussianSpec>(m, "GaussianSpec")
      .def(py::init<double, double, double>(), py::arg("center") = 0.0,
           py::arg("momentum") = 0.0, py::arg("sigma") = 1.0)
      .def_readwrite("center", &GaussianSpec::center)
      .def_readwrite("momentum", &GaussianSpec::momentum)
      .def_readwrite("sigma", &GaussianSpec::sigma);
  py::class_<HoEigenstateSpec>(m, "HoEigenstateSpec")
      .def(py::init<int, double, double>(), py::arg("level") = 0,
           py::arg("mass") = 1.0, py::arg("omega") = 1.0)
      .def_readwrite("level", &HoEigenstateSpec::level)
      .def_readwrite("mass", &HoEigenstateSpec::mass)
      .def_readwrite("omega", &HoEigenstateSpec::omega);

  py::class_<WaveFunction>(m, "WaveFunction")
      .def_property_readonly(
          "values", [](const WaveFunction& w) { return w.field.values; })
      .def_property_readonly("grid",
                             [](const WaveFunction& w) { return w.grid(); })
      .def_readonly("hbar", &WaveFunction::hbar)
      .def("norm",
           [](const WaveFunction& w) { return field_norm(w.field); });
  m.def("build_state", &build_state, py::arg("spec"), py::arg("grid"),
        py::arg("hbar") = 1.0,
        "Samples and normalizes a reference state on the grid.");

  m.def(
      "to_momentum",
      [](const WaveFunction& psi) {
        const MomentumField g = to_momentum(psi.field, psi.hbar);
        return std::make_pair(g.pgrid, g.values);
      },
      py::arg("psi"),
      "Unitary momentum transform; returns (momentum_grid, values).");
  m.def(
      "spectral_derivative",
      [](const WaveFunction& psi, int order) {
        return spectral_derivative(psi.field, order, psi.hbar).values;
      },
      py::arg("psi"), py::arg("order"));

  py::enum_<Convention>(m, "Convention")
      .value("plain", Convention::plain)
      .value("conjugate", Convention::conjugate);

  py::class_<CharacteristicAmplitude>(m, "CharacteristicAmplitude")
      .def_readonly("grid", &CharacteristicAmplitude::grid)
      .def_readonly("hbar", &CharacteristicAmplitude::hbar)
      .def_readonly("convention", &CharacteristicAmplitude::convention)
      .def_readonly("values", &CharacteristicAmplitude::values)
      .def("at", &CharacteristicAmplitude::at)
      .def_property_readonly("n", &CharacteristicAmplitude::n);
  m.def("build_characteristic", &build_characteristic, py::arg("psi"),
        py::arg("convention") = Convention::plain,
        "xi(x, x') on the internal space (row-major over the shared grid).");
  m.def("symmetry_residual", &symmetry_residual);

  py::class_<DensityKernel>(m, "DensityKernel")
      .def_readonly("grid", &DensityKernel::grid)
      .def_readonly("delta", &DensityKernel::delta)
      .def_readonly("values", &DensityKernel::values);
  m.def("translation_kernel", &translation_kernel, py::arg("xi"),
        py::arg("delta"),
        "Internal-translation kernel; delta must be a multiple of dx.");

  py::class_<ProbabilityAmplitudePS>(m, "ProbabilityAmplitude")
      .def_readonly("grid", &ProbabilityAmplitudePS::grid)
      .def_readonly("pgrid", &ProbabilityAmplitudePS::pgrid)
      .def_readonly("values", &ProbabilityAmplitudePS::values)
      .def_property_readonly("n", &ProbabilityAmplitudePS::n);
  py::class_<PhaseSpaceDensity>(m, "PhaseSpaceDensity")
      .def_readonly("grid", &PhaseSpaceDensity::grid)
      .def_readonly("pgrid", &PhaseSpaceDensity::pgrid)
      .def_readonly("values", &PhaseSpaceDensity::values)
      .def("at", &PhaseSpaceDensity::at)
      .def_property_readonly("n", &PhaseSpaceDensity::n);
  m.def("probability_amplitude", &probability_amplitude, py::arg("xi"),
        "Row-wise momentum transform of xi over the internal coordinate.");
  m.def("reconstruct_characteristic", &reconstruct_characteristic,
        py::arg("phi"));
  m.def("density", &density, py::arg("phi"), "F = |phi|^2.");

  py::class_<Marginals>(m, "Marginals")
      .def_readonly("position", &Marginals::position)
      .def_readonly("momentum", &Marginals::momentum);
  m.def("marginals", &marginals, py::arg("F"));

  py::enum_<Axis>(m, "Axis").value("x", Axis::x).value("p", Axis::p);
  m.def("ensemble_average", &ensemble_average, py::arg("F"), py::arg("axis"));
  m.def("phase_space_moment", &phase_space_moment, py::arg("F"), py::arg("n"),
        py::arg("m"), "sum x^n p^m F dx dp.");
  m.def("wigner_moyal", &wigner_moyal, py::arg("F"), py::arg("delta"),
        "Momentum-integral kernel; accepts any real delta.");

  py::enum_<MomentPath>(m, "MomentPath")
      .value("internal", MomentPath::internal)
      .value("separable", MomentPath::separable)
      .value("phase_space", MomentPath::phase_space);
  py::enum_<OperatorOrder>(m, "OperatorOrder")
      .value("xp", OperatorOrder::xp)
      .value("px", OperatorOrder::px);
  py::class_<MomentResult>(m, "MomentResult")
      .def_readonly("value", &MomentResult::value)
      .def_readonly("path", &MomentResult::path)
      .def_readonly("imaginary_residual", &MomentResult::imaginary_residual)
      .def_readonly("ordering_difference", &MomentResult::ordering_difference);
  m.def("moment_x", &moment_x, py::arg("xi"), py::arg("n"));
  m.def("moment_p", &moment_p, py::arg("xi"), py::arg("m"));
  m.def("moment_xp", &moment_xp, py::arg("xi"), py::arg("n"), py::arg("m"),
        py::arg("order") = OperatorOrder::xp);
  m.def("separable_moment", &separable_moment, py::arg("psi"), py::arg("n"),
        py::arg("m"));

  py::class_<ZeroPotential>(m, "ZeroPotential").def(py::init<>());
  py::class_<HarmonicPotential>(m, "HarmonicPotential")
      .def(py::init<double>(), py::arg("omega") = 1.0)
      .def_readwrite("omega", &HarmonicPotential::omega);
  py::class_<QuarticPotential>(m, "QuarticPotential")
      .def(py::init<double>(), py::arg("lambda_") = 1.0)
      .def_readwrite("lambda_", &QuarticPotential::lambda);
  py::class_<SquareWellPotential>(m, "SquareWellPotential")
      .def(py::init<double, double, double>(), py::arg("depth") = 1.0,
           py::arg("width") = 1.0, py::arg("center") = 0.0)
      .def_readwrite("depth", &SquareWellPotential::depth)
      .def_readwrite("width", &SquareWellPotential::width)
      .def_readwrite("center", &SquareWellPotential::center);
  m.def("sample_potential", &sample_potential, py::arg("spec"),
        py::arg("grid"), py::arg("mass"));

  py::class_<HamiltonianSpec>(m, "HamiltonianSpec")
      .def(py::init<double, double, std::vector<double>>(),
           py::arg("mass") = 1.0, py::arg("hbar") = 1.0,
           py::arg("potential") = std::vector<double>{})
      .def_readwrite("mass", &HamiltonianSpec::mass)
      .def_readwrite("hbar", &HamiltonianSpec::hbar)
      .def_readwrite("potential", &HamiltonianSpec::potential);
  py::class_<TridiagonalOperator>(m, "TridiagonalOperator")
      .def_readonly("grid", &TridiagonalOperator::grid)
      .def_readonly("diag", &TridiagonalOperator::diag)
      .def_readonly("off", &TridiagonalOperator::off);
  m.def("build_hamiltonian", &build_hamiltonian, py::arg("spec"),
        py::arg("grid"),
        "Dirichlet finite-difference Hamiltonian on the grid.");

  py::class_<EigenSolution>(m, "EigenSolution")
      .def_readonly("energies", &EigenSolution::energies)
      .def_readonly("states", &EigenSolution::states);
  m.def("solve_eigen", &solve_eigen, py::arg("H"), py::arg("k"),
        "k lowest eigenpairs; deterministic, throws on non-convergence.");
  m.def("energy_expectation", &energy_expectation, py::arg("psi"),
        py::arg("spec"));

  py::class_<DerivationReport>(m, "DerivationReport")
      .def_readonly("kinetic_internal", &DerivationReport::kinetic_internal)
      .def_readonly("potential", &DerivationReport::potential)
      .def_readonly("total_split", &DerivationReport::total_split)
      .def_readonly("total_direct", &DerivationReport::total_direct)
      .def_readonly("relative_gap", &DerivationReport::relative_gap);
  m.def("derivation_consistency", &derivation_consistency, py::arg("psi"),
        py::arg("spec"));

  py::class_<PlaneWaveK>(m, "PlaneWaveK")
      .def(py::init<double>(), py::arg("k") = 0.0)
      .def_readwrite("k", &PlaneWaveK::k);
  py::class_<Patch2D>(m, "Patch2D")
      .def(py::init<double, double, std::size_t>(), py::arg("lo") = -1.0,
           py::arg("hi") = 1.0, py::arg("samples") = 128)
      .def_readwrite("lo", &Patch2D::lo)
      .def_readwrite("hi", &Patch2D::hi)
      .def_readwrite("samples", &Patch2D::samples);
  m.def("analyticity_residual", &analyticity_residual, py::arg("state"),
        py::arg("patch") = Patch2D{}, py::arg("hbar") = 1.0,
        "Max-abs Cauchy-Riemann residual of zeta(x, x') = psi(x) psi(i x').");

  py::class_<PhysicalConstants>(m, "PhysicalConstants")
      .def(py::init<>())
      .def_readwrite("h", &PhysicalConstants::h)
      .def_readwrite("c", &PhysicalConstants::c)
      .def_readwrite("m_e", &PhysicalConstants::m_e);
  py::class_<StringParams>(m, "StringParams")
      .def(py::init<double, double>(), py::arg("amplitude") = 0.0,
           py::arg("spacing") = 1.0)
      .def_readwrite("amplitude", &StringParams::amplitude)
      .def_readwrite("spacing", &StringParams::spacing);
  m.def("amplitude_from_spacing", &amplitude_from_spacing, py::arg("d"),
        py::arg("consts") = PhysicalConstants{},
        "A = sqrt(h d / (2 pi^2 m_e c)).");
  m.def("ratio_residual", &ratio_residual, py::arg("params"),
        py::arg("consts") = PhysicalConstants{});
  m.def("planck_limit_scan", &planck_limit_scan, py::arg("h_values"),
        py::arg("d"), py::arg("consts") = PhysicalConstants{});

  py::class_<OutputFileRecord>(m, "OutputFileRecord")
      .def_readonly("kind", &OutputFileRecord::kind)
      .def_readonly("path", &OutputFileRecord::path)
      .def_readonly("checksum", &OutputFileRecord::checksum);
  py::class_<InvariantRecord>(m, "InvariantRecord")
      .def_readonly("name", &InvariantRecord::name)
      .def_readonly("value", &InvariantRecord::value)
      .def_readonly("tolerance", &InvariantRecord::tolerance)
      .def_readonly("passed", &InvariantRecord::pass)
      .def_readonly("diagnostic", &InvariantRecord::diagnostic);
  py::class_<ResultManifest>(m, "ResultManifest")
      .def_readonly("command", &ResultManifest::command)
      .def_readonly("config_path", &ResultManifest::config_path)
      .def_readonly("outputs", &ResultManifest::outputs)
      .def_readonly("invariants", &ResultManifest::invariants)
      .def_readonly("passed", &ResultManifest::pass);
  py::class_<RunOutcome>(m, "RunOutcome")
      .def_readonly("exit_code", &RunOutcome::exit_code)
      .def_readonly("manifest", &RunOutcome::manifest)
      .def_readonly("error", &RunOutcome::error);

  m.def(
      "run",
      [](const std::string& command, const std::filesystem::path& config,
         const std::vector<std::string>& set,
         std::optional<std::filesystem::path> output_dir) {
        CommandOptions opt;
        opt.kind = parse_command(command);
        opt.config_path = config;
        opt.set_overrides = set;
        opt.output_dir = std::move(output_dir);
        return run_command(opt);
      },
      py::arg("command"), py::arg("config"),
      py::arg("set") = std::vector<std::string>{},
      py::arg("output_dir") = py::none(),
      "Runs one CLI command against a JSON config; returns the outcome "
      "with its manifest (files written, invariants checked, exit code).");
}
