"""Phase-space quantum mechanics pipeline (thin wrapper over the C++ core)."""

from ._psqm import (  # noqa: F401
    Axis,
    CharacteristicAmplitude,
    ConfigError,
    ConvergenceError,
    Convention,
    DensityKernel,
    DerivationReport,
    EigenSolution,
    GaussianSpec,
    Grid1D,
    HamiltonianSpec,
    HarmonicPotential,
    HoEigenstateSpec,
    InvariantRecord,
    IoError,
    Marginals,
    MomentPath,
    MomentResult,
    MomentumGrid,
    OperatorOrder,
    OutputFileRecord,
    Patch2D,
    PhaseSpaceDensity,
    PhysicalConstants,
    PlaneWaveK,
    PlaneWaveSpec,
    ProbabilityAmplitude,
    QuarticPotential,
    ResultManifest,
    RunOutcome,
    SquareWellPotential,
    StringParams,
    TridiagonalOperator,
    WaveFunction,
    ZeroPotential,
    amplitude_from_spacing,
    analyticity_residual,
    build_characteristic,
    build_hamiltonian,
    build_state,
    density,
    derivation_consistency,
    energy_expectation,
    ensemble_average,
    make_grid,
    marginals,
    moment_p,
    moment_x,
    moment_xp,
    momentum_grid,
    phase_space_moment,
    planck_limit_scan,
    probability_amplitude,
    ratio_residual,
    reconstruct_characteristic,
    run,
    sample_potential,
    separable_moment,
    solve_eigen,
    spectral_derivative,
    symmetry_residual,
    to_momentum,
    translation_kernel,
    wigner_moyal,
)

__version__ = "0.1.0"
