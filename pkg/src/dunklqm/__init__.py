"""dunklqm: exact and numerical verification toolkit for one-dimensional
supersymmetric quantum mechanics with reflection (Dunkl-type) operators.

The package constructs the little -1 Jacobi and generalized Gegenbauer
polynomial families from their defining eigenvalue equations and moment
functionals in exact rational arithmetic, realizes the extended Scarf I
supercharge and Hamiltonian in both the analytic and the gauged polynomial
pictures, cross-checks every commonly printed closed form against
independent oracles (exact algebra, quadrature, finite-difference spectra),
and emits a machine-readable errata report of the discrepancies it finds.
"""

from .exact import (
    DomainError,
    HypSeries,
    NonTerminatingError,
    Rational,
    SeriesDivisionByZero,
    beta_num,
    hyp2f1,
    hyp3f2,
    hyp_eval,
    pochhammer,
    rat,
)
from .opalg import (
    DegenerateSpectrumError,
    DegreeOverflowError,
    Diff,
    MulPoly,
    OddOverY,
    Poly,
    Reflect,
    ReflOp,
    compose,
    dunkl,
    matrix_on_basis,
)
from .jacobi import (
    FamilyReport,
    Jacobi1Params,
    MomentFunctional,
    construct_explicit,
    construct_gram,
    construct_oracle,
    eigenvalue,
    inner,
    lop,
    norm_sq_closed,
    verify_family,
)
from .gegenbauer import (
    GegMoments,
    GegParams,
    construct_geg,
    csm_two_particle_check,
    eigenvalue_geg,
    geg_potentials,
    lop_geg,
    verify_family_geg,
)
from .susyqm import (
    FockVector,
    ScarfParams,
    SusyPotential,
    gauged_supercharge,
    generic_H_parts,
    ground_state,
    intertwiner,
    osc_energy,
    osc_mixed_state,
    osc_q_apply,
    osc_wavefunction,
    scarf_energy,
    verify_operator_relations,
    wavefunction,
)
from .grid import (
    Grid,
    GridOperator,
    SpectrumReport,
    assemble,
    convergence_study,
    eigen_lowest,
    parity_blocks,
    quadrature,
)
from .errata import build_errata, errata_json

__version__ = "0.1.0"
