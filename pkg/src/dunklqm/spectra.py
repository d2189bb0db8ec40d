"""Spectrum problems for the grid oracle: the extended Scarf I system, the
supersymmetric oscillator, and the generalized Gegenbauer Hamiltonian.

Scarf spectra at alpha > 0 and the Gegenbauer composite are computed through
the squared discrete supercharge (see grid module notes on the fall-to-center
artifact of the directly sampled potential); the oscillator and alpha = 0
Scarf go through the direct assembly.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from . import grid as gridmod
from .gegenbauer import GegParams, eigenvalue_geg
from .susyqm import ScarfParams, scarf_energy, scarf_potential, osc_energy

__all__ = [
    "scarf_problem",
    "oscillator_problem",
    "gegenbauer_problem",
    "DEFAULT_GRIDS",
    "SYSTEM_TOLERANCES",
]

DEFAULT_GRIDS = (1024, 2048, 4096)
SYSTEM_TOLERANCES = {"scarf": 1e-6, "oscillator": 1e-6, "gegenbauer": 1e-5}


def scarf_problem(params: ScarfParams, k: int = 3) -> gridmod.Problem:
    """Lowest-k Scarf levels against (2n+a+b+1)^2/8."""
    if params.alpha < 0:
        raise ValueError("grid spectra are restricted to alpha >= 0")
    pot = scarf_potential(params)
    targets = tuple(float(scarf_energy(n, params)) for n in range(k))

    if params.alpha == 0:
        def compute(n, kk):
            g = gridmod.Grid(n, math.pi / 2)
            op = gridmod.assemble(lambda x: 0.5 * (pot.u(x) ** 2) + 0.5 * pot.du(x),
                                  lambda x: np.zeros_like(x), g)
            return gridmod.eigen_lowest(op, kk)
    else:
        def compute(n, kk):
            g = gridmod.Grid(n, math.pi / 2)
            return gridmod.susy_squared_spectrum(pot.u, pot.v, g, kk)

    # leading eigenvalue-error power: the even-reflection sector behaves as
    # |x|^(alpha/2) at the origin, giving h^(2 alpha) up to the smooth h^2 term
    lead = min(2.0, max(1.0, 2.0 * float(params.alpha)))
    return gridmod.Problem(
        name="scarf",
        params={"alpha": str(params.alpha), "beta": str(params.beta)},
        halfwidth=math.pi / 2,
        targets=targets,
        compute=compute,
        tolerance=SYSTEM_TOLERANCES["scarf"],
        exponents=(lead, 2.0),
    )


def oscillator_problem(k: int = 5, halfwidth: float = 10.0) -> gridmod.Problem:
    """Lowest-k oscillator-with-reflection levels: 0, 2, 2, 4, 4, ..."""
    targets = tuple(sorted(float(osc_energy(n)) for n in range(k + 2))[:k])

    def compute(n, kk):
        g = gridmod.Grid(n, halfwidth)
        op = gridmod.assemble(lambda x: 0.5 * x**2,
                              lambda x: -0.5 * np.ones_like(x), g)
        return gridmod.eigen_lowest(op, kk)

    return gridmod.Problem(
        name="oscillator",
        params={},
        halfwidth=halfwidth,
        targets=targets,
        compute=compute,
        tolerance=SYSTEM_TOLERANCES["oscillator"],
        exponents=(2.0, 2.0),
    )


def gegenbauer_problem(params: GegParams, k: int = 3) -> gridmod.Problem:
    """Lowest-k generalized Gegenbauer energies, -lambda_n in increasing order.

    Assembled as 2 Q^2 at Scarf parameters (2 mu, 0) plus the bounded exact
    corrections, with checkerboard filtering; this realizes the derived
    potentials U0, U1 (H F0 = 0) without sampling the singular core.
    """
    if params.mu < 0:
        raise ValueError("grid spectra are restricted to mu >= 0")
    mu, al = float(params.mu), float(params.alpha)
    targets = tuple(sorted(-float(eigenvalue_geg(n, params)) + 0.0
                           for n in range(k + 3))[:k])
    scarf = ScarfParams(2 * params.mu, Fraction(0))
    pot = scarf_potential(scarf)

    def compute(n, kk):
        g = gridmod.Grid(n, math.pi / 2)
        q = gridmod.supercharge_matrix(pot.u, pot.v, g)
        h = 2.0 * (q.matrix @ q.matrix)
        x = g.nodes
        h += np.diag((al**2 - 0.25) / np.cos(x) ** 2
                     - (mu + al + 0.5) ** 2 + (2 * al + 1) * mu)
        coeff = -mu * (1.0 / (1.0 + np.cos(x)) + (2 * al + 1))
        h += coeff[:, None] * gridmod.reflection_matrix(g.n)
        h = 0.5 * (h + h.T)
        return gridmod.composite_spectrum(h, kk)

    return gridmod.Problem(
        name="gegenbauer",
        params={"mu": str(params.mu), "alpha": str(params.alpha)},
        halfwidth=math.pi / 2,
        targets=targets,
        compute=compute,
        tolerance=SYSTEM_TOLERANCES["gegenbauer"],
        exponents=(2.0, 2.0),
    )
