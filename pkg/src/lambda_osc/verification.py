"""Cross-validation checks wired to reference data.

Every check returns records {check, parameters, metric, threshold, pass}
so the command-line ``verify`` subcommand and the acceptance test suite
share one implementation.  Exact checks report a mismatch count against
a zero threshold; numeric checks report the worst deviation against the
stated tolerance.

The reference polynomial tables are built from literal coefficients (the
published constants k_i and g_i with their bracket polynomials), not
from any construction route, so they are independent oracles for all
three routes.
"""

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from . import classical, factorization, sturm_liouville
from .exact import LamPoly
from .hermite import (
    generating_coeffs,
    proportionality,
    rodrigues,
    series_solution,
)
from .params import PhysicalParams
from .polynomials import GENERIC, LadderFunction, LambdaPoly
from .spectrum import bound_count, energies, energy, ladder_energies
from .wavefunctions import (
    eigen_equation_residual,
    gram_matrix,
    wavefunction,
)


@dataclass(frozen=True)
class CheckResult:
    check: str
    parameters: dict = field(default_factory=dict)
    metric: float = 0.0
    threshold: float = 0.0
    passed: bool = True

    def to_dict(self):
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


def _record(check, parameters, metric, threshold, strict=False):
    ok = metric < threshold if strict else metric <= threshold
    return CheckResult(
        check=check,
        parameters=parameters,
        metric=float(metric),
        threshold=float(threshold),
        passed=bool(ok),
    )


# -- reference tables ---------------------------------------------------------
#
# Bracket polynomials shared by the two published normalizations, with
# multipliers k_i (derivative route) and 2^ceil(i/2) g_i (generating
# route).  Coefficients are written as polynomials in the deformation
# parameter; L(c0, c1, ...) abbreviates the exact polynomial type.


def _L(*cs):
    return LamPoly(cs)


# per index: list of (power of y, coefficient LamPoly) for the bracket
_BRACKETS = {
    0: [(0, _L(1))],
    1: [(1, _L(1))],
    2: [(0, _L(-1)), (2, _L(2, -2))],
    3: [(1, _L(-3)), (3, _L(2, -4))],
    4: [(0, _L(3)), (2, _L(-12, 24)), (4, _L(4, -20, 24))],
    5: [(1, _L(15)), (3, _L(-20, 60)), (5, _L(4, -28, 48))],
    6: [
        (0, _L(-15)),
        (2, _L(90, -270)),
        (4, _L(-60, 420, -720)),
        (6, _L(8, -96, 376, -480)),
    ],
}

# multiplicative constants of the derivative-route table
_K_CONSTANTS = {
    0: _L(1),
    1: _L(2, -1),
    2: _L(2, -3),
    3: _L(2, -3) * _L(2, -5),
    4: _L(2, -5) * _L(2, -7),
    5: _L(2, -5) * _L(2, -7) * _L(2, -9),
    6: _L(2, -7) * _L(2, -9) * _L(2, -11),
}

# generating-route prefactors: 2^ceil(n/2) * g_n
_G_CONSTANTS = {
    0: _L(1),
    1: _L(1),
    2: _L(1),
    3: _L(1, -1),
    4: _L(1, -1),
    5: _L(1, -1) * _L(1, -2),
    6: _L(1, -1) * _L(1, -2),
}
_G_POWERS = {0: 1, 1: 2, 2: 2, 3: 4, 4: 4, 5: 8, 6: 8}


def _table_poly(n: int, prefactor: LamPoly, lam) -> LambdaPoly:
    """Assemble prefactor * bracket as an exact polynomial."""
    coeffs = [LamPoly.ZERO] * (n + 1)
    for power, c in _BRACKETS[n]:
        coeffs[power] = prefactor * c
    generic = LambdaPoly(coeffs, lam=GENERIC, n=n)
    if lam is GENERIC:
        return generic
    return generic.substitute_lambda(Fraction(lam))


def reference_rodrigues_table(lam) -> list[LambdaPoly]:
    """Published derivative-route polynomials k_n * [bracket], n = 0..6."""
    return [_table_poly(n, _K_CONSTANTS[n], lam) for n in range(7)]


def reference_generating_table(lam=GENERIC) -> list[LambdaPoly]:
    """Published generating-route polynomials 2^ceil(n/2) g_n * [bracket]."""
    return [
        _table_poly(n, _G_CONSTANTS[n] * _G_POWERS[n], lam) for n in range(7)
    ]


# -- checks -------------------------------------------------------------------


def check_polynomial_tables(rodrigues_lams=(Fraction(1, 5), Fraction(-1, 5),
                                            Fraction(1, 3))) -> list[CheckResult]:
    """Exact reproduction of the published tables by both routes."""
    out = []
    gen = generating_coeffs(6)
    ref = reference_generating_table()
    mism = sum(
        1 for n in range(7) if gen[n].coeffs != ref[n].coeffs
    )
    out.append(_record("generating_table", {"mode": "generic"}, mism, 0))
    for lam in rodrigues_lams:
        ref_r = reference_rodrigues_table(lam)
        mism = sum(
            1
            for n in range(7)
            if rodrigues(n, lam).coeffs != ref_r[n].coeffs
        )
        out.append(
            _record("rodrigues_table", {"lambda": str(lam)}, mism, 0)
        )
    return out


def check_route_equivalence(n_max: int = 12,
                            lams=(Fraction(1, 10), Fraction(-1, 10),
                                  Fraction(3, 10), Fraction(-3, 10),
                                  Fraction(1, 7))) -> list[CheckResult]:
    """All three routes pairwise proportional with a nonzero scalar."""
    out = []
    for lam in lams:
        gen = generating_coeffs(n_max, lam)
        bad = 0
        for n in range(n_max + 1):
            r = rodrigues(n, lam)
            s = series_solution(n, lam)
            c1 = proportionality(r, gen[n])
            c2 = proportionality(s, gen[n])
            if c1 is None or c2 is None or c1 == 0 or c2 == 0:
                bad += 1
        out.append(
            _record(
                "route_equivalence",
                {"lambda": str(lam), "n_max": n_max},
                bad,
                0,
            )
        )
    return out


_SPECTRUM_REFERENCE = {
    0.8: [0.5, 1.1],
    0.4: [0.5, 1.3, 1.7],
    0.3: [0.5, 1.35, 1.90, 2.15],
}


def check_spectrum_values(tol: float = 1e-12) -> list[CheckResult]:
    """Closed-form energies against the published bound-level values."""
    out = []
    for lam, ref in _SPECTRUM_REFERENCE.items():
        table = energies(lam, len(ref) - 1)
        dev = max(
            abs(lv.e - r) for lv, r in zip(table.levels, ref)
        )
        unbound = [lv for lv in table.levels if not lv.bound]
        metric = dev if not unbound else math.inf
        out.append(
            _record("spectrum_values", {"lambda": lam}, metric, tol)
        )
    return out


_BOUND_COUNT_REFERENCE = [
    (1.0, 1),
    (1.5, 1),
    (0.8, 2),
    (0.5, 2),
    (0.45, 3),
    (Fraction(1, 3), 3),
    (0.3, 4),
    (0.25, 4),
    (0.15, 7),
]


def check_bound_counts() -> list[CheckResult]:
    mism = sum(1 for lam, n in _BOUND_COUNT_REFERENCE if bound_count(lam) != n)
    return [_record("bound_counts", {}, mism, 0)]


def check_sl_crossval(tol: float = 1e-6,
                      lams=(-0.3, -0.1, 0.0, 0.15, 0.3),
                      m_top: int = 6) -> list[CheckResult]:
    """Refined finite-difference eigenvalues against the closed form."""
    out = []
    for lam in lams:
        if lam > 0:
            k = bound_count(lam)
        else:
            k = m_top + 1
        vals, _levels = sturm_liouville.refine(lam, k, tol=tol)
        exact = np.array([float(energy(lam, m)) for m in range(k)])
        dev = float(np.max(np.abs(vals - exact)))
        out.append(
            _record("sl_eigenvalues", {"lambda": lam, "levels": k}, dev, tol)
        )
    order = sturm_liouville.convergence_order(0.3, 0)
    out.append(
        _record(
            "sl_convergence_order",
            {"lambda": 0.3, "m": 0, "window": [1.8, 2.2]},
            abs(order - 2.0),
            0.2,
        )
    )
    return out


def check_gram(tol: float = 1e-8,
               lams=(-0.3, -0.1, 0.1, 0.3), m_cap: int = 8) -> list[CheckResult]:
    """Normalized orthogonality of all bound pairs up to an index cap."""
    out = []
    for lam in lams:
        g = gram_matrix(lam, max_index=m_cap, rtol=min(tol * 1e-2, 1e-10))
        off = g - np.eye(g.shape[0])
        dev = float(np.max(np.abs(off)))
        out.append(
            _record("gram_offdiagonal", {"lambda": lam, "size": g.shape[0]},
                    dev, tol)
        )
    return out


def check_ladder(tol_exact: int = 0, n_max: int = 8) -> list[CheckResult]:
    """Exact rational-mode ladder checks."""
    out = []
    lam = Fraction(1, 10)
    gen = generating_coeffs(n_max, lam)
    bad = 0
    for n in range(n_max + 1):
        st = factorization.build_state(n, lam)
        c = proportionality(st.poly, gen[n])
        if c is None or c == 0:
            bad += 1
    out.append(
        _record("ladder_proportionality", {"lambda": str(lam), "n_max": n_max},
                bad, tol_exact)
    )

    g0 = factorization.ground_function(lam, 1)
    ann = factorization.apply(factorization.lowering(lam, 1), g0)
    out.append(
        _record("ground_state_annihilation", {"lambda": str(lam)},
                0 if ann.is_zero() else 1, tol_exact)
    )

    bad = 0
    for lam_r in (Fraction(3, 10), Fraction(-3, 10), Fraction(1, 10),
                  Fraction(-1, 10), Fraction(1, 20)):
        p = PhysicalParams(m=Fraction(1), alpha=Fraction(1), hbar=Fraction(1),
                           lam=lam_r)
        ladder = ladder_energies(p, 20)
        for n, e_n in enumerate(ladder):
            if e_n + Fraction(1, 2) != energy(lam_r, n):
                bad += 1
    out.append(_record("ladder_energies_exact", {"n_max": 20}, bad, tol_exact))

    battery = _operator_battery(Fraction(1, 10))
    bad = sum(
        1
        for f in battery
        if not factorization.shape_invariance_residual(f, 1).is_zero()
    )
    out.append(
        _record("shape_invariance", {"battery": len(battery)}, bad, tol_exact)
    )
    bad = sum(
        1
        for f in battery
        if not (
            factorization.hamiltonian_chain(f, 1)
            - factorization.hamiltonian_diff_form(f, 1)
        ).is_zero()
    )
    out.append(
        _record("factorization_identity", {"battery": len(battery)}, bad,
                tol_exact)
    )
    return out


def _operator_battery(lam: Fraction) -> list[LadderFunction]:
    """Ten assorted family members for operator-identity checks."""
    polys = [
        LambdaPoly.one(lam),
        LambdaPoly((0, 1), lam=lam),
        LambdaPoly((1, 0, 1), lam=lam),
        LambdaPoly((0, 0, 0, 1), lam=lam),
        LambdaPoly((2, -1, 0, 3), lam=lam),
    ]
    exponents = [Fraction(0), Fraction(1, 2), Fraction(-3, 2),
                 -1 / (2 * lam), Fraction(2)]
    out = []
    for i in range(10):
        out.append(
            LadderFunction(lam, exponents[i % len(exponents)],
                           polys[i % len(polys)])
        )
    return out


def check_commutator(tol: float = 1e-10, lams=(0.5, -0.5)) -> list[CheckResult]:
    """Closed-form commutator against operator composition at samples."""
    out = []
    for lam in lams:
        lam_r = Fraction(lam)
        p = PhysicalParams(m=1, alpha=1, hbar=1, lam=lam_r)
        xs = np.linspace(-1.2, 1.2, 20) if lam > 0 else np.linspace(-1.2, 1.2, 20)
        g = LadderFunction(lam_r, Fraction(1), LambdaPoly((1, 0, 1), lam=lam_r))
        dev = max(
            abs(
                factorization.commutator_closed_form(x, p)
                - factorization.commutator_via_operators(x, p, g)
            )
            for x in xs
        )
        out.append(_record("commutator", {"lambda": lam}, dev, tol))
    p0 = PhysicalParams(m=1, alpha=1, hbar=1, lam=0.0)
    dev = abs(factorization.commutator_closed_form(3.7, p0) - 1.0)
    out.append(_record("commutator", {"lambda": 0.0}, dev, tol))
    return out


def check_eigen_equation(tol: float = 1e-9,
                         lams=(Fraction(3, 10), Fraction(-3, 10),
                               Fraction(1, 10), Fraction(-1, 10)),
                         points: int = 50) -> list[CheckResult]:
    """Every bound eigenfunction satisfies its equation pointwise."""
    out = []
    for lam in lams:
        if lam > 0:
            top = bound_count(lam) - 1
        else:
            top = 8
        if lam < 0:
            wall = 1.0 / math.sqrt(-float(lam))
            ys = np.linspace(-0.98 * wall, 0.98 * wall, points)
        else:
            ys = np.linspace(-4.0, 4.0, points)
        dev = max(
            eigen_equation_residual(m, lam, ys) for m in range(top + 1)
        )
        out.append(
            _record("eigen_equation_residual",
                    {"lambda": str(lam), "m_top": top}, dev, tol)
        )
    return out


def check_classical(period_tol: float = 1e-4, drift_tol: float = 1e-6,
                    lams=(0.5, -0.5, 0.1, -0.1),
                    amplitudes=(0.5, 1.0),
                    n_periods: int = 100,
                    steps_per_period: int = 10_000) -> list[CheckResult]:
    """Measured period against the amplitude-frequency law, plus drift."""
    out = []
    for lam in lams:
        for amp in amplitudes:
            probe = classical.measure_period(
                1.0, lam, amp, n_periods=n_periods,
                steps_per_period=steps_per_period,
            )
            expected = classical.OrbitParams.from_amplitude(amp, 1.0, lam).period
            rel = abs(probe.period - expected) / expected
            out.append(
                _record("classical_period", {"lambda": lam, "amplitude": amp},
                        rel, period_tol)
            )
            out.append(
                _record("classical_energy_drift",
                        {"lambda": lam, "amplitude": amp},
                        probe.max_rel_energy_drift, drift_tol)
            )
    return out


def check_small_deformation_continuity(tol: float = 1e-4,
                                       m_top: int = 4) -> list[CheckResult]:
    """Values at deformation +-1e-6 stay near the classical oscillator."""
    out = []
    classical_polys = generating_coeffs(m_top, Fraction(0))
    ys = np.linspace(-3.0, 3.0, 25)
    for lam in (1e-6, -1e-6):
        dev = 0.0
        polys = generating_coeffs(m_top, Fraction(1 if lam > 0 else -1, 10**6))
        for m in range(m_top + 1):
            # coefficients
            for k in range(m + 1):
                ref = float(classical_polys[m].coefficient(k))
                got = float(polys[m].coefficient(k))
                if ref != 0:
                    dev = max(dev, abs(got - ref) / abs(ref))
            # energies
            e0 = float(energy(0, m))
            dev = max(dev, abs(float(energy(lam, m)) - e0) / e0)
            # wavefunction values
            w = wavefunction(m, lam)
            w0 = wavefunction(m, 0.0)
            v, v0 = w(ys), w0(ys)
            scale = np.max(np.abs(v0))
            dev = max(dev, float(np.max(np.abs(v - v0)) / scale))
        out.append(
            _record("small_deformation_continuity", {"lambda": lam}, dev, tol)
        )
    return out


ALL_CHECKS = {
    "poly": (check_polynomial_tables, check_route_equivalence),
    "spectrum": (check_spectrum_values, check_bound_counts),
    "sl": (check_sl_crossval,),
    "gram": (check_gram,),
    "ladder": (check_ladder,),
    "commutator": (check_commutator,),
    "eigen": (check_eigen_equation,),
    "classical": (check_classical,),
    "continuity": (check_small_deformation_continuity,),
}


def run_checks(groups=None) -> list[CheckResult]:
    """Run the named groups (all of them by default), in a fixed order."""
    results = []
    for name, fns in ALL_CHECKS.items():
        if groups and name not in groups:
            continue
        for fn in fns:
            results.extend(fn())
    return results
