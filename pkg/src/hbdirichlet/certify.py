"""Certifiers for embeddings and equalities between H(b) and D_mu.

Two modes.  When the mate ``a`` is rational the quotient
``g = a / prod (z - zeta_j)^{m_j}`` is computed by exact synthetic
division and its zeros are located, so verdicts are decided.  Otherwise
the certifiers sample ``|a|^2 V_mu`` on a refined disk grid; a finite
grid cannot prove ``sup < inf`` or ``inf > 0``, so those verdicts are
capped at ``inconclusive`` unless ``b`` is continuous up to the circle,
in which case the boundary-ratio criterion decides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from .dirichlet import NORM_CONVENTION
from .errors import DomainError, ValidationError
from .functions import (
    AnalyticFunction,
    ExpPoly,
    Polynomial,
    Rational,
    as_rational,
    poly_divide_linear,
    polyroots,
)
from .grids import TWO_PI, DiskGrid, UnitCircleGrid
from .measures import AtomicMeasure, potential

HOLDS, FAILS, INCONCLUSIVE = "holds", "fails", "inconclusive"
PASS, FAIL, UNSURE = "pass", "fail", "inconclusive"
THEOREMS = ("A_embedding", "B_reverse", "C_equality", "D_polytype", "continuous_criterion", "corona", "clark")


@dataclass(frozen=True)
class CertifyConfig:
    spectrum_tol: float = 1e-4
    spectrum_size: int = 8192
    inf_tol: float = 1e-6
    sup_tol: float = 1e6
    stability: float = 0.10
    exact_tol: float = 1e-10
    root_margin: float = 1e-8
    clark_tol: float = 1e-6
    disk_radii: int = 64
    disk_angles: int = 512
    ratio_size: int = 8192

    def describe(self) -> dict:
        return dict(self.__dict__)

    def disk_grid(self, atoms=()) -> DiskGrid:
        return DiskGrid.default(atoms, self.disk_radii, self.disk_angles)


DEFAULT_CONFIG = CertifyConfig()


@dataclass(frozen=True)
class Condition:
    name: str
    status: str
    evidence: float
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "evidence": _num(self.evidence), "detail": self.detail}


def _num(x):
    if x is None:
        return None
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (complex, np.complexfloating)):
        return [_num(obj.real), _num(obj.imag)]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    return obj


@dataclass(frozen=True, eq=False)
class CertificationReport:
    theorem: str
    verdict: str
    mode: str
    conditions: tuple
    inf_estimate: float = float("nan")
    sup_estimate: float = float("nan")
    witness_quotient: Optional[AnalyticFunction] = None
    grid_meta: dict = field(default_factory=dict)
    extras: dict = field(default_factory=dict)
    profiles: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.theorem not in THEOREMS:
            raise ValidationError(f"unknown theorem tag {self.theorem!r}")
        statuses = [c.status for c in self.conditions]
        if self.verdict == HOLDS and any(s != PASS for s in statuses):
            raise ValidationError("verdict 'holds' requires every condition to pass")
        if self.verdict == FAILS and FAIL not in statuses:
            raise ValidationError("verdict 'fails' requires a failing condition")

    def condition(self, name: str) -> Condition:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        witness = None
        if self.witness_quotient is not None:
            try:
                witness = self.witness_quotient.to_descriptor()
            except ValidationError:
                witness = {"type": self.witness_quotient.kind}
        return {
            "theorem": self.theorem,
            "verdict": self.verdict,
            "mode": self.mode,
            "conditions": [c.to_dict() for c in self.conditions],
            "inf_estimate": _num(self.inf_estimate),
            "sup_estimate": _num(self.sup_estimate),
            "witness_quotient": _jsonable(witness),
            "grid_meta": _jsonable(self.grid_meta),
            "extras": _jsonable(self.extras),
        }


def decide(conditions, mode: str, cap: bool = False) -> str:
    statuses = [c.status for c in conditions]
    if FAIL in statuses:
        return FAILS
    if all(s == PASS for s in statuses) and statuses:
        return INCONCLUSIVE if cap else HOLDS
    return INCONCLUSIVE


# ----------------------------------------------------------------------
# boundary spectrum


@dataclass(frozen=True, eq=False)
class SpectrumEstimate:
    """Representatives of the arcs where ``|b| >= 1 - tol``, refined to the local peaks."""

    complement_points: np.ndarray
    peak_moduli: np.ndarray
    tol: float
    grid: UnitCircleGrid

    @property
    def cluster_radius(self) -> float:
        return 2.0 * self.grid.step

    def contains(self, zeta) -> bool:
        if self.complement_points.size == 0:
            return False
        return bool(np.min(np.abs(np.angle(self.complement_points / complex(zeta)))) <= self.cluster_radius)

    def describe(self) -> dict:
        return {
            "points": [[p.real, p.imag] for p in self.complement_points],
            "peak_moduli": [float(m) for m in self.peak_moduli],
            "tol": self.tol,
            "grid": self.grid.describe(),
            "cluster_radius": self.cluster_radius,
        }


def boundary_modulus(b: AnalyticFunction, theta) -> np.ndarray:
    if isinstance(b, ExpPoly):
        return np.exp(b.log_modulus_boundary(theta))
    return np.abs(b.boundary_values(theta))


def one_minus_modulus_sq(b: AnalyticFunction, theta) -> np.ndarray:
    if isinstance(b, ExpPoly):
        return -np.expm1(2.0 * b.log_modulus_boundary(theta))
    return 1.0 - np.abs(b.boundary_values(theta)) ** 2


def _slope(b: AnalyticFunction, t: float) -> float:
    lam = np.exp(1j * t)
    return float(np.real(np.conj(b.boundary_values(t)) * b.boundary_derivative(t) * 1j * lam))


def _refine_peak(b: AnalyticFunction, t: float, h: float) -> float:
    lo, hi = t - h, t + h
    try:
        if _slope(b, lo) > 0 > _slope(b, hi):
            return brentq(lambda s: _slope(b, s), lo, hi, xtol=1e-15, rtol=1e-15)
    except (ValueError, RuntimeError, ZeroDivisionError):
        pass
    return t


def spectrum_complement(b: AnalyticFunction, tol: float = 1e-4, G: int = 8192) -> SpectrumEstimate:
    """Estimate of the points of the circle where ``|b| -> 1``."""
    if not 0.0 < tol < 0.5:
        raise ValidationError("spectrum tolerance must lie in (0, 0.5)")
    grid = UnitCircleGrid(G)
    theta = grid.theta
    mod = boundary_modulus(b, theta)
    above = mod >= 1.0 - tol
    pts, peaks = [], []
    if np.any(above):
        prev, nxt = np.roll(mod, 1), np.roll(mod, -1)
        local = above & (mod >= prev) & (mod >= nxt) & ((mod > prev) | (mod > nxt))
        cand = np.flatnonzero(local)
        if cand.size == 0:
            cand = np.array([int(np.argmax(mod))])
        order = cand[np.argsort(-mod[cand])]
        for k in order:
            t0 = _refine_peak(b, theta[k], grid.step)
            m0 = float(boundary_modulus(b, np.array([t0]))[0])
            if m0 < mod[k]:
                t0, m0 = theta[k], float(mod[k])
            z0 = np.exp(1j * t0)
            if any(abs(np.angle(z0 / p)) <= 2 * grid.step for p in pts):
                continue
            pts.append(z0)
            peaks.append(m0)
    return SpectrumEstimate(np.array(pts, dtype=complex), np.array(peaks, dtype=float), tol, grid)


# ----------------------------------------------------------------------
# shared pieces


def _atoms_of(mu) -> np.ndarray:
    if isinstance(mu, AtomicMeasure):
        return np.asarray(mu.atoms)
    return np.atleast_1d(np.asarray(mu, dtype=complex))


def _atoms_in_complement(b, atoms, cfg: CertifyConfig, exact: bool) -> Condition:
    gaps = 1.0 - boundary_modulus(b, np.angle(atoms))
    worst = float(np.max(gaps))
    if worst <= cfg.spectrum_tol:
        status = PASS
    elif exact or worst > 10 * cfg.spectrum_tol:
        status = FAIL
    else:
        status = UNSURE
    return Condition("atoms_in_spectrum_complement", status, worst, "max over atoms of 1 - |b(zeta_j)|")


def _complement_in_atoms(spec: SpectrumEstimate, atoms) -> Condition:
    stray = [p for p in spec.complement_points if np.min(np.abs(np.angle(atoms / p))) > spec.cluster_radius]
    dist = 0.0
    if stray:
        dist = float(max(np.min(np.abs(np.angle(atoms / p))) for p in stray))
    status = PASS if not stray else FAIL
    return Condition("spectrum_complement_in_atoms", status, dist, f"{len(stray)} unmatched complement point(s)")


def _exact_parts(a: AnalyticFunction):
    rat = as_rational(a)
    if rat is None:
        return None
    num, den = rat
    num = np.trim_zeros(num, "b")
    den = np.trim_zeros(den, "b")
    if num.size == 0:
        return None
    return num, den


@dataclass
class _Division:
    quotient: np.ndarray
    remainder: float
    divided: list
    witness: Optional[AnalyticFunction]
    g_bounded: bool
    g_min_root: float
    g_boundary_min: float


def _divide(num, den, atoms, mults, cfg: CertifyConfig) -> _Division:
    scale = float(np.max(np.abs(num)))
    q = num
    worst = 0.0
    divided = []
    for zeta, m in zip(atoms, mults):
        count = 0
        for _ in range(int(m)):
            if q.size <= 1:
                worst = max(worst, abs(q[0]) / scale if q.size else 1.0)
                break
            qq, r = poly_divide_linear(q, zeta)
            rel = abs(r) / scale
            worst = max(worst, rel)
            if rel > cfg.exact_tol:
                break
            q = np.trim_zeros(np.array(qq.coeffs), "b")
            if q.size == 0:
                q = np.zeros(1, dtype=complex)
            count += 1
        divided.append(count)
    den_roots = polyroots(den)
    g_bounded = bool(den_roots.size == 0 or np.min(np.abs(den_roots)) > 1.0 + cfg.root_margin)
    q_roots = polyroots(q)
    min_root = float(np.min(np.abs(q_roots))) if q_roots.size else float("inf")
    theta = UnitCircleGrid(4096).theta
    lam = np.exp(1j * theta)
    with np.errstate(divide="ignore", invalid="ignore"):
        gvals = np.polynomial.polynomial.polyval(lam, q) / np.polynomial.polynomial.polyval(lam, den)
    gmin = float(np.nanmin(np.abs(gvals)))
    witness = None
    try:
        witness = Polynomial(q / den[0]) if den.size == 1 else Rational(Polynomial(q), Polynomial(den))
    except ValidationError:
        witness = None
    return _Division(q, worst, divided, witness, g_bounded, min_root, gmin)


def _reverse_quotient(num, den, atoms, cfg: CertifyConfig):
    """``g = a / prod (z - zeta_j)`` as a rational function; factors that do not divide become poles on the circle."""
    scale = float(np.max(np.abs(num)))
    q = num
    gden = np.asarray(den, dtype=complex)
    cancelled = []
    for zeta in atoms:
        if q.size > 1:
            qq, r = poly_divide_linear(q, zeta)
            if abs(r) <= cfg.exact_tol * scale:
                q = np.trim_zeros(np.array(qq.coeffs), "b")
                cancelled.append(True)
                continue
        gden = np.convolve(gden, [-zeta, 1.0])
        cancelled.append(False)
    return q, gden, cancelled


def _estimates(a, b, atoms, masses, cfg: CertifyConfig, grid: Optional[DiskGrid] = None, exponents=None):
    """inf/sup of ``|a|^2 sum_j m_j / |z - zeta_j|^{2 e_j}`` on a grid and on its refinement."""
    grid = grid or cfg.disk_grid(atoms)
    mu_exps = np.ones(len(atoms)) if exponents is None else np.asarray(exponents, dtype=float)
    out = []
    for g in (grid, grid.refined()):
        z = g.points()
        aval = np.abs(a.eval(z)) ** 2
        if exponents is None:
            weight = potential(AtomicMeasure(atoms, masses), z)
        else:
            weight = 1.0 / np.prod(np.abs(z[:, None] - atoms[None, :]) ** (2 * mu_exps[None, :]), axis=1)
        vals = aval * weight
        out.append((float(np.min(vals)), float(np.max(vals)), g, z, vals))
    return out


def _sup_condition(est, cfg: CertifyConfig) -> Condition:
    (_, s0, *_), (_, s1, *_) = est
    growth = s1 / s0 if s0 > 0 else 1.0
    stable = growth <= 1.0 + cfg.stability
    if s1 <= cfg.sup_tol and stable:
        status = PASS
    elif s1 > 10 * cfg.sup_tol or not np.isfinite(s1):
        status = FAIL
    else:
        status = UNSURE
    return Condition("sup_finite", status, s1, f"sup |a|^2 V on refined grid; growth under refinement {growth:.4f}")


def _inf_condition(est, cfg: CertifyConfig) -> Condition:
    (i0, *_), (i1, *_) = est
    shrink = i1 / i0 if i0 > 0 else 0.0
    stable = shrink >= 1.0 - cfg.stability
    if i1 >= cfg.inf_tol and stable:
        status = PASS
    elif i1 < cfg.inf_tol / 10:
        status = FAIL
    else:
        status = UNSURE
    return Condition("inf_positive", status, i1, f"inf |a|^2 V on refined grid; ratio under refinement {shrink:.4f}")


def _grid_meta(cfg: CertifyConfig, est=None, spec: Optional[SpectrumEstimate] = None, **more) -> dict:
    meta = {"config": cfg.describe(), "norm_convention": NORM_CONVENTION}
    if est is not None:
        meta["disk_grid"] = est[0][2].describe()
        meta["disk_grid_refined"] = est[1][2].describe()
    if spec is not None:
        meta["spectrum"] = spec.describe()
    meta.update(more)
    return meta


def _disk_profile(est) -> dict:
    _, _, _, z, vals = est[0]
    return {"disk": np.column_stack([z.real, z.imag, vals])}


def _measure_parts(mu):
    if isinstance(mu, AtomicMeasure):
        return np.asarray(mu.atoms), np.asarray(mu.masses)
    atoms = _atoms_of(mu)
    return atoms, np.ones(atoms.size)


# ----------------------------------------------------------------------
# embedding and equality certificates


def check_embedding_hb_to_dmu(pair, mu, cfg: CertifyConfig = DEFAULT_CONFIG) -> CertificationReport:
    """Embedding ``H(b) -> D_mu``: atoms off the spectrum, and ``a = prod (z - zeta_j) g`` with bounded ``g``."""
    atoms, masses = _measure_parts(mu)
    parts = _exact_parts(pair.a)
    exact = parts is not None
    spec = spectrum_complement(pair.b, cfg.spectrum_tol, cfg.spectrum_size)
    conds = [_atoms_in_complement(pair.b, atoms, cfg, exact)]
    est = _estimates(pair.a, pair.b, atoms, masses, cfg)
    witness = None
    if exact:
        div = _divide(*parts, atoms, np.ones(atoms.size), cfg)
        conds.append(Condition("divisible_by_atoms", PASS if div.remainder <= cfg.exact_tol else FAIL, div.remainder,
                               "max relative remainder of synthetic division"))
        conds.append(Condition("quotient_bounded", PASS if div.g_bounded else FAIL, float(div.g_bounded),
                               "denominator zero-free on the closed disk"))
        witness = div.witness if div.remainder <= cfg.exact_tol else None
    else:
        conds.append(_sup_condition(est, cfg))
    verdict = decide(conds, "exact" if exact else "numerical", cap=not exact)
    return CertificationReport(
        "A_embedding", verdict, "exact" if exact else "numerical", tuple(conds),
        est[1][0], est[1][1], witness, _grid_meta(cfg, est, spec), profiles=_disk_profile(est),
    )


def check_embedding_dmu_to_hb(pair, mu, cfg: CertifyConfig = DEFAULT_CONFIG) -> CertificationReport:
    """Embedding ``D_mu -> H(b)``: ``a = prod (z - zeta_j) g`` with ``inf |g| > 0``."""
    atoms, masses = _measure_parts(mu)
    parts = _exact_parts(pair.a)
    exact = parts is not None
    est = _estimates(pair.a, pair.b, atoms, masses, cfg)
    witness = None
    conds = []
    extras = {}
    if exact:
        q, gden, cancelled = _reverse_quotient(*parts, atoms, cfg)
        q_roots = polyroots(q)
        min_root = float(np.min(np.abs(q_roots))) if q_roots.size else float("inf")
        den_roots = polyroots(gden)
        min_pole = float(np.min(np.abs(den_roots))) if den_roots.size else float("inf")
        conds.append(Condition("quotient_holomorphic", PASS if min_pole >= 1.0 - cfg.root_margin else FAIL, min_pole,
                               "min modulus of the poles of g"))
        below = min_root > 1.0 + cfg.root_margin
        conds.append(Condition("quotient_bounded_below", PASS if below else FAIL, min_root,
                               "min modulus of the zeros of g (must lie outside the closed disk)"))
        try:
            witness = Polynomial(q / gden[0]) if gden.size == 1 else Rational(Polynomial(q), Polynomial(gden))
        except ValidationError:
            witness = None
        extras = {"cancelled_atoms": cancelled}
    else:
        conds.append(_inf_condition(est, cfg))
    verdict = decide(conds, "exact" if exact else "numerical", cap=not exact)
    return CertificationReport(
        "B_reverse", verdict, "exact" if exact else "numerical", tuple(conds),
        est[1][0], est[1][1], witness, _grid_meta(cfg, est), extras, _disk_profile(est),
    )


def check_equality(pair, mu, cfg: CertifyConfig = DEFAULT_CONFIG) -> CertificationReport:
    """Equality ``H(b) = D_mu``."""
    atoms, masses = _measure_parts(mu)
    parts = _exact_parts(pair.a)
    exact = parts is not None
    spec = spectrum_complement(pair.b, cfg.spectrum_tol, cfg.spectrum_size)
    conds = [_atoms_in_complement(pair.b, atoms, cfg, exact), _complement_in_atoms(spec, atoms)]
    est = _estimates(pair.a, pair.b, atoms, masses, cfg)
    witness = None
    extras = {}
    profiles = _disk_profile(est)
    if exact:
        mode = "exact"
        div = _divide(*parts, atoms, np.ones(atoms.size), cfg)
        ok_div = div.remainder <= cfg.exact_tol
        conds.append(Condition("divisible_by_atoms", PASS if ok_div else FAIL, div.remainder,
                               "max relative remainder of synthetic division"))
        conds.append(Condition("quotient_bounded", PASS if div.g_bounded else FAIL, float(div.g_bounded),
                               "denominator zero-free on the closed disk"))
        if ok_div:
            below = div.g_min_root > 1.0 + cfg.root_margin
            conds.append(Condition("quotient_bounded_below", PASS if below else FAIL, div.g_min_root,
                                   "min modulus of the zeros of g"))
            witness = div.witness
        cap = False
    elif pair.b.continuous_to_boundary():
        mode = "numerical"
        cont = continuous_b_criterion(pair.b, atoms, cfg.ratio_size, cfg)
        conds.extend(c for c in cont.conditions if c.name not in {x.name for x in conds})
        extras["continuous_criterion"] = {
            "inf": _num(cont.inf_estimate), "sup": _num(cont.sup_estimate), **cont.extras,
        }
        profiles.update(cont.profiles)
        cap = False
    else:
        mode = "numerical"
        conds.extend([_sup_condition(est, cfg), _inf_condition(est, cfg)])
        cap = True
    verdict = decide(conds, mode, cap=cap)
    extras["path"] = "exact" if exact else ("continuous_criterion" if not cap else "disk_estimates")
    return CertificationReport(
        "C_equality", verdict, mode, tuple(conds), est[1][0], est[1][1], witness,
        _grid_meta(cfg, est, spec), extras, profiles,
    )


# ----------------------------------------------------------------------
# polynomial type, continuous criterion, corona, Clark


def check_polynomial_type(pair, atoms, multiplicities, cfg: CertifyConfig = DEFAULT_CONFIG) -> CertificationReport:
    """``H(b) = H(p_b)``: ``sigma(b) = T minus atoms`` and ``a = p_a g`` with ``g`` bounded above and below."""
    atoms = _atoms_of(atoms)
    mults = np.atleast_1d(np.asarray(multiplicities, dtype=int))
    if mults.size != atoms.size or np.any(mults < 1):
        raise ValidationError("one multiplicity >= 1 per atom is required")
    parts = _exact_parts(pair.a)
    exact = parts is not None
    spec = spectrum_complement(pair.b, cfg.spectrum_tol, cfg.spectrum_size)
    conds = [_atoms_in_complement(pair.b, atoms, cfg, exact), _complement_in_atoms(spec, atoms)]
    est = _estimates(pair.a, pair.b, atoms, np.ones(atoms.size), cfg, exponents=mults)
    witness = None
    extras = {"multiplicities": mults.tolist()}
    if exact:
        div = _divide(*parts, atoms, mults, cfg)
        ok_div = div.remainder <= cfg.exact_tol
        extras["divisions_performed"] = div.divided
        conds.append(Condition("divisible_with_multiplicity", PASS if ok_div else FAIL, div.remainder,
                               "max relative remainder over repeated synthetic division"))
        conds.append(Condition("quotient_bounded", PASS if div.g_bounded else FAIL, float(div.g_bounded),
                               "denominator zero-free on the closed disk"))
        if ok_div:
            below = div.g_min_root > 1.0 + cfg.root_margin
            conds.append(Condition("quotient_bounded_below", PASS if below else FAIL, div.g_min_root,
                                   "min modulus of the zeros of g"))
            witness = div.witness
        cap = False
    else:
        conds.extend([_sup_condition(est, cfg), _inf_condition(est, cfg)])
        cap = True
    mode = "exact" if exact else "numerical"
    return CertificationReport(
        "D_polytype", decide(conds, mode, cap), mode, tuple(conds), est[1][0], est[1][1], witness,
        _grid_meta(cfg, est, spec), extras, _disk_profile(est),
    )


def _chord_sq(theta, atoms) -> np.ndarray:
    """``|e^{i theta} - zeta_j|^2 = 4 sin^2((theta - arg zeta_j) / 2)``, accurate next to the atom."""
    d = np.asarray(theta, dtype=float)[:, None] - np.angle(atoms)[None, :]
    return 4.0 * np.sin(0.5 * d) ** 2


def _ratio_samples(b, atoms, size: int, min_offset: float = 1e-6, per_side: int = 16):
    grid = UnitCircleGrid(size)
    theta = grid.theta
    alpha = np.angle(atoms)
    dist = np.min(np.abs(np.angle(np.exp(1j * (theta[:, None] - alpha[None, :])))), axis=1)
    theta = theta[dist >= grid.step]
    offsets = np.geomspace(min_offset, grid.step, per_side)
    extra = (alpha[:, None] + np.concatenate([offsets, -offsets])[None, :]).ravel()
    theta = np.sort(np.concatenate([theta, extra]) % TWO_PI)
    w = one_minus_modulus_sq(b, theta)
    return theta, w / np.prod(_chord_sq(theta, atoms), axis=1)


def near_atom_ratios(b, atoms, distances=(1e-2, 1e-3, 1e-4)) -> list:
    """Boundary ratios at fixed angular distances from each atom.

    ``full`` divides ``1 - |b|^2`` by the whole product ``prod |l - zeta_j|^2``;
    ``local`` by the nearest factor ``|l - zeta_k|^2`` alone.
    """
    atoms = _atoms_of(atoms)
    out = []
    for k, zeta in enumerate(atoms):
        for d in distances:
            th = np.angle(zeta) + np.array([d, -d])
            w = one_minus_modulus_sq(b, th)
            chords = _chord_sq(th, atoms)
            full = w / np.prod(chords, axis=1)
            local = w / chords[:, k]
            out.append({"atom": k, "distance": d, "full": float(np.mean(full)), "local": float(np.mean(local)),
                        "local_plus": float(local[0]), "local_minus": float(local[1])})
    return out


def continuous_b_criterion(b: AnalyticFunction, atoms, G: int = 8192, cfg: CertifyConfig = DEFAULT_CONFIG) -> CertificationReport:
    """``0 < inf R <= sup R < inf`` on the spectrum, ``R = (1 - |b|^2) / prod |l - zeta_j|^2``."""
    atoms = _atoms_of(atoms)
    conds = []
    cont = b.continuous_to_boundary()
    conds.append(Condition("b_continuous_to_boundary", PASS if cont else UNSURE, float(cont),
                           "descriptor guarantees continuity on the closed disk"))
    spec = spectrum_complement(b, cfg.spectrum_tol, cfg.spectrum_size)
    conds.append(_atoms_in_complement(b, atoms, cfg, exact=False))
    conds.append(_complement_in_atoms(spec, atoms))
    levels = []
    for size in (G, 2 * G):
        theta, r = _ratio_samples(b, atoms, size)
        levels.append((float(np.min(r)), float(np.max(r)), theta, r))
    (i0, s0, th0, r0), (i1, s1, _, _) = levels
    tol = cfg.inf_tol
    inf_stable = i0 > 0 and abs(i1 - i0) <= cfg.stability * i0
    sup_stable = s0 > 0 and abs(s1 - s0) <= cfg.stability * s0
    if i1 >= tol and inf_stable:
        st = PASS
    elif i1 < tol / 10:
        st = FAIL
    else:
        st = UNSURE
    conds.append(Condition("ratio_inf_positive", st, i1, f"stable under doubling: {inf_stable}"))
    if s1 <= 1.0 / tol and sup_stable:
        st = PASS
    elif s1 > 10.0 / tol or not np.isfinite(s1):
        st = FAIL
    else:
        st = UNSURE
    conds.append(Condition("ratio_sup_finite", st, s1, f"stable under doubling: {sup_stable}"))
    extras = {"near_atom_ratios": near_atom_ratios(b, atoms), "levels": [[G, i0, s0], [2 * G, i1, s1]]}
    meta = _grid_meta(cfg, spec=spec, ratio_grid=UnitCircleGrid(G).describe(), atom_refinement_min_offset=1e-6)
    return CertificationReport(
        "continuous_criterion", decide(conds, "numerical"), "numerical", tuple(conds), i1, s1, None,
        meta, extras, {"ratio": np.column_stack([th0, r0])},
    )


def _corona_atoms(f1, f2, size: int = 4096, count: int = 4):
    theta = UnitCircleGrid(size).theta
    s = np.abs(f1.boundary_values(theta)) + np.abs(f2.boundary_values(theta))
    prev, nxt = np.roll(s, 1), np.roll(s, -1)
    mins = np.flatnonzero((s <= prev) & (s <= nxt))
    mins = mins[np.argsort(s[mins])][:count]
    return tuple(np.exp(1j * theta[mins]))


def corona_estimates(f1: AnalyticFunction, f2: AnalyticFunction, grid: Optional[DiskGrid] = None, refinements: int = 2):
    """Grid minima of ``|f1| + |f2|`` on a disk grid and its successive refinements."""
    grid = grid or DiskGrid.default(_corona_atoms(f1, f2))
    out = []
    for _ in range(refinements + 1):
        z = grid.points()
        out.append(float(np.min(np.abs(f1.eval(z)) + np.abs(f2.eval(z)))))
        grid = grid.refined()
    return out


def corona_check(f1: AnalyticFunction, f2: AnalyticFunction, grid: Optional[DiskGrid] = None, refinements: int = 2) -> float:
    """Evidence (never proof) for ``inf_D (|f1| + |f2|) > 0``: the refined grid minimum."""
    return corona_estimates(f1, f2, grid, refinements)[-1]


def corona_report(f1, f2, grid: Optional[DiskGrid] = None, cfg: CertifyConfig = DEFAULT_CONFIG) -> CertificationReport:
    ests = corona_estimates(f1, f2, grid)
    last = ests[-1]
    st = PASS if last >= cfg.inf_tol and last >= (1 - cfg.stability) * ests[0] else (FAIL if last < cfg.inf_tol / 10 else UNSURE)
    cond = Condition("corona_inf_positive", st, last, "grid minimum of |f1| + |f2| (evidence only)")
    return CertificationReport("corona", decide([cond], "numerical", cap=True), "numerical", (cond,), last, float("nan"),
                               None, _grid_meta(cfg), {"estimates": ests})


def _multiplicities_from_a(a, atoms, cfg: CertifyConfig):
    parts = _exact_parts(a)
    if parts is not None:
        num, _ = parts
        mults = []
        for zeta in atoms:
            q, m = num, 0
            while q.size > 1:
                qq, r = poly_divide_linear(q, zeta)
                if abs(r) > cfg.exact_tol * float(np.max(np.abs(num))):
                    break
                q = np.trim_zeros(np.array(qq.coeffs), "b")
                m += 1
            mults.append(max(m, 1))
        return mults
    zeros = getattr(a, "boundary_zeros", ())
    mults = []
    for zeta in atoms:
        ms = [m for z, m in zeros if abs(z - zeta) < 1e-6]
        mults.append(ms[0] if ms else 1)
    return mults


def clark_ac_check(pair, lam, atoms=None, multiplicities=None, G: int = 4096,
                   cfg: CertifyConfig = DEFAULT_CONFIG) -> CertificationReport:
    """Absolute continuity of the Clark measure ``mu_lambda`` of a polynomial-type pair."""
    lam = complex(lam)
    if abs(abs(lam) - 1.0) > 1e-12:
        raise DomainError("Clark parameter must be unimodular")
    if atoms is None:
        atoms = spectrum_complement(pair.b, cfg.spectrum_tol, cfg.spectrum_size).complement_points
    atoms = _atoms_of(atoms)
    if multiplicities is None:
        multiplicities = _multiplicities_from_a(pair.a, atoms, cfg)
    polytype = check_polynomial_type(pair, atoms, multiplicities, cfg)
    b_at = pair.b.boundary_values(np.angle(atoms))
    dist = np.abs(lam - b_at)
    min_dist = float(np.min(dist)) if dist.size else float("inf")
    ac = min_dist > cfg.clark_tol
    theta = UnitCircleGrid(G).theta
    bv = pair.b.boundary_values(theta)
    with np.errstate(divide="ignore", invalid="ignore"):
        density = (1.0 - np.abs(bv) ** 2) / np.abs(lam - bv) ** 2
    finite = bool(np.all(np.isfinite(density)))
    conds = [
        Condition("pair_polynomial_type", PASS if polytype.verdict == HOLDS else UNSURE, float(polytype.verdict == HOLDS),
                  f"polynomial-type certificate: {polytype.verdict}"),
        Condition("lambda_not_boundary_value_at_atoms", PASS if ac else FAIL, min_dist, "min_j |lambda - b(zeta_j)|"),
    ]
    verdict = decide(conds, polytype.mode)
    extras = {
        "lambda": lam,
        "absolutely_continuous": bool(ac),
        "b_at_atoms": [complex(v) for v in b_at],
        "atoms": [complex(a) for a in atoms],
        "multiplicities": [int(m) for m in multiplicities],
        "density_finite": finite,
        "density_min": float(np.nanmin(density)),
        "density_max": float(np.nanmax(density)),
        "singular_part_probe": "carrier probed at the atoms only",
    }
    return CertificationReport(
        "clark", verdict, polytype.mode, tuple(conds), float(np.nanmin(density)), float(np.nanmax(density)), None,
        _grid_meta(cfg, density_grid=UnitCircleGrid(G).describe()), extras, {"density": np.column_stack([theta, density])},
    )
