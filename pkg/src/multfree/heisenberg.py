"""The Heisenberg group H_V = V x R, the semidirect product G = K x| H_V, and coadjoint orbits of G.

Products use omega(z, w) = Im <z, w> with <z, w> = sum z_i conj(w_i):

    (z, t)(z', t') = (z + z', t + t' - omega(z, z') / 2)
    (k1, h1)(k2, h2) = (k1 k2, h1 (k1 . h2)),   k . (z, t) = (k z, t)

Lie algebra elements of G are triples (A, z, t) with A given by its real
coordinates in the realization basis.  A dual point (alpha, z0, lam) pairs as
alpha(A) + omega(z0, z) + lam t.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm
from scipy.optimize import least_squares

from .lie.coadjoint import DualElement, invariant_polys
from .lie.realization import MatrixRealization, complexify, haar_sample, realify
from .moment.probes import orbit_in_image_probe
from .moment.tau import tau_coords

KPERP_TOL = 1e-8
ORBIT_RTOL = 1e-8


def omega(z, w) -> float:
    """Im <z, w>, with <z, w> linear in z."""
    return float(np.vdot(np.asarray(w, dtype=complex), np.asarray(z, dtype=complex)).imag)


# -- groups --------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class HeisenbergElement:
    z: np.ndarray
    t: float

    def __post_init__(self):
        object.__setattr__(self, "z", np.asarray(self.z, dtype=complex))
        object.__setattr__(self, "t", float(self.t))

    @classmethod
    def identity(cls, n: int) -> "HeisenbergElement":
        return cls(np.zeros(n, dtype=complex), 0.0)


def hv_multiply(a: HeisenbergElement, b: HeisenbergElement) -> HeisenbergElement:
    if a.z.shape != b.z.shape:
        raise ValueError("Heisenberg elements over different spaces")
    return HeisenbergElement(a.z + b.z, a.t + b.t - 0.5 * omega(a.z, b.z))


def hv_inverse(a: HeisenbergElement) -> HeisenbergElement:
    return HeisenbergElement(-a.z, -a.t)


def k_act(k: np.ndarray, h: HeisenbergElement) -> HeisenbergElement:
    """The automorphism k . (z, t) = (k z, t)."""
    return HeisenbergElement(k @ h.z, h.t)


@dataclass(frozen=True, eq=False)
class GElement:
    k: np.ndarray
    h: HeisenbergElement

    @classmethod
    def identity(cls, n: int) -> "GElement":
        return cls(np.eye(n, dtype=complex), HeisenbergElement.identity(n))


def g_multiply(a: GElement, b: GElement) -> GElement:
    if a.k.shape != b.k.shape:
        raise ValueError("elements of G over different realizations")
    return GElement(a.k @ b.k, hv_multiply(a.h, k_act(a.k, b.h)))


def g_inverse(a: GElement) -> GElement:
    kinv = a.k.conj().T
    return GElement(kinv, k_act(kinv, hv_inverse(a.h)))


# -- Lie algebra and its dual ---------------------------------------------------

@dataclass(frozen=True, eq=False)
class GAlgebraElement:
    a: np.ndarray  # real coordinates in the realization basis
    z: np.ndarray
    t: float

    def __post_init__(self):
        object.__setattr__(self, "a", np.asarray(self.a, dtype=float))
        object.__setattr__(self, "z", np.asarray(self.z, dtype=complex))
        object.__setattr__(self, "t", float(self.t))

    def as_vector(self) -> np.ndarray:
        return np.concatenate([self.a, realify(self.z), [self.t]])


@dataclass(frozen=True, eq=False)
class GDualPoint:
    alpha: DualElement
    z_circ: np.ndarray
    lam: float

    def __post_init__(self):
        if not isinstance(self.alpha, DualElement):
            object.__setattr__(self, "alpha", DualElement(self.alpha))
        object.__setattr__(self, "z_circ", np.asarray(self.z_circ, dtype=complex))
        object.__setattr__(self, "lam", float(self.lam))

    def pair(self, x: GAlgebraElement) -> float:
        return self.alpha(x.a) + omega(self.z_circ, x.z) + self.lam * x.t

    def as_vector(self) -> np.ndarray:
        return np.concatenate([self.alpha.coords, realify(self.z_circ), [self.lam]])


def algebra_basis(real: MatrixRealization) -> list[GAlgebraElement]:
    """Basis of g: the A_i, then e_j and i e_j of V_R, then the central direction."""
    n, d = real.dimV, real.dimK
    out = [GAlgebraElement(np.eye(d)[i], np.zeros(n), 0.0) for i in range(d)]
    for j in range(n):
        out.append(GAlgebraElement(np.zeros(d), np.eye(n)[j], 0.0))
    for j in range(n):
        out.append(GAlgebraElement(np.zeros(d), 1j * np.eye(n)[j], 0.0))
    out.append(GAlgebraElement(np.zeros(d), np.zeros(n), 1.0))
    return out


def g_adjoint(real: MatrixRealization, g: GElement, x: GAlgebraElement) -> GAlgebraElement:
    """Ad(g) X, the derivative of g exp(sX) g^-1 at s = 0.

    Write g = (1, (w, s)) (k, 0).  Then Ad(k)(A, z, t) = (k A k^-1, k z, t) and
    Ad((w, s))(A, z, t) = (A, z - A w, t - omega(w, z) + omega(w, A w) / 2).
    """
    k, w = g.k, g.h.z
    a_mat = k @ real.element(x.a) @ k.conj().T
    z1 = k @ x.z
    t = x.t - omega(w, z1) + 0.5 * omega(w, a_mat @ w)
    return GAlgebraElement(real.coords_of(a_mat), z1 - a_mat @ w, t)


def g_coadjoint(real: MatrixRealization, g: GElement, xi: GDualPoint) -> GDualPoint:
    """Ad*(g) xi through the pairing <Ad*(g) xi, X> = <xi, Ad(g^-1) X> on the basis of g."""
    ginv = g_inverse(g)
    vals = np.array([xi.pair(g_adjoint(real, ginv, x)) for x in algebra_basis(real)])
    d, n = real.dimK, real.dimV
    alpha = vals[:d]
    on_e, on_ie = vals[d:d + n], vals[d + n:d + 2 * n]
    # omega(z0, e_j) = Im z0_j and omega(z0, i e_j) = -Re z0_j
    z0 = -on_ie + 1j * on_e
    return GDualPoint(DualElement(alpha), z0, vals[-1])


def conjugation_derivative(real: MatrixRealization, g: GElement, x: GAlgebraElement, eps: float = 1e-6):
    """Central difference of s -> g exp(sX) g^-1, an independent oracle for g_adjoint."""

    def curve(s):
        return g_multiply(g_multiply(g, GElement(expm(s * real.element(x.a)),
                                                 HeisenbergElement(s * x.z, s * x.t))), g_inverse(g))

    p, m = curve(eps), curve(-eps)
    da = real.coords_of((p.k - m.k) / (2 * eps))
    return GAlgebraElement(da, (p.h.z - m.h.z) / (2 * eps), (p.h.t - m.h.t) / (2 * eps))


def random_g(real: MatrixRealization, rng: np.random.Generator, scale: float = 1.0) -> GElement:
    n = real.dimV
    w = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) * scale
    return GElement(haar_sample(real, rng), HeisenbergElement(w, rng.standard_normal()))


# -- orbit intersection ---------------------------------------------------------

def _g_from_params(real: MatrixRealization, p: np.ndarray) -> GElement:
    d = real.dimK
    k = expm(real.element(p[:d]))
    return GElement(k, HeisenbergElement(complexify(p[d:]), 0.0))


def _kperp_search(real: MatrixRealization, xi: GDualPoint, k: np.ndarray, rng):
    """Find w with the alpha-part of Ad*((k, (w, 0))) xi equal to zero."""

    def residual(x):
        g = GElement(k, HeisenbergElement(complexify(x), 0.0))
        return g_coadjoint(real, g, xi).alpha.coords

    scale = np.sqrt(np.linalg.norm(xi.alpha.coords) / max(abs(xi.lam), 1e-300) + 1e-300)
    x0 = rng.standard_normal(real.dimV_R) * scale / np.sqrt(real.dimV_R)
    sol = least_squares(residual, x0, xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=500)
    g = GElement(k, HeisenbergElement(complexify(sol.x), 0.0))
    return g, g_coadjoint(real, g, xi)


def _orbit_match(real: MatrixRealization, inv, tz: np.ndarray, target: np.ndarray) -> float:
    a, b = inv.evaluate(tz), inv.evaluate(target)
    return float(np.abs(a - b).max(initial=0.0) / (1.0 + np.abs(b).max(initial=0.0)))


def measure_constant(samples: int = 16, seed: int = 0) -> tuple[float, float]:
    """Fit c in tau(z) = c lam alpha on K = U(1), where coadjoint orbits are points.

    Returns (c, spread) over the in-k-perp samples.
    """
    from .lie.realization import build_realization

    real = build_realization("U(1)", "std")
    rng = np.random.default_rng(seed)
    cs = []
    for _ in range(samples * 4):
        alpha, lam = rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 2.0), rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 2.0)
        xi = GDualPoint(DualElement([alpha]), np.zeros(1), lam)
        _, img = _kperp_search(real, xi, haar_sample(real, rng), rng)
        if np.abs(img.alpha.coords).max() <= KPERP_TOL:
            cs.append(tau_coords(real, img.z_circ)[0] / (lam * alpha))
        if len(cs) >= samples:
            break
    if not cs:
        raise RuntimeError("no samples reached k-perp while measuring the constant")
    cs = np.array(cs)
    c = float(np.round(np.median(cs), 9))
    return c, float(np.abs(cs - c).max())


@dataclass
class IntersectionReport:
    constant: float
    direction_i_samples: int
    direction_i_in_kperp: int
    direction_i_passed: int
    direction_ii_trials: int
    direction_ii_reached: int
    measured_constants: list[float] = field(default_factory=list)
    note: str = ""

    @property
    def direction_i_pass_rate(self) -> float | None:
        return None if not self.direction_i_in_kperp else self.direction_i_passed / self.direction_i_in_kperp

    @property
    def direction_ii_pass_rate(self) -> float | None:
        return None if not self.direction_ii_trials else self.direction_ii_reached / self.direction_ii_trials

    @property
    def constant_spread(self) -> float:
        if not self.measured_constants:
            return 0.0
        return float(np.abs(np.array(self.measured_constants) - self.constant).max())

    def as_dict(self) -> dict:
        return {
            "constant": self.constant,
            "constant_spread": self.constant_spread,
            "direction_i": {"samples": self.direction_i_samples, "in_kperp": self.direction_i_in_kperp,
                            "passed": self.direction_i_passed, "pass_rate": self.direction_i_pass_rate},
            "direction_ii": {"trials": self.direction_ii_trials, "reached": self.direction_ii_reached,
                             "pass_rate": self.direction_ii_pass_rate},
            "kperp_tol": KPERP_TOL,
            "orbit_rtol": ORBIT_RTOL,
            "note": self.note,
        }


def orbit_intersection_check(real: MatrixRealization, alpha, lam: float, trials: int = 16,
                             seed: int = 0, constant: float | None = None) -> IntersectionReport:
    """Sample both inclusions of O^G_(alpha, 0, lam) cap k-perp = {(0, z, lam) : tau(z) in O^K_(c lam alpha)}."""
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    alpha = alpha if isinstance(alpha, DualElement) else DualElement(alpha)
    if constant is None:
        constant, _ = measure_constant(seed=seed)
    inv = invariant_polys(real.group_spec)
    rng = np.random.default_rng(seed)
    xi = GDualPoint(alpha, np.zeros(real.dimV), lam)
    target = constant * lam * alpha.coords
    measured = []

    # (i) points of the G-orbit that land in k-perp satisfy the orbit condition
    in_kperp = passed = 0
    for _ in range(trials):
        _, img = _kperp_search(real, xi, haar_sample(real, rng), rng)
        if np.abs(img.alpha.coords).max() > KPERP_TOL:
            continue
        in_kperp += 1
        tz = tau_coords(real, img.z_circ)
        passed += _orbit_match(real, inv, tz, target) <= ORBIT_RTOL and abs(img.lam - lam) == 0.0
        p1 = inv.evaluate(alpha.coords)[0]
        if abs(p1) > 1e-9:
            measured.append(float(inv.evaluate(tz)[0] / (lam * p1)))

    # (ii) every z with tau(z) on the target orbit is reached by an explicit group element
    reached = 0
    n_ii = trials // 2 if trials > 1 else trials
    probe = orbit_in_image_probe(real, target, starts=8, seed=seed)
    if probe.reached:
        for _ in range(n_ii):
            z = haar_sample(real, rng) @ probe.witness
            reached += _explicit_element(real, xi, z, rng)

    note = ""
    if in_kperp == 0:
        note = "no samples landed in k-perp"
    if not probe.reached:
        note = (note + "; " if note else "") + "target orbit not reached by the image probe"
    return IntersectionReport(constant, trials, in_kperp, passed, n_ii if probe.reached else 0, reached,
                              measured, note)


def _explicit_element(real: MatrixRealization, xi: GDualPoint, z: np.ndarray, rng, starts: int = 6) -> bool:
    """Local search for g with Ad*(g) xi = (0, z, lam)."""
    goal = GDualPoint(DualElement(np.zeros(real.dimK)), z, xi.lam).as_vector()

    def residual(p):
        return g_coadjoint(real, _g_from_params(real, p), xi).as_vector() - goal

    for _ in range(starts):
        p0 = np.concatenate([rng.standard_normal(real.dimK), realify(z) / xi.lam
                             + 0.1 * rng.standard_normal(real.dimV_R)])
        sol = least_squares(residual, p0, xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=2000)
        if np.abs(residual(sol.x)).max() <= KPERP_TOL * (1 + np.abs(goal).max()):
            return True
    return False


# -- property suite -------------------------------------------------------------

AXIOM_TOL = 1e-14
ACTION_TOL = 1e-10


def _rel(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.abs(a - b).max() / max(1.0, np.abs(b).max()))


def _hv_vec(h: HeisenbergElement) -> np.ndarray:
    return np.concatenate([realify(h.z), [h.t]])


def _g_vec(g: GElement) -> np.ndarray:
    return np.concatenate([realify(g.k.ravel()), _hv_vec(g.h)])


def heisenberg_suite(real: MatrixRealization, trials: int = 32, seed: int = 0) -> dict:
    """Group axioms, the coadjoint action and the measured constant, with tolerances."""
    rng = np.random.default_rng(seed)
    n = real.dimV
    worst = dict.fromkeys(["hv_associativity", "hv_inverse", "g_associativity", "g_inverse",
                           "automorphism", "adjoint_vs_conjugation", "coadjoint_homomorphism",
                           "pairing_invariance", "lambda_invariance"], 0.0)

    def rand_h():
        return HeisenbergElement(rng.standard_normal(n) + 1j * rng.standard_normal(n), rng.standard_normal())

    for _ in range(trials):
        a, b, c = rand_h(), rand_h(), rand_h()
        worst["hv_associativity"] = max(worst["hv_associativity"], _rel(
            _hv_vec(hv_multiply(hv_multiply(a, b), c)), _hv_vec(hv_multiply(a, hv_multiply(b, c)))))
        worst["hv_inverse"] = max(worst["hv_inverse"], float(np.abs(_hv_vec(hv_multiply(a, hv_inverse(a)))).max()))
        k = haar_sample(real, rng)
        worst["automorphism"] = max(worst["automorphism"], _rel(
            _hv_vec(k_act(k, hv_multiply(a, b))), _hv_vec(hv_multiply(k_act(k, a), k_act(k, b)))))
        g1, g2, g3 = random_g(real, rng), random_g(real, rng), random_g(real, rng)
        worst["g_associativity"] = max(worst["g_associativity"], _rel(
            _g_vec(g_multiply(g_multiply(g1, g2), g3)), _g_vec(g_multiply(g1, g_multiply(g2, g3)))))
        worst["g_inverse"] = max(worst["g_inverse"], _rel(
            _g_vec(g_multiply(g1, g_inverse(g1))), _g_vec(GElement.identity(n))))
        x = GAlgebraElement(rng.standard_normal(real.dimK), rng.standard_normal(n) + 1j * rng.standard_normal(n),
                            rng.standard_normal())
        worst["adjoint_vs_conjugation"] = max(worst["adjoint_vs_conjugation"], _rel(
            g_adjoint(real, g1, x).as_vector(), conjugation_derivative(real, g1, x).as_vector()))
        xi = GDualPoint(rng.standard_normal(real.dimK), rng.standard_normal(n) + 1j * rng.standard_normal(n),
                        rng.standard_normal())
        lhs = g_coadjoint(real, g_multiply(g1, g2), xi)
        rhs = g_coadjoint(real, g1, g_coadjoint(real, g2, xi))
        worst["coadjoint_homomorphism"] = max(worst["coadjoint_homomorphism"], _rel(lhs.as_vector(), rhs.as_vector()))
        moved = g_coadjoint(real, g1, xi)
        worst["pairing_invariance"] = max(worst["pairing_invariance"], abs(
            moved.pair(g_adjoint(real, g1, x)) - xi.pair(x)) / (1 + abs(xi.pair(x))))
        worst["lambda_invariance"] = max(worst["lambda_invariance"], abs(moved.lam - xi.lam))
    tols = {"hv_associativity": AXIOM_TOL, "hv_inverse": AXIOM_TOL, "g_associativity": AXIOM_TOL,
            "g_inverse": AXIOM_TOL, "automorphism": AXIOM_TOL, "adjoint_vs_conjugation": 1e-7,
            "coadjoint_homomorphism": ACTION_TOL, "pairing_invariance": ACTION_TOL, "lambda_invariance": 0.0}
    out = {k: {"value": v, "tol": tols[k], "pass": bool(v <= tols[k])} for k, v in worst.items()}
    c, spread = measure_constant(seed=seed)
    out["measured_constant"] = {"value": c, "tol": 1e-8, "pass": bool(spread <= 1e-8)}
    return out
