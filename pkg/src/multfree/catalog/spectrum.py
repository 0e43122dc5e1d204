"""Which U(n)-representations occur in C[S^2(C^n)], versus which meet the image of tau.

Degree-d polynomials on S^2(C^n) carry highest weights mu = (-D_n, ..., -D_1)
for Young diagrams D of size 2d.  The spectrum is tagged by "all rows even";
integral orbits in tau(V) are tagged by "even size": -1 acts trivially on
S^2(C^n), so the effective group is U(n)/{+-1}, whose integral weights are
exactly those of even size.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..characters.decompose import decompose_polynomials
from ..errors import CrossValidationError
from ..lie.realization import MatrixRealization, build_realization
from ..moment.probes import orbit_in_image_probe

MAX_SIZE = 12


@dataclass(frozen=True, order=True)
class YoungDiagram:
    partition: tuple[int, ...]

    def __post_init__(self):
        p = tuple(int(r) for r in self.partition if r)
        if any(r < 0 for r in p) or any(a < b for a, b in zip(p, p[1:])):
            raise ValueError(f"{self.partition} is not a weakly decreasing list of positive rows")
        object.__setattr__(self, "partition", p)

    @property
    def size(self) -> int:
        return sum(self.partition)

    @property
    def rows(self) -> int:
        return len(self.partition)

    @property
    def all_rows_even(self) -> bool:
        return all(r % 2 == 0 for r in self.partition)

    @property
    def even_size(self) -> bool:
        return self.size % 2 == 0

    def label(self, n: int) -> tuple[int, ...]:
        """Highest weight (-D_n, ..., -D_1) of the matching summand of C[S^2(C^n)]."""
        padded = list(self.partition) + [0] * (n - self.rows)
        return tuple(-r for r in reversed(padded))

    @classmethod
    def from_label(cls, label) -> "YoungDiagram":
        return cls(tuple(-x for x in reversed(label)))

    def tag(self) -> str:
        if self.all_rows_even:
            return "both"
        return "in_tau_image" if self.even_size else "neither"

    def __str__(self) -> str:
        return "()" if not self.partition else "(" + ",".join(map(str, self.partition)) + ")"


def diagrams(n: int, max_size: int) -> list[YoungDiagram]:
    """All diagrams with at most n rows and at most max_size cells."""
    out = []

    def rec(prefix, remaining, cap):
        out.append(YoungDiagram(tuple(prefix)))
        if len(prefix) == n:
            return
        for r in range(min(cap, remaining), 0, -1):
            rec(prefix + [r], remaining - r, r)

    rec([], max_size, max_size)
    return sorted(out, key=lambda d: (d.size, tuple(-r for r in d.partition)))


def alpha_for(real: MatrixRealization, d: YoungDiagram) -> np.ndarray:
    """Dual element taking the value mu_j on the j-th torus generator and 0 elsewhere."""
    a = np.zeros(real.dimK)
    mu = d.label(real.group_spec.factors[0].n)
    for j, idx in enumerate(real.torus):
        a[idx] = mu[j]
    return a


@dataclass
class SpectrumReport:
    n: int
    max_size: int
    tags: dict[str, str]  # diagram -> both | in_tau_image | neither
    decomposition_degree: int
    spectrum_from_characters: list[str]
    probe_results: dict[str, dict] = field(default_factory=dict)
    unreached: list[str] = field(default_factory=list)

    def in_spectrum(self) -> list[str]:
        return [d for d, t in self.tags.items() if t == "both"]

    def image_not_spectrum(self) -> list[str]:
        return [d for d, t in self.tags.items() if t == "in_tau_image"]

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "max_size": self.max_size,
            "tags": self.tags,
            "decomposition_degree": self.decomposition_degree,
            "spectrum_from_characters": self.spectrum_from_characters,
            "probe_results": self.probe_results,
            "unreached_even_size": self.unreached,
        }


def spectrum_s2_analysis(n: int, max_size: int, probe_all: bool = False, starts: int = 8,
                         seed: int = 0) -> SpectrumReport:
    """Tag diagrams by parity and cross-check both tags against the engines.

    The spectrum tag is compared with the exact decomposition of
    C[S^2(C^n)] for every diagram (a mismatch raises).  The image tag is
    sampled through the image probe on the diagrams in the image but not in
    the spectrum (all even-size diagrams when ``probe_all``); an unreached
    target is recorded, never treated as a refutation.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if not 0 <= max_size <= MAX_SIZE:
        raise ValueError(f"max_size must lie in [0, {MAX_SIZE}]")
    real = build_realization(f"U({n})", "S2")
    ds = diagrams(n, max_size)
    degree = max_size // 2
    dec = decompose_polynomials(real, degree)
    found: dict[YoungDiagram, int] = {}
    for d, comp in enumerate(dec.by_degree):
        for label, mult in comp.items():
            y = YoungDiagram.from_label(label)
            if y.size != 2 * d:
                raise CrossValidationError(f"label {label} in degree {d} has size {y.size}")
            found[y] = found.get(y, 0) + mult
    for y, mult in found.items():
        if mult != 1:
            raise CrossValidationError(f"diagram {y} occurs {mult} times")
    for y in ds:
        if y.size > 2 * degree:
            continue
        if (y in found) != y.all_rows_even:
            raise CrossValidationError(
                f"diagram {y}: characters say {'present' if y in found else 'absent'}, "
                f"parity rule says {'present' if y.all_rows_even else 'absent'}")
    report = SpectrumReport(n, max_size, {str(y): y.tag() for y in ds}, degree,
                            [str(y) for y in sorted(found, key=lambda d: (d.size, d.partition))])
    targets = [y for y in ds if y.even_size and (probe_all or not y.all_rows_even)]
    for i, y in enumerate(targets):
        res = orbit_in_image_probe(real, alpha_for(real, y), starts, seed + i)
        report.probe_results[str(y)] = {"verdict": res.verdict, "residual": res.residual}
        if not res.reached:
            report.unreached.append(str(y))
    return report
