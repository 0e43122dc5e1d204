"""Registry of actions: plain-text ``key: value`` records separated by blank lines.

Recognized keys: name, group, rep, supported, expected_mf, capelli_row, notes.
Lines starting with ``#`` are comments.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from ..errors import RegistryError
from ..lie.groups import GroupSpec
from ..lie.realization import MatrixRealization, build_realization

KEYS = ("name", "group", "rep", "supported", "expected_mf", "capelli_row", "notes")
REQUIRED = ("name", "group")

BUILTIN = """\
# Desk-scale instances of the classification of irreducible Capelli actions,
# followed by negative controls.

name: U2_on_C2
group: U(2)
rep: std
supported: true
expected_mf: true
capelli_row: U(n) on C^n
notes: defining action, n = 2

name: U2_on_S2C2
group: U(2)
rep: S2
supported: true
expected_mf: true
capelli_row: U(n) on S^2(C^n)
notes: symmetric square, n = 2

name: U3_on_L2C3
group: U(3)
rep: L2
supported: true
expected_mf: true
capelli_row: U(n) on L^2(C^n)
notes: exterior square, n = 3

name: T_SO3_on_C3
group: T x SO(3)
rep: tensor
supported: true
expected_mf: true
capelli_row: T x SO(n) on C^n
notes: circle acting by scalars times real rotations, n = 3

name: U2xU2_on_C2C2
group: U(2) x SU(2)
rep: tensor
supported: true
expected_mf: true
capelli_row: U(n) x U(m) on C^n (x) C^m
notes: U(2) x U(2) is not faithful on C^2 (x) C^2; its image equals that of U(2) x SU(2)

name: T_Sp2_on_C4
group: T x Sp(2)
rep: tensor
supported: true
expected_mf: true
capelli_row: T x Sp(n) on C^2n
notes: circle times compact symplectic group, n = 2

name: U2_Sp2_on_C2C4
group: U(2) x Sp(2)
rep: tensor
supported: true
expected_mf: true
capelli_row: U(2) x Sp(n) on C^2 (x) C^2n
notes: n = 2

name: U4_Sp4_on_C4C8
group: U(4) x Sp(4)
rep: tensor
supported: false
capelli_row: U(n) x Sp(4) on C^n (x) C^8
notes: metadata only; Sp(4) exceeds the desk-scale size range

name: Spin7_on_C8
group: T x Spin(7)
rep: spin
supported: false
capelli_row: T x Spin(7) on C^8
notes: metadata only; spin groups are not constructed

name: Spin10_on_C16
group: T x Spin(10)
rep: half-spin
supported: false
capelli_row: T x Spin(10) on C^16
notes: metadata only; spin groups are not constructed

name: G2_on_C7
group: T x G2
rep: std
supported: false
capelli_row: T x G2 on C^7
notes: metadata only; exceptional groups are not constructed

name: SO3_on_C3
group: SO(3)
rep: std
supported: true
expected_mf: false
notes: negative control; the quadratic sum z_i^2 is invariant, so the trivial label recurs in degree 2

name: SU2_on_C2plusC2
group: SU(2)
rep: sum(std,std)
supported: true
expected_mf: false
notes: negative control; two copies of the standard representation

name: T_on_C2
group: T
rep: sum(std,std)
supported: true
expected_mf: false
notes: negative control; scalar circle action on C^2
"""


@dataclass(frozen=True)
class ActionSpec:
    name: str
    group: GroupSpec
    group_text: str
    rep_tag: str
    supported: bool
    expected_mf: bool | None = None
    capelli_row: str | None = None
    notes: str = ""

    @property
    def is_capelli(self) -> bool:
        return self.capelli_row is not None

    def realization(self) -> MatrixRealization:
        self.group.check_supported()
        return build_realization(self.group, self.rep_tag)


def _bool(value: str, line: int, key: str) -> bool:
    v = value.strip().lower()
    if v in ("true", "yes", "1"):
        return True
    if v in ("false", "no", "0"):
        return False
    raise RegistryError(f"line {line}: {key} must be true or false, got {value!r}")


def _record(fields: dict[str, tuple[str, int]], start: int) -> ActionSpec:
    for key in REQUIRED:
        if key not in fields:
            raise RegistryError(f"line {start}: record is missing required key {key!r}")
    name = fields["name"][0]
    try:
        group = GroupSpec.parse(fields["group"][0])
    except ValueError as exc:
        raise RegistryError(f"entry {name!r} (line {fields['group'][1]}): {exc}") from None
    if "supported" in fields:
        supported = _bool(fields["supported"][0], fields["supported"][1], "supported")
    else:
        supported = group.supported
    if supported and not group.supported:
        raise RegistryError(f"entry {name!r}: marked supported but {group} cannot be constructed")
    expected = None
    if "expected_mf" in fields:
        if not supported:
            raise RegistryError(f"entry {name!r}: unsupported entries carry no expected results")
        expected = _bool(fields["expected_mf"][0], fields["expected_mf"][1], "expected_mf")
    return ActionSpec(
        name=name,
        group=group,
        group_text=fields["group"][0],
        rep_tag=fields.get("rep", ("std", 0))[0],
        supported=supported,
        expected_mf=expected,
        capelli_row=fields.get("capelli_row", (None, 0))[0],
        notes=fields.get("notes", ("", 0))[0],
    )


def registry_parse(text: str) -> list[ActionSpec]:
    entries: list[ActionSpec] = []
    seen: dict[str, int] = {}
    fields: dict[str, tuple[str, int]] = {}
    start = 0

    def flush():
        nonlocal fields
        if fields:
            spec = _record(fields, start)
            if spec.name in seen:
                raise RegistryError(f"line {start}: duplicate name {spec.name!r} "
                                    f"(first defined at line {seen[spec.name]})")
            seen[spec.name] = start
            entries.append(spec)
        fields = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            flush()
            continue
        if line.startswith("#"):
            continue
        if ":" not in line:
            raise RegistryError(f"line {lineno}: expected 'key: value', got {line!r}")
        key, value = (s.strip() for s in line.split(":", 1))
        if key not in KEYS:
            raise RegistryError(f"line {lineno}: unknown key {key!r}")
        if key in fields:
            raise RegistryError(f"line {lineno}: repeated key {key!r} in one record")
        if not fields:
            start = lineno
        fields[key] = (value, lineno)
    flush()
    return entries


def registry_load(path: str | Path | None = None) -> list[ActionSpec]:
    """Entries from ``path``, or the built-in registry when no path is given."""
    if path is None:
        return registry_parse(BUILTIN)
    return registry_parse(Path(path).read_text())


def find(entries: list[ActionSpec], name: str) -> ActionSpec:
    for e in entries:
        if e.name == name:
            return e
    raise RegistryError(f"no registry entry named {name!r}")
