"""Formal enhanced Langlands parameters for split classical groups.

Parameters are formal sums of lines ``character x S_a``; the characters
are opaque catalogue atoms carrying only a name, a dimension, a
self-duality type and a symbolic unramified twist.  Everything needed
downstream -- centralizers, component groups, cuspidality, cuspidal
support with correcting cocharacters -- is computed from this formal
data with exact arithmetic.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .combicore import Partition
from .extquot import ONE, SymbolicCoordinate, q_power
from .springer import (
    ComplexGroup,
    ComponentGroup,
    CuspidalTriple,
    GroupFactor,
    SignCharacter,
    SO,
    Sp,
    GL,
    UnipotentClass,
    component_group,
    generalized_springer,
    is_cuspidal_pair,
)


class DimensionMismatch(ValueError):
    pass


class TypeMismatch(ValueError):
    pass


class InvalidEnhancement(ValueError):
    pass


class UnknownCharacter(KeyError):
    pass


# ---------------------------------------------------------------------------
# the character catalogue


@dataclass(frozen=True)
class CharacterClass:
    """A declared inertial class of irreducible Weil-group characters."""

    name: str
    ramified: bool = True
    order: int = 2
    dim: int = 1
    selfdual: str = "orthogonal"
    period: int = 1


_ALLOWED_KEYS = {"kind", "order", "dim", "selfdual", "period"}


def parse_catalogue(text: str):
    """One declaration per line:
    ``name kind=ramified|unramified order=<int> dim=<int>
    selfdual=orthogonal|symplectic|none period=<int>``."""
    out = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, *fields = line.split()
        kw = {}
        for f in fields:
            key, _, val = f.partition("=")
            if key not in _ALLOWED_KEYS or not val:
                raise ValueError(f"bad catalogue field {f!r} for {name!r}")
            kw[key] = val
        out[name] = CharacterClass(
            name=name,
            ramified=kw.get("kind", "ramified") == "ramified",
            order=int(kw.get("order", 2)),
            dim=int(kw.get("dim", 1)),
            selfdual=kw.get("selfdual", "orthogonal"),
            period=int(kw.get("period", 1)),
        )
    return out


DEFAULT_CATALOGUE = parse_catalogue(
    """
    1    kind=unramified order=1 dim=1 selfdual=orthogonal period=1
    zeta kind=ramified   order=2 dim=1 selfdual=orthogonal period=1
    eta  kind=ramified   order=2 dim=1 selfdual=orthogonal period=1
    """
)


@dataclass(frozen=True)
class WFLine:
    """A catalogue character with a symbolic unramified twist."""

    base: CharacterClass
    twist: SymbolicCoordinate = ONE

    @property
    def dim(self) -> int:
        return self.base.dim

    def twisted(self, c: SymbolicCoordinate) -> "WFLine":
        return WFLine(self.base, self.twist * c)

    def dual(self) -> "WFLine":
        if self.base.selfdual == "none":
            raise TypeMismatch(f"no declared dual for {self.base.name}")
        return WFLine(self.base, self.twist.inverse())

    @property
    def is_selfdual(self) -> bool:
        return self.base.selfdual != "none" and self.twist == self.twist.inverse()

    def __str__(self) -> str:
        t = str(self.twist)
        if t == "1":
            return self.base.name
        if self.base.order == 1 and self.base.name == "1":
            return t
        return f"{t}*{self.base.name}" if t != "-1" else f"{self.base.name}*xi"


def line(name: str, twist: SymbolicCoordinate = ONE, catalogue=None) -> WFLine:
    catalogue = catalogue or DEFAULT_CATALOGUE
    if name == "xi":
        return WFLine(catalogue["1"], SymbolicCoordinate(Fraction(1, 2)) * twist)
    if name not in catalogue:
        raise UnknownCharacter(name)
    return WFLine(catalogue[name], twist)


# ---------------------------------------------------------------------------
# groups and parameters


@dataclass(frozen=True)
class PadicGroup:
    """A split classical p-adic group, named by family and matrix size."""

    family: str
    size: int

    def __post_init__(self):
        if self.family not in ("Sp", "SO", "GL"):
            raise ValueError(f"unsupported family {self.family}")
        if self.family == "Sp" and self.size % 2:
            raise ValueError("symplectic groups have even size")

    def dual(self) -> ComplexGroup:
        if self.family == "Sp":
            return SO(self.size + 1)
        if self.family == "SO" and self.size % 2:
            return Sp(self.size - 1)
        if self.family == "SO":
            return SO(self.size)
        return GL(self.size)

    @property
    def dual_dim(self) -> int:
        return self.dual().factors[0].n

    @property
    def dual_kind(self) -> str:
        return self.dual().factors[0].kind

    def __str__(self) -> str:
        return f"{self.family}{self.size}(F)"


@dataclass(frozen=True)
class FormalParameter:
    """A formal sum of summands ``line x S_a``."""

    summands: tuple

    def __post_init__(self):
        canon = tuple(
            sorted(self.summands, key=lambda s: (str(s[0]), s[1]))
        )
        object.__setattr__(self, "summands", canon)

    @property
    def dim(self) -> int:
        return sum(l.dim * a for l, a in self.summands)

    def restriction(self) -> Counter:
        """Weil-restriction: each ``line x S_a`` contributes ``a``
        copies of the line."""
        c = Counter()
        for l, a in self.summands:
            c[l] += a
        return c

    def __str__(self) -> str:
        return " + ".join(
            str(l) if a == 1 else f"{l}*S[{a}]" for l, a in self.summands
        )


def parameter(*summands) -> FormalParameter:
    out = []
    for s in summands:
        if isinstance(s, WFLine):
            out.append((s, 1))
        else:
            out.append((s[0], int(s[1])))
    return FormalParameter(tuple(out))


@dataclass(frozen=True)
class EnhancedParameter:
    param: FormalParameter
    enhancement: SignCharacter

    def __str__(self) -> str:
        return f"({self.param}, {self.enhancement})"


# ---------------------------------------------------------------------------
# validation


def _summand_type(l: WFLine, a: int):
    """Self-duality type of ``l x S_a``: orthogonal, symplectic or None."""
    if not l.is_selfdual:
        return None
    flip = a % 2 == 0
    if l.base.selfdual == "orthogonal":
        return "symplectic" if flip else "orthogonal"
    return "orthogonal" if flip else "symplectic"


def validate(G: PadicGroup, phi: FormalParameter) -> FormalParameter:
    """Dimension, self-duality closure and type checks; returns the
    canonical form."""
    if phi.dim != G.dual_dim:
        raise DimensionMismatch(
            f"parameter of dimension {phi.dim} for {G} (need {G.dual_dim})"
        )
    if G.family == "GL":
        return phi
    want = "Sp" if G.dual_kind == "Sp" else "SO"
    target_type = "symplectic" if want == "Sp" else "orthogonal"
    counts = Counter(phi.summands)
    for (l, a), m in counts.items():
        t = _summand_type(l, a)
        if t is None:
            if counts[(l.dual(), a)] != m:
                raise TypeMismatch(
                    f"summand {l}*S[{a}] is not matched by its dual"
                )
        elif t != target_type and m % 2:
            raise TypeMismatch(
                f"{t} summand {l}*S[{a}] occurs with odd multiplicity "
                f"in a {target_type} parameter"
            )
    return phi


def is_tempered(G: PadicGroup, phi: FormalParameter) -> bool:
    return all(l.twist.qexp == 0 for l, _ in phi.summands)


def is_discrete(G: PadicGroup, phi: FormalParameter) -> bool:
    if G.family == "GL":
        return len(phi.summands) == 1
    target_type = "symplectic" if G.dual_kind == "Sp" else "orthogonal"
    counts = Counter(phi.summands)
    if any(m > 1 for m in counts.values()):
        return False
    return all(
        _summand_type(l, a) == target_type for l, a in phi.summands
    )


# ---------------------------------------------------------------------------
# centralizers


@dataclass(frozen=True)
class IsotypicFactor:
    line: WFLine
    partner: object  # the dual line for GL pairs, None otherwise
    kind: str  # "O", "Sp" or "GL"
    parts: Partition


@dataclass(frozen=True)
class CentralizerData:
    group: ComplexGroup
    factors: tuple  # IsotypicFactor per group factor, in order

    @property
    def unipotent(self) -> UnipotentClass:
        return UnipotentClass(
            tuple(f.parts for f in self.factors),
            ("",) * len(self.factors),
        )


def centralizer_restriction(G: PadicGroup, phi: FormalParameter) -> CentralizerData:
    """Centralizer of the Weil-restriction in the dual group, as a
    product of GL factors and a determinant-one product of orthogonal
    (or symplectic) factors, with the S-multiplicity partitions."""
    per_line = {}
    for l, a in phi.summands:
        per_line.setdefault(l, []).append(a)
    gl, selfdual = [], []
    used = set()
    for l in per_line:
        if l in used:
            continue
        parts = Partition(sorted(per_line[l], reverse=True))
        if l.is_selfdual and G.family != "GL":
            kind = "Sp" if G.dual_kind == "Sp" else "O"
            selfdual.append(IsotypicFactor(l, None, kind, parts))
            used.add(l)
        else:
            d = l.dual() if l.base.selfdual != "none" else None
            if G.family == "GL" or d is None or d == l:
                gl.append(IsotypicFactor(l, None, "GL", parts))
                used.add(l)
            else:
                rep, other = sorted((l, d), key=str)
                if per_line.get(d, []) and sorted(per_line[d]) != sorted(per_line[l]):
                    raise TypeMismatch(f"dual pair {l}, {d} has mismatched parts")
                gl.append(IsotypicFactor(rep, other, "GL", parts))
                used |= {l, d}
    gl.sort(key=lambda f: str(f.line))
    selfdual.sort(key=lambda f: (-sum(f.parts.parts), str(f.line)))
    factors, pieces = [], []
    for f in gl:
        factors.append(f)
        pieces.append(GroupFactor("GL", sum(f.parts.parts)))
    det1 = False
    for f in selfdual:
        m = sum(f.parts.parts) * f.line.dim
        factors.append(f)
        if f.kind == "Sp":
            pieces.append(GroupFactor("Sp", m))
        else:
            pieces.append(GroupFactor("O", m))
            det1 = True
    det1 = det1 and G.dual_kind != "Sp"
    group = ComplexGroup(tuple(pieces), det1=det1)
    return CentralizerData(group, tuple(factors))


def connected_centralizer(data: CentralizerData) -> ComplexGroup:
    pieces = tuple(
        GroupFactor("SO", f.n) if f.kind == "O" else f
        for f in data.group.factors
    )
    return ComplexGroup(pieces, det1=False)


def connected_component_group(data: CentralizerData) -> ComponentGroup:
    """Component group of the unipotent inside the connected
    centralizer: each orthogonal factor drops to its special subgroup,
    so its generators are constrained factor by factor and eliminate to
    consecutive products."""
    gens, keys = [], []
    prime_level = 0
    for fi, (piece, f) in enumerate(zip(data.group.factors, data.factors)):
        if piece.kind == "GL":
            continue
        suffix = "'" * prime_level
        prime_level += 1
        lam = f.parts
        if piece.kind == "Sp":
            for v in lam.distinct_parts():
                if v % 2 == 0:
                    gens.append(f"z{v}{suffix}")
                    keys.append((fi, v))
            continue
        odds = [v for v in lam.distinct_parts() if v % 2]
        for a, b in zip(odds, odds[1:]):
            gens.append(f"z{a}{suffix}z{b}{suffix}")
            keys.append((fi, (a, b)))
    return ComponentGroup(tuple(gens), tuple(keys), (False,) * len(gens))


@dataclass(frozen=True)
class ComponentGroups:
    a_group: object
    a_connected: object
    s_order: int


def _central_image_nontrivial(G: PadicGroup, A) -> bool:
    """Whether the dual-group center maps onto a nontrivial element of
    the component group: the all-generators product, when the
    presentation contains it."""
    if G.dual_kind == "SO" and G.dual_dim % 2:
        return False  # trivial center
    n = len(A.keys)
    if n == 0:
        return False
    if not any(A.constrained):
        return True
    # the product of all generators lies in the even-product subgroup
    # exactly when the number of constrained generators is even
    return sum(A.constrained) % 2 == 0


def component_groups(G: PadicGroup, phi: FormalParameter) -> ComponentGroups:
    data = centralizer_restriction(G, phi)
    u = data.unipotent
    A = component_group(data.group, u)
    Ao = connected_component_group(data)
    s_order = A.order // (2 if _central_image_nontrivial(G, A) else 1)
    return ComponentGroups(A, Ao, s_order)


# ---------------------------------------------------------------------------
# cuspidality


def is_cuspidal(G: PadicGroup, phi: FormalParameter):
    """Whether the parameter is cuspidal, with the list of cuspidal
    enhancements (empty when not)."""
    if G.family == "GL":
        ok = len(phi.summands) == 1 and phi.summands[0][1] == 1
        return ok, []
    if not is_discrete(G, phi):
        return False, []
    data = centralizer_restriction(G, phi)
    for f in data.factors:
        d = len(f.parts.parts)
        start = 1 if _summand_type(f.line, 1) == (
            "symplectic" if G.dual_kind == "Sp" else "orthogonal"
        ) else 2
        want = tuple(range(2 * d - 2 + start, start - 2, -2))
        if f.parts.parts != want:
            return False, []
    u = data.unipotent
    A = component_group(data.group, u)
    chars = [
        ch for ch in A.characters() if is_cuspidal_pair(data.group, u, ch)
    ]
    return bool(chars), chars


# ---------------------------------------------------------------------------
# infinitesimal characters


def infinitesimal_character(G: PadicGroup, phi: FormalParameter) -> Counter:
    """Multiset of twisted lines ``l * q^{(a+1-2j)/2}``, j = 1..a."""
    out = Counter()
    for l, a in phi.summands:
        for j in range(1, a + 1):
            out[l.twisted(q_power(a + 1 - 2 * j))] += 1
    return out


# ---------------------------------------------------------------------------
# cuspidal support


def _weight_expansion(parts):
    out = []
    for a in parts:
        out.extend(range(a - 1, -a, -2))
    return out


@dataclass(frozen=True)
class CuspidalSupportResult:
    levi_dual: ComplexGroup
    coordinates: tuple  # (WFLine, half-q exponent) per GL(1) coordinate
    core: FormalParameter
    core_triple: CuspidalTriple
    labels: tuple  # relative-Weyl character labels of the enhancement
    factors: tuple = ()  # the IsotypicFactor list the labels refer to

    @property
    def correcting(self):
        return tuple(e for _, e in self.coordinates)

    def embedded(self) -> FormalParameter:
        """The support parameter pushed back into the full dual group:
        every coordinate contributes itself and its dual line."""
        summands = list(self.core.summands)
        for l, e in self.coordinates:
            t = l.twisted(q_power(e))
            summands.append((t, 1))
            summands.append((t.dual(), 1))
        return FormalParameter(tuple(summands))

    def __str__(self) -> str:
        coords = ", ".join(f"{l}*q^{{{e}/2}}" if e else str(l)
                           for l, e in self.coordinates)
        return f"[{self.levi_dual}; ({coords}); {self.core}]"


def cuspidal_support(G: PadicGroup, phi: FormalParameter,
                     eta: SignCharacter) -> CuspidalSupportResult:
    """The cuspidal support of an enhanced parameter: the block of the
    generalized Springer correspondence determines the dual Levi, the
    cuspidal core, and the correcting exponents on the GL coordinates."""
    data = centralizer_restriction(G, phi)
    u = data.unipotent
    try:
        triple, labels = generalized_springer(data.group, u, eta)
    except ValueError as exc:
        raise InvalidEnhancement(str(exc)) from exc
    coords, core_summands = [], []
    for i, f in enumerate(data.factors):
        E = Counter(_weight_expansion(f.parts.parts))
        if f.kind == "GL":
            for e in sorted(E.elements(), reverse=True):
                coords.append((f.line, e))
            continue
        core_parts = triple.core_partition(i).parts
        for a in core_parts:
            core_summands.append((f.line, a))
        E.subtract(Counter(_weight_expansion(core_parts)))
        while any(v for v in E.values()):
            e = max(x for x, v in E.items() if v)
            E[e] -= 1
            E[-e] -= 1
            if E[e] < 0 or E[-e] < 0:
                raise InvalidEnhancement(
                    f"unpaired weight {e} in factor {f.line}"
                )
            coords.append((f.line, e))
    coords.sort(key=lambda c: (-c[1], str(c[0])))
    core_dim = sum(l.dim * a for l, a in core_summands)
    pieces = [GroupFactor("GL", 1)] * len(coords)
    if G.family != "GL":
        pieces.append(GroupFactor(G.dual_kind, max(core_dim, 1) if G.dual_kind != "Sp" else core_dim))
    levi = ComplexGroup(tuple(pieces), det1=False)
    return CuspidalSupportResult(
        levi,
        tuple(coords),
        FormalParameter(tuple(core_summands)),
        triple,
        labels,
        data.factors,
    )


def centralizer_display(data: CentralizerData) -> str:
    """Display name of the centralizer, absorbing a lone ``S(O1)``
    coupling into the other factors (the determinant of an O1 block is
    forced by the rest)."""
    s = str(data.group)
    if s.endswith("xS(O1)"):
        return s[: -len("xS(O1)")]
    return s


def enhancements(G: PadicGroup, phi: FormalParameter):
    """All sign characters of the component group of the parameter."""
    data = centralizer_restriction(G, phi)
    return data, list(component_group(data.group, data.unipotent).characters())
