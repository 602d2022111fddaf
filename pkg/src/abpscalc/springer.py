"""The generalized Springer correspondence for complex classical groups.

Groups are products of classical factors ``GL``, ``SL``, ``Sp``, ``SO``
and ``O``, optionally coupled by a determinant-one condition across the
orthogonal factors.  For each such group the module enumerates unipotent
classes, component groups of centralizers together with their sign
characters, cuspidal (quasi-)support triples, and computes the
correspondence

    (unipotent class, character)  <-->  (cuspidal triple, Weyl character)

blockwise: every pair lands in the block of a unique cuspidal triple,
and within a block the pairs biject with the irreducible characters of
the relative Weyl group of the triple.

The combinatorial engine pads a partition to a canonical length, forms
the strictly increasing shifted sequence ``xi_i = lam_i + i - 1``, and
encodes the character as markings on the parts of one parity.  Each
marked group of equal parts displaces an endpoint of its run of
consecutive ``xi`` values; the surplus of even over odd entries of the
displaced sequence determines the block, and subtracting the block's
anchor staircases yields the character label.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct

from .combicore import (
    Bipartition,
    DLabel,
    Partition,
    partitions,
    bipartitions,
    dlabels,
    sign_twist,
)


class SpringerError(ValueError):
    pass


class UnrecognizedStructure(SpringerError):
    pass


# ---------------------------------------------------------------------------
# groups


_KINDS = ("GL", "SL", "Sp", "SO", "O")


@dataclass(frozen=True, order=True)
class GroupFactor:
    kind: str
    n: int  # GL(n)/SL(n)/SO(n)/O(n); for Sp, n is the (even) matrix size

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise SpringerError(f"unknown factor kind {self.kind!r}")
        if self.n < 0 or (self.kind == "Sp" and self.n % 2):
            raise SpringerError(f"bad size for {self.kind}: {self.n}")

    def __str__(self) -> str:
        return f"{self.kind}{self.n}"


@dataclass(frozen=True, order=True)
class ComplexGroup:
    """A product of classical factors, optionally with a joint
    determinant-one condition on the orthogonal (``O``) factors."""

    factors: tuple[GroupFactor, ...]
    det1: bool = False

    def __post_init__(self):
        if self.det1 and not any(f.kind == "O" for f in self.factors):
            raise SpringerError("det1 coupling requires O factors")

    def __str__(self) -> str:
        plain = [str(f) for f in self.factors if f.kind != "O"]
        ofacs = [str(f) for f in self.factors if f.kind == "O"]
        if self.det1:
            inner = "S(" + "x".join(ofacs) + ")"
            return "x".join(plain + [inner]) if plain else inner
        return "x".join(str(f) for f in self.factors) or "1"

    @property
    def disconnected_swap(self) -> bool:
        """Whether a determinant -1 move is available on each O factor
        (fusing the two very-even classes)."""
        ofs = [f for f in self.factors if f.kind == "O" and f.n >= 1]
        if not ofs:
            return False
        if not self.det1:
            return True
        return len(ofs) >= 2


def Sp(n: int) -> ComplexGroup:
    return ComplexGroup((GroupFactor("Sp", n),))


def SO(n: int) -> ComplexGroup:
    return ComplexGroup((GroupFactor("SO", n),))


def Orth(n: int) -> ComplexGroup:
    return ComplexGroup((GroupFactor("O", n),))


def GL(n: int) -> ComplexGroup:
    return ComplexGroup((GroupFactor("GL", n),))


def SL(n: int) -> ComplexGroup:
    return ComplexGroup((GroupFactor("SL", n),))


def group_product(*factors: GroupFactor, det1: bool = False) -> ComplexGroup:
    return ComplexGroup(tuple(factors), det1=det1)


# ---------------------------------------------------------------------------
# unipotent classes


@dataclass(frozen=True, order=True)
class UnipotentClass:
    partitions: tuple[Partition, ...]
    tags: tuple[str, ...]  # "", "I" or "II" per factor (very even classes)

    def __str__(self) -> str:
        bits = []
        for p, t in zip(self.partitions, self.tags):
            bits.append(str(p) + (t if t else ""))
        return "x".join(bits)


def _factor_partitions(factor: GroupFactor):
    if factor.kind in ("GL", "SL"):
        return [(p, "") for p in partitions(factor.n)]
    if factor.kind == "Sp":
        out = []
        for p in partitions(factor.n):
            if all(p.multiplicity(v) % 2 == 0 for v in p.distinct_parts() if v % 2):
                out.append((p, ""))
        return out
    # SO / O
    out = []
    for p in partitions(factor.n):
        if any(p.multiplicity(v) % 2 for v in p.distinct_parts() if v % 2 == 0):
            continue
        very_even = factor.n > 0 and all(v % 2 == 0 for v in p.parts)
        if factor.kind == "SO" and very_even:
            out.append((p, "I"))
            out.append((p, "II"))
        else:
            out.append((p, ""))
    return out


def unipotent_classes(group: ComplexGroup):
    """All unipotent classes of ``group`` (very-even classes of a
    connected even special orthogonal factor are split I/II; in the
    presence of a determinant swap they fuse)."""
    per = [_factor_partitions(f) for f in group.factors]
    out = []
    for combo in iproduct(*per) if per else [()]:
        out.append(UnipotentClass(tuple(c[0] for c in combo), tuple(c[1] for c in combo)))
    return out


# ---------------------------------------------------------------------------
# component groups and their sign characters


@dataclass(frozen=True)
class ComponentGroup:
    """The component group of a unipotent centralizer, presented by
    commuting involutive generators, one per qualifying Jordan block
    size, with an optional even-product constraint over the generators
    coming from orthogonal factors.  ``cyclic`` is used instead for
    special linear factors."""

    generators: tuple[str, ...]
    keys: tuple[tuple[int, int], ...]  # (factor index, part value) per generator
    constrained: tuple[bool, ...]
    cyclic: int = 1

    @property
    def has_constraint(self) -> bool:
        return any(self.constrained)

    @property
    def order(self) -> int:
        if self.cyclic != 1:
            return self.cyclic
        n = 2 ** len(self.generators)
        return n // 2 if self.has_constraint else n

    def structure(self) -> str:
        if self.cyclic != 1:
            return f"Z/{self.cyclic}"
        r = len(self.generators) - (1 if self.has_constraint else 0)
        if r <= 0:
            return "1"
        if r == 1:
            return "Z/2"
        return f"(Z/2)^{r}"

    def subgroup_generators(self) -> tuple[str, ...]:
        """Display generators of the actual subgroup (for constrained
        presentations, products of consecutive constrained generators)."""
        if not self.has_constraint:
            return self.generators
        cons = [g for g, c in zip(self.generators, self.constrained) if c]
        free = [g for g, c in zip(self.generators, self.constrained) if not c]
        pairs = [cons[i] + cons[i + 1] for i in range(len(cons) - 1)]
        return tuple(pairs + free)

    def characters(self):
        """All irreducible characters, in a fixed order (canonical sign
        vectors; under the constraint, representatives are normalized to
        value +1 on the last constrained generator)."""
        if self.cyclic != 1:
            raise UnrecognizedStructure("cyclic component groups carry no sign characters")
        g = len(self.generators)
        if g == 0:
            return [SignCharacter((), self)]
        last_con = max((i for i in range(g) if self.constrained[i]), default=None)
        out = []
        for vals in iproduct((1, -1), repeat=g):
            if last_con is not None and vals[last_con] == -1:
                continue
            out.append(SignCharacter(vals, self))
        return out


@dataclass(frozen=True)
class SignCharacter:
    values: tuple[int, ...]
    group: ComponentGroup

    def __post_init__(self):
        if len(self.values) != len(self.group.generators):
            raise SpringerError("character length mismatch")

    def value(self, key) -> int:
        for k, v in zip(self.group.keys, self.values):
            if k == key:
                return v
        raise KeyError(key)

    def canonical(self) -> "SignCharacter":
        g = self.group
        idx = [i for i in range(len(self.values)) if g.constrained[i]]
        if idx and self.values[idx[-1]] == -1:
            vals = tuple(-v if g.constrained[i] else v for i, v in enumerate(self.values))
            return SignCharacter(vals, g)
        return self

    def __eq__(self, other):
        if not isinstance(other, SignCharacter):
            return NotImplemented
        return (self.group.keys == other.group.keys
                and self.canonical().values == other.canonical().values)

    def __hash__(self):
        return hash((self.group.keys, self.canonical().values))

    def __str__(self) -> str:
        if not self.values:
            return "1"
        bits = [f"{g}->{'+' if v > 0 else '-'}" for g, v in zip(self.group.generators, self.values)]
        return "[" + " ".join(bits) + "]"


def _gcd_all(parts):
    from math import gcd
    g = 0
    for p in parts:
        g = gcd(g, p)
    return g


def component_group(group: ComplexGroup, u: UnipotentClass) -> ComponentGroup:
    if len(u.partitions) != len(group.factors):
        raise SpringerError("class does not belong to this group")
    if len(group.factors) == 1 and group.factors[0].kind == "SL":
        return ComponentGroup((), (), (), cyclic=_gcd_all(u.partitions[0].parts) or 1)
    gens, keys, cons = [], [], []
    prime_level = 0
    for fi, (factor, lam) in enumerate(zip(group.factors, u.partitions)):
        if factor.kind in ("GL", "SL"):
            continue
        if factor.kind == "Sp":
            vals = [v for v in lam.distinct_parts() if v % 2 == 0]
            constrained = False
        else:
            vals = [v for v in lam.distinct_parts() if v % 2]
            constrained = factor.kind == "SO" or group.det1
        suffix = "'" * prime_level
        for v in vals:
            gens.append(f"z{v}{suffix}")
            keys.append((fi, v))
            cons.append(constrained)
        prime_level += 1
    return ComponentGroup(tuple(gens), tuple(keys), tuple(cons))


# ---------------------------------------------------------------------------
# the xi-sequence engine


def _xi_sequence(lam: Partition, kind: str):
    """Ascending padded parts and their shifted values ``part + i - 1``.

    For symplectic factors the padding length is odd; orthogonal
    partitions already have the canonical length parity and are not
    padded.
    """
    parts = list(lam.ascending())
    if kind == "C" and len(parts) % 2 == 0:
        parts = [0] + parts
    xi = [p + i for i, p in enumerate(parts)]
    return parts, xi


def _runs(parts, xi):
    """Maximal runs of xi values belonging to each part value."""
    runs = {}
    for p, x in zip(parts, xi):
        runs.setdefault(p, []).append(x)
    return runs


def _displaced(lam: Partition, marked, kind: str):
    """Apply the marking moves and return the displaced value set.

    Marked runs of even multiplicity push both endpoints outward; marked
    runs of odd multiplicity displace one endpoint, alternating downward
    then upward.  Once an odd-multiplicity marked run has fired, every
    higher unmarked run of the opposite parity class (these always have
    even multiplicity) also spreads outward.
    """
    markable = 0 if kind == "C" else 1
    for v in marked:
        if v % 2 != markable or lam.multiplicity(v) == 0:
            raise SpringerError(f"cannot mark part value {v} of {lam}")
    parts, xi = _xi_sequence(lam, kind)
    runs = _runs(parts, xi)
    values = set(xi)
    down = True
    spreading = False
    for v in sorted(runs):
        run = runs[v]
        lo, hi = run[0], run[-1]
        if v in marked:
            if len(run) % 2 == 0:
                values.discard(lo)
                values.discard(hi)
                values.add(lo - 1)
                values.add(hi + 1)
            elif down:
                values.discard(lo)
                values.add(lo - 1)
                down = False
                spreading = True
            else:
                values.discard(hi)
                values.add(hi + 1)
                down = True
                spreading = True
        elif spreading and v != 0 and v % 2 != markable and len(run) % 2 == 0:
            values.discard(lo)
            values.discard(hi)
            values.add(lo - 1)
            values.add(hi + 1)
    if len(values) != len(xi) or min(values, default=0) < 0:
        raise SpringerError(f"marking moves collided for {lam} with marks {sorted(marked)}")
    return sorted(values)


def _split_halves(values):
    evens = [x // 2 for x in values if x % 2 == 0]
    odds = [(x - 1) // 2 for x in values if x % 2]
    return evens, odds


def _shift_halves(a, b):
    return [0] + [x + 1 for x in a], [0] + [x + 1 for x in b]


def _strip(seq, frame):
    if len(seq) != len(frame):
        raise SpringerError("frame length mismatch")
    diffs = [s - f for s, f in zip(seq, frame)]
    if any(d < 0 for d in diffs) or any(y < x for x, y in zip(diffs, diffs[1:])):
        raise SpringerError(f"sequence {seq} does not fit frame {frame}")
    return Partition(diffs)


def _sp_core_partition(d: int) -> Partition:
    return Partition(range(2, 2 * d + 1, 2))


def _so_core_partition(d: int) -> Partition:
    return Partition(range(1, 2 * d, 2))


def _sp_core_marks(d: int):
    # alternating cuspidal signs: value 2i marked for odd i
    return {2 * i for i in range(1, d + 1) if i % 2}


def _o_core_marks(d: int, sign: int):
    """Markings of the two cuspidal characters of an orthogonal core
    O(d^2); ``sign`` selects the lifting (it equals the sign of the
    displaced-sequence defect)."""
    odds = list(range(1, 2 * d, 2))
    plus = {odds[i] for i in range(d) if i % 2 == 0}
    return plus if sign > 0 else set(odds) - plus


@lru_cache(maxsize=None)
def _anchor_halves(kind: str, d: int, sign: int):
    if kind == "C":
        lam, marks = _sp_core_partition(d), _sp_core_marks(d)
        if d == 0:
            return (0,), ()  # the padded empty core
    else:
        lam, marks = _so_core_partition(d), _o_core_marks(d, sign)
        if d == 0:
            return (), ()
    values = _displaced(lam, marks, kind)
    a, b = _split_halves(values)
    return tuple(a), tuple(b)


def _defect_to_block(kind: str, defect: int):
    """Block parameter and lifting sign from the displaced defect."""
    if kind == "C":
        if defect % 2 == 0:
            raise SpringerError(f"even defect {defect} in a symplectic factor")
        return (defect - 1, 0) if defect > 0 else (-defect, 0)
    d = abs(defect)
    return d, (1 if defect > 0 else (-1 if defect < 0 else 0))


def _factor_defect(factor: GroupFactor, lam: Partition, marked):
    kind = "C" if factor.kind == "Sp" else "BD"
    values = _displaced(lam, marked, kind)
    a, b = _split_halves(values)
    return len(a) - len(b)


def _factor_block_and_label(factor: GroupFactor, lam: Partition, tag: str, marked):
    """Block data and character label for one classical factor.

    Returns ``(d, sign, label)`` where ``d`` is the core size parameter,
    ``sign`` distinguishes the two cuspidal characters of a
    disconnected orthogonal core (0 otherwise), and ``label`` is the
    relative Weyl character label of the pair.

    For orthogonal factors in a positive-defect block the label is read
    off the complementary marking (the one with negative defect); the
    marking as given only fixes the sign.
    """
    kind = "C" if factor.kind == "Sp" else "BD"
    values = _displaced(lam, marked, kind)
    a, b = _split_halves(values)
    defect = len(a) - len(b)
    d, sign = _defect_to_block(kind, defect)
    if kind == "BD" and defect > 0:
        odds = {v for v in lam.distinct_parts() if v % 2}
        values = _displaced(lam, odds - set(marked), kind)
        a, b = _split_halves(values)
        if len(a) - len(b) != -defect:
            raise SpringerError(
                f"complementary markings of {lam} have inconsistent defects")
    fa, fb = _anchor_halves(kind, d, -1)
    fa, fb = list(fa), list(fb)
    while len(fa) + len(fb) < len(a) + len(b):
        fa, fb = _shift_halves(fa, fb)
    while len(fa) + len(fb) > len(a) + len(b):
        a, b = _shift_halves(a, b)
    if kind == "C":
        if d % 2 == 0:
            label = Bipartition(_strip(a, fa), _strip(b, fb))
        else:
            label = Bipartition(_strip(b, fb), _strip(a, fa))
    else:
        alpha, beta = _strip(b, fb), _strip(a, fa)
        if factor.kind == "SO":
            if d == 0:
                primed = alpha == beta and tag == "II"
                label = DLabel(alpha, beta, primed=primed)
            else:
                label = Bipartition(alpha, beta)
        else:
            label = Bipartition(alpha, beta)
    return d, sign, label


def ordinary_symplectic_label(lam: Partition) -> Bipartition:
    """The staircase recipe for the principal block at the trivial
    character of a symplectic factor: split the shifted sequence by
    parity, halve, and unstaircase."""
    parts, xi = _xi_sequence(lam, "C")
    a, b = _split_halves(xi)
    alpha = Partition([x - i for i, x in enumerate(a)])
    beta = Partition([x - i for i, x in enumerate(b)])
    return Bipartition(alpha, beta)


# ---------------------------------------------------------------------------
# cuspidal triples and relative Weyl groups


@dataclass(frozen=True, order=True)
class CuspidalTriple:
    """A cuspidal support datum: per factor, the size parameter ``d`` of
    the cuspidal core inside the quasi-Levi ``GL(1)^k x core``, plus the
    lifting sign for disconnected orthogonal cores.  ``order_char`` is
    used for special linear factors (character order on the regular
    class)."""

    group: ComplexGroup
    ds: tuple[int, ...]
    signs: tuple[int, ...]
    order_char: int = 0

    @property
    def is_principal(self) -> bool:
        return all(d == 0 or (f.kind in ("SO", "O") and f.n % 2 and d == 1 and s == 0)
                   for f, d, s in zip(self.group.factors, self.ds, self.signs)) \
            and self.order_char == 0

    def gl_rank(self, i: int) -> int:
        f, d = self.group.factors[i], self.ds[i]
        if f.kind in ("GL", "SL"):
            return f.n
        if f.kind == "Sp":
            return (f.n - d * (d + 1)) // 2
        return (f.n - d * d) // 2

    def core_partition(self, i: int) -> Partition:
        f, d = self.group.factors[i], self.ds[i]
        if f.kind in ("GL", "SL"):
            return Partition((f.n,)) if self.order_char else Partition()
        if f.kind == "Sp":
            return _sp_core_partition(d)
        return _so_core_partition(d)

    def core_marks(self, i: int):
        f, d, s = self.group.factors[i], self.ds[i], self.signs[i]
        if f.kind == "Sp":
            return _sp_core_marks(d)
        if f.kind in ("SO", "O"):
            return _o_core_marks(d, s if s else 1)
        return set()

    def __str__(self) -> str:
        bits = []
        for i, f in enumerate(self.group.factors):
            k = self.gl_rank(i)
            core = self.core_partition(i)
            s = f"GL1^{k}" if k else ""
            if core or f.kind in ("SO", "O", "Sp"):
                d = self.ds[i]
                size = d * (d + 1) if f.kind == "Sp" else d * d
                corename = f"{'Sp' if f.kind == 'Sp' else f.kind}{size}"
                sgn = {1: "+", -1: "-", 0: ""}[self.signs[i]]
                s = (s + "x" if s else "") + f"{corename}{sgn}{core if core else ''}"
            bits.append(s or "1")
        if self.order_char:
            bits.append(f"ord{self.order_char}")
        return "[" + " | ".join(bits) + "]"


def cuspidal_triples(group: ComplexGroup):
    """All cuspidal support triples of ``group``: choices of a cuspidal
    core in each factor (with both liftings for disconnected orthogonal
    cores), plus the regular-class triples of special linear factors."""
    per = []
    for f in group.factors:
        opts = []
        if f.kind == "GL":
            opts.append((0, 0, 0))
        elif f.kind == "SL":
            opts.append((0, 0, 0))
            from math import gcd
            for e in range(2, f.n + 1):
                if f.n == e:  # full-group cuspidal data: faithful characters
                    opts.extend((0, 0, k) for k in range(1, e + 1) if gcd(k, e) == 1)
        elif f.kind == "Sp":
            d = 0
            while d * (d + 1) <= f.n:
                opts.append((d, 0, 0))
                d += 1
        else:  # SO / O
            d = f.n % 2
            while d * d <= f.n:
                if f.kind == "SO" or d == 0:
                    opts.append((d, 0, 0))
                else:
                    opts.append((d, 1, 0))
                    opts.append((d, -1, 0))
                d += 2
            if f.n % 2 == 0 and f.n == 0:
                opts = [(0, 0, 0)]
        per.append(opts)
    out = []
    for combo in iproduct(*per) if per else [()]:
        ds = tuple(c[0] for c in combo)
        signs = _canonical_signs(group, tuple(c[1] for c in combo))
        oc = max((c[2] for c in combo), default=0)
        triple = CuspidalTriple(group, ds, signs, order_char=oc)
        if triple not in out:
            out.append(triple)
    return out


@dataclass(frozen=True)
class RelativeWeylGroup:
    """The relative Weyl group of a cuspidal triple, as a product of
    recognized pieces.  Piece types: ``A`` (symmetric group on n+1
    letters, labels = partitions), ``B`` (signed permutations, labels =
    bipartitions), ``D`` (even signed permutations, labels = unordered
    pairs with split labels doubled).  ``coupled`` marks a joint
    even-sign condition across all B pieces."""

    pieces: tuple[tuple[str, int], ...]
    coupled: bool = False

    @property
    def order(self) -> int:
        from math import factorial
        n = 1
        for t, k in self.pieces:
            if t == "A":
                n *= factorial(k + 1)
            elif t == "B":
                n *= factorial(k) * 2 ** k
            elif t == "D":
                n *= factorial(k) * 2 ** max(k - 1, 0) if k else 1
        if self.coupled and any(t == "B" and k for t, k in self.pieces):
            n //= 2
        return n

    def structure(self) -> str:
        if not self.pieces or all(k == 0 for _, k in self.pieces):
            return "1"
        bits = [f"W({t}{k})" for t, k in self.pieces if k]
        s = "x".join(bits)
        return ("S[" + s + "]") if self.coupled else s

    def character_labels(self):
        per = []
        for t, k in self.pieces:
            if t == "A":
                per.append(list(partitions(k + 1)))
            elif t == "B":
                per.append(bipartitions(k))
            else:
                per.append(dlabels(k))
        combos = [tuple(c) for c in iproduct(*per)] if per else [()]
        if not self.coupled or not any(t == "B" and k for t, k in self.pieces):
            return combos
        # joint even-sign condition: characters are orbits under the
        # simultaneous swap of every bipartition, split orbits doubled
        out = []
        seen = set()
        for combo in combos:
            swapped = tuple(
                Bipartition(l.beta, l.alpha) if isinstance(l, Bipartition) else l
                for l in combo
            )
            if combo == swapped:
                out.append((combo, 0))
                out.append((combo, 1))
            elif swapped not in seen:
                seen.add(combo)
                out.append((combo, None))
        return out

    @property
    def num_characters(self) -> int:
        return len(self.character_labels())


def relative_weyl_group(triple: CuspidalTriple) -> RelativeWeylGroup:
    group = triple.group
    pieces = []
    coupled = False
    if triple.order_char:
        # regular cuspidal datum on a special linear factor: trivial
        return RelativeWeylGroup(())
    has_core_absorbing = any(
        f.kind in ("SO", "O") and d >= 1 and (f.kind == "O" or group.det1 or f.n % 2)
        for f, d in zip(group.factors, triple.ds)
    )
    for i, f in enumerate(group.factors):
        k = triple.gl_rank(i)
        d = triple.ds[i]
        if f.kind in ("GL", "SL"):
            pieces.append(("A", max(k - 1, 0)))
        elif f.kind == "Sp":
            pieces.append(("B", k))
        elif f.kind == "SO":
            if f.n % 2 == 0 and d == 0:
                pieces.append(("D", k))
            else:
                pieces.append(("B", k))
        else:  # O factor
            pieces.append(("B", k))
            if group.det1 and d == 0:
                coupled = True
    if coupled and has_core_absorbing:
        coupled = False
    if not group.det1:
        coupled = False
    return RelativeWeylGroup(tuple(pieces), coupled=coupled)


# ---------------------------------------------------------------------------
# the correspondence


def _canonical_signs(group: ComplexGroup, signs):
    """Erase the lifting sign on connected special orthogonal cores and
    normalize determinant-coupled sign vectors modulo the global flip."""
    signs = [0 if f.kind == "SO" else s for f, s in zip(group.factors, signs)]
    if group.det1:
        first = next((s for s in signs if s), 0)
        if first < 0:
            signs = [-s for s in signs]
    return tuple(signs)


def enumerate_pairs(group: ComplexGroup):
    """All pairs (unipotent class, component-group character)."""
    out = []
    for u in unipotent_classes(group):
        A = component_group(group, u)
        if A.cyclic != 1:
            raise UnrecognizedStructure(
                "pair enumeration over cyclic component groups is not supported"
            )
        for ch in A.characters():
            out.append((u, ch))
    return out


def generalized_springer(group: ComplexGroup, u: UnipotentClass, char: SignCharacter,
                         twisted: bool = True):
    """The correspondence on one pair: returns ``(triple, label)``.

    ``label`` is a tuple of per-factor character labels of the relative
    Weyl group of ``triple``.  With ``twisted=False`` the labels are
    composed with the sign character.

    Orthogonal factor labels never depend on the choice of lifting of a
    constrained character, because positive-defect markings delegate to
    their complement inside the factor.  Only the ``O``-factor signs
    (and the zero-defect orthogonal labels) see the marking itself, and
    under a joint determinant constraint those are first normalized by
    the global flip.
    """
    marks = [set() for _ in group.factors]
    for (fi, v), val in zip(char.group.keys, char.values):
        if val == -1:
            marks[fi].add(v)
    if group.det1:
        raw = 0
        for i, f in enumerate(group.factors):
            if f.kind == "O":
                raw = _factor_defect(f, u.partitions[i], marks[i])
                if raw:
                    break
        if raw < 0:
            for i, f in enumerate(group.factors):
                if f.kind == "O":
                    odds = {v for v in u.partitions[i].distinct_parts() if v % 2}
                    marks[i] = odds - marks[i]
    ds, signs, labels = [], [], []
    for i, f in enumerate(group.factors):
        lam, tag = u.partitions[i], u.tags[i]
        if f.kind in ("GL", "SL"):
            ds.append(0)
            signs.append(0)
            labels.append(lam.conjugate())
            continue
        d, sign, label = _factor_block_and_label(f, lam, tag, marks[i])
        ds.append(d)
        signs.append(sign)
        labels.append(label)
    triple = CuspidalTriple(group, tuple(ds), _canonical_signs(group, signs))
    labels = tuple(labels)
    if not twisted:
        labels = tuple(sign_twist(l) for l in labels)
    return triple, labels


@lru_cache(maxsize=None)
def springer_blocks(group: ComplexGroup, twisted: bool = True):
    """The full correspondence: maps each block (cuspidal triple) to the
    list of its pairs with their labels.  Raises if any block fails to
    biject with the characters of its relative Weyl group."""
    blocks = {}
    for u, ch in enumerate_pairs(group):
        triple, label = generalized_springer(group, u, ch, twisted=twisted)
        blocks.setdefault(triple, []).append((u, ch, label))
    coupled_relabel = {}
    for triple, rows in blocks.items():
        W = relative_weyl_group(triple)
        expected = W.character_labels()
        got = [r[2] for r in rows]
        if W.coupled:
            # labels computed per factor are lifted representatives;
            # fold them onto the coupled label set
            folded = []
            used = {}
            for lab in got:
                swapped = _swap_all(lab)
                rep = min(lab, swapped, key=_label_key)
                if lab == swapped:
                    k = used.get(_label_key(rep), 0)
                    used[_label_key(rep)] = k + 1
                    folded.append((rep, k))
                else:
                    folded.append((rep, None))
            got = folded
            expected = [(min(c, _swap_all(c), key=_label_key), t) for c, t in expected]
        if sorted(map(_label_key, got)) != sorted(map(_label_key, expected)):
            raise SpringerError(
                f"block {triple} of {group}: labels {sorted(map(str, got))} "
                f"do not match Irr of {W.structure()}"
            )
        blocks[triple] = rows
    return blocks


def _swap_all(combo):
    return tuple(
        Bipartition(l.beta, l.alpha) if isinstance(l, Bipartition) else l
        for l in combo
    )


def _label_key(label):
    return str(label)


def generalized_springer_inverse(group: ComplexGroup, triple: CuspidalTriple, label,
                                 twisted: bool = True):
    """The pair mapping to ``(triple, label)``."""
    for t, rows in springer_blocks(group, twisted).items():
        if t != triple:
            continue
        for u, ch, lab in rows:
            if lab == label:
                return u, ch
    raise SpringerError(f"no pair with support {triple} and label {label}")


def is_cuspidal_pair(group: ComplexGroup, u: UnipotentClass, char: SignCharacter) -> bool:
    """Whether the pair is its own support (quasi-Levi equal to the
    whole group)."""
    triple, _ = generalized_springer(group, u, char)
    return all(triple.gl_rank(i) == 0 for i in range(len(group.factors)))


def is_distinguished(group: ComplexGroup, u: UnipotentClass) -> bool:
    """No central torus in the centralizer: every part of the right
    parity, multiplicity free."""
    for f, lam in zip(group.factors, u.partitions):
        if f.kind in ("GL", "SL"):
            if lam.parts != (f.n,) and f.n > 0:
                return False
        elif f.kind == "Sp":
            if any(v % 2 or lam.multiplicity(v) > 1 for v in lam.parts):
                return False
        else:
            if any(v % 2 == 0 or lam.multiplicity(v) > 1 for v in lam.parts):
                return False
    return True
