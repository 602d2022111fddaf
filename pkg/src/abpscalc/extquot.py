"""Finite monomial group actions on complex tori.

A signed permutation acts on ``(C^*)^n`` by permuting coordinates and
inverting some of them.  Everything here is exact: torus points are
symbolic (roots of unity, powers of ``q^{1/2}``, and free monomial
variables), fixed loci are computed by Smith normal form over the
integers, and the stabilizer strata come back with recognized Coxeter
structure so their irreducible characters can be labelled
combinatorially.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .combicore import (
    Bipartition,
    DLabel,
    Partition,
    SignedPermutation,
    all_signed_permutations,
    bipartitions,
    dlabels,
    partitions,
    smith_normal_form,
)
from .springer import UnrecognizedStructure


class RankMismatch(ValueError):
    """An element was applied to a point of the wrong rank."""


# ---------------------------------------------------------------------------
# symbolic coordinates and torus points


def _norm_monomial(monomial):
    acc = {}
    for name, e in monomial:
        acc[name] = acc.get(name, 0) + int(e)
    return tuple(sorted((n, e) for n, e in acc.items() if e))


@dataclass(frozen=True)
class SymbolicCoordinate:
    """One coordinate of a symbolic torus point.

    The value denoted is ``e^{2 pi i torsion} * (q^{1/2})^qexp * prod
    v^e`` over the monomial, with the named variables ``v`` generic.
    """

    torsion: Fraction = Fraction(0)
    qexp: int = 0
    monomial: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", Fraction(self.torsion) % 1)
        object.__setattr__(self, "qexp", int(self.qexp))
        object.__setattr__(self, "monomial", _norm_monomial(self.monomial))

    def __mul__(self, other: "SymbolicCoordinate") -> "SymbolicCoordinate":
        return SymbolicCoordinate(
            self.torsion + other.torsion,
            self.qexp + other.qexp,
            self.monomial + other.monomial,
        )

    def __pow__(self, k: int) -> "SymbolicCoordinate":
        return SymbolicCoordinate(
            self.torsion * k,
            self.qexp * k,
            tuple((n, e * k) for n, e in self.monomial),
        )

    def inverse(self) -> "SymbolicCoordinate":
        return self ** -1

    @property
    def is_unitary(self) -> bool:
        return self.qexp == 0

    @property
    def is_torsion(self) -> bool:
        return self.qexp == 0 and not self.monomial

    def __str__(self) -> str:
        parts = []
        if self.torsion == Fraction(1, 2):
            parts.append("-1")
        elif self.torsion:
            parts.append(f"zeta{self.torsion.denominator}^{self.torsion.numerator}")
        if self.qexp:
            parts.append("q^{%s/2}" % self.qexp if self.qexp % 2 else f"q^{self.qexp // 2}")
        for name, e in self.monomial:
            parts.append(name if e == 1 else f"{name}^{e}")
        if not parts:
            return "1"
        if parts[0] == "-1" and len(parts) > 1:
            return "-" + "*".join(parts[1:])
        return "*".join(parts)


ONE = SymbolicCoordinate()
MINUS_ONE = SymbolicCoordinate(Fraction(1, 2))


def free(name: str) -> SymbolicCoordinate:
    return SymbolicCoordinate(monomial=((name, 1),))


def root_of_unity(t) -> SymbolicCoordinate:
    return SymbolicCoordinate(torsion=Fraction(t))


def q_power(half_exponent: int) -> SymbolicCoordinate:
    """``q^{k/2}`` as a coordinate, ``k`` counted in half-integer steps."""
    return SymbolicCoordinate(qexp=half_exponent)


@dataclass(frozen=True)
class SymbolicTorusPoint:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))

    @property
    def rank(self) -> int:
        return len(self.coords)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def point(*coords) -> SymbolicTorusPoint:
    out = []
    for c in coords:
        if isinstance(c, SymbolicCoordinate):
            out.append(c)
        elif isinstance(c, str):
            out.append(free(c))
        elif c == 1:
            out.append(ONE)
        elif c == -1:
            out.append(MINUS_ONE)
        else:
            out.append(root_of_unity(c))
    return SymbolicTorusPoint(tuple(out))


def act(w: SignedPermutation, t: SymbolicTorusPoint) -> SymbolicTorusPoint:
    """Coordinate ``w(i)`` of the result is coordinate ``i`` of ``t``
    raised to the sign picked up along the way."""
    if w.rank != t.rank:
        raise RankMismatch(f"rank {w.rank} element on rank {t.rank} point")
    coords = [None] * t.rank
    for i in range(t.rank):
        coords[w.images[i] - 1] = t.coords[i] ** w.signs[i]
    return SymbolicTorusPoint(tuple(coords))


# ---------------------------------------------------------------------------
# torus cosets and the integral solver


def _row_hnf(rows, width):
    """Hermite normal form of the lattice spanned by ``rows``."""
    mat = [list(r) for r in rows if any(r)]
    basis = []
    col = 0
    while col < width and mat:
        mat.sort(key=lambda r: (r[col] == 0, abs(r[col]) if r[col] else 0))
        if mat[0][col] == 0:
            col += 1
            continue
        while len(mat) > 1 and mat[1][col] != 0:
            q = mat[1][col] // mat[0][col]
            mat[1] = [a - q * b for a, b in zip(mat[1], mat[0])]
            mat.sort(key=lambda r: (r[col] == 0, abs(r[col]) if r[col] else 0))
        pivot = mat.pop(0)
        if pivot[col] < 0:
            pivot = [-x for x in pivot]
        basis.append(pivot)
        mat = [r for r in mat if any(r)]
        col += 1
    # reduce entries above each pivot
    for i in reversed(range(len(basis))):
        p = next(j for j, x in enumerate(basis[i]) if x)
        for k in range(i):
            q = basis[k][p] // basis[i][p]
            if q:
                basis[k] = [a - q * b for a, b in zip(basis[k], basis[i])]
    basis.sort(key=lambda r: next(j for j, x in enumerate(r) if x))
    return [tuple(r) for r in basis]


@dataclass(frozen=True)
class TorusCoset:
    """A translated subtorus: ``exp(2 pi i (translation + span(basis)))``.

    ``basis`` rows generate the cocharacter lattice of the identity
    component; the stored form is canonical (Hermite basis, translation
    reduced modulo one and modulo the basis span).
    """

    rank: int
    basis: tuple
    translation: tuple

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def generic_point(self, names=None) -> SymbolicTorusPoint:
        if names is None:
            names = ["z" + "'" * k for k in range(len(self.basis))]
        coords = []
        for j in range(self.rank):
            mono = tuple(
                (names[k], row[j]) for k, row in enumerate(self.basis) if row[j]
            )
            coords.append(SymbolicCoordinate(self.translation[j], 0, mono))
        return SymbolicTorusPoint(tuple(coords))

    def contains_torsion(self, pt) -> bool:
        """Membership of a point with all-rational coordinates."""
        v = [Fraction(x) - t for x, t in zip(pt, self.translation)]
        if not self.basis:
            return all(x % 1 == 0 for x in v)
        A = [[row[j] for row in self.basis] for j in range(self.rank)]
        S, U, _ = smith_normal_form(A)
        ok = True
        for i in range(self.rank):
            if i < len(self.basis) and i < self.rank and S[i][i] != 0:
                continue
            s = sum(U[i][j] * v[j] for j in range(self.rank))
            ok = ok and s % 1 == 0
        return ok

    def contains_coset(self, other: "TorusCoset") -> bool:
        if not self.contains_torsion(other.translation):
            return False
        span = _row_hnf(list(self.basis) + list(other.basis), self.rank)
        return span == list(self.basis)

    def __str__(self) -> str:
        return str(self.generic_point())


def _canonical_coset(rank, rows, translation) -> TorusCoset:
    basis = _row_hnf(rows, rank)
    t = [Fraction(x) for x in translation]
    for row in basis:
        p = next(j for j, x in enumerate(row) if x)
        c = t[p] / row[p]
        t = [a - c * b for a, b in zip(t, row)]
    t = tuple(x % 1 for x in t)
    return TorusCoset(rank, tuple(basis), t)


def full_torus(rank: int) -> TorusCoset:
    eye = [[int(i == j) for j in range(rank)] for i in range(rank)]
    return _canonical_coset(rank, eye, [0] * rank)


def _solve_torus(A, b, rank):
    """All solutions of ``A x = b (mod Z)`` on the rank-``rank`` torus,
    as a list of canonical cosets."""
    m = len(A)
    if m == 0:
        return [full_torus(rank)]
    S, U, V = smith_normal_form(A)
    c = [sum(U[i][j] * Fraction(b[j]) for j in range(m)) for i in range(m)]
    divisors = []
    r = 0
    for i in range(min(m, rank)):
        if S[i][i]:
            divisors.append(abs(S[i][i]))
            r += 1
    for i in range(r, m):
        if c[i] % 1 != 0:
            return []
    rows = [tuple(V[i][j] for i in range(rank)) for j in range(r, rank)]
    out = []
    for ks in product(*(range(d) for d in divisors)):
        psi = [(c[i] + ks[i]) / divisors[i] for i in range(r)] + [Fraction(0)] * (rank - r)
        theta = [sum(V[i][j] * psi[j] for j in range(rank)) for i in range(rank)]
        out.append(_canonical_coset(rank, rows, theta))
    return sorted(set(out), key=_coset_key)


def _coset_key(c: TorusCoset):
    return (-c.dimension, c.basis, c.translation)


def fixed_locus(w: SignedPermutation):
    """The fixed-point set of ``w`` on its torus, as canonical cosets."""
    n = w.rank
    M = w.matrix()
    A = [[M[i][j] - (i == j) for j in range(n)] for i in range(n)]
    return _solve_torus(A, [0] * n, n)


def _coset_equations(c: TorusCoset):
    """Integral equations ``E x = E t (mod Z)`` cutting out the union of
    components parallel to ``c``; ``c`` itself is the one through ``t``."""
    n = c.rank
    if not c.basis:
        E = [[int(i == j) for j in range(n)] for i in range(n)]
    else:
        L = [list(r) for r in c.basis]
        S, _, V = smith_normal_form(L)
        r = sum(1 for i in range(min(len(L), n)) if S[i][i])
        E = [[V[i][j] for i in range(n)] for j in range(r, n)]
    rhs = [sum(row[j] * c.translation[j] for j in range(n)) for row in E]
    return E, rhs


def intersect_cosets(c1: TorusCoset, c2: TorusCoset):
    E1, b1 = _coset_equations(c1)
    E2, b2 = _coset_equations(c2)
    sols = _solve_torus(E1 + E2, b1 + b2, c1.rank)
    return [s for s in sols if c1.contains_coset(s) and c2.contains_coset(s)]


def act_coset(w: SignedPermutation, c: TorusCoset) -> TorusCoset:
    M = w.matrix()
    rows = [
        tuple(sum(M[i][j] * row[j] for j in range(c.rank)) for i in range(c.rank))
        for row in c.basis
    ]
    t = [sum(M[i][j] * c.translation[j] for j in range(c.rank)) for i in range(c.rank)]
    return _canonical_coset(c.rank, rows, t)


# ---------------------------------------------------------------------------
# group actions


@dataclass(frozen=True)
class MonomialAction:
    """A finite group of signed permutations, listed in full."""

    elements: tuple

    def __post_init__(self):
        elems = tuple(sorted(set(self.elements), key=lambda w: (w.images, w.signs)))
        object.__setattr__(self, "elements", elems)
        group = set(elems)
        for v in elems:
            for w in elems:
                if v * w not in group:
                    raise ValueError("element list is not closed under composition")

    @property
    def rank(self) -> int:
        return self.elements[0].rank

    @property
    def order(self) -> int:
        return len(self.elements)

    def identity(self) -> SignedPermutation:
        return SignedPermutation.identity(self.rank)


def hyperoctahedral_action(n: int) -> MonomialAction:
    return MonomialAction(all_signed_permutations(n))


def even_sign_action(n: int) -> MonomialAction:
    return MonomialAction(
        tuple(
            w
            for w in all_signed_permutations(n)
            if w.signs.count(-1) % 2 == 0
        )
    )


def permutation_action(n: int) -> MonomialAction:
    return MonomialAction(
        tuple(w for w in all_signed_permutations(n) if w.signs == (1,) * n)
    )


def trivial_action(n: int) -> MonomialAction:
    return MonomialAction((SignedPermutation.identity(n),))


# ---------------------------------------------------------------------------
# stabilizers and their recognized structure


@dataclass(frozen=True)
class RecognizedSubgroup:
    """A subgroup of signed permutations with recognized structure.

    ``pieces`` is a tuple of factors: ``("A", coords)``, ``("B",
    coords)``, ``("D", coords)`` for a full symmetric or
    hyperoctahedral or even-signed group on the listed coordinates, or
    ``("E2", generators)`` for an elementary abelian 2-group of
    diagonal sign flips, each generator given by its flipped
    coordinate set.
    """

    elements: tuple
    pieces: tuple

    @property
    def order(self) -> int:
        return len(self.elements)

    def structure(self) -> str:
        if not self.pieces:
            return "1"
        names = []
        for kind, data in self.pieces:
            if kind == "E2":
                names.extend(["Z/2"] * len(data))
            elif kind == "A":
                names.append(f"S{len(data)}")
            else:
                names.append(f"{kind}{len(data)}")
        return " x ".join(names)

    def irreps(self):
        """Character labels: partitions, bipartitions, D-labels, or
        sign vectors per piece; a product group yields label tuples."""
        per_piece = []
        for kind, data in self.pieces:
            if kind == "A":
                per_piece.append(list(partitions(len(data))))
            elif kind == "B":
                per_piece.append(list(bipartitions(len(data))))
            elif kind == "D":
                per_piece.append(list(dlabels(len(data))))
            else:
                per_piece.append([s for s in product((1, -1), repeat=len(data))])
        if not per_piece:
            return [()]
        if len(per_piece) == 1:
            return per_piece[0]
        return [tuple(c) for c in product(*per_piece)]

    @property
    def num_irreps(self) -> int:
        return len(self.irreps())


def _restrict(w: SignedPermutation, coords):
    pos = {c: i for i, c in enumerate(coords)}
    images = tuple(pos[w.images[c - 1] - 1] + 1 for c in (c + 1 for c in coords))
    signs = tuple(w.signs[c] for c in coords)
    return images, signs


def recognize_subgroup(elements, rank: int) -> RecognizedSubgroup:
    elems = tuple(sorted(set(elements), key=lambda w: (w.images, w.signs)))
    moved = [
        c
        for c in range(rank)
        if any(w.images[c] != c + 1 or w.signs[c] != 1 for w in elems)
    ]
    if not moved:
        return RecognizedSubgroup(elems, ())
    # coordinate blocks: join c and w(c)
    parent = {c: c for c in moved}

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    for w in elems:
        for c in moved:
            d = w.images[c] - 1
            if d in parent:
                parent[find(c)] = find(d)
    blocks = {}
    for c in moved:
        blocks.setdefault(find(c), []).append(c)
    pieces = []
    diag_coords = []
    size = 1
    for block in sorted(map(tuple, blocks.values())):
        restricted = {_restrict(w, block) for w in elems}
        k = len(block)
        identity = (tuple(range(1, k + 1)), (1,) * k)
        if all(im == identity[0] for im, _ in restricted):
            diag_coords.extend(block)
            continue
        full_b = {(w.images, w.signs) for w in all_signed_permutations(k)}
        full_a = {f for f in full_b if f[1] == (1,) * k}
        full_d = {f for f in full_b if f[1].count(-1) % 2 == 0}
        if restricted == full_a:
            pieces.append(("A", tuple(block)))
        elif restricted == full_b:
            pieces.append(("B", tuple(block)))
        elif restricted == full_d:
            pieces.append(("D", tuple(block)))
        else:
            raise UnrecognizedStructure(
                f"unrecognized block of order {len(restricted)} on "
                f"coordinates {tuple(c + 1 for c in block)}: {elems}"
            )
        size *= len(restricted)
    if diag_coords:
        vecs = sorted(
            {
                tuple(c for c in diag_coords if w.signs[c] == -1)
                for w in elems
                if w.images == tuple(range(1, rank + 1))
            }
        )
        gens = []
        seen = {frozenset()}
        for v in vecs:
            if frozenset(v) not in seen:
                gens.append(v)
                seen |= {frozenset(set(s) ^ set(v)) for s in seen}
        pieces.append(("E2", tuple(tuple(c + 1 for c in g) for g in gens)))
        size *= 2 ** len(gens)
    if size != len(elems):
        raise UnrecognizedStructure(
            f"subgroup of order {len(elems)} is not the product of its "
            f"coordinate blocks: {elems}"
        )
    return RecognizedSubgroup(elems, tuple(pieces))


def stabilizer(action: MonomialAction, t: SymbolicTorusPoint) -> RecognizedSubgroup:
    """All elements fixing ``t`` with its free variables generic."""
    if t.rank != action.rank:
        raise RankMismatch(f"rank {t.rank} point under rank {action.rank} action")
    fix = tuple(w for w in action.elements if act(w, t) == t)
    return recognize_subgroup(fix, action.rank)


# ---------------------------------------------------------------------------
# stratification


@dataclass(frozen=True)
class Stratum:
    coset: TorusCoset
    base: SymbolicTorusPoint
    group: RecognizedSubgroup

    @property
    def dimension(self) -> int:
        return self.coset.dimension

    def __str__(self) -> str:
        return f"{self.base} : {self.group.structure()}"


def strata(action: MonomialAction, max_rank: int = 6):
    """Canonical representatives of the stabilizer strata of the action,
    one per orbit, ordered by decreasing dimension."""
    n = action.rank
    if n > max_rank:
        raise ValueError(f"stratification limited to rank {max_rank}")
    pool = {full_torus(n)}
    for w in action.elements:
        if w != action.identity():
            pool.update(fixed_locus(w))
    frontier = list(pool)
    while frontier:
        fresh = []
        for c1, c2 in combinations(sorted(pool, key=_coset_key), 2):
            for c in intersect_cosets(c1, c2):
                if c not in pool:
                    fresh.append(c)
        pool.update(fresh)
        frontier = fresh
    orbits = []
    seen = set()
    for c in sorted(pool, key=_coset_key):
        if c in seen:
            continue
        orbit = {act_coset(w, c) for w in action.elements}
        seen |= orbit
        orbits.append(sorted(orbit, key=_coset_key))
    out = []
    for orbit in orbits:
        # prefer the representative whose stabilizer has recognized
        # Coxeter structure (conjugates may act by twisted reflections)
        last = None
        for c in orbit:
            base = c.generic_point()
            try:
                out.append(Stratum(c, base, stabilizer(action, base)))
                break
            except UnrecognizedStructure as exc:
                last = exc
        else:
            raise last
    return out


# ---------------------------------------------------------------------------
# extended quotients


@dataclass(frozen=True)
class EQPoint:
    """One family of the spectral extended quotient: a stratum together
    with an irreducible character of its stabilizer."""

    base: SymbolicTorusPoint
    group: RecognizedSubgroup
    irrep: object
    kind: str

    def __str__(self) -> str:
        return f"({self.base}, {self.irrep}) [{self.kind}]"


def _is_reflection(w: SignedPermutation) -> bool:
    M = w.matrix()
    n = w.rank
    A = [[Fraction(M[i][j] - (i == j)) for j in range(n)] for i in range(n)]
    rank = 0
    for col in range(n):
        piv = next((r for r in range(rank, n) if A[r][col]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for r in range(n):
            if r != rank and A[r][col]:
                f = A[r][col] / A[rank][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[rank])]
        rank += 1
    return rank == 1


def _acts_by_minus_one(group: RecognizedSubgroup, irrep, w: SignedPermutation) -> bool:
    """Whether the irrep sends the reflection ``w`` to minus the identity."""
    labels = irrep if len(group.pieces) > 1 else (irrep,)
    for (kind, data), label in zip(group.pieces, labels):
        if kind == "E2":
            # diagonal reflections never have a connected fixed torus,
            # so an E2 piece is never the support of a queried element
            continue
        coords = set(data)
        if all(w.images[c] == c + 1 and w.signs[c] == 1 for c in coords):
            continue
        k = len(data)
        if kind == "A":
            if label != Partition((1,) * k):
                return False
        elif kind == "B":
            sign_like = (
                Bipartition(Partition((1,) * k), Partition(())),
                Bipartition(Partition(()), Partition((1,) * k)),
            )
            if label not in sign_like:
                return False
        else:
            if label != DLabel(Partition((1,) * k), Partition(())):
                return False
    return True


def _pointwise_fix(action: MonomialAction, group: RecognizedSubgroup):
    """The full fixed locus of the subgroup, as cosets."""
    A, b = [], []
    for w in group.elements:
        M = w.matrix()
        n = action.rank
        A.extend([M[i][j] - (i == j) for j in range(n)] for i in range(n))
        b.extend([0] * n)
    return _solve_torus(A, b, action.rank)


def spectral_eq(action: MonomialAction):
    """Families of the spectral extended quotient.

    Every stratum contributes characters of its stabilizer.  The kinds
    sort them the way the quotient is usually pictured: the ``generic``
    sheet (trivial stabilizer), ``sheet``/``plane_generic`` families
    supported on a connected positive-dimensional fixed torus (trivial
    and nontrivial characters respectively), and ``special`` families
    on disconnected or zero-dimensional strata.  At a zero-dimensional
    stratum only the characters sending every reflection with connected
    fixed torus to minus the identity start a new family; the rest
    continue families of larger strata.
    """
    out = []
    for st in strata(action):
        H = st.group
        if H.order == 1:
            out.append(EQPoint(st.base, H, H.irreps()[0], "generic"))
            continue
        if st.dimension > 0:
            connected = len(_pointwise_fix(action, H)) == 1
            trivial = H.irreps()[0]
            for rho in H.irreps():
                if connected:
                    kind = "sheet" if rho == trivial else "plane_generic"
                else:
                    kind = "special"
                out.append(EQPoint(st.base, H, rho, kind))
            continue
        refl = [
            w
            for w in H.elements
            if _is_reflection(w) and len(fixed_locus(w)) == 1
        ]
        for rho in H.irreps():
            if all(_acts_by_minus_one(H, rho, w) for w in refl):
                out.append(EQPoint(st.base, H, rho, "special"))
    return out


def eq_pairs(action: MonomialAction):
    """Every (stratum representative, stabilizer character) pair, with
    no family bookkeeping; this is the extended quotient as a plain set
    of orbit representatives."""
    out = []
    for st in strata(action):
        for rho in st.group.irreps():
            out.append((st, rho))
    return out


@dataclass(frozen=True)
class GeoEQFamily:
    """A family of the geometric extended quotient: a group element with
    one component of its fixed locus, up to simultaneous conjugation."""

    element: SignedPermutation
    component: TorusCoset

    def __str__(self) -> str:
        return f"(w={self.element.images}/{self.element.signs}, {self.component})"


def geometric_eq(action: MonomialAction):
    """Orbit representatives of pairs (element, component of its fixed
    locus); per element class the families are the centralizer orbits
    on components."""
    elems = action.elements
    key = lambda w: (w.images, w.signs)
    seen = set()
    out = []
    for w in sorted(elems, key=key):
        if key(w) in seen:
            continue
        conj_class = {v * w * v.inverse() for v in elems}
        seen |= {key(u) for u in conj_class}
        rep = min(conj_class, key=key)
        centralizer = [z for z in elems if z * rep == rep * z]
        comps = fixed_locus(rep)
        done = set()
        for c in sorted(comps, key=_coset_key):
            if c in done:
                continue
            orbit = {act_coset(z, c) for z in centralizer}
            done |= orbit
            out.append(GeoEQFamily(rep, min(orbit, key=_coset_key)))
    return out


def irreps(group: RecognizedSubgroup):
    return group.irreps()
