"""Partition and symbol combinatorics, signed permutations, and integer
Smith normal form.

Everything in this module is exact: partitions are tuples of ints,
symbols are pairs of strictly increasing tuples, and the Smith normal
form is computed over the integers with unimodular transforms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product


class MalformedSymbol(ValueError):
    """Raised when a symbol does not satisfy the defect-1 conventions."""


# ---------------------------------------------------------------------------
# partitions


def _normalize_parts(parts) -> tuple[int, ...]:
    parts = tuple(sorted((int(p) for p in parts if int(p) != 0), reverse=True))
    if any(p < 0 for p in parts):
        raise ValueError("partition parts must be nonnegative")
    return parts


@dataclass(frozen=True, order=True)
class Partition:
    """A partition, stored as a weakly decreasing tuple of positive ints."""

    parts: tuple[int, ...] = ()

    def __init__(self, parts=()):
        object.__setattr__(self, "parts", _normalize_parts(parts))

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __bool__(self) -> bool:
        return bool(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition()
        cols = [sum(1 for p in self.parts if p >= j) for j in range(1, self.parts[0] + 1)]
        return Partition(cols)

    def multiplicity(self, value: int) -> int:
        return sum(1 for p in self.parts if p == value)

    def distinct_parts(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.parts)))

    def ascending(self) -> tuple[int, ...]:
        return tuple(reversed(self.parts))

    def __str__(self) -> str:
        if not self.parts:
            return "()"
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def partitions(n: int, max_part: int | None = None):
    """Yield all partitions of ``n`` (descending lexicographic order)."""
    if n < 0:
        return
    if n == 0:
        yield Partition()
        return
    if max_part is None or max_part > n:
        max_part = n
    for first in range(max_part, 0, -1):
        for rest in partitions(n - first, first):
            yield Partition((first,) + rest.parts)


@dataclass(frozen=True, order=True)
class Bipartition:
    """An ordered pair of partitions."""

    alpha: Partition = Partition()
    beta: Partition = Partition()

    @property
    def size(self) -> int:
        return self.alpha.size + self.beta.size

    def __str__(self) -> str:
        return f"({_part_str(self.alpha)},{_part_str(self.beta)})"


def _part_str(p: Partition) -> str:
    if not p:
        return "-"
    return ".".join(str(x) for x in p.parts)


def bipartitions(n: int):
    """All bipartitions of ``n``, in a fixed deterministic order.

    The order is: size of the first component descending, then each
    component in the order produced by :func:`partitions`.
    """
    out = []
    for k in range(n, -1, -1):
        for a in partitions(k):
            for b in partitions(n - k):
                out.append(Bipartition(a, b))
    return out


@dataclass(frozen=True, order=True)
class DLabel:
    """An unordered pair of partitions, with a primed tag for split pairs.

    Used for irreducible characters of even-signed permutation groups:
    pairs with ``alpha != beta`` are unordered, while ``{alpha, alpha}``
    splits into an unprimed and a primed label.
    """

    alpha: Partition
    beta: Partition
    primed: bool = False

    def __init__(self, alpha, beta, primed=False):
        a, b = sorted([alpha, beta])
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)
        if primed and a != b:
            raise ValueError("primed tag only applies when the two partitions agree")
        object.__setattr__(self, "primed", bool(primed))

    @property
    def split(self) -> bool:
        return self.alpha == self.beta

    def __str__(self) -> str:
        s = f"{{{_part_str(self.alpha)},{_part_str(self.beta)}}}"
        return s + ("'" if self.primed else "")


def dlabels(n: int):
    """All labels for rank-``n`` even-signed permutation group characters."""
    seen = set()
    out = []
    for bp in bipartitions(n):
        key = frozenset([bp.alpha, bp.beta])
        if key in seen:
            continue
        seen.add(key)
        if bp.alpha == bp.beta:
            out.append(DLabel(bp.alpha, bp.beta, primed=False))
            out.append(DLabel(bp.alpha, bp.beta, primed=True))
        else:
            out.append(DLabel(bp.alpha, bp.beta))
    return out


def sign_twist(label):
    """Tensor a character label by the sign character.

    For bipartitions (hyperoctahedral groups) this swaps the two
    components and transposes each.  For :class:`DLabel` it transposes
    both components; for split labels the primed tag toggles.
    """
    if isinstance(label, Bipartition):
        return Bipartition(label.beta.conjugate(), label.alpha.conjugate())
    if isinstance(label, DLabel):
        a = label.alpha.conjugate()
        b = label.beta.conjugate()
        if a == b:
            primed = not label.primed if label.split else False
            return DLabel(a, b, primed=primed)
        return DLabel(a, b)
    if isinstance(label, Partition):
        return label.conjugate()
    raise TypeError(f"cannot sign-twist {label!r}")


# ---------------------------------------------------------------------------
# symbols (defect-1 convention)


@dataclass(frozen=True, order=True)
class BCSymbol:
    """A two-row symbol with strictly increasing rows.

    The normative convention used for torus-block symbols has
    ``len(top) == len(bottom) + 1`` (defect one); other defects occur for
    the non-principal series and are kept as raw rows.
    """

    top: tuple[int, ...]
    bottom: tuple[int, ...]

    def __init__(self, top, bottom):
        top = tuple(int(x) for x in top)
        bottom = tuple(int(x) for x in bottom)
        for row in (top, bottom):
            if any(b <= a for a, b in zip(row, row[1:])):
                raise MalformedSymbol(f"rows must be strictly increasing: {row}")
            if any(x < 0 for x in row):
                raise MalformedSymbol(f"rows must be nonnegative: {row}")
        object.__setattr__(self, "top", top)
        object.__setattr__(self, "bottom", bottom)

    @property
    def defect(self) -> int:
        return len(self.top) - len(self.bottom)

    def shift(self) -> "BCSymbol":
        """The equivalent symbol one padding step larger."""
        return BCSymbol((0,) + tuple(x + 2 for x in self.top),
                        (1,) + tuple(x + 2 for x in self.bottom))

    def reduce(self) -> "BCSymbol":
        """The minimal representative under shift equivalence."""
        top, bottom = self.top, self.bottom
        while top and bottom and top[0] == 0 and bottom[0] == 1:
            top = tuple(x - 2 for x in top[1:])
            bottom = tuple(x - 2 for x in bottom[1:])
        return BCSymbol(top, bottom)

    def __str__(self) -> str:
        t = ",".join(str(x) for x in self.top) or "-"
        b = ",".join(str(x) for x in self.bottom) or "-"
        return f"({t}|{b})"


def symbol_of_bipartition(bp: Bipartition) -> BCSymbol:
    """The defect-1 symbol of a bipartition (reduced form).

    With ``alpha`` padded to ``m + 1`` parts and ``beta`` to ``m`` parts
    (ascending), the rows are ``alpha_i + 2(i-1)`` and
    ``beta_i + 2(i-1) + 1``.
    """
    m = max(len(bp.alpha) - 1, len(bp.beta), 0)
    a = (0,) * (m + 1 - len(bp.alpha)) + bp.alpha.ascending()
    b = (0,) * (m - len(bp.beta)) + bp.beta.ascending()
    top = tuple(x + 2 * i for i, x in enumerate(a))
    bottom = tuple(x + 2 * i + 1 for i, x in enumerate(b))
    return BCSymbol(top, bottom).reduce()


def bipartition_of_symbol(sym: BCSymbol) -> Bipartition:
    """Inverse of :func:`symbol_of_bipartition` (defect-1 symbols only)."""
    if sym.defect != 1:
        raise MalformedSymbol(f"expected defect 1, got {sym.defect}")
    alpha = [x - 2 * i for i, x in enumerate(sym.top)]
    beta = [x - 2 * i - 1 for i, x in enumerate(sym.bottom)]
    if any(x < 0 for x in alpha) or any(x < 0 for x in beta):
        raise MalformedSymbol(f"symbol {sym} does not unstaircase to a bipartition")
    for row in (alpha, beta):
        if any(b < a for a, b in zip(row, row[1:])):
            raise MalformedSymbol(f"symbol {sym} does not unstaircase to a bipartition")
    return Bipartition(Partition(alpha), Partition(beta))


# ---------------------------------------------------------------------------
# signed permutations


@dataclass(frozen=True, order=True)
class SignedPermutation:
    """An element of the hyperoctahedral group on ``k`` coordinates.

    ``images[i]`` is the (1-based) coordinate that coordinate ``i + 1``
    is sent to, and ``signs[i]`` is the sign (+1 or -1) picked up along
    the way: acting on a torus point, coordinate ``images[i]`` of the
    result equals coordinate ``i + 1`` of the argument raised to
    ``signs[i]``.
    """

    images: tuple[int, ...]
    signs: tuple[int, ...]

    def __init__(self, images, signs):
        images = tuple(int(x) for x in images)
        signs = tuple(int(s) for s in signs)
        k = len(images)
        if sorted(images) != list(range(1, k + 1)):
            raise ValueError(f"not a permutation of 1..{k}: {images}")
        if len(signs) != k or any(s not in (-1, 1) for s in signs):
            raise ValueError(f"signs must be +-1 of length {k}: {signs}")
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "signs", signs)

    @property
    def rank(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, k: int) -> "SignedPermutation":
        return cls(tuple(range(1, k + 1)), (1,) * k)

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        """Composition: ``(self * other)`` acts as ``self`` after ``other``."""
        k = self.rank
        if other.rank != k:
            raise ValueError("rank mismatch")
        images = tuple(self.images[other.images[i] - 1] for i in range(k))
        signs = tuple(other.signs[i] * self.signs[other.images[i] - 1] for i in range(k))
        return SignedPermutation(images, signs)

    def inverse(self) -> "SignedPermutation":
        k = self.rank
        images = [0] * k
        signs = [1] * k
        for i in range(k):
            images[self.images[i] - 1] = i + 1
            signs[self.images[i] - 1] = self.signs[i]
        return SignedPermutation(tuple(images), tuple(signs))

    def matrix(self) -> list[list[int]]:
        """The monomial integer matrix of the action on the exponent lattice.

        Row ``j`` of the matrix describes coordinate ``j + 1`` of the
        image point as a monomial in the coordinates of the argument.
        """
        k = self.rank
        mat = [[0] * k for _ in range(k)]
        for i in range(k):
            mat[self.images[i] - 1][i] = self.signs[i]
        return mat

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.rank + 1)) and all(s == 1 for s in self.signs)

    def order(self) -> int:
        n, w = 1, self
        while not w.is_identity():
            w = w * self
            n += 1
        return n

    def __str__(self) -> str:
        bits = []
        for i in range(self.rank):
            s = "-" if self.signs[i] < 0 else ""
            bits.append(f"{i + 1}->{s}{self.images[i]}")
        return "[" + " ".join(bits) + "]"


def _permutations(seq):
    if not seq:
        yield ()
        return
    for i, x in enumerate(seq):
        for rest in _permutations(seq[:i] + seq[i + 1:]):
            yield (x,) + rest


@lru_cache(maxsize=None)
def all_signed_permutations(k: int) -> tuple[SignedPermutation, ...]:
    out = []
    for perm in _permutations(tuple(range(1, k + 1))):
        for signs in product((1, -1), repeat=k):
            out.append(SignedPermutation(perm, signs))
    return tuple(out)


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(matrix):
    """Smith normal form over the integers.

    Returns ``(S, U, V)`` with ``U @ A @ V == S``, where ``U`` and ``V``
    are unimodular and ``S`` is diagonal with each diagonal entry
    dividing the next.  The pivot rule is deterministic: the nonzero
    entry of smallest absolute value, topmost then leftmost on ties.
    """
    A = [[int(x) for x in row] for row in matrix]
    n = len(A)
    m = len(A[0]) if n else 0
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    V = [[int(i == j) for j in range(m)] for i in range(m)]

    def row_op(i, j, c):  # row_i += c * row_j
        for t in range(m):
            A[i][t] += c * A[j][t]
        for t in range(n):
            U[i][t] += c * U[j][t]

    def col_op(i, j, c):  # col_i += c * col_j
        for t in range(n):
            A[t][i] += c * A[t][j]
        for t in range(m):
            V[t][i] += c * V[t][j]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for t in range(n):
            A[t][i], A[t][j] = A[t][j], A[t][i]
        for t in range(m):
            V[t][i], V[t][j] = V[t][j], V[t][i]

    def row_negate(i):
        for t in range(m):
            A[i][t] = -A[i][t]
        for t in range(n):
            U[i][t] = -U[i][t]

    k = 0
    while k < min(n, m):
        # find pivot: smallest |entry| != 0 in the trailing block
        pivot = None
        best = None
        for i in range(k, n):
            for j in range(k, m):
                if A[i][j] != 0 and (best is None or abs(A[i][j]) < best):
                    best = abs(A[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        done = False
        while not done:
            i, j = pivot
            row_swap(k, i)
            col_swap(k, j)
            if A[k][k] < 0:
                row_negate(k)
            done = True
            for i in range(k + 1, n):
                q = A[i][k] // A[k][k]
                if q:
                    row_op(i, k, -q)
                if A[i][k] != 0:
                    done = False
            for j in range(k + 1, m):
                q = A[k][j] // A[k][k]
                if q:
                    col_op(j, k, -q)
                if A[k][j] != 0:
                    done = False
            if done:
                # divisibility: A[k][k] must divide the rest of the block
                for i in range(k + 1, n):
                    for j in range(k + 1, m):
                        if A[i][j] % A[k][k] != 0:
                            row_op(k, i, 1)
                            done = False
                            break
                    if not done:
                        break
            if not done:
                pivot = None
                best = None
                for i in range(k, n):
                    for j in range(k, m):
                        if A[i][j] != 0 and (best is None or abs(A[i][j]) < best):
                            best = abs(A[i][j])
                            pivot = (i, j)
        k += 1
    return A, U, V


def mat_mul(A, B):
    n, k = len(A), len(B)
    m = len(B[0]) if k else 0
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def mat_det(A):
    """Determinant of an integer matrix, by fraction-free elimination."""
    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    det = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if M[r][c] != 0), None)
        if pivot is None:
            return 0
        if pivot != c:
            M[c], M[pivot] = M[pivot], M[c]
            det = -det
        det *= M[c][c]
        inv = M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / inv
            for t in range(c, n):
                M[r][t] -= f * M[c][t]
    assert det.denominator == 1
    return int(det)
