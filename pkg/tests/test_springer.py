import pytest

from abpscalc.combicore import Bipartition, DLabel, Partition, bipartitions, sign_twist
from abpscalc.springer import (
    GroupFactor,
    Orth,
    SL,
    SO,
    Sp,
    component_group,
    cuspidal_triples,
    enumerate_pairs,
    generalized_springer,
    generalized_springer_inverse,
    group_product,
    is_cuspidal_pair,
    is_distinguished,
    ordinary_symplectic_label,
    relative_weyl_group,
    springer_blocks,
    unipotent_classes,
    SignCharacter,
    UnipotentClass,
)


def cls(group, *parts, tag=""):
    return UnipotentClass((Partition(parts),), (tag,))


def char_from_marks(group, u, marks):
    """Sign character with value -1 exactly on the given part values."""
    A = component_group(group, u)
    vals = tuple(-1 if k[1] in marks else 1 for k in A.keys)
    return SignCharacter(vals, A)


def bp(alpha, beta):
    return Bipartition(Partition(alpha), Partition(beta))


# ---------------------------------------------------------------------------
# rank-3 symplectic group: the full correspondence, all three blocks


SP6_ORACLE = [
    # (parts, marked values, core size d, label)
    ((6,), (), 0, bp((3,), ())),
    ((4, 2), (), 0, bp((2,), (1,))),
    ((4, 2), (2, 4), 0, bp((), (3,))),
    ((4, 1, 1), (), 0, bp((2, 1), ())),
    ((3, 3), (), 0, bp((1,), (2,))),
    ((2, 2, 2), (), 0, bp((1, 1), (1,))),
    ((2, 2, 1, 1), (), 0, bp((1,), (1, 1))),
    ((2, 2, 1, 1), (2,), 0, bp((), (2, 1))),
    ((2, 1, 1, 1, 1), (), 0, bp((1, 1, 1), ())),
    ((1,) * 6, (), 0, bp((), (1, 1, 1))),
    ((6,), (6,), 1, bp((2,), ())),
    ((4, 2), (4,), 1, bp((1, 1), ())),
    ((4, 1, 1), (4,), 1, bp((1,), (1,))),
    ((2, 2, 2), (2,), 1, bp((), (2,))),
    ((2, 1, 1, 1, 1), (2,), 1, bp((), (1, 1))),
    ((4, 2), (2,), 2, bp((), ())),
]


def test_sp6_correspondence_matches_frozen_table():
    g = Sp(6)
    seen = []
    for parts, marks, d, label in SP6_ORACLE:
        u = cls(g, *parts)
        ch = char_from_marks(g, u, set(marks))
        triple, lab = generalized_springer(g, u, ch)
        assert triple.ds == (d,), (parts, marks)
        assert lab == (label,), (parts, marks, str(lab[0]), str(label))
        seen.append((u, ch))
    # the sixteen rows exhaust all pairs of the group
    assert len(enumerate_pairs(g)) == 16
    assert len({(u, ch) for u, ch in seen}) == 16


def test_sp6_cuspidal_row():
    g = Sp(6)
    u = cls(g, 4, 2)
    ch = char_from_marks(g, u, {2})
    assert is_cuspidal_pair(g, u, ch)
    assert not is_cuspidal_pair(g, u, char_from_marks(g, u, {4}))


def test_sp6_inverse_roundtrip():
    g = Sp(6)
    for parts, marks, d, label in SP6_ORACLE:
        u = cls(g, *parts)
        ch = char_from_marks(g, u, set(marks))
        triple, lab = generalized_springer(g, u, ch)
        assert generalized_springer_inverse(g, triple, lab) == (u, ch)


# ---------------------------------------------------------------------------
# rank-2 even special orthogonal group


def test_so4_correspondence_matches_frozen_table():
    g = SO(4)
    rows = {}
    for u in unipotent_classes(g):
        for ch in component_group(g, u).characters():
            triple, lab = generalized_springer(g, u, ch)
            rows[(u.partitions[0].parts, u.tags[0], ch.values)] = (triple.ds[0], lab[0])
    assert len(rows) == 5
    d, lab = rows[((3, 1), "", (1, 1))]
    assert (d, lab) == (0, DLabel(Partition((2,)), Partition()))
    d, lab = rows[((3, 1), "", (-1, 1))]
    assert (d, lab) == (2, bp((), ()))
    d, lab = rows[((2, 2), "I", ())]
    assert (d, lab) == (0, DLabel(Partition((1,)), Partition((1,)), primed=False))
    d, lab = rows[((2, 2), "II", ())]
    assert (d, lab) == (0, DLabel(Partition((1,)), Partition((1,)), primed=True))
    d, lab = rows[((1, 1, 1, 1), "", (1,))]
    assert (d, lab) == (0, DLabel(Partition(), Partition((1, 1))))


def test_so4_sign_twist_column():
    assert str(sign_twist(DLabel(Partition((2,)), Partition()))) == str(
        DLabel(Partition((1, 1)), Partition()))
    l = DLabel(Partition((1,)), Partition((1,)))
    assert sign_twist(l).primed and not sign_twist(sign_twist(l)).primed
    assert sign_twist(DLabel(Partition(), Partition((1, 1)))) == DLabel(
        Partition(), Partition((2,)))


# ---------------------------------------------------------------------------
# block bijectivity across a corpus of groups


CORPUS = (
    [Sp(2 * n) for n in range(0, 5)]
    + [SO(m) for m in range(1, 10)]
    + [Orth(m) for m in range(1, 9)]
    + [group_product(GroupFactor("GL", 2), GroupFactor("Sp", 4))]
    + [group_product(GroupFactor("O", 4), GroupFactor("O", 1), det1=True)]
    + [group_product(GroupFactor("O", 2), GroupFactor("O", 2), det1=True)]
    + [group_product(GroupFactor("O", 2), GroupFactor("O", 2), GroupFactor("O", 1),
                     det1=True)]
    + [group_product(GroupFactor("GL", 1), GroupFactor("O", 2), GroupFactor("O", 1),
                     det1=True)]
)


@pytest.mark.parametrize("g", CORPUS, ids=str)
def test_blocks_biject_with_relative_weyl_characters(g):
    # springer_blocks itself raises if any block fails the bijection
    blocks = springer_blocks(g)
    assert set(blocks) == set(cuspidal_triples(g))
    total = sum(len(rows) for rows in blocks.values())
    assert total == len(enumerate_pairs(g))
    for triple, rows in blocks.items():
        assert len(rows) == relative_weyl_group(triple).num_characters


def test_sp8_depth_two_block_contents():
    g = Sp(8)
    blocks = springer_blocks(g)
    row_sets = {t.ds[0]: {(u.partitions[0].parts, ch.values) for u, ch, _ in rows}
                for t, rows in blocks.items()}
    assert row_sets[2] == {((4, 2, 1, 1), (-1, 1)), ((6, 2), (-1, 1))}


def test_o4_principal_block_is_rank_two_signed_permutation_type():
    g = Orth(4)
    blocks = springer_blocks(g)
    principal = [rows for t, rows in blocks.items() if t.ds == (0,)]
    assert len(principal) == 1
    labels = {lab[0] for _, _, lab in principal[0]}
    assert labels == set(bipartitions(2))


# ---------------------------------------------------------------------------
# the principal-block staircase recipe


def test_ordinary_recipe_agrees_with_principal_block():
    for n in (1, 2, 3, 4, 5):
        g = Sp(2 * n)
        for u in unipotent_classes(g):
            ch = char_from_marks(g, u, set())
            triple, lab = generalized_springer(g, u, ch)
            assert triple.ds == (0,)
            assert lab[0] == ordinary_symplectic_label(u.partitions[0])


# ---------------------------------------------------------------------------
# cuspidal triples: closed-form catalogue


def test_symplectic_cuspidal_triple_counts():
    for n, want in [(2, 2), (4, 2), (6, 3), (8, 3), (10, 3), (12, 4)]:
        assert len(cuspidal_triples(Sp(n))) == want


def test_orthogonal_cuspidal_triple_counts():
    assert len(cuspidal_triples(SO(9))) == 2  # cores of sizes 1 and 9
    assert len(cuspidal_triples(SO(8))) == 2  # torus and a size-4 core
    assert len(cuspidal_triples(Orth(9))) == 4  # two liftings apiece
    assert len(cuspidal_triples(Orth(4))) == 3


def test_special_linear_cuspidal_triples():
    assert len(cuspidal_triples(SL(5))) == 5  # torus + four faithful characters
    assert len(cuspidal_triples(SL(6))) == 3
    regs = [t for t in cuspidal_triples(SL(6)) if t.order_char]
    assert sorted(t.order_char for t in regs) == [1, 5]
    assert all(t.core_partition(0) == Partition((6,)) for t in regs)


# ---------------------------------------------------------------------------
# component groups and distinguished classes


def test_component_group_presentations():
    g = Sp(6)
    A = component_group(g, cls(g, 4, 2))
    assert A.generators == ("z2", "z4") and A.order == 4
    A = component_group(SO(5), cls(SO(5), 3, 1, 1))
    assert A.generators == ("z1", "z3") and A.order == 2 and A.structure() == "Z/2"
    prod = group_product(GroupFactor("O", 4), GroupFactor("O", 1), det1=True)
    u = UnipotentClass((Partition((3, 1)), Partition((1,))), ("", ""))
    A = component_group(prod, u)
    assert A.subgroup_generators() == ("z1z3", "z3z1'")
    assert A.order == 4 and A.structure() == "(Z/2)^2"


def test_distinguished_classes():
    g = Sp(6)
    assert is_distinguished(g, cls(g, 6))
    assert is_distinguished(g, cls(g, 4, 2))
    assert not is_distinguished(g, cls(g, 3, 3))
    assert not is_distinguished(g, cls(g, 2, 2, 1, 1))
    assert is_distinguished(SO(7), cls(SO(7), 5, 1, 1)) is False
    assert is_distinguished(SO(7), cls(SO(7), 7))
    assert is_distinguished(SO(8), cls(SO(8), 5, 3))
