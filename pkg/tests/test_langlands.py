import random

import pytest

from abpscalc.extquot import MINUS_ONE, free, q_power
from abpscalc.langlands import (
    DimensionMismatch,
    PadicGroup,
    TypeMismatch,
    centralizer_display,
    centralizer_restriction,
    component_groups,
    cuspidal_support,
    enhancements,
    infinitesimal_character,
    is_cuspidal,
    is_discrete,
    is_tempered,
    line,
    parameter,
    parse_catalogue,
    validate,
)

SP4 = PadicGroup("Sp", 4)
ZETA = line("zeta")
ONEL = line("1")
XI = line("xi")
ZETAXI = line("zeta", MINUS_ONE)
CHI = free("x")

PHI_RED = parameter((ZETA, 3), (ZETA, 1), ONEL)
PHI_GREEN = parameter((ZETA.twisted(CHI), 2), ONEL, (ZETA.twisted(CHI.inverse()), 2))
PHI_LINE = parameter(
    ZETA.twisted(CHI), ZETA, ONEL, ZETA, ZETA.twisted(CHI.inverse())
)
PHI_DEEP = parameter(ZETA, ZETAXI, ONEL, ZETAXI, ZETA)


class TestCatalogue:
    def test_parse(self):
        cat = parse_catalogue("mu kind=ramified order=4 dim=1 selfdual=none period=1")
        assert cat["mu"].order == 4
        assert cat["mu"].selfdual == "none"

    def test_unknown_key_rejected(self):
        with pytest.raises(ValueError):
            parse_catalogue("mu kind=ramified conductor=3")

    def test_xi_is_a_twist_of_the_trivial_class(self):
        assert XI.base.name == "1"
        assert XI.twist == MINUS_ONE
        assert XI.is_selfdual


class TestValidation:
    def test_dimension(self):
        with pytest.raises(DimensionMismatch):
            validate(SP4, parameter((ZETA, 3)))

    def test_unmatched_twist(self):
        bad = parameter((ZETA.twisted(CHI), 2), ONEL, (ZETA.twisted(CHI), 2))
        with pytest.raises(TypeMismatch):
            validate(SP4, bad)

    def test_wrong_parity_odd_multiplicity(self):
        bad = parameter((ZETA, 2), (ZETA, 1), ONEL, (XI, 1))
        with pytest.raises(TypeMismatch):
            validate(SP4, bad)

    def test_wrong_parity_even_multiplicity_ok(self):
        ok = parameter((ZETA, 2), (ZETA, 2), ONEL)
        assert validate(SP4, ok) is ok

    def test_corpus_is_valid(self):
        for phi in (PHI_RED, PHI_GREEN, PHI_LINE, PHI_DEEP):
            validate(SP4, phi)


class TestDiscreteTempered:
    def test_red_is_discrete_tempered(self):
        assert is_discrete(SP4, PHI_RED)
        assert is_tempered(SP4, PHI_RED)

    def test_green_is_neither_discrete_nor_cuspidal(self):
        assert not is_discrete(SP4, PHI_GREEN)
        ok, chars = is_cuspidal(SP4, PHI_GREEN)
        assert not ok and chars == []

    def test_untempered_twist(self):
        phi = parameter((ZETA.twisted(q_power(1)), 2), ONEL,
                        (ZETA.twisted(q_power(-1)), 2))
        assert not is_tempered(SP4, phi)

    def test_deep_not_discrete(self):
        assert not is_discrete(SP4, PHI_DEEP)


class TestCentralizers:
    """The four centralizer shapes of the rank-two corpus."""

    def test_red(self):
        d = centralizer_restriction(SP4, PHI_RED)
        assert str(d.group) == "S(O4xO1)"
        assert str(d.unipotent) == "(3,1)x(1)"

    def test_green(self):
        d = centralizer_restriction(SP4, PHI_GREEN)
        assert centralizer_display(d) == "GL2"
        assert str(d.unipotent) == "(2)x(1)"

    def test_line(self):
        d = centralizer_restriction(SP4, PHI_LINE)
        assert str(d.group) == "GL1xS(O2xO1)"

    def test_deep(self):
        d = centralizer_restriction(SP4, PHI_DEEP)
        assert str(d.group) == "S(O2xO2xO1)"

    def test_component_groups(self):
        cg = component_groups(SP4, PHI_RED)
        assert cg.a_group.structure() == "(Z/2)^2"
        assert cg.a_group.subgroup_generators() == ("z1z3", "z3z1'")
        assert cg.a_connected.structure() == "Z/2"
        assert cg.a_connected.subgroup_generators() == ("z1z3",)
        assert cg.s_order == 4

    def test_component_groups_rest(self):
        for phi, a, gens in [
            (PHI_GREEN, "1", ()),
            (PHI_LINE, "Z/2", ("z1z1'",)),
            (PHI_DEEP, "(Z/2)^2", ("z1z1'", "z1'z1''")),
        ]:
            cg = component_groups(SP4, phi)
            assert cg.a_group.structure() == a
            assert cg.a_group.subgroup_generators() == gens
            assert cg.a_connected.structure() == "1"


class TestCuspidality:
    def test_red_two_cuspidal_enhancements(self):
        ok, chars = is_cuspidal(SP4, PHI_RED)
        assert ok and len(chars) == 2
        for ch in chars:
            assert ch.value((0, 1)) * ch.value((0, 3)) == -1

    def test_discrete_but_not_cuspidal(self):
        phi = parameter((ZETA, 3), (XI, 1), ONEL)
        assert is_discrete(SP4, phi)
        ok, _ = is_cuspidal(SP4, phi)
        assert not ok

    def test_smallest_cuspidal_families(self):
        # symplectic p-adic groups: cuspidal shapes need triangular size
        assert is_cuspidal(PadicGroup("Sp", 2), parameter((ZETA, 1), (ONEL, 1), (XI, 1)))[0]


class TestInfinitesimalCharacter:
    def test_red(self):
        ic = infinitesimal_character(SP4, PHI_RED)
        flat = sorted((str(l), m) for l, m in ic.items())
        assert flat == [("1", 1), ("q^-1*zeta", 1), ("q^1*zeta", 1), ("zeta", 2)]

    def test_total_count_is_dimension(self):
        ic = infinitesimal_character(SP4, PHI_GREEN)
        assert sum(ic.values()) == 5

    def test_gl2_three_parameters_share_one(self):
        G = PadicGroup("GL", 2)
        sigma = parameter(ONEL.twisted(q_power(1)), ONEL.twisted(q_power(-1)))
        steinberg = parameter((ONEL, 2))
        principal = parameter(ONEL.twisted(q_power(1)), ONEL.twisted(q_power(-1)))
        chars = [infinitesimal_character(G, p) for p in (sigma, steinberg, principal)]
        assert chars[0] == chars[1] == chars[2]
        assert sorted(str(k) for k in chars[0]) == ["q^{-1/2}", "q^{1/2}"]


class TestCuspidalSupport:
    def test_red_cuspidal_rows_are_self_supported(self):
        _, chars = is_cuspidal(SP4, PHI_RED)
        for ch in chars:
            res = cuspidal_support(SP4, PHI_RED, ch)
            assert str(res.levi_dual) == "SO5"
            assert res.coordinates == ()
            assert res.embedded() == PHI_RED

    def test_red_principal_rows(self):
        _, chars = enhancements(SP4, PHI_RED)
        # the two non-cuspidal enhancements land on the diagonal torus
        _, cusp = is_cuspidal(SP4, PHI_RED)
        rest = [c for c in chars if c not in cusp]
        assert len(rest) == 2
        for ch in rest:
            res = cuspidal_support(SP4, PHI_RED, ch)
            assert res.correcting == (2, 0)
            assert [str(l) for l, _ in res.coordinates] == ["zeta", "zeta"]

    def test_green_correcting(self):
        res = cuspidal_support(SP4, PHI_GREEN,
                               enhancements(SP4, PHI_GREEN)[1][0])
        assert res.correcting == (1, -1)
        got = sorted(str(l) for l in infinitesimal_character(SP4, res.embedded()))
        want = sorted(str(l) for l in infinitesimal_character(SP4, PHI_GREEN))
        assert got == want


# ---------------------------------------------------------------------------
# conservation of the infinitesimal character under cuspidal support


LINE_POOL = [
    line("1"),
    line("xi"),
    line("zeta"),
    line("zeta", MINUS_ONE),
    line("eta"),
    line("eta", MINUS_ONE),
]


def random_parameter(rng, G):
    N = G.dual_dim
    orthogonal = G.dual_kind != "Sp"
    summands = []
    remaining = N
    while remaining:
        roll = rng.random()
        if roll < 0.3 and remaining >= 2:
            a = rng.randint(1, remaining // 2)
            base = rng.choice(LINE_POOL)
            tw = (q_power(rng.randint(1, 2)) if rng.random() < 0.5
                  else free(f"x{rng.randint(1, 3)}"))
            l = base.twisted(tw)
            summands += [(l, a), (l.dual(), a)]
            remaining -= 2 * a
            continue
        if roll < 0.45:
            # wrong-parity self-dual summand, taken twice
            a = 2 if orthogonal else 1
            if remaining >= 2 * a:
                l = rng.choice(LINE_POOL)
                summands += [(l, a), (l, a)]
                remaining -= 2 * a
                continue
        l = rng.choice(LINE_POOL)
        if orthogonal:
            a = rng.choice([x for x in range(1, remaining + 1, 2)])
        else:
            a = rng.choice([x for x in range(2, remaining + 1, 2)] or [0])
            if a == 0:
                # parity cannot close with a matching summand; restart
                summands, remaining = [], N
                continue
        summands.append((l, a))
        remaining -= a
    return parameter(*summands)


@pytest.mark.parametrize("family,size", [("Sp", 4), ("SO", 5), ("SO", 4)])
def test_conservation_random(family, size):
    G = PadicGroup(family, size)
    rng = random.Random(20260826 + size)
    checked = 0
    for _ in range(40):
        phi = validate(G, random_parameter(rng, G))
        lam = infinitesimal_character(G, phi)
        _, chars = enhancements(G, phi)
        for ch in chars:
            res = cuspidal_support(G, phi, ch)
            assert infinitesimal_character(G, res.embedded()) == lam
            checked += 1
    assert checked >= 40


def test_conservation_corpus():
    for phi in (PHI_RED, PHI_GREEN, PHI_LINE, PHI_DEEP):
        lam = infinitesimal_character(SP4, phi)
        _, chars = enhancements(SP4, phi)
        for ch in chars:
            res = cuspidal_support(SP4, phi, ch)
            assert infinitesimal_character(SP4, res.embedded()) == lam
