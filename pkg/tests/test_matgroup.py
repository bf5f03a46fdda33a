import math
import random

import pytest

from k3audit.exactfield import root_of_unity
from k3audit.matgroup import (
    CATALOGUE_NAMES,
    CapExceeded,
    CatalogueSyntaxError,
    CertificateError,
    GMatrix,
    abelianization,
    catalogue,
    center,
    closure,
    derived_subgroup,
    dump_catalogue,
    fixed_points_projective,
    linear_characters,
    parse_catalogue,
    projectivize,
    scalar_subgroup,
    structural_profile,
    tangent_determinant,
)
from k3audit.multipoly import ProjPoint

# Textbook class data (independent of this package)
PSL27_ORDERS = {1: 1, 2: 21, 3: 56, 4: 42, 7: 48}
S5_ORDERS = {1: 1, 2: 25, 3: 20, 4: 30, 5: 24, 6: 20}
A6_ORDERS = {1: 1, 2: 45, 3: 80, 4: 90, 5: 144}
S4_ORDERS = {1: 1, 2: 9, 3: 8, 4: 6}


def _cyclic(n):
    return GMatrix.diag([root_of_unity(n), 1])


def test_matrix_basics():
    a = GMatrix([[0, 1], [-1, 0]])
    assert a.order() == 4
    assert (a @ a.inverse()).is_identity()
    assert a.det() == 1
    assert a.trace() == 0
    assert GMatrix.permutation([1, 2, 0]).order() == 3
    assert GMatrix.diag([root_of_unity(3)] * 3).proj_order() == 1


def test_cyclic_and_dihedral_closure():
    assert len(closure([_cyclic(7)])) == 7
    r = GMatrix.diag([root_of_unity(5), root_of_unity(5, 4)])
    s = GMatrix.permutation([1, 0])
    D = closure([r, s])
    assert len(D) == 10
    assert structural_profile(D).abelianization == (2,)


def test_closure_cap():
    with pytest.raises(CapExceeded):
        closure([_cyclic(12)], cap=5)


def test_projective_quotient_of_scalars():
    G = closure([GMatrix.diag([root_of_unity(6)] * 2), GMatrix.permutation([1, 0])])
    assert len(G) == 12
    assert len(projectivize(G)) == 2
    assert len(scalar_subgroup(G)) == 6


@pytest.mark.parametrize(
    "name, orders",
    [("l27", PSL27_ORDERS), ("s5_perm5", S5_ORDERS), ("s4_p2", S4_ORDERS), ("t48_2d", S4_ORDERS)],
)
def test_element_order_statistics(name, orders):
    prof = structural_profile(catalogue(name).projective_group)
    assert prof.element_orders == orders


def test_valentiner_projective_is_a6(valentiner):
    from k3audit.matgroup import element_orders

    assert dict(element_orders(valentiner.projective_group)) == A6_ORDERS
    assert valentiner.linear_order == 1080


def test_klein_group_is_perfect(l27):
    prof = structural_profile(l27.group)
    assert prof.order == 168 and prof.derived_order == 168
    assert prof.abelianization == () and prof.center_order == 1


def test_quaternion_profile():
    G = catalogue("q8_2d").group
    assert len(center(G)) == 2
    assert len(derived_subgroup(G)) == 2
    assert structural_profile(G).abelianization == (2, 2)


@pytest.mark.parametrize("name", [n for n in CATALOGUE_NAMES if n != "valentiner"])
def test_linear_characters_form_dual_group(name):
    G = catalogue(name).group
    diag, _ = abelianization(G)
    chars = linear_characters(G)
    assert len(chars) == math.prod(diag)
    assert len(set(chars)) == len(chars)
    rng = random.Random(name)
    pairs = [(rng.randrange(len(G)), rng.randrange(len(G))) for _ in range(60)]
    for chi in chars:
        assert chi.is_multiplicative(pairs)
        assert math.lcm(1, *diag) % chi.order() == 0


def test_characters_of_cyclic_group_are_powers():
    G = closure([_cyclic(6)])
    vals = sorted(chi.order() for chi in linear_characters(G))
    assert vals == [1, 2, 3, 3, 6, 6]


def test_fixed_points_of_diagonal():
    z = root_of_unity(7)
    g = GMatrix.diag([z**4, z**2, z])
    loci = fixed_points_projective(g)
    assert len(loci) == 3 and all(not L.positive_dimensional for L in loci)
    pts = {L.point for L in loci}
    assert ProjPoint([1, 0, 0]) in pts and ProjPoint([0, 0, 1]) in pts


def test_fixed_points_flag_lines():
    g = GMatrix.diag([1, 1, -1])
    loci = fixed_points_projective(g)
    assert sorted(L.dimension for L in loci) == [0, 1]


def test_tangent_determinant():
    z = root_of_unity(7)
    g = GMatrix.diag([z**4, z**2, z])
    # at [1:0:0] the tangent action is diag(z^2/z^4, z/z^4)
    assert tangent_determinant(g, [1, 0, 0]) == (z**-2 * z**-3).minimal()
    with pytest.raises(ValueError):
        tangent_determinant(g, [1, 1, 0])


GRP = """# test group
group c3 size 2 order 3 projorder 3
gen a
z3, 0
0, 1
"""


def test_catalogue_text_round_trip():
    cat = parse_catalogue(GRP)
    assert cat.name == "c3" and len(cat.generators) == 1
    again = parse_catalogue(dump_catalogue(cat))
    assert again.generators[0] == cat.generators[0]
    assert (again.order, again.projorder) == (3, 3)


@pytest.mark.parametrize(
    "text",
    [
        "gen a\n1\n",
        "group c size 1 order 1\n",
        "group c size 2 order 1 projorder 1\ngen a\n1, 0\n",
        "group c size 1 order 1 projorder 1\nfrob\n",
    ],
)
def test_catalogue_syntax_errors(text):
    with pytest.raises(CatalogueSyntaxError):
        parse_catalogue(text)


def test_catalogue_certificates_are_checked(tmp_path, monkeypatch):
    (tmp_path / "l27.grp").write_text(
        "group l27 size 2 order 5 projorder 5\ngen a\nz4, 0\n0, 1\n", encoding="utf-8"
    )
    with pytest.raises(CertificateError):
        catalogue("l27", directory=tmp_path)
    monkeypatch.setenv("K3AUDIT_DATA", str(tmp_path))
    (tmp_path / "q8_2d.grp").write_text(
        "group q8_2d size 2 order 3 projorder 3\ngen a\nz3, 0\n0, 1\n", encoding="utf-8"
    )
    assert catalogue("q8_2d").linear_order == 3


def test_unknown_catalogue_name():
    with pytest.raises(KeyError):
        catalogue("nosuch")


def test_catalogue_certificate_characters(l27):
    # the Klein quartic ships as an invariant certificate of L2(7)
    assert l27.certificates and all(chi.is_trivial() for _, spec, chi in l27.certificates if spec == "trivial")
