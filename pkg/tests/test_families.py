import numpy as np
import pytest

from schurclosure.codes import CodeError, dual, min_distance_bruteforce, square
from schurclosure.families import (GrsSpec, HermitianSpec, designed_distance, dual_multipliers,
                                   grs_code, grs_dual, grs_square_spec, hermitian_code,
                                   hermitian_dual, hermitian_monomials, hermitian_points,
                                   random_grs_spec)
from schurclosure.gf import field_of_order

from oracles import ref_of


def test_grs_examples():
    F = field_of_order(5)
    C = grs_code(GrsSpec(F, [0, 1, 2, 3], [1, 1, 1, 1], 2))
    assert (C.n, C.k) == (4, 2)
    b = np.array([1, 2, 3, 4])
    assert grs_code(GrsSpec(F, [0, 1, 2, 3], b, 1)).gen.tolist() == [[1, 2, 3, 4]]


def test_grs_spec_validation():
    F = field_of_order(5)
    with pytest.raises(CodeError):
        GrsSpec(F, [0, 1, 1], [1, 1, 1], 2)
    with pytest.raises(CodeError):
        GrsSpec(F, [0, 1, 2], [1, 0, 1], 2)
    with pytest.raises(CodeError):
        GrsSpec(F, [0, 1, 2], [1, 1, 1], 4)


@pytest.mark.parametrize("q", [5, 11, 16, 49])
def test_grs_dual_multipliers(q):
    F = field_of_order(q)
    rng = np.random.default_rng(q)
    for k in range(0, q):
        spec = random_grs_spec(F, q - 1, min(k, q - 1), rng)
        assert dual(grs_code(spec)) == grs_code(grs_dual(spec))


def test_dual_multiplier_formula_by_hand():
    F = field_of_order(5)
    R = ref_of(F)
    a, b = [0, 1, 2, 4], [1, 3, 2, 4]
    c = dual_multipliers(F, a, b)
    for i in range(4):
        prod = b[i]
        for j in range(4):
            if j != i:
                prod = R.mul(prod, R.sub(a[i], a[j]))
        assert R.mul(int(c[i]), prod) == 1


def test_grs_square_spec():
    F = field_of_order(11)
    spec = random_grs_spec(F, 10, 4, np.random.default_rng(0))
    assert square(grs_code(spec)) == grs_code(grs_square_spec(spec))
    assert grs_square_spec(spec.with_k(7)).k == 10


@pytest.mark.parametrize("q0", [2, 3, 4])
def test_hermitian_points_on_curve(q0):
    F = field_of_order(q0 * q0)
    R = ref_of(F)
    pts = hermitian_points(q0)
    assert pts.shape == (q0**3, 2)
    assert len({tuple(p) for p in pts.tolist()}) == q0**3
    for x, y in pts.tolist():
        assert R.add(R.pow(y, q0), y) == R.pow(x, q0 + 1)


def test_hermitian_small_examples():
    assert hermitian_monomials(2, 3) == [(0, 0), (1, 0), (0, 1)]
    C = hermitian_code(HermitianSpec(2, 3))
    assert (C.n, C.k) == (8, 3)
    assert C.field.q == 4
    R = hermitian_code(HermitianSpec(2, 0))
    assert R.k == 1 and R.gen.tolist() == [[1] * 8]
    assert min_distance_bruteforce(C) >= designed_distance(HermitianSpec(2, 3)) == 5


@pytest.mark.parametrize("q0", [2, 3, 4])
def test_hermitian_dimensions_follow_riemann_roch(q0):
    g, n = q0 * (q0 - 1) // 2, q0**3
    for m in range(0, n + 2 * g + 1):
        k = hermitian_code(HermitianSpec(q0, m)).k
        if 2 * g - 2 < m < n:
            assert k == m - g + 1
        if m >= n + 2 * g - 1:
            assert k == n


def test_gf49_hermitian_dimensions():
    spec = HermitianSpec(7, 170)
    C = hermitian_code(spec)
    assert (C.n, C.k) == (343, 150)
    assert dual(C).k == 193
    assert hermitian_dual(spec).m == 213


@pytest.mark.parametrize("q0,m", [(2, 3), (2, 5), (3, 10), (3, 20)])
def test_hermitian_dual_degree(q0, m):
    spec = HermitianSpec(q0, m)
    assert dual(hermitian_code(spec)) == hermitian_code(hermitian_dual(spec))
    assert hermitian_dual(hermitian_dual(spec)) == spec


def test_hermitian_dual_of_full_code():
    with pytest.raises(CodeError):
        hermitian_dual(HermitianSpec(2, 20))


def test_hermitian_spec_validation():
    with pytest.raises(CodeError):
        HermitianSpec(2, -1)
    with pytest.raises(ValueError):
        HermitianSpec(6, 3)
