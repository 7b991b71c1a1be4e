import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from schurclosure.gf import GF, FieldError, default_modulus, field, field_of_order, prime_power

from oracles import ref_of

SMALL_ORDERS = [2, 3, 4, 5, 7, 8, 9, 16]


@pytest.mark.parametrize("q", SMALL_ORDERS)
def test_tables_match_schoolbook_arithmetic(q):
    F = field_of_order(q)
    R = ref_of(F)
    a, b = np.meshgrid(np.arange(q), np.arange(q), indexing="ij")
    add = np.array([[R.add(x, y) for y in range(q)] for x in range(q)])
    mul = np.array([[R.mul(x, y) for y in range(q)] for x in range(q)])
    sub = np.array([[R.sub(x, y) for y in range(q)] for x in range(q)])
    assert np.array_equal(F.add(a, b), add)
    assert np.array_equal(F.mul(a, b), mul)
    assert np.array_equal(F.sub(a, b), sub)


@pytest.mark.parametrize("q", SMALL_ORDERS)
def test_field_axioms_exhaustive(q):
    F = field_of_order(q)
    els = F.elements()
    a, b, c = (x.ravel() for x in np.meshgrid(els, els, els, indexing="ij"))
    assert np.array_equal(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)))
    assert np.array_equal(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)))
    assert np.array_equal(F.add(F.add(a, b), c), F.add(a, F.add(b, c)))
    nz = els[1:]
    assert np.all(F.mul(nz, F.inv(nz)) == 1)
    assert np.all(F.add(els, F.neg(els)) == 0)
    assert np.array_equal(F.div(F.mul(a[b != 0], b[b != 0]), b[b != 0]), a[b != 0])


@pytest.mark.parametrize("q", SMALL_ORDERS + [49, 64])
def test_primitive_generates_group(q):
    F = field_of_order(q)
    assert F.order(F.primitive) == q - 1
    powers = F.pow(F.primitive, np.arange(q - 1))
    assert sorted(powers.tolist()) == list(range(1, q))


def test_known_values():
    F4 = field(2, 2)
    assert F4.mul(2, 2) == 3 and F4.mul(2, 3) == 1
    assert field(7).inv(3) == 5
    assert field_of_order(49).modulus == (1, 0, 1)
    assert field_of_order(16).modulus == default_modulus(2, 4)


def test_pow_conventions():
    F = field_of_order(9)
    assert F.pow(0, 0) == 1
    assert F.pow(0, 3) == 0
    for x in range(1, 9):
        assert F.mul(F.pow(x, -1), x) == 1
        assert F.pow(x, 8) == 1
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


@pytest.mark.parametrize("q", [2048, 2187, 3**5])
def test_large_field_paths(q):
    # no add tables for odd q > 1024; XOR for characteristic two
    F = field_of_order(q)
    R = ref_of(F)
    rng = np.random.default_rng(q)
    a = F.random(rng, 40)
    b = F.random(rng, 40)
    assert [R.mul(int(x), int(y)) for x, y in zip(a, b)] == F.mul(a, b).tolist()
    assert [R.add(int(x), int(y)) for x, y in zip(a, b)] == F.add(a, b).tolist()
    assert [R.sub(int(x), int(y)) for x, y in zip(a, b)] == F.sub(a, b).tolist()


@pytest.mark.parametrize("q", [2, 5, 16, 49, 61])
def test_matmul_matches_loops(q):
    F = field_of_order(q)
    R = ref_of(F)
    rng = np.random.default_rng(q)
    A = F.random(rng, (5, 7))
    B = F.random(rng, (7, 4))
    ref = np.zeros((5, 4), dtype=np.int64)
    for i, j in itertools.product(range(5), range(4)):
        s = 0
        for k in range(7):
            s = R.add(s, R.mul(int(A[i, k]), int(B[k, j])))
        ref[i, j] = s
    assert np.array_equal(F.matmul(A, B), ref)


def test_matmul_long_inner_dimension():
    # exercises chunking and the reduction table at realistic sizes
    F = field_of_order(49)
    rng = np.random.default_rng(0)
    A = F.random(rng, (3, 2000))
    B = F.random(rng, (2000, 2))
    ref = F.sum(F.mul(A[:, :, None], B[None, :, :]), axis=1)
    assert np.array_equal(F.matmul(A, B), ref)


@given(st.sampled_from(SMALL_ORDERS + [25, 27, 32, 49]), st.data())
def test_sum_and_prod_reduce(q, data):
    F = field_of_order(q)
    xs = data.draw(st.lists(st.integers(0, q - 1), min_size=1, max_size=12))
    s, p = 0, 1
    for x in xs:
        s, p = F.add(s, x), F.mul(p, x)
    assert F.sum(np.array(xs)) == s
    assert F.prod(np.array(xs)) == p


def test_serialize_roundtrip_and_cache():
    for q in (2, 9, 49, 64):
        F = field_of_order(q)
        assert GF.parse(F.serialize()) == F
    assert field(7, 2) is field(7, 2)


def test_subfield_elements():
    F = field_of_order(16)
    sub = F.subfield_elements(4)
    assert len(sub) == 4 and 0 in sub and 1 in sub
    assert np.all(F.pow(sub, 4) == sub)
    with pytest.raises(FieldError):
        F.subfield_elements(8)


@pytest.mark.parametrize("bad", [(6, 1), (2, 0)])
def test_bad_parameters(bad):
    with pytest.raises(FieldError):
        GF(*bad)


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        GF(2, 2, (1, 0, 1))  # x^2 + 1 = (x + 1)^2


def test_prime_power():
    assert prime_power(49) == (7, 2)
    assert prime_power(61) == (61, 1)
    with pytest.raises(FieldError):
        prime_power(12)


def test_out_of_range_elements_rejected():
    F = field_of_order(5)
    with pytest.raises(FieldError):
        F.asarray([1, 5])
    with pytest.raises(FieldError):
        GF.parse("GF 2 2 1 1")
