import pytest

from polaris.errors import FieldError
from polaris.field import Automorphism, Field, apply_automorphism, field_make


# ---------------------------------------------------------------------------
# independent oracle: list-of-coefficients polynomial arithmetic, no tables
# ---------------------------------------------------------------------------

def poly_mul_mod(p, mod, a, b):
    """Multiply two little-endian coefficient lists mod a monic polynomial."""
    k = len(mod) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for deg in range(2 * k - 2, k - 1, -1):
        c = prod[deg]
        if c:
            prod[deg] = 0
            for j in range(k):
                prod[deg - k + j] = (prod[deg - k + j] - c * mod[j]) % p
    return prod[:k]


def decode(F, code):
    digits = []
    for _ in range(F.k):
        digits.append(code % F.p)
        code //= F.p
    return digits


def encode(F, digits):
    code = 0
    for d in reversed(digits):
        code = code * F.p + d
    return code


def oracle_mul(F, a, b):
    return encode(F, poly_mul_mod(F.p, list(F.conway), decode(F, a), decode(F, b)))


def oracle_add(F, a, b):
    return encode(F, [(x + y) % F.p for x, y in zip(decode(F, a), decode(F, b))])


SMALL_FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4)]


def test_gf2_codes():
    F = field_make(2, 1)
    assert list(F.elements()) == [0, 1]
    assert F.add(1, 1) == 0 and F.mul(1, 1) == 1


def test_gf4_product_of_generators():
    # 2 * 2 = 3 under the Conway polynomial x^2 + x + 1
    F = field_make(2, 2)
    assert list(F.elements()) == [0, 1, 2, 3]
    assert oracle_mul(F, 2, 2) == 3
    assert F.mul(2, 2) == 3


def test_gf3_squares():
    F = field_make(3, 1)
    assert F.mul(2, 2) == 1


@pytest.mark.parametrize("p,k", SMALL_FIELDS)
def test_tables_match_polynomial_oracle(p, k):
    F = field_make(p, k)
    for a in F.elements():
        for b in F.elements():
            assert F.mul(a, b) == oracle_mul(F, a, b)
            assert F.add(a, b) == oracle_add(F, a, b)


@pytest.mark.parametrize("p,k", [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1),
                                 (2, 3), (3, 2), (2, 4)])
def test_field_axioms_exhaustive(p, k):
    # full triple loops for every shipped field of order <= 16
    F = field_make(p, k)
    q = F.q
    assert q <= 16
    for a in range(q):
        assert F.add(a, 0) == a
        assert F.mul(a, 1) == a
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        for b in range(q):
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
            for c in range(q):
                assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
                assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_larger_fields_construct():
    for p, k in [(5, 2), (3, 3), (7, 2), (2, 6), (3, 4)]:
        F = field_make(p, k)
        assert F.q == p**k
        # spot-check inverses against the polynomial oracle
        for a in list(F.nonzero())[:12]:
            assert oracle_mul(F, a, F.inv(a)) == 1


def test_frobenius_examples():
    F4 = field_make(2, 2)
    omega = 2
    assert apply_automorphism(F4, Automorphism(1), omega) == 3  # omega^2
    assert apply_automorphism(F4, Automorphism(0), omega) == omega
    F9 = field_make(3, 2)
    assert apply_automorphism(F9, Automorphism(1), 0) == 0


@pytest.mark.parametrize("p,k", [(2, 2), (3, 2), (2, 3), (2, 4), (3, 3)])
def test_frobenius_is_ring_homomorphism(p, k):
    F = field_make(p, k)
    for m in range(F.k):
        a = Automorphism(m)
        for x in F.elements():
            for y in F.elements():
                fx, fy = apply_automorphism(F, a, x), apply_automorphism(F, a, y)
                assert apply_automorphism(F, a, F.add(x, y)) == F.add(fx, fy)
                assert apply_automorphism(F, a, F.mul(x, y)) == F.mul(fx, fy)


@pytest.mark.parametrize("p,k", [(2, 2), (3, 2), (2, 3), (2, 4), (3, 3)])
def test_frobenius_inverse_and_order(p, k):
    F = field_make(p, k)
    for m in range(F.k):
        minv = (F.k - m) % F.k
        for x in F.elements():
            assert F.frob(F.frob(x, m), minv) == x
    for x in F.elements():
        y = x
        for _ in range(F.k):
            y = F.frob(y, 1)
        assert y == x


def test_automorphism_composition():
    F = field_make(2, 4)
    a, b = Automorphism(1), Automorphism(3)
    assert a.compose(b, F.k) == Automorphism(0)
    assert Automorphism(2).is_involution(F.k)
    assert not Automorphism(1).is_involution(F.k)
    assert Automorphism(3).inverse(F.k) == Automorphism(1)


def test_division_by_zero_is_hard_error():
    F = field_make(3, 1)
    with pytest.raises(ZeroDivisionError):
        F.div(1, 0)
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_field_make_rejections():
    with pytest.raises(FieldError):
        field_make(4, 1)
    with pytest.raises(FieldError):
        field_make(1, 1)
    with pytest.raises(FieldError):
        field_make(3, 5)  # 243 > 81
    with pytest.raises(FieldError):
        field_make(2, 5)  # no embedded Conway polynomial for 32


def test_cap_is_configurable():
    F = field_make(2, 4, cap=16)
    assert F.q == 16
    with pytest.raises(FieldError):
        field_make(2, 4, cap=15)


def test_fields_are_cached_and_deterministic():
    a = field_make(3, 2)
    b = field_make(3, 2)
    assert a is b
    c = Field(3, 2)
    assert c.exp == a.exp and c.log == a.log and c._add == a._add
