import random

import pytest

from quasitwist import linalg
from quasitwist.errors import ShapeError, SingularLeadBlock, SingularMatrix
from quasitwist.galois import extension_field, prime_field
from quasitwist.polyring import Poly
from quasitwist.twistulant import (
    ParityCheckMatrix,
    TwistulantMatrix,
    cycle_matrix,
    identity_twistulant,
    standard_form,
    twistulant_from_poly,
    validate_h_conditions,
)

FIELDS = [prime_field(2), prime_field(3), prime_field(5),
          extension_field(prime_field(2), degree=2)]


def _random_twistulant(rng, field, m, twist):
    return TwistulantMatrix(field, m, twist, [rng.randrange(field.order) for _ in range(m)])


class TestConstruction:
    def test_one_plus_x_rows(self, f3):
        t = twistulant_from_poly(Poly(f3, [1, 1]), 3, 2)
        assert t.dense() == [[1, 1, 0], [0, 1, 1], [2, 0, 1]]

    def test_identity(self, f3):
        t = twistulant_from_poly(Poly.one(f3), 3, 2)
        assert t.dense() == linalg.identity(f3, 3)

    def test_lambda_one_is_circulant(self, f3):
        t = twistulant_from_poly(Poly(f3, [1, 2, 0, 1]), 4, 1)
        dense = t.dense()
        for i in range(4):
            for j in range(4):
                assert dense[i][j] == dense[0][(j - i) % 4]

    def test_degree_too_large(self, f3):
        with pytest.raises(ShapeError):
            twistulant_from_poly(Poly(f3, [0, 0, 0, 1]), 3, 2)

    def test_rows_are_constashifts(self, f3):
        from quasitwist.polyring import constashift

        rng = random.Random(0)
        t = _random_twistulant(rng, f3, 6, 2)
        dense = t.dense()
        for i in range(5):
            assert tuple(dense[i + 1]) == constashift(dense[i], 2, 1, f3)


class TestAlgebra:
    @pytest.mark.parametrize("seed", range(5))
    def test_mul_matches_dense(self, seed):
        rng = random.Random(seed)
        field = FIELDS[seed % len(FIELDS)]
        m = rng.choice([3, 4, 5, 7])
        twist = rng.randrange(1, field.order)
        a = _random_twistulant(rng, field, m, twist)
        b = _random_twistulant(rng, field, m, twist)
        assert (a * b).dense() == linalg.matmul(field, a.dense(), b.dense())

    @pytest.mark.parametrize("seed", range(5))
    def test_mul_commutes(self, seed):
        rng = random.Random(100 + seed)
        field = FIELDS[seed % len(FIELDS)]
        m = rng.choice([3, 5, 6])
        twist = rng.randrange(1, field.order)
        a = _random_twistulant(rng, field, m, twist)
        b = _random_twistulant(rng, field, m, twist)
        assert a * b == b * a

    def test_inverse(self, f3):
        rng = random.Random(17)
        hits = 0
        while hits < 10:
            a = _random_twistulant(rng, f3, 5, 2)
            if not a.is_invertible():
                continue
            hits += 1
            prod = a * a.inv()
            assert prod == identity_twistulant(f3, 5, 2)
            assert linalg.matmul(f3, a.dense(), a.inv().dense()) == linalg.identity(f3, 5)

    def test_singular_inverse(self, f3):
        # defining poly X^5 - 2 reduced... use a poly sharing a factor with X^5 - 2
        mod = Poly.x_pow_m_minus(f3, 5, 2)
        factor = next(Poly(f3, [c, 1]) for c in range(1, 3)
                      if Poly(f3, [c, 1]).divides(mod))
        t = twistulant_from_poly(factor, 5, 2)
        assert not t.is_invertible()
        with pytest.raises(SingularMatrix):
            t.inv()

    def test_transpose_is_dense_transpose(self):
        rng = random.Random(23)
        for field in FIELDS:
            for _ in range(5):
                m = rng.choice([3, 4, 5])
                twist = rng.randrange(1, field.order)
                a = _random_twistulant(rng, field, m, twist)
                at = a.transpose()
                assert at.twist == field.inv(twist)
                dense_t = [[a.dense()[j][i] for j in range(m)] for i in range(m)]
                assert at.dense() == dense_t


class TestStandardForm:
    def test_identity_lead_block(self, f3):
        rng = random.Random(29)
        g0 = identity_twistulant(f3, 4, 2)
        g1 = _random_twistulant(rng, f3, 4, 2)
        h = standard_form([g0, g1])
        assert h.blocks[0] == g1

    def test_matches_dense_inverse(self, f3):
        g0 = twistulant_from_poly(Poly(f3, [2, 1]), 3, 2)
        g1 = twistulant_from_poly(Poly.x(f3), 3, 2)
        assert g0.is_invertible()
        h = standard_form([g0, g1])
        dense_expect = linalg.matmul(f3, linalg.inverse(f3, g0.dense()), g1.dense())
        assert h.blocks[0].dense() == dense_expect
        # full H = [I | G1*]
        dense_h = h.dense()
        for i in range(3):
            assert dense_h[i][:3] == linalg.identity(f3, 3)[i]
            assert dense_h[i][3:] == dense_expect[i]

    def test_singular_lead_block(self, f3):
        mod = Poly.x_pow_m_minus(f3, 5, 2)
        factor = next(Poly(f3, [c, 1]) for c in range(1, 3)
                      if Poly(f3, [c, 1]).divides(mod))
        g0 = twistulant_from_poly(factor, 5, 2)
        g1 = identity_twistulant(f3, 5, 2)
        with pytest.raises(SingularLeadBlock):
            standard_form([g0, g1])


class TestHConditions:
    def test_identical_blocks_rejected(self, f3):
        t = twistulant_from_poly(Poly(f3, [1, 1]), 4, 2)
        h = ParityCheckMatrix(field=f3, m=4, twist=2, blocks=(t, t))
        ok, diags = validate_h_conditions(h)
        assert not ok and "condition 1" in diags[0]

    def test_distinct_blocks_with_twist_pass(self, f3):
        # code lambda = inv(2) = 2 over F_3... use twist 2 so code_lam = 2 != 1
        t1 = twistulant_from_poly(Poly(f3, [1, 1]), 4, 2)
        t2 = twistulant_from_poly(Poly(f3, [2, 1]), 4, 2)
        h = ParityCheckMatrix(field=f3, m=4, twist=2, blocks=(t1, t2))
        ok, diags = validate_h_conditions(h)
        assert ok and not diags

    def test_constant_row_fails_condition_2(self, f3):
        # twist 1 -> code lambda = 1 activates condition 2
        t = TwistulantMatrix(f3, 4, 1, (1, 1, 1, 1))
        h = ParityCheckMatrix(field=f3, m=4, twist=1, blocks=(t,))
        ok, diags = validate_h_conditions(h)
        assert not ok and "condition 2" in diags[0]

    def test_binary_field_activates_condition_2(self):
        f2 = prime_field(2)
        t = TwistulantMatrix(f2, 4, 1, (1, 0, 1, 0))  # tail (0,1,0): index 2 unique
        h = ParityCheckMatrix(field=f2, m=4, twist=1, blocks=(t,))
        ok, _ = validate_h_conditions(h)
        assert ok
        t_bad = TwistulantMatrix(f2, 5, 1, (1, 0, 1, 1, 0))  # tail (0,1,1,0): none unique
        h_bad = ParityCheckMatrix(field=f2, m=5, twist=1, blocks=(t_bad,))
        ok_bad, diags = validate_h_conditions(h_bad)
        assert not ok_bad and "condition 2" in diags[0]


class TestConjugation:
    def test_cycle_matrix_shape(self, f3):
        b = cycle_matrix(f3, 4, 2)
        dense = b.dense()
        assert dense[0] == [0, 0, 0, 2]
        for i in range(1, 4):
            assert dense[i][i - 1] == 1 and sum(dense[i]) == 1
        # displayed inverse: X as defining polynomial
        b_inv = b.inv()
        assert b_inv.dense()[0] == [0, 1, 0, 0]
        assert b_inv.dense()[3] == [f3.inv(2), 0, 0, 0]

    def test_conjugation_identity_random(self):
        rng = random.Random(31)
        for trial in range(40):
            field = FIELDS[trial % len(FIELDS)]
            m = rng.choice([3, 4, 5, 7])
            lam = rng.randrange(1, field.order)
            mu = field.inv(lam)
            g = _random_twistulant(rng, field, m, mu)
            b = cycle_matrix(field, m, lam)
            b_inv_dense = b.inv().dense()
            conj = linalg.matmul(field, linalg.matmul(field, b_inv_dense, g.dense()),
                                 b.dense())
            assert conj == g.dense()
