import pytest

from quasitwist.galois import FieldSpec, find_splitting_data, prime_field
from quasitwist.polyring import Poly
from quasitwist.qtcode import GroebnerGenMatrix, new_qt_code

# g01 of the worked [20,10,4]_3 example: 2X^9+2X^7+2X^6+X^5+2X^3+X^2+1
EXAMPLE_G01 = [1, 0, 1, 2, 0, 1, 2, 2, 0, 2]


@pytest.fixture(scope="session")
def f3():
    return prime_field(3)


@pytest.fixture(scope="session")
def f81(f3):
    return find_splitting_data(f3, 10, 2).field


@pytest.fixture(scope="session")
def example_code(f3):
    """The [20,10,4]_3 (2,2)-QT code with basis [[1, g01], [0, X^10+1]]."""
    g01 = Poly(f3, EXAMPLE_G01)
    basis = GroebnerGenMatrix(f3, 10, 2, 2, [
        [Poly.one(f3), g01],
        [Poly.zero(f3), Poly(f3, [1] + [0] * 9 + [1])],
    ])
    return new_qt_code(basis, qspec=FieldSpec(3))


@pytest.fixture(scope="session")
def example_cfg(example_code):
    from quasitwist.decoder import DecoderConfig

    f81 = example_code.splitting.field
    v = (1, f81.g_pow(50))
    return DecoderConfig(example_code, a=6, n1=1, n2=1, s=0, delta=4, v=v)
