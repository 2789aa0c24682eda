import pytest

from flatcomp.config import settings
from flatcomp.models.quantale import Base
from flatcomp.services.catalog_service import catalog_service

T3_TEXT = """\
# running example: asymmetric, no zero distances off the diagonal
space T3 over rplus
points a b c
d a b 1
d a c 2
d b a 2
d b c 1
d c a 5
d c b 4

module M on T3 left
m a 0
m b 0
m c 4

module N on T3 left
m a 0
m b 1
m c 4

module R on T3 right
m a 0
m b 1
m c 2

filter F on T3
gen a b
"""

BROKEN_TEXT = """\
space BAD over rplus
points a b c
d a b 1
d b c 1
d a c 5
"""


@pytest.fixture
def t3():
    return catalog_service.t3()


@pytest.fixture
def z2():
    return catalog_service.z2()


@pytest.fixture
def d2():
    return catalog_service.d2()


@pytest.fixture
def a2():
    return catalog_service.asymmetric_pair()


@pytest.fixture
def one():
    return catalog_service.one_point(Base.RPLUS)


@pytest.fixture
def antichain():
    return catalog_service.antichain()


@pytest.fixture
def chain():
    return catalog_service.chain()


@pytest.fixture
def t3_text():
    return T3_TEXT


@pytest.fixture
def broken_text():
    return BROKEN_TEXT


@pytest.fixture
def ledger(tmp_path, monkeypatch):
    """Point the run ledger at a fresh file"""
    path = tmp_path / "runs.json"
    monkeypatch.setattr(settings, "db_path", str(path))
    return path
