import pytest

from centerbook import load_book, load_experiment, load_template
from centerbook.bundled import bundled_document


@pytest.fixture
def original_sb():
    return load_experiment(bundled_document("original-sb"))


@pytest.fixture
def technicolor():
    return load_experiment(bundled_document("technicolor"))


@pytest.fixture
def wbg():
    return load_experiment(bundled_document("wbg"))


@pytest.fixture
def two_beauties():
    return load_experiment(bundled_document("two-beauties"))


@pytest.fixture
def hitchcock_book():
    return load_book(bundled_document("hitchcock"))


@pytest.fixture
def wbg_book():
    return load_book(bundled_document("wbg-book"))


@pytest.fixture
def two_beauties_book():
    return load_book(bundled_document("two-beauties-book"))


@pytest.fixture
def anti_thirder_book():
    return load_book(bundled_document("anti-thirder"))


@pytest.fixture
def wbg_template():
    return load_template(bundled_document("wbg-template"))
