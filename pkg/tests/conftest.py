import pytest

from kscheck import catalog


@pytest.fixture(scope="session")
def pm_graph():
    return catalog.peres_mermin_graph()


@pytest.fixture(scope="session")
def ghz_graph():
    return catalog.ghz_graph()


@pytest.fixture(scope="session")
def pm_theory_full():
    return catalog.pm_theory("full")


@pytest.fixture(scope="session")
def pm_theory_spin():
    return catalog.pm_theory("spin")


@pytest.fixture(scope="session")
def ghz_theory_full():
    return catalog.ghz_theory("full")


@pytest.fixture(scope="session")
def ghz_theory_standard():
    return catalog.ghz_theory("standard")


@pytest.fixture(scope="session")
def box_fixtures():
    return (catalog.box_m1(), catalog.box_m2(), catalog.box_m3())
