import pytest
from hypothesis import settings

settings.register_profile("suite", max_examples=50, deadline=None)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def catalog():
    from superplane.presentations import build_catalog

    return build_catalog()


@pytest.fixture(scope="session")
def reports(catalog):
    # one shared run keeps the whole suite inside the time budget
    from superplane.verify import run_all

    return run_all(catalog)


@pytest.fixture(scope="session")
def confluence_reports(catalog):
    from superplane.algebra import check_local_confluence
    from superplane.presentations import catalog_presentations

    return {name: check_local_confluence(pres, max_len=4)
            for name, pres in catalog_presentations(catalog).items()}
