"""
Shared fixtures for the ascentlab test suite
"""

import pytest

from src.constructions import CdParams, Variant, build_cd_chain
from src.utils import paths
from src.vcsp import InstanceBuilder, VarLabel


@pytest.fixture(autouse=True)
def isolated_paths(tmp_path, monkeypatch):
    """Point config lookup and relative outputs at a scratch directory"""
    monkeypatch.setenv("XDG_CONFIG_HOME", str(tmp_path / "xdg"))
    monkeypatch.setenv(paths.OUTPUT_DIR_ENV, str(tmp_path / "out"))
    monkeypatch.chdir(tmp_path)
    monkeypatch.setattr(paths, "_paths_instance", None)
    return tmp_path


@pytest.fixture
def chain2():
    return build_cd_chain(CdParams.square(2))


@pytest.fixture
def chain2_reverse():
    return build_cd_chain(CdParams.square(2, Variant.P00))


@pytest.fixture
def chain4():
    return build_cd_chain(CdParams.square(4))


def unary_instance(weights):
    """Independent variables with one unary constraint each"""
    builder = InstanceBuilder(
        len(weights), {v: VarLabel(1, str(v + 1)) for v in range(len(weights))}
    )
    for v, weight in enumerate(weights):
        builder.add([v], weight)
    return builder.build()


@pytest.fixture
def smooth3():
    return unary_instance([-1, -2, -3])


@pytest.fixture
def two_positive():
    return unary_instance([1, 1])
