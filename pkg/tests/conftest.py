import pathlib

import pytest

from htforget.syntax import parse_program

DATA = pathlib.Path(__file__).parent / "data"


def load(name):
    return parse_program((DATA / name).read_text())


@pytest.fixture(scope="session")
def ex1():
    return load("ex1.lp")


@pytest.fixture(scope="session")
def ex2():
    return load("ex2.lp")


@pytest.fixture(scope="session")
def ex3():
    return load("ex3.lp")


@pytest.fixture(scope="session")
def ex4():
    return load("ex4.lp")


@pytest.fixture(scope="session")
def ex5():
    return load("ex5.lp")
