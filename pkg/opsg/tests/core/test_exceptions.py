"""Tests for the exception hierarchy."""
import pytest

from opsg.core import exceptions
from opsg.core.exceptions import ConstructionInvariantViolated, NotHullEdge, NotHullVertex, OpsgError, OracleTooLarge

ERRORS = [
    cls for cls in vars(exceptions).values() if isinstance(cls, type) and issubclass(cls, OpsgError) and cls is not OpsgError
]


@pytest.mark.parametrize("cls", ERRORS, ids=lambda cls: cls.__name__)
def test_every_error_is_documented(cls: type[OpsgError]):
    assert cls.__doc__
    assert cls.__doc__.strip()


@pytest.mark.parametrize(
    "cls, code",
    [(NotHullVertex, 2), (NotHullEdge, 2), (ConstructionInvariantViolated, 1), (OracleTooLarge, 3)],
)
def test_exit_codes(cls: type[OpsgError], code: int):
    err = cls("boom")
    assert err.to_dict() == {"error": cls.__name__, "message": "boom", "exit_code": code}


def test_empty_message_falls_back_to_the_class_name():
    assert str(NotHullEdge()) == "NotHullEdge"
