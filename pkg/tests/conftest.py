"""Shared fixtures: groups and indicator sessions are cached per test run."""
from __future__ import annotations

import pytest

from fszd import ClassFunction, Group, Session, construct_group

# SL(2,3) acting on the eight nonzero vectors of F_3^2
SL23_SPEC = "perm:(1,4,7)(2,8,5);(1,6,2,3)(4,7,8,5)"

ACCEPTANCE_SPECS = (
    "S3",
    "S4",
    "S5",
    "A4",
    "A5",
    "D4",
    "D6",
    "Q8",
    "C12",
    "C2xC4",
    SL23_SPEC,
)

_GROUPS: dict[str, Group] = {}
_SESSIONS: dict[str, Session] = {}


def get_group(spec: str) -> Group:
    if spec not in _GROUPS:
        _GROUPS[spec] = construct_group(spec)
    return _GROUPS[spec]


def get_session(spec: str) -> Session:
    if spec not in _SESSIONS:
        _SESSIONS[spec] = Session(get_group(spec))
    return _SESSIONS[spec]


@pytest.fixture(scope="session")
def group():
    return get_group


@pytest.fixture(scope="session")
def session_for():
    return get_session


def transported_eta_index(session: Session, src_class: int, eta_index: int, t, dst_class: int) -> int:
    """Index in the destination centralizer table of t |> eta."""
    src_tab = session.centralizer_table(src_class)
    dst_tab = session.centralizer_table(dst_class)
    eta = src_tab.irreducibles[eta_index]
    tinv = t.inverse()
    values = [eta.value_at(tinv.conj(cl.rep)) for cl in dst_tab.classes.classes]
    return dst_tab.index_of(ClassFunction(dst_tab.classes, values))


def p_part(x, p: int):
    """The p-part of a permutation: x = x_p * x_p' with x_p of p-power order."""
    o = x.order()
    a = 1
    while o % p == 0:
        o //= p
        a *= p
    if a == 1:
        return x**0
    return x ** (o * pow(o, -1, a))
