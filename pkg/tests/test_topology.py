import cmath
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from delpezzo_mirror.errors import InvalidKaehlerClass, RangeError, ZeroClass
from delpezzo_mirror.topology import (EXTRA_CLASS, H1Class, KaehlerClass, SL2ZMatrix, dehn_twist_matrix,
                                      intersection_number, monodromy_relation, qdata,
                                      vanishing_cycle_classes)


def test_classes():
    assert vanishing_cycle_classes(0) == [H1Class(-2, -1), H1Class(-1, 1), H1Class(1, 2)]
    assert vanishing_cycle_classes(1)[3] == H1Class(1, 1)
    assert len(vanishing_cycle_classes(9)) == 12
    with pytest.raises(RangeError):
        vanishing_cycle_classes(10)
    with pytest.raises(RangeError):
        vanishing_cycle_classes(-1)


def test_intersection_numbers():
    assert intersection_number(H1Class(-2, -1), H1Class(-1, 1)) == -3
    assert intersection_number(H1Class(-1, 1), H1Class(1, 1)) == -2
    c = H1Class(4, -7)
    assert intersection_number(c, c) == 0


@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20))
def test_intersection_antisymmetric(a, b, c, d):
    u, v = H1Class(a, b), H1Class(c, d)
    assert intersection_number(u, v) == -intersection_number(v, u)


def test_twists():
    assert dehn_twist_matrix(H1Class(-2, -1)).rows() == [[-1, 4], [-1, 3]]
    assert dehn_twist_matrix(H1Class(-1, 1)).rows() == [[2, 1], [-1, 0]]
    assert dehn_twist_matrix(H1Class(1, 2)).rows() == [[-1, 1], [-4, 3]]
    assert dehn_twist_matrix(EXTRA_CLASS).rows() == [[0, 1], [-1, 2]]
    assert (dehn_twist_matrix(EXTRA_CLASS) ** 9).rows() == [[-8, 9], [-9, 10]]
    with pytest.raises(ZeroClass):
        dehn_twist_matrix(H1Class(0, 0))


@given(st.integers(-9, 9), st.integers(-9, 9))
def test_twist_fixes_its_class(a, b):
    if a == b == 0:
        return
    c = H1Class(a, b)
    assert dehn_twist_matrix(c).apply(c) == c


def test_monodromy():
    assert monodromy_relation() == SL2ZMatrix.identity()
    assert monodromy_relation(5) == SL2ZMatrix.identity()
    t9 = dehn_twist_matrix(EXTRA_CLASS) ** 9
    assert t9.apply(EXTRA_CLASS) == EXTRA_CLASS
    # the kernel of t9 - 1 is spanned by (1, 1)
    m = [[t9.a - 1, t9.b], [t9.c, t9.d - 1]]
    assert m[0][0] * m[1][1] - m[0][1] * m[1][0] == 0
    assert m[0][0] + m[0][1] == 0 and m[1][0] + m[1][1] == 0


def test_sl2z_rejects_bad_determinant():
    with pytest.raises(ValueError):
        SL2ZMatrix(1, 1, 1, 1)


def test_qdata_values():
    q = qdata(KaehlerClass(0, 1j, 0))
    assert abs(q.qF - math.exp(-2 * math.pi)) < 1e-16
    assert abs(q.qF - 0.00186744) < 1e-8
    assert q.qC == 1
    delta = 0.2 + 0.3j
    kc = KaehlerClass(2, 1j, 0.5, (0.1, 0.1 + 3 * delta))
    q = qdata(kc)
    assert abs(q.qtilde[0][1] - cmath.exp(2j * math.pi * delta)) < 1e-14
    assert abs(q.qi[1] - q.qi[0] * q.qtilde[0][1] ** 3) < 1e-14


def test_cube_roots_are_consistent():
    kc = KaehlerClass(1, 0.3 + 1.2j, 0.7 + 0.4j, (1.1 + 0.2j,))
    q = qdata(kc)
    assert abs(q.qF13 ** 3 - q.qF) < 1e-14
    assert abs(q.qC13 ** 3 - q.qC) < 1e-14
    assert abs(q.qi13[0] ** 3 - q.qi[0]) < 1e-14


def test_kaehler_validation():
    with pytest.raises(InvalidKaehlerClass):
        KaehlerClass(0, -1j, 0)
    with pytest.raises(InvalidKaehlerClass):
        KaehlerClass(0, 1.0, 0)
    with pytest.raises(InvalidKaehlerClass):
        KaehlerClass(2, 1j, 0, (0.1,))
    with pytest.raises(InvalidKaehlerClass):
        KaehlerClass(10, 1j, 0, (0,) * 10)
    with pytest.raises(InvalidKaehlerClass):
        KaehlerClass(0, 1j, complex("nan"))
    assert KaehlerClass.make(1j, 0.2, [0.1, 0.2]).k == 2
