import random
from fractions import Fraction
from pathlib import Path

import pytest

from clustermirror.lattice import det, mat_inv, mat_mul, mat_vec, transpose
from clustermirror.seed import Seed
from clustermirror.syz_base import (CHARACTER, COCHARACTER, base_from_fan,
                                    conjugation_witness, CONJUGATION_SIGN,
                                    monodromy_matrix, render_svg,
                                    toggle_convention)
from clustermirror.toric_model import StackyFan1D, fan_from_seed
from clustermirror.verify import random_primitive

FIXTURES = Path(__file__).parent / "fixtures"
A2 = Seed(2, 2, ((1, 0), (0, 1)), ((0, 1), (-1, 0)), (1, 1))


def test_monodromy_examples():
    assert monodromy_matrix((1, 0)) == ((1, -1), (0, 1))
    assert monodromy_matrix((0, 1)) == ((1, 0), (1, 1))
    assert monodromy_matrix((-1, -1)) == ((2, -1), (1, 0))
    assert transpose(monodromy_matrix((-1, -1))) == ((2, 1), (-1, 0))
    with pytest.raises(ValueError):
        monodromy_matrix((2, 4))


def test_monodromy_properties_randomized():
    rng = random.Random(19)
    for _ in range(300):
        psi = random_primitive(rng)
        M = monodromy_matrix(psi)
        assert det(M) == 1
        assert M[0][0] + M[1][1] == 2
        assert mat_vec(M, psi) == psi
        assert monodromy_matrix((-psi[0], -psi[1])) == M


def test_conjugation_witness():
    A, sign = conjugation_witness((1, 0))
    assert A == ((1, 0), (0, 1)) and sign == -1
    A, sign = conjugation_witness((0, 1))
    assert A == ((0, -1), (1, 0)) and sign == CONJUGATION_SIGN


def _int_inv(M):
    return tuple(tuple(int(x) for x in row) for row in mat_inv(M))


def test_conjugation_identity_randomized():
    rng = random.Random(23)
    shear = {1: ((1, 1), (0, 1)), -1: ((1, -1), (0, 1))}
    for _ in range(300):
        psi = random_primitive(rng)
        A, sign = conjugation_witness(psi)
        assert sign == CONJUGATION_SIGN
        assert det(A) == 1
        assert (A[0][0], A[1][0]) == psi
        assert mat_mul(mat_mul(A, shear[sign]), _int_inv(A)) == monodromy_matrix(psi)


def test_base_from_fan():
    base = base_from_fan(fan_from_seed(A2))
    assert base.convention == CHARACTER
    assert [s.position for s in base.singularities] == [(1, 0), (0, 1)]
    assert [s.direction for s in base.singularities] == [(1, 0), (0, 1)]
    one = base_from_fan(StackyFan1D(2, (((1, 1), 1),)), [Fraction(2)])
    assert one.singularities[0].position == (2, 2)
    empty = base_from_fan(StackyFan1D(2, ()))
    assert empty.singularities == ()
    with pytest.raises(ValueError):
        base_from_fan(StackyFan1D(2, (((1, 0), 1),)), [Fraction(0)])


def test_toggle_convention():
    base = base_from_fan(StackyFan1D(2, (((-1, -1), 1),)))
    flipped = toggle_convention(base)
    assert flipped.convention == COCHARACTER
    assert flipped.singularities[0].monodromy == ((2, 1), (-1, 0))
    assert toggle_convention(flipped) == base
    empty = base_from_fan(StackyFan1D(2, ()))
    assert toggle_convention(empty).singularities == ()


def test_render_svg_structure():
    base = base_from_fan(StackyFan1D(2, (((1, 0), 1), ((0, 1), 1), ((-1, -1), 1))))
    doc = render_svg(base)
    assert doc.startswith('<?xml version="1.0"')
    assert doc.count("stroke-dasharray") == 3
    empty = render_svg(base_from_fan(StackyFan1D(2, ())))
    assert "stroke-dasharray" not in empty and "<line" in empty


def test_render_svg_golden():
    base = base_from_fan(fan_from_seed(A2))
    doc = render_svg(base)
    golden = (FIXTURES / "a2_syz.svg").read_text()
    assert doc == golden
