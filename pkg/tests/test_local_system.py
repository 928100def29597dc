import random
from fractions import Fraction

import pytest
import sympy as sp

from clustermirror.local_system import (LocalSystemError, NotMutable,
                                        SIGN_TWIST, canonical_transversal,
                                        chart_transition, holonomy_around,
                                        is_mutable, local_system,
                                        mutate_local_system, mutate_symbolic,
                                        rank_one, symbolic_standard)
from clustermirror.seed import Seed
from clustermirror.verify import (coherence_law_holds, _random_commuting_pair,
                                  random_primitive)

A2 = Seed(2, 2, ((1, 0), (0, 1)), ((0, 1), (-1, 0)), (1, 1))
x1, x2 = sp.symbols("x1 x2")


def test_holonomy_around():
    ls = rank_one([2, 3])
    assert holonomy_around(ls, (1, 1)) == ((Fraction(6),),)
    assert holonomy_around(ls, (0, 0)) == ((Fraction(1),),)
    diag = local_system([((2, 0), (0, 3)), ((5, 0), (0, 7))])
    assert holonomy_around(diag, (2, 1)) == ((Fraction(20), Fraction(0)),
                                             (Fraction(0), Fraction(63)))
    assert holonomy_around(diag, (-1, 0)) == ((Fraction(1, 2), Fraction(0)),
                                              (Fraction(0), Fraction(1, 3)))


def test_is_mutable():
    assert not is_mutable(rank_one([1, 5]), (1, 0))
    assert is_mutable(rank_one([2, 5]), (1, 0))
    withone = local_system([((1, 0), (0, 2)), ((3, 0), (0, 4))])
    assert not is_mutable(withone, (1, 0))


def test_canonical_transversal():
    assert canonical_transversal((1, 0)) == (0, 1)
    assert canonical_transversal((0, 1)) == (-1, 0)
    for s in ((1, 1), (2, 1), (3, -2), (-1, 4)):
        t = canonical_transversal(s)
        assert t[0] * s[1] - t[1] * s[0] == -1


def test_mutation_adapted_fixture():
    ls = rank_one([2, 3])
    out, adapted = mutate_local_system(ls, (1, 0))
    # adapted pair is (a, (1-a) b)
    assert adapted == (((Fraction(2),),), ((Fraction(-3),),))
    assert out.rank == 1


def test_mutation_rejects_eigenvalue_one():
    with pytest.raises(NotMutable):
        mutate_local_system(rank_one([1, 3]), (1, 0))


def test_unaffected_loop_invariance():
    rng = random.Random(43)
    for _ in range(50):
        s = random_primitive(rng, 3)
        A, B = _random_commuting_pair(rng)
        ls = local_system([A, B])
        if not is_mutable(ls, s):
            continue
        out, _ = mutate_local_system(ls, s)
        assert holonomy_around(out, s) == holonomy_around(ls, s)


def test_outputs_commute_and_invert():
    rng = random.Random(47)
    for _ in range(30):
        A, B = _random_commuting_pair(rng)
        ls = local_system([A, B])
        s = random_primitive(rng, 2)
        if not is_mutable(ls, s):
            continue
        out, _ = mutate_local_system(ls, s)
        # constructor re-checks commutativity and invertibility
        assert out.rank == ls.rank


def test_double_mutation_law_rank1():
    assert coherence_law_holds(rank_one([2, 3]), (1, 0)) is True
    assert coherence_law_holds(rank_one([5, Fraction(1, 2)]), (1, 1)) is True


def test_double_mutation_coherence_randomized():
    rng = random.Random(53)
    checked = 0
    while checked < 100:
        s = random_primitive(rng, 3)
        if checked % 2:
            A, B = _random_commuting_pair(rng)
            ls = local_system([A, B])
        else:
            a = Fraction(rng.randrange(-5, 6), rng.randrange(1, 4))
            b = Fraction(rng.randrange(-5, 6), rng.randrange(1, 4))
            if a == 0 or b == 0:
                continue
            ls = rank_one([a, b])
        if not is_mutable(ls, s):
            continue
        res = coherence_law_holds(ls, s)
        if res is None:
            continue
        assert res is True
        checked += 1


def test_symbolic_double_mutation_fixtures():
    # frozen first outputs of the symbolic engine: double mutation is
    # the tau_s pullback with the (-1)^<c,s> twist, never the identity
    cases = {
        (1, 0): (x1, -x2 / x1),
        (0, 1): (-x1 * x2, x2),
        (1, 1): (-x1 ** 2 * x2, -1 / x1),
        (2, 1): (-x1 ** 3 * x2, 1 / (x1 ** 4 * x2)),
        (3, -2): (x2 ** 4 / x1 ** 5, -x2 ** 7 / x1 ** 9),
    }
    for s, expect in cases.items():
        sh = symbolic_standard(2)
        once, _ = mutate_symbolic(sh, s)
        twice, _ = mutate_symbolic(once, (-s[0], -s[1]))
        for got, want in zip(twice.holonomies, expect):
            assert sp.cancel(got - want) == 0


def test_symbolic_adapted_fixture():
    once, adapted = mutate_symbolic(symbolic_standard(2), (1, 0))
    assert sp.cancel(adapted[0] - x1) == 0
    assert sp.cancel(adapted[1] - (1 - x1) * x2) == 0


def test_chart_transition_a2():
    fns = chart_transition(A2, 0)
    assert sp.cancel(fns[0] - (-x1 * x2 / (x2 - 1))) == 0
    assert fns[1] == x2
    fns2 = chart_transition(A2, 1)
    # handle 2 has circle class (-1, 0); frozen output
    assert sp.cancel(fns2[0] - x1) == 0
    assert sp.cancel(fns2[1] - x2 / (x1 - 1)) == 0


def test_chart_transition_errors():
    z = Seed(2, 2, ((1, 0), (0, 1)), ((0, 0), (0, 0)), (1, 1))
    with pytest.raises(Exception):
        chart_transition(z, 0)
    bad_d = Seed(2, 2, ((1, 0), (0, 1)), ((0, 1), (-1, 0)), (2, 1))
    with pytest.raises(LocalSystemError):
        chart_transition(bad_d, 0)


def test_sign_twist_constant():
    assert SIGN_TWIST == -1
