"""Toric model attached to a seed: stacky fan of rays, blowup
characters, blowup loci, and symbolic local presentations.

The model is recorded combinatorially.  Rays are the unfrozen (psi, d)
pairs, the character chi_i = psi_i^T B pairs to zero against psi_i
automatically (B is skew), the blowup locus is the subtorus
{chi_i = -1} in the boundary divisor of ray i, and the local chart is
presented by the relation x x' = y^chi + 1.  No ring or ideal
computation happens here; the records exist as fixtures for the
lattice-level tests and the CLI.
"""

from dataclasses import dataclass

from .seed import SeedError, exchange_matrix, mutate


@dataclass(frozen=True)
class StackyFan1D:
    n: int
    rays: tuple   # pairs (psi, d)


@dataclass(frozen=True)
class ToricModel:
    fan: StackyFan1D
    chi: tuple
    loci: tuple
    presentations: tuple


def fan_from_seed(s):
    rays = tuple((s.psi[i], s.d[i]) for i in range(s.r))
    seen = {}
    for psi, d in rays:
        if psi in seen:
            raise SeedError("fan collision: two unfrozen vectors span the ray %r" % (psi,))
        seen[psi] = d
    return StackyFan1D(s.n, rays)


def blowup_characters(s):
    """chi_i = psi_i^T B as a covector, one per unfrozen ray."""
    chis = []
    for i in range(s.r):
        chi = tuple(
            sum(s.psi[i][a] * s.B[a][b] for a in range(s.n))
            for b in range(s.n)
        )
        # forced by skewness; a failure means B got corrupted
        if sum(c * p for c, p in zip(chi, s.psi[i])) != 0:
            raise AssertionError("chi_i does not annihilate psi_i")
        chis.append(chi)
    return chis


def _monomial(chi):
    if all(c == 0 for c in chi):
        return "1"
    return "y^%s" % (str(tuple(chi)).replace(" ", ""),)


def local_presentation(s, i):
    """Relation record for the chart at ray i: x x' = y^chi + 1."""
    if not (0 <= i < s.r):
        raise SeedError("presentation index must name an unfrozen ray")
    chi = blowup_characters(s)[i]
    degenerate = all(c == 0 for c in chi)
    mono = _monomial(chi)
    relation = "x%d*x%d' = %s" % (i + 1, i + 1, "2" if degenerate else mono + " + 1")
    return {
        "vars": ["x%d" % (i + 1), "x%d'" % (i + 1), mono],
        "relation": relation,
        "degenerate": degenerate,
    }


def toric_model(s):
    fan = fan_from_seed(s)
    chi = tuple(blowup_characters(s))
    loci = tuple(
        "{chi_%d = -1} in D_%d, chi_%d = %s" % (i + 1, i + 1, i + 1, str(tuple(c)))
        for i, c in enumerate(chi)
    )
    pres = tuple(local_presentation(s, i) for i in range(s.r))
    return ToricModel(fan, chi, loci, pres)


def mutate_model(s, k):
    """Toric models before and after mutation at k, plus a report of the
    reversed ray (the blowup locus moves from the 0-section to the
    infinity-section of the elementary transformation)."""
    before = toric_model(s)
    after = toric_model(mutate(s, k))
    eps = exchange_matrix(s).eps
    report = {
        "ray": k,
        "psi_before": list(s.psi[k]),
        "psi_after": [-x for x in s.psi[k]],
        "eps_column": [eps[i][k] for i in range(s.n)],
        "note": "ray %d reversed; blowup locus moved to the opposite divisor" % k,
    }
    return before, after, report


def model_to_json(m):
    return {
        "rank": m.fan.n,
        "rays": [{"psi": list(p), "d": d} for p, d in m.fan.rays],
        "chi": [list(c) for c in m.chi],
        "loci": list(m.loci),
        "presentations": list(m.presentations),
    }
