"""Integral-affine SYZ bases for rank-2 fans: singular points with
unipotent monodromy, branch cuts, the SL(2,Z) conjugation witness, and
the character/cocharacter convention toggle.

For a primitive direction psi = (a, b) the monodromy around the
singularity placed on the ray through psi is

    M(psi) = [[1 + a b, -a^2], [b^2, 1 - a b]],

a unipotent matrix fixing psi.  Equivalently M(psi) = I + psi (J psi)^T
with J psi = (b, -a), so M(-psi) = M(psi) and conjugating by any
A in SL(2,Z) transports M along A psi.

Loop orientation is fixed counterclockwise once and for all.  With that
choice the conjugation witness satisfies

    A . [[1,1],[0,1]]^sigma . A^{-1} = M(psi),  sigma = -1,

for any A in SL(2,Z) with A e1 = psi; the sign sigma is a single global
constant (CONJUGATION_SIGN below) and tests assert it never varies.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .lattice import is_primitive, mat_mul, mat_vec, transpose
from .svg import SvgCanvas

CONJUGATION_SIGN = -1

CHARACTER = "character"
COCHARACTER = "cocharacter"


@dataclass(frozen=True)
class AffineSingularity2D:
    position: tuple      # rational point
    direction: tuple     # primitive integer eigen direction
    monodromy: tuple
    cut: tuple           # (origin point, direction) of the branch cut


@dataclass(frozen=True)
class IntegralAffineBase2D:
    singularities: tuple
    convention: str


def monodromy_matrix(psi):
    if len(psi) != 2:
        raise ValueError("monodromy is a 2x2 construction")
    if not is_primitive(psi):
        raise ValueError("monodromy direction must be primitive")
    a, b = psi
    return ((1 + a * b, -a * a), (b * b, 1 - a * b))


def bezout_complete(psi):
    """Some A in SL(2,Z) with A e1 = psi."""
    a, b = psi
    if gcd(a, b) != 1:
        raise ValueError("cannot complete an imprimitive vector to a basis")
    # extended euclid: u*a + v*b = 1
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    u, v = old_s, old_t
    if old_r < 0:
        u, v = -u, -v
    # columns psi and (-v, u): determinant a*u + b*v = 1
    return ((a, -v), (b, u))


def conjugation_witness(psi):
    """(A, sign) with A in SL(2,Z), A e1 = psi, and
    A T^sign A^{-1} = M(psi) for T = [[1,1],[0,1]]."""
    A = bezout_complete(psi)
    return A, CONJUGATION_SIGN


def shear_power(sign):
    return ((1, sign), (0, 1))


def base_from_fan(fan, radii=None):
    """One singularity per ray, at radius * psi, cut along +psi.

    The fan must have rank 2 and primitive ray generators (a seed with
    unimodular psi basis always produces primitive rays).  Radii
    default to 1.
    """
    if fan.n != 2:
        raise ValueError("SYZ base construction is rank-2 only")
    if radii is None:
        radii = [Fraction(1)] * len(fan.rays)
    if len(radii) != len(fan.rays):
        raise ValueError("need one radius per ray")
    sings = []
    for (psi, _d), rad in zip(fan.rays, radii):
        rad = Fraction(rad)
        if rad <= 0:
            raise ValueError("radius must be positive")
        if not is_primitive(psi):
            raise ValueError("ray generator must be primitive")
        pos = (rad * psi[0], rad * psi[1])
        sings.append(AffineSingularity2D(pos, psi, monodromy_matrix(psi), (pos, psi)))
    return IntegralAffineBase2D(tuple(sings), CHARACTER)


def toggle_convention(base):
    """Transpose every monodromy and flip the convention flag."""
    flipped = CHARACTER if base.convention == COCHARACTER else COCHARACTER
    sings = tuple(
        AffineSingularity2D(s.position, s.direction, transpose(s.monodromy), s.cut)
        for s in base.singularities)
    return IntegralAffineBase2D(sings, flipped)


def base_to_json(base):
    return {
        "convention": base.convention,
        "singularities": [
            {
                "position": [str(Fraction(x)) for x in s.position],
                "direction": list(s.direction),
                "monodromy": [list(row) for row in s.monodromy],
                "cut": {"origin": [str(Fraction(x)) for x in s.cut[0]],
                        "direction": list(s.cut[1])},
            }
            for s in base.singularities
        ],
    }


def render_svg(base, viewport=(-3, -3, 3, 3), fan_overlay=True):
    """Draw the base: grid, optional fan rays from the origin, branch
    cuts as dashed rays, singularities as red crosses."""
    xmin, ymin, xmax, ymax = viewport
    cv = SvgCanvas(xmin, ymin, xmax, ymax)
    cv.grid()
    if fan_overlay:
        for s in base.singularities:
            seg = cv.clip_ray((0, 0), s.direction)
            if seg:
                cv.line(seg[0], seg[1], stroke="#888888", width=1)
    for s in base.singularities:
        seg = cv.clip_ray(s.cut[0], s.cut[1])
        if seg:
            cv.line(seg[0], seg[1], stroke="black", width=2, dash="6,4")
    for s in base.singularities:
        cv.cross(s.position)
    cv.circle((0, 0), rpx=3, fill="#444444")
    return cv.document()
