"""Tiny deterministic SVG 1.1 writer.

The only place in the package where floating point appears: exact
rational coordinates are converted to fixed-precision decimal strings
for layout.  Output is built by plain string concatenation in input
order, so a fixed input always yields byte-identical documents.
"""

from fractions import Fraction

PREC = 3


def fmt(x):
    """Fixed-precision decimal for a rational or float coordinate."""
    if isinstance(x, Fraction):
        x = x.numerator / x.denominator
    s = "%.*f" % (PREC, float(x))
    if s == "-0." + "0" * PREC:
        s = "0." + "0" * PREC
    return s


class SvgCanvas:
    """Accumulates SVG elements; world coordinates are mapped to pixels
    with y flipped so the picture matches the usual math orientation."""

    def __init__(self, xmin, ymin, xmax, ymax, scale=60, margin=20):
        self.xmin, self.ymin, self.xmax, self.ymax = (
            Fraction(xmin), Fraction(ymin), Fraction(xmax), Fraction(ymax))
        self.scale = scale
        self.margin = margin
        self.width = float(self.xmax - self.xmin) * scale + 2 * margin
        self.height = float(self.ymax - self.ymin) * scale + 2 * margin
        self.elems = []

    def px(self, p):
        x = (Fraction(p[0]) - self.xmin) * self.scale + self.margin
        y = (self.ymax - Fraction(p[1])) * self.scale + self.margin
        return x, y

    def line(self, a, b, stroke="black", width=1, dash=None):
        (x1, y1), (x2, y2) = self.px(a), self.px(b)
        extra = ' stroke-dasharray="%s"' % dash if dash else ""
        self.elems.append(
            '<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="%s" stroke-width="%s"%s/>'
            % (fmt(x1), fmt(y1), fmt(x2), fmt(y2), stroke, width, extra))

    def polyline(self, pts, stroke="black", width=2):
        coords = " ".join("%s,%s" % (fmt(x), fmt(y)) for x, y in map(self.px, pts))
        self.elems.append(
            '<polyline points="%s" fill="none" stroke="%s" stroke-width="%s"/>'
            % (coords, stroke, width))

    def circle(self, c, rpx=4, fill="black"):
        x, y = self.px(c)
        self.elems.append(
            '<circle cx="%s" cy="%s" r="%s" fill="%s"/>' % (fmt(x), fmt(y), rpx, fill))

    def cross(self, c, half=5, stroke="red", width=2):
        x, y = self.px(c)
        h = half
        self.elems.append(
            '<path d="M %s %s L %s %s M %s %s L %s %s" stroke="%s" stroke-width="%s"/>'
            % (fmt(x - h), fmt(y - h), fmt(x + h), fmt(y + h),
               fmt(x - h), fmt(y + h), fmt(x + h), fmt(y - h), stroke, width))

    def text(self, c, s, size=12, fill="black"):
        x, y = self.px(c)
        self.elems.append(
            '<text x="%s" y="%s" font-size="%s" fill="%s">%s</text>'
            % (fmt(x), fmt(y), size, fill, s))

    def grid(self, stroke="#dddddd"):
        import math
        x = math.ceil(self.xmin)
        while x <= self.xmax:
            self.line((x, self.ymin), (x, self.ymax), stroke=stroke, width=1)
            x += 1
        y = math.ceil(self.ymin)
        while y <= self.ymax:
            self.line((self.xmin, y), (self.xmax, y), stroke=stroke, width=1)
            y += 1

    def clip_ray(self, origin, direction):
        """Largest segment of origin + t*direction (t >= 0) inside the
        viewport, or None if the ray misses it entirely."""
        ox, oy = Fraction(origin[0]), Fraction(origin[1])
        dx, dy = Fraction(direction[0]), Fraction(direction[1])
        tmin, tmax = Fraction(0), None
        for o, d, lo, hi in ((ox, dx, self.xmin, self.xmax),
                             (oy, dy, self.ymin, self.ymax)):
            if d == 0:
                if not (lo <= o <= hi):
                    return None
                continue
            t1, t2 = (lo - o) / d, (hi - o) / d
            if t1 > t2:
                t1, t2 = t2, t1
            tmin = max(tmin, t1)
            tmax = t2 if tmax is None else min(tmax, t2)
        if tmax is None or tmax < tmin:
            return None
        a = (ox + tmin * dx, oy + tmin * dy)
        b = (ox + tmax * dx, oy + tmax * dy)
        return a, b

    def document(self):
        head = ('<?xml version="1.0" encoding="UTF-8"?>\n'
                '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
                'width="%s" height="%s" viewBox="0 0 %s %s">\n'
                % (fmt(self.width), fmt(self.height), fmt(self.width), fmt(self.height)))
        body = "\n".join(self.elems)
        return head + body + "\n</svg>\n"
