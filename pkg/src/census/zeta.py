"""Zeta-function ingredients over a genus-g curve kept symbolic: the
numerator roots live in formal variables a1..a{2g} (written alpha below)
with q an independent variable, so every value is a FactoredRat.

Also: ingestion of actual point counts into Weil numbers, and the two
volume quantities used by the census identities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy

from .errors import NotWeil, PoleArgument
from .partitions import box_stats
from .ring import (
    FactoredRat,
    Monomial,
    ONE_MONOMIAL,
    SparsePoly,
    atom_inverse,
)
from .series import BiSeries, pleth_exp


def alpha_name(i):
    return "a%d" % i


def alpha_names(g):
    return [alpha_name(i) for i in range(1, 2 * g + 1)]


@dataclass(frozen=True)
class ZetaSymbols:
    """The 2g+1 ring variables attached to a genus."""

    genus: int

    @property
    def alphas(self):
        return alpha_names(self.genus)

    @property
    def variables(self):
        return self.alphas + ["q"]


def one_minus(coeff, monomial):
    """FactoredRat 1 - coeff*monomial."""
    terms = {ONE_MONOMIAL: 1}
    c = Fraction(coeff)
    if monomial.is_one():
        terms[ONE_MONOMIAL] = 1 - c
    else:
        terms[monomial] = -c
    return FactoredRat.from_poly(SparsePoly(terms))


def pair_reduce(f, g):
    """Rewrite modulo the Weil relations a_{2i-1}·a_{2i} = q.

    Every even-indexed root is replaced by q/a_{2i-1}, leaving a fraction
    in the g odd roots and q.  Cancellations between numerator-root
    products and q-powers only become visible in these coordinates, so
    pole analysis must happen after this reduction.
    """
    for i in range(1, g + 1):
        f = f.substitute(alpha_name(2 * i), 1,
                         Monomial.of(q=1, **{alpha_name(2 * i - 1): -1}))
    return f.normalize()


def paired_point(q, odd_roots):
    """Numeric assignment honoring the pair relations: the even root of
    each pair is q divided by the odd one."""
    pt = {"q": q}
    for i, a in enumerate(odd_roots, start=1):
        pt[alpha_name(2 * i - 1)] = a
        pt[alpha_name(2 * i)] = q / a
    return pt


def _check_not_unit(coeff, monomial):
    if monomial.is_one() and Fraction(coeff) == 1:
        raise PoleArgument("zeta denominator atom vanishes identically")


def zeta_at(g, coeff, monomial):
    """ζ at the argument coeff*monomial:
    ∏_i (1-α_i·arg) / ((1-arg)(1-q·arg))."""
    c = Fraction(coeff)
    if c == 0:
        return FactoredRat.one()
    q_shape = monomial * Monomial.of(q=1)
    _check_not_unit(c, monomial)
    _check_not_unit(c, q_shape)
    out = atom_inverse(c, monomial) * atom_inverse(c, q_shape)
    for name in alpha_names(g):
        out = out * one_minus(c, monomial * Monomial.of(**{name: 1}))
    return out.normalize()


def zeta_value(g, u, v):
    """ζ(q^{-u} z^v) as a FactoredRat."""
    if v < 0:
        raise ValueError("v must be nonnegative")
    return zeta_at(g, 1, Monomial.of(q=-u, z=v))


def zeta_star(g, u, v):
    """ζ(q^{-u} z^v) with the removable point (u,v)=(1,0) filled in.

    At (1,0) the value is q^{-g} ∏_i (1-α_i) / (1-q^{-1}); the product of
    the α-pair relations gives ∏α_i = q^g, which eliminates α-inverses.
    """
    if (u, v) != (1, 0):
        return zeta_value(g, u, v)
    out = FactoredRat.from_monomial(Monomial.of(q=-g))
    out = out * atom_inverse(1, Monomial.of(q=-1))
    for name in alpha_names(g):
        out = out * one_minus(1, Monomial.of(**{name: 1}))
    return out.normalize()


def zeta_tilde(g, coeff, monomial):
    """ζ̃(arg) = arg^{1-g} ζ(arg)."""
    c = Fraction(coeff)
    if c == 0:
        raise PoleArgument("zeta_tilde needs a nonzero argument")
    e = 1 - g
    scale = FactoredRat.from_monomial(monomial ** e).mul_scalar(c ** e)
    return (scale * zeta_at(g, coeff, monomial)).normalize()


def j_factor(g, lam, paired=False):
    """J_λ = ∏ over boxes of ζ*(q^{-1-leg} z^{arm}).

    paired=True rewrites each factor modulo the Weil relations before
    multiplying; the product lives in g variables instead of 2g, which
    keeps intermediate numerators small.  Equality with the unpaired
    product holds because pair_reduce is a ring homomorphism.
    """
    out = FactoredRat.one()
    for arm, leg in box_stats(lam):
        f = zeta_star(g, 1 + leg, arm)
        if paired:
            f = pair_reduce(f, g)
        out = out * f
    return out.normalize()


@dataclass(frozen=True)
class CurveData:
    """A concrete curve over F_q: counts, zeta numerator, Weil numbers."""

    q: int
    genus: int
    point_counts: tuple
    numerator: tuple        # a_0..a_{2g}, integers
    weil_numbers: tuple     # σ_1..σ_{2g}, complex, σ_{2i-1}σ_{2i} = q

    def assignment(self):
        """Numeric substitution {a_i: σ_i, q: q} honoring the pair relation."""
        out = {"q": complex(self.q)}
        for i, s in enumerate(self.weil_numbers, start=1):
            out[alpha_name(i)] = s
        return out

    def count(self, l):
        """|X(F_{q^l})| recomputed from the Weil numbers (numeric)."""
        return (1 + self.q ** l
                - sum(s ** l for s in self.weil_numbers)).real

    @staticmethod
    def from_dict(obj):
        try:
            q = int(obj["q"])
            genus = int(obj["genus"])
            counts = [int(n) for n in obj["point_counts"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError("curve input needs q, genus, point_counts: %s"
                             % (exc,))
        return weil_from_counts(q, counts, genus=genus)

    def to_dict(self):
        return {"q": self.q, "genus": self.genus,
                "point_counts": list(self.point_counts)}


_WEIL_TOL = 1e-6


def weil_from_counts(q, counts, genus=None):
    """Build CurveData from |X(F_{q^l})| for l = 1..g.

    Exact Newton identities produce the numerator; the functional equation
    fills the top half; roots are extracted numerically and checked
    against |σ| = √q.
    """
    counts = tuple(int(n) for n in counts)
    g = len(counts)
    if genus is not None and genus != g:
        raise ValueError("genus %d needs exactly %d point counts, got %d"
                         % (genus, genus, len(counts)))
    if q < 2:
        raise ValueError("q must be at least 2")
    if any(n < 0 for n in counts):
        raise ValueError("point counts must be nonnegative")

    # power sums of the Weil numbers
    p = [0] + [1 + q ** l - counts[l - 1] for l in range(1, g + 1)]
    e = [Fraction(1)] + [Fraction(0)] * g
    for l in range(1, g + 1):
        acc = Fraction(0)
        for i in range(1, l + 1):
            acc += (-1) ** (i - 1) * e[l - i] * p[i]
        e[l] = acc / l
    a = [0] * (2 * g + 1)
    a[0] = 1
    for k in range(1, g + 1):
        ak = (-1) ** k * e[k]
        if ak.denominator != 1:
            raise NotWeil("counts give a non-integer zeta numerator")
        a[k] = int(ak)
    for k in range(0, g):
        a[2 * g - k] = q ** (g - k) * a[k]

    if g == 0:
        return CurveData(q, 0, counts, (1,), ())

    roots = numpy.roots([a[k] for k in range(2 * g, -1, -1)])
    sigmas = []
    for z in roots:
        if abs(z) < 1e-12:
            raise NotWeil("zeta numerator has a vanishing root")
        sigmas.append(1 / complex(z))
    sq = q ** 0.5
    for s in sigmas:
        if abs(abs(s) - sq) > _WEIL_TOL * sq:
            raise NotWeil("|σ| = %.8f differs from √q = %.8f"
                          % (abs(s), sq))

    # pair each σ with a partner of product q (its complex conjugate up
    # to numeric noise); order pairs deterministically
    remaining = sorted(sigmas, key=lambda s: (round(s.real, 9),
                                              round(s.imag, 9)))
    paired = []
    while remaining:
        s = remaining.pop(0)
        best = min(range(len(remaining)),
                   key=lambda i: abs(s * remaining[i] - q),
                   default=None)
        if best is None or abs(s * remaining[best] - q) > _WEIL_TOL * q:
            raise NotWeil("Weil numbers do not pair to products q")
        paired.extend((s, remaining.pop(best)))
    return CurveData(q, g, counts, tuple(a), tuple(paired))


def siegel_volume(g, r):
    """q^{(g-1)(r²-1)} ∏(1-α_i) / (q-1) · ∏_{k=2}^{r} ζ(q^{-k})."""
    if r < 1:
        raise ValueError("rank must be positive")
    out = FactoredRat.from_monomial(Monomial.of(q=(g - 1) * (r * r - 1)))
    for name in alpha_names(g):
        out = out * one_minus(1, Monomial.of(**{name: 1}))
    # 1/(q-1) = -1/(1-q)
    out = out * atom_inverse(1, Monomial.of(q=1)).mul_scalar(-1)
    for k in range(2, r + 1):
        out = out * zeta_at(g, 1, Monomial.of(q=-k))
    return out.normalize()


def torsion_volume_series(g, L):
    """Exp((1 - Σα_i + q) s / (q-1)) truncated at s^L."""
    if L < 1:
        raise ValueError("truncation order must be positive")
    terms = {ONE_MONOMIAL: 1, Monomial.of(q=1): 1}
    for name in alpha_names(g):
        terms[Monomial.of(**{name: 1})] = -1
    c1 = FactoredRat.from_poly(SparsePoly(terms))
    c1 = c1 * atom_inverse(1, Monomial.of(q=1)).mul_scalar(-1)
    coeffs = [FactoredRat.zero()] * (L + 1)
    coeffs[1] = c1.normalize()
    return pleth_exp(BiSeries("s", L, coeffs))
