"""Symmetrized n-variable kernels and the iterated chain residues that
turn them into the one-variable weights H_λ(z).

The kernel is assembled summand by summand: dividing the σ-permuted
ζ̃-product by the unpermuted one leaves exactly one ratio factor
ρ(z_a/z_b) = ζ̃(z_a/z_b)/ζ̃(z_b/z_a) per inversion of σ, and ρ collapses
to −(w−q)∏_i(1−α_i w) / ((1−qw)∏_i(w−α_i)), independent of the genus.

Residues are taken in ratio coordinates: inside a block the non-leader
variables are rewritten as leader·u_j·…, each constraint becomes
u_j = q^{-1}, and the measure dz_j/z_j becomes du_j/u_j.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from .errors import HigherOrderPole
from .partitions import block_profile
from .ring import (
    Atom,
    FactoredRat,
    Monomial,
    ONE_MONOMIAL,
    SparsePoly,
    add_many,
    atom_inverse,
)
from .zeta import alpha_names, pair_reduce


def _z(i):
    return "z%d" % i


def _u(i):
    return "u%d" % i


@dataclass(frozen=True)
class ChainBlock:
    part: int         # the part size this block represents
    leader: int       # index of the surviving variable
    ratios: tuple     # u-indices j, each meaning z_{j+1}/z_j = q^{-1}


@dataclass(frozen=True)
class ChainSpec:
    blocks: tuple

    @property
    def n(self):
        return sum(len(b.ratios) + 1 for b in self.blocks)

    @property
    def constraint_count(self):
        return sum(len(b.ratios) for b in self.blocks)


def chain_spec(lam):
    prof = block_profile(lam)
    blocks = []
    for part, start, end in prof.blocks():
        blocks.append(ChainBlock(part, start, tuple(range(start, end))))
    return ChainSpec(tuple(blocks))


@dataclass(frozen=True)
class SymmetrizedKernel:
    n: int
    fraction: FactoredRat


def _rho(g, hi, lo, paired=False):
    """ζ̃(z_hi/z_lo)/ζ̃(z_lo/z_hi) for hi > lo, as an unnormalized
    FactoredRat: -(w-q)∏(1-α_i w) / ((1-qw)∏(w-α_i)) with w = z_hi/z_lo.

    paired=True rewrites the factor modulo the Weil relations up front;
    downstream products then stay in the g odd roots only."""
    w = Monomial.of(**{_z(hi): 1, _z(lo): -1})
    num = SparsePoly({Monomial.of(q=1): 1, w: -1})      # q - w
    pref = ONE_MONOMIAL
    dens = []
    for name in alpha_names(g):
        am = Monomial.of(**{name: 1})
        num = num.mul_atom(Atom(Fraction(1), w * am))
        # (w - α) = -α(1 - w/α); the 2g sign flips cancel pairwise
        pref = pref * am ** -1
        dens.append(Atom(Fraction(1), w * am ** -1))
    dens.append(Atom(Fraction(1), w * Monomial.of(q=1)))
    out = FactoredRat(pref, num, tuple(dens))
    return pair_reduce(out, g) if paired else out


@lru_cache(maxsize=None)
def build_L(g, n, paired=False):
    """The full S_n kernel combined into a single normalized fraction."""
    if n < 1:
        raise ValueError("kernel needs at least one variable")
    summands = []
    for sigma in permutations(range(1, n + 1)):
        pieces = [atom_inverse(1, Monomial.of(**{_z(sigma[0]): 1}))]
        for i in range(n - 1):
            shape = Monomial.of(q=1, **{_z(sigma[i + 1]): 1,
                                        _z(sigma[i]): -1})
            pieces.append(atom_inverse(1, shape))
        for i in range(n):
            for j in range(i + 1, n):
                if sigma[i] > sigma[j]:
                    pieces.append(_rho(g, sigma[i], sigma[j], paired))
        pref = ONE_MONOMIAL
        num = SparsePoly.one()
        dens = []
        for p in pieces:
            pref = pref * p.prefactor
            num = num * p.numerator
            dens.extend(p.denominator)
        summands.append(FactoredRat(pref, num, tuple(dens)))
    return SymmetrizedKernel(n, add_many(summands))


def res_simple(f, var, coeff, monomial=ONE_MONOMIAL):
    """Residue of the form f·d(var)/var at var = coeff·monomial.

    The pole must be structurally simple after normalization: exactly one
    denominator atom may vanish identically on the substitution.  Returns
    0 when f is regular there.
    """
    c = Fraction(coeff)
    if c == 0:
        raise ValueError("residue point must be away from the origin")
    if monomial.exponent(var):
        raise ValueError("residue point may not involve %s" % (var,))
    if not f._normalized:
        f = f.normalize()
    singular = []
    regular = []
    for atom in f.denominator:
        e = atom.shape.exponent(var)
        if e:
            rest = atom.shape.without(var) * monomial ** e
            if rest.is_one() and atom.constant * c ** e == 1:
                singular.append((atom, e))
                continue
        regular.append(atom)
    if not singular:
        return FactoredRat.zero()
    if len(singular) > 1:
        raise HigherOrderPole(
            "pole of order %d at %s = %s*%r" % (len(singular), var, c,
                                                monomial))
    _, e = singular[0]
    rest = FactoredRat(f.prefactor, f.numerator, tuple(regular))
    return rest.substitute(var, c, monomial).mul_scalar(Fraction(-1, e))


def h_tilde(g, lam, block_order=None, reverse_chains=False, paired=False):
    """Res_λ of the kernel; a FactoredRat in the block leader variables.

    The defining orientation integrates out the non-final variable of each
    chain constraint (the survivor of a block is its last variable, later
    rewritten through the chain in terms of the leader).  Computing in
    ratio coordinates u_j = z_{j+1}/z_j instead picks up a factor -1 per
    constraint, compensated at the end.  The order arguments only reindex
    the residue sequence (the result does not depend on them; exposed for
    tests).  paired=True works modulo the Weil relations throughout; the
    pole bookkeeping is untouched because every root-carrying atom keeps
    exactly one odd root after the rewrite."""
    spec = chain_spec(lam)
    if not spec.blocks:
        raise ValueError("partition must be nonempty")
    f = build_L(g, spec.n, paired).fraction
    for block in spec.blocks:
        for k, _ in enumerate(block.ratios, start=1):
            image = {_z(block.leader): 1}
            for j in block.ratios[:k]:
                image[_u(j)] = 1
            f = f.substitute(_z(block.leader + k), 1, Monomial.of(**image))
    blocks = spec.blocks
    if block_order is not None:
        blocks = [blocks[i] for i in block_order]
    qinv = Monomial.of(q=-1)
    for block in blocks:
        js = block.ratios if reverse_chains else reversed(block.ratios)
        for j in js:
            f = res_simple(f, _u(j), 1, qinv)
    if spec.constraint_count % 2:
        f = f.mul_scalar(-1)
    return f if f._normalized else f.normalize()


@lru_cache(maxsize=None)
def _h_tilde_cached(g, lam, paired=False):
    return h_tilde(g, lam, paired=paired)


@lru_cache(maxsize=None)
def h_factor(g, lam, paired=False):
    """H_λ(z): every block leader specialized to z^i q^{-r_{<i}}."""
    spec = chain_spec(lam)
    if not spec.blocks:
        return FactoredRat.one()
    prof = block_profile(lam)
    f = _h_tilde_cached(g, lam, paired)
    for block in spec.blocks:
        image = Monomial.of(z=block.part, q=-prof.prefix(block.part))
        f = f.substitute(_z(block.leader), 1, image)
    return f if f._normalized else f.normalize()
