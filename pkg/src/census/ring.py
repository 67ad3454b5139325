"""Exact arithmetic: Laurent monomials, sparse polynomials over Q, and
rational functions kept in factored form.

A rational function is stored as

    prefactor * numerator / product(denominator atoms)

where the prefactor is a Laurent monomial, the numerator is a sparse
multivariate polynomial with exact rational coefficients, and every
denominator factor is a binomial atom (1 - c*m) for a nonzero rational c
and a nonconstant Laurent monomial m.  Denominators are never expanded;
cancellation happens through exact division by atoms.

Variable names follow a fixed ambient scheme: "a1".."a2g" for the Weil
coordinates, "q", "z", "T", the kernel variables "z1".."zn", the ratio
variables "u1".."un", and the specialization variables "t" and "s".  The
canonical order is a* < q < z < T < z* < u* < t < s.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from .errors import PoleAtPoint, SubstitutionToZeroPole

_VAR_FIXED = {"q": (1, 0), "z": (2, 0), "T": (3, 0), "t": (6, 0), "s": (7, 0)}
_VAR_FAMILY = {"a": 0, "z": 4, "u": 5}


@lru_cache(maxsize=None)
def var_key(name):
    """Sort key realizing the canonical variable order."""
    key = _VAR_FIXED.get(name)
    if key is not None:
        return key
    head, tail = name[0], name[1:]
    if tail.isdigit() and head in _VAR_FAMILY:
        return (_VAR_FAMILY[head], int(tail))
    raise ValueError("unknown variable %r" % (name,))


def _clean(c):
    """Collapse integral Fractions to int; keeps coefficient arithmetic fast."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Monomial:
    """Immutable Laurent monomial: finite map variable -> nonzero integer exponent."""

    __slots__ = ("items", "_hash")

    def __init__(self, exponents=()):
        if isinstance(exponents, dict):
            pairs = exponents.items()
        else:
            pairs = exponents
        items = tuple(sorted(((v, e) for v, e in pairs if e),
                             key=lambda ve: var_key(ve[0])))
        self.items = items
        self._hash = hash(items)

    @staticmethod
    def of(**exponents):
        return Monomial(exponents)

    @staticmethod
    def _raw(items):
        # caller guarantees items is canonically sorted with no zero exponents
        m = object.__new__(Monomial)
        m.items = items
        m._hash = hash(items)
        return m

    def __mul__(self, other):
        if not other.items:
            return self
        if not self.items:
            return other
        a, b = self.items, other.items
        out = []
        i = j = 0
        la, lb = len(a), len(b)
        while i < la and j < lb:
            va, ea = a[i]
            vb, eb = b[j]
            if va == vb:
                e = ea + eb
                if e:
                    out.append((va, e))
                i += 1
                j += 1
            elif var_key(va) < var_key(vb):
                out.append(a[i])
                i += 1
            else:
                out.append(b[j])
                j += 1
        out.extend(a[i:])
        out.extend(b[j:])
        return Monomial._raw(tuple(out))

    def __pow__(self, k):
        if k == 0 or not self.items:
            return _ONE_M
        if k == 1:
            return self
        return Monomial._raw(tuple((v, e * k) for v, e in self.items))

    def exponent(self, var):
        for v, e in self.items:
            if v == var:
                return e
        return 0

    def without(self, var):
        return Monomial._raw(tuple((v, e) for v, e in self.items if v != var))

    def leading(self):
        """(variable, exponent) of the canonically last variable present."""
        return self.items[-1]

    def degree(self):
        return sum(e for _, e in self.items)

    def variables(self):
        return [v for v, _ in self.items]

    def is_one(self):
        return not self.items

    def subs(self, var, coeff, image):
        """Replace var by coeff*image; return (rational scalar, monomial)."""
        e = self.exponent(var)
        if not e:
            return 1, self
        return _clean(Fraction(coeff) ** e), self.without(var) * image ** e

    def eval(self, assignment):
        out = complex(1)
        for v, e in self.items:
            base = assignment[v]
            if base == 0 and e < 0:
                raise PoleAtPoint("monomial %s has a pole at %s=0" % (self, v))
            out *= base ** e
        return out

    def sort_key(self):
        return (self.degree(), tuple((var_key(v), e) for v, e in self.items))

    def __eq__(self, other):
        return self.items == other.items

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if not self.items:
            return "1"
        return "*".join(v if e == 1 else "%s^%d" % (v, e) for v, e in self.items)


_ONE_M = Monomial()
ONE_MONOMIAL = _ONE_M


class SparsePoly:
    """Sparse Laurent polynomial: finite map Monomial -> exact rational coefficient.

    Coefficients are Python ints when integral and Fractions otherwise;
    zero coefficients are never stored.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        d = {}
        if terms:
            pairs = terms.items() if isinstance(terms, dict) else terms
            for m, c in pairs:
                if c:
                    n = d.get(m, 0) + c
                    if n:
                        d[m] = _clean(n)
                    elif m in d:
                        del d[m]
        self.terms = d

    @classmethod
    def _raw(cls, d):
        p = object.__new__(cls)
        p.terms = d
        return p

    @classmethod
    def zero(cls):
        return cls._raw({})

    @classmethod
    def one(cls):
        return cls._raw({_ONE_M: 1})

    @classmethod
    def const(cls, c):
        c = _clean(c)
        return cls._raw({_ONE_M: c} if c else {})

    @classmethod
    def term(cls, c, monomial=None, **exponents):
        m = monomial if monomial is not None else Monomial(exponents)
        c = _clean(c)
        return cls._raw({m: c} if c else {})

    @classmethod
    def var(cls, name):
        return cls._raw({Monomial(((name, 1),)): 1})

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return isinstance(other, SparsePoly) and self.terms == other.terms

    __hash__ = None

    def __add__(self, other):
        a, b = self.terms, other.terms
        if not a:
            return other
        if not b:
            return self
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for m, c in b.items():
            n = out.get(m)
            if n is None:
                out[m] = c
            else:
                n = n + c
                if n:
                    out[m] = _clean(n)
                else:
                    del out[m]
        return SparsePoly._raw(out)

    def __neg__(self):
        return SparsePoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        a, b = self.terms, other.terms
        if not a or not b:
            return SparsePoly._raw({})
        if len(a) < len(b):
            a, b = b, a
        out = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = ma * mb
                out[m] = get(m, 0) + ca * cb
        return SparsePoly._raw({m: _clean(c) for m, c in out.items() if c})

    def mul_scalar(self, c):
        if not c:
            return SparsePoly._raw({})
        if c == 1:
            return self
        return SparsePoly._raw({m: _clean(cf * c) for m, cf in self.terms.items()})

    def mul_monomial(self, mono, c=1):
        if not c:
            return SparsePoly._raw({})
        if mono.is_one():
            return self.mul_scalar(c)
        if c == 1:
            return SparsePoly._raw({m * mono: cf for m, cf in self.terms.items()})
        return SparsePoly._raw({m * mono: _clean(cf * c) for m, cf in self.terms.items()})

    def mul_atom(self, atom):
        """Multiply by the binomial (1 - c*shape) without full convolution."""
        shape, c = atom.shape, atom.constant_fast
        out = dict(self.terms)
        get = out.get
        for m, cf in self.terms.items():
            m2 = m * shape
            out[m2] = get(m2, 0) - c * cf
        return SparsePoly._raw({m: _clean(cf) for m, cf in out.items() if cf})

    def adams(self, k):
        """Raise every variable to its k-th power (monomial exponents scale by k)."""
        if k == 1:
            return self
        return SparsePoly._raw({m ** k: c for m, c in self.terms.items()})

    def substitute(self, var, coeff, image):
        out = {}
        get = out.get
        for m, cf in self.terms.items():
            sc, m2 = m.subs(var, coeff, image)
            out[m2] = get(m2, 0) + cf * sc
        return SparsePoly._raw({m: _clean(c) for m, c in out.items() if c})

    def eval_numeric(self, assignment):
        return sum((c * m.eval(assignment) for m, c in self.terms.items()), complex(0))

    def eval_mod(self, p, assignment, main_var):
        """Reduce to a univariate polynomial in main_var over Z/p.

        Returns a dict degree -> residue.  Raises ValueError when p divides
        a coefficient denominator (caller should retry with another prime).
        """
        out = {}
        pw = {}
        for m, c in self.terms.items():
            if isinstance(c, Fraction):
                den = c.denominator % p
                if den == 0:
                    raise ValueError("bad prime")
                cc = c.numerator * pow(den, -1, p) % p
            else:
                cc = c % p
            d = 0
            for v, e in m.items:
                if v == main_var:
                    d = e
                else:
                    f = pw.get((v, e))
                    if f is None:
                        f = pow(assignment[v], e, p)
                        pw[(v, e)] = f
                    cc = cc * f % p
            out[d] = (out.get(d, 0) + cc) % p
        return out

    def content_monomial(self):
        """Largest monomial (Laurent) dividing every term."""
        if not self.terms:
            return _ONE_M
        union = set()
        for m in self.terms:
            union.update(v for v, _ in m.items)
        mins = dict.fromkeys(union)
        for m in self.terms:
            d = dict(m.items)
            for v in union:
                e = d.get(v, 0)
                if mins[v] is None or e < mins[v]:
                    mins[v] = e
        return Monomial({v: e for v, e in mins.items() if e})

    def divide_atom(self, atom):
        """Exact quotient self / (1 - c*shape), or None when not divisible.

        Bottom-up synthetic division in the leading variable of the shape;
        exactness follows because the divisor has unit constant term.
        """
        if not self.terms:
            return self
        v, d = atom.shape.leading()
        shape_rest = atom.shape.without(v)
        c = atom.constant_fast
        buckets = {}
        for m, cf in self.terms.items():
            e = m.exponent(v)
            buckets.setdefault(e, {})[m.without(v)] = cf
        hi = max(buckets)
        lo = min(buckets)
        qmax = hi - d
        quotient = {}
        for k in range(lo, hi + 1):
            blk = buckets.pop(k, None)
            if not blk:
                continue
            blk = {m0: cf for m0, cf in blk.items() if cf}
            if not blk:
                continue
            if k > qmax:
                return None
            vk = Monomial(((v, k),)) if k else _ONE_M
            for m0, cf in blk.items():
                quotient[m0 * vk] = _clean(cf)
            carry = buckets.setdefault(k + d, {})
            cget = carry.get
            for m0, cf in blk.items():
                m1 = m0 * shape_rest
                carry[m1] = cget(m1, 0) + c * cf
        return SparsePoly._raw(quotient)

    def sorted_terms(self):
        """Terms in descending canonical order (deterministic)."""
        return sorted(self.terms.items(), key=lambda mc: mc[0].sort_key(), reverse=True)

    def variables(self):
        out = set()
        for m in self.terms:
            out.update(v for v, _ in m.items)
        return out

    def constant_coefficient(self):
        return self.terms.get(_ONE_M, 0)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m, c in self.sorted_terms():
            cs = str(c)
            bits.append(cs if m.is_one() else ("%s*%s" % (cs, m)))
        return " + ".join(bits)


_FILTER_PRIMES = (2305843009213693951, 4611686018427387847, 2305843009213693967)
_FILTER_RNG = random.Random(0x1D872A5)


class _DivisionFilter:
    """Cheap necessary tests for atom | poly via random mod-p specialization.

    Specializes every variable except the atom's leading one to a random
    residue and runs synthetic division over Z/p.  A nonzero remainder
    proves non-divisibility; a zero remainder is only evidence.  One
    univariate reduction per (prime, leading variable) is shared by every
    candidate atom against the same polynomial, so the per-atom cost is a
    single pass over the residue dict.
    """

    __slots__ = ("poly", "assignments", "reductions")

    def __init__(self, poly):
        self.poly = poly
        self.assignments = {}
        self.reductions = {}

    def _assignment(self, p, shape):
        a = self.assignments.get(p)
        if a is None:
            a = {w: _FILTER_RNG.randrange(2, p - 2)
                 for w in self.poly.variables()}
            self.assignments[p] = a
        for w in shape.variables():
            if w not in a:
                a[w] = _FILTER_RNG.randrange(2, p - 2)
        return a

    def may_divide(self, atom):
        if not self.poly.terms:
            return True
        v, d = atom.shape.leading()
        for p in _FILTER_PRIMES:
            assignment = self._assignment(p, atom.shape)
            key = (p, v)
            coeffs = self.reductions.get(key, False)
            if coeffs is False:
                try:
                    coeffs = self.poly.eval_mod(p, assignment, v)
                except ValueError:
                    coeffs = None
                self.reductions[key] = coeffs
            if coeffs is None:
                continue
            c = atom.constant
            den = c.denominator % p
            if den == 0:
                continue
            cc = c.numerator * pow(den, -1, p) % p
            for w, e in atom.shape.items:
                if w != v:
                    cc = cc * pow(assignment[w], e, p) % p
            if not coeffs:
                return True
            hi = max(coeffs)
            lo = min(coeffs)
            qmax = hi - d
            buckets = dict(coeffs)
            for k in range(lo, hi + 1):
                cf = buckets.pop(k, 0) % p
                if not cf:
                    continue
                if k > qmax:
                    return False
                buckets[k + d] = (buckets.get(k + d, 0) + cc * cf) % p
            return True
        return True


class Atom:
    """Denominator factor (1 - constant*shape); shape a nonconstant monomial.

    Canonical form: the leading variable of the shape carries a positive
    exponent.  Atom.make performs the canonicalizing flip
    (1 - c*m) = -c*m * (1 - (1/c)*m^-1) and reports the factored-out unit.
    """

    __slots__ = ("constant", "constant_fast", "shape", "_hash")

    def __init__(self, constant, shape):
        self.constant = Fraction(constant)
        self.constant_fast = _clean(self.constant)
        self.shape = shape
        self._hash = hash((self.constant, shape))

    @staticmethod
    def make(constant, shape):
        """Canonicalize; returns (unit_coeff, unit_monomial, atom) with
        (1 - constant*shape) == unit_coeff * unit_monomial * (1 - c'*m')."""
        c = Fraction(constant)
        if not c:
            raise ValueError("atom constant must be nonzero")
        if shape.is_one():
            raise ValueError("atom shape must be nonconstant")
        if shape.leading()[1] < 0:
            return _clean(-c), shape, Atom(1 / c, shape ** -1)
        return 1, _ONE_M, Atom(c, shape)

    def as_poly(self):
        return SparsePoly._raw({_ONE_M: 1, self.shape: _clean(-self.constant)})

    def eval(self, assignment):
        return 1 - self.constant_fast * self.shape.eval(assignment)

    def adams(self, k):
        return Atom(self.constant, self.shape ** k)

    def subs(self, var, coeff, image):
        """Substitute var -> coeff*image.

        Returns ('atom', (unit_coeff, unit_mono, Atom)), ('scalar', value)
        when the shape collapses to a constant, or ('zero', None) when the
        whole atom vanishes identically.
        """
        if not self.shape.exponent(var):
            return "atom", (1, _ONE_M, self)
        sc, m2 = self.shape.subs(var, coeff, image)
        c2 = self.constant * sc
        if m2.is_one():
            val = 1 - c2
            if not val:
                return "zero", None
            return "scalar", val
        return "atom", Atom.make(c2, m2)

    def key(self):
        return (self.shape.sort_key(), self.constant)

    def __eq__(self, other):
        return self.constant == other.constant and self.shape == other.shape

    def __hash__(self):
        return self._hash

    def __repr__(self):
        c = self.constant
        if c == 1:
            return "(1-%s)" % (self.shape,)
        if c == -1:
            return "(1+%s)" % (self.shape,)
        return "(1-%s*%s)" % (c, self.shape)


def _sorted_atoms(atoms):
    return tuple(sorted(atoms, key=Atom.key))


class FactoredRat:
    """Rational function prefactor * numerator / prod(denominator atoms)."""

    __slots__ = ("prefactor", "numerator", "denominator", "_normalized")

    def __init__(self, prefactor=_ONE_M, numerator=None, denominator=(), normalized=False):
        self.prefactor = prefactor
        self.numerator = numerator if numerator is not None else SparsePoly.one()
        self.denominator = tuple(denominator)
        self._normalized = normalized

    @classmethod
    def zero(cls):
        return cls(_ONE_M, SparsePoly.zero(), (), normalized=True)

    @classmethod
    def one(cls):
        return cls(_ONE_M, SparsePoly.one(), (), normalized=True)

    @classmethod
    def from_const(cls, c):
        return cls(_ONE_M, SparsePoly.const(c), (), normalized=True)

    @classmethod
    def from_poly(cls, p):
        return cls(_ONE_M, p, ())

    @classmethod
    def from_monomial(cls, m, c=1):
        return cls(m, SparsePoly.const(c), (), normalized=True)

    @classmethod
    def var(cls, name):
        return cls.from_monomial(Monomial(((name, 1),)))

    def is_zero(self):
        return self.numerator.is_zero()

    def normalize(self):
        """Cancel denominator atoms dividing the numerator and pull the
        monomial content of the numerator into the prefactor."""
        if self._normalized:
            return self
        num = self.numerator
        if num.is_zero():
            return FactoredRat.zero()
        pre = self.prefactor
        out_den = []
        grouped = {}
        for a in self.denominator:
            grouped[a] = grouped.get(a, 0) + 1
        filt = _DivisionFilter(num) if grouped else None
        for atom in sorted(grouped, key=Atom.key):
            k = grouped[atom]
            while k:
                if not filt.may_divide(atom):
                    break
                q = num.divide_atom(atom)
                if q is None:
                    break
                num = q
                filt = _DivisionFilter(num)
                k -= 1
            out_den.extend([atom] * k)
        mc = num.content_monomial()
        if not mc.is_one():
            pre = pre * mc
            num = num.mul_monomial(mc ** -1)
        return FactoredRat(pre, num, _sorted_atoms(out_den), normalized=True)

    def __add__(self, other):
        return add_many((self, other))

    def __neg__(self):
        return FactoredRat(self.prefactor, -self.numerator, self.denominator,
                           normalized=self._normalized)

    def __sub__(self, other):
        return add_many((self, -other))

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return FactoredRat.zero()
        return FactoredRat(self.prefactor * other.prefactor,
                           self.numerator * other.numerator,
                           self.denominator + other.denominator).normalize()

    def __truediv__(self, other):
        return self * other.inverse()

    def mul_scalar(self, c):
        if not c:
            return FactoredRat.zero()
        return FactoredRat(self.prefactor, self.numerator.mul_scalar(c),
                           self.denominator, normalized=self._normalized)

    def adams(self, k):
        if k == 1:
            return self
        return FactoredRat(self.prefactor ** k, self.numerator.adams(k),
                           _sorted_atoms(a.adams(k) for a in self.denominator),
                           normalized=self._normalized and not self.denominator)

    def substitute(self, var, coeff, image):
        """Exact substitution var -> coeff*image followed by normalize."""
        if image.exponent(var):
            raise ValueError("substitution image mentions %r itself" % (var,))
        sc, pre = self.prefactor.subs(var, coeff, image)
        num = self.numerator.substitute(var, coeff, image)
        den = []
        scale = Fraction(sc)
        for a in self.denominator:
            kind, payload = a.subs(var, coeff, image)
            if kind == "zero":
                raise SubstitutionToZeroPole(
                    "atom %s vanishes identically under %s -> %s*%s"
                    % (a, var, coeff, image))
            if kind == "scalar":
                scale /= payload
                continue
            u, um, at = payload
            if u != 1:
                scale /= u
            if not um.is_one():
                pre = pre * um ** -1
            den.append(at)
        if scale != 1:
            num = num.mul_scalar(scale)
        return FactoredRat(pre, num, den).normalize()

    def eval_numeric(self, assignment, tol=1e-12):
        den = complex(1)
        for a in self.denominator:
            v = a.eval(assignment)
            if abs(v) <= tol:
                raise PoleAtPoint("denominator atom %s vanishes at the given point" % (a,))
            den *= v
        val = self.numerator.eval_numeric(assignment)
        return self.prefactor.eval(assignment) * val / den

    def inverse(self):
        """Exact reciprocal; the numerator must have at most two terms."""
        f = self if self._normalized else self.normalize()
        terms = f.numerator.sorted_terms()
        if not terms:
            raise ZeroDivisionError("inverse of zero")
        num = SparsePoly.one()
        for a in f.denominator:
            num = num.mul_atom(a)
        if len(terms) == 1:
            (m1, c1), = terms
            den = ()
        elif len(terms) == 2:
            (m1, c1), (m2, c2) = terms
            u, um, at = Atom.make(Fraction(-c2) / Fraction(c1), m2 * m1 ** -1)
            den = (at,)
            m1 = m1 * um
            c1 = c1 * u
        else:
            raise ValueError("inverse requires a monomial or binomial numerator")
        pre = f.prefactor ** -1 * m1 ** -1
        num = num.mul_scalar(Fraction(1) / Fraction(c1))
        return FactoredRat(pre, num, den).normalize()

    def __eq__(self, other):
        if not isinstance(other, FactoredRat):
            return NotImplemented
        if (self.prefactor == other.prefactor and self.denominator == other.denominator
                and self.numerator == other.numerator):
            return True
        return self._cross_equal(other)

    __hash__ = None

    def _cross_equal(self, other):
        mine = {}
        for a in self.denominator:
            mine[a] = mine.get(a, 0) + 1
        theirs = {}
        for a in other.denominator:
            theirs[a] = theirs.get(a, 0) + 1
        left = self.numerator.mul_monomial(self.prefactor)
        right = other.numerator.mul_monomial(other.prefactor)
        for a, k in theirs.items():
            extra = k - mine.get(a, 0)
            for _ in range(max(extra, 0)):
                left = left.mul_atom(a)
        for a, k in mine.items():
            extra = k - theirs.get(a, 0)
            for _ in range(max(extra, 0)):
                right = right.mul_atom(a)
        return left == right

    def variables(self):
        out = self.numerator.variables()
        out.update(self.prefactor.variables())
        for a in self.denominator:
            out.update(a.shape.variables())
        return out

    def has_var(self, var):
        return var in self.variables()

    def to_json(self):
        """JSON object with decimal-string rationals; bit-exact round trip."""
        variables = sorted(self.variables(), key=var_key)

        def expvec(m):
            return [m.exponent(v) for v in variables]

        def frac(c):
            c = Fraction(c)
            return "%d/%d" % (c.numerator, c.denominator)

        return {
            "variables": variables,
            "prefactor": expvec(self.prefactor),
            "numerator": [[expvec(m), frac(c)] for m, c in self.numerator.sorted_terms()],
            "denominator": [[frac(a.constant), expvec(a.shape)]
                            for a in _sorted_atoms(self.denominator)],
        }

    @staticmethod
    def from_json(obj):
        variables = list(obj["variables"])

        def mono(vec):
            return Monomial({v: e for v, e in zip(variables, vec) if e})

        def frac(s):
            n, _, d = s.partition("/")
            return Fraction(int(n), int(d or 1))

        pre = mono(obj["prefactor"])
        num = SparsePoly({mono(vec): _clean(frac(c)) for vec, c in obj["numerator"]})
        den = tuple(Atom(frac(c), mono(vec)) for c, vec in obj["denominator"])
        return FactoredRat(pre, num, den)

    def __repr__(self):
        bits = []
        if not self.prefactor.is_one():
            bits.append(str(self.prefactor))
        bits.append("(%s)" % (self.numerator,))
        s = "*".join(bits)
        if self.denominator:
            s += " / [%s]" % "".join(str(a) for a in self.denominator)
        return s


def add_many(fracs):
    """Sum over the least common denominator (atom multiset max), normalized."""
    live = [f for f in fracs if not f.numerator.is_zero()]
    if not live:
        return FactoredRat.zero()
    counts = []
    lcm = {}
    for f in live:
        c = {}
        for a in f.denominator:
            c[a] = c.get(a, 0) + 1
        counts.append(c)
        for a, k in c.items():
            if k > lcm.get(a, 0):
                lcm[a] = k
    total = {}
    tget = total.get
    for f, c in zip(live, counts):
        num = f.numerator.mul_monomial(f.prefactor)
        for a, k in lcm.items():
            for _ in range(k - c.get(a, 0)):
                num = num.mul_atom(a)
        for m, cf in num.terms.items():
            total[m] = tget(m, 0) + cf
            tget = total.get
    num = SparsePoly._raw({m: _clean(c) for m, c in total.items() if c})
    den = []
    for a, k in lcm.items():
        den.extend([a] * k)
    return FactoredRat(_ONE_M, num, _sorted_atoms(den)).normalize()


def atom_inverse(constant, shape):
    """The FactoredRat 1/(1 - constant*shape)."""
    u, um, at = Atom.make(constant, shape)
    return FactoredRat(um ** -1, SparsePoly.const(Fraction(1) / Fraction(u)), (at,),
                       normalized=True)


def geometric(constant=1, **exponents):
    """Convenience: 1/(1 - constant*monomial(**exponents))."""
    return atom_inverse(constant, Monomial(exponents))


def ring_add(a, b):
    """Exact sum of two factored rational functions, normalized."""
    return a + b


def ring_mul(a, b):
    """Exact product of two factored rational functions, normalized."""
    return a * b


def normalize(a):
    """Cancel atoms dividing the numerator; idempotent."""
    return a.normalize()


def adams_map(k, a):
    """k-th Adams operation: every ambient variable is raised to the k-th power."""
    if k < 1:
        raise ValueError("Adams index must be >= 1")
    return a.adams(k)


def substitute_var(a, var, image):
    """Substitute var by a scalar multiple of a monomial.

    image is either a Monomial or a (coeff, Monomial) pair.
    """
    if isinstance(image, tuple):
        coeff, mono = image
    else:
        coeff, mono = 1, image
    if not coeff:
        raise ValueError("substitution image must be nonzero")
    return a.substitute(var, coeff, mono)


def eval_numeric(a, assignment):
    """Evaluate at a complex point; PoleAtPoint when an atom vanishes there."""
    return a.eval_numeric(assignment)
