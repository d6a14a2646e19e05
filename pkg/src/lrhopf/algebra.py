"""Exact commutative coefficient algebras over the rationals.

The base objects are finitely generated (Laurent) polynomial algebras:
each generator may be marked invertible, in which case negative exponents
are allowed in that slot.  Everything is computed with exact Fraction
arithmetic; there is no floating point anywhere in this package.

Generators can additionally carry a Hopf marker ("primitive" or
"group_like") from which comultiplication, counit and antipode morphisms
are built.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .report import Report

HOPF_KINDS = ("none", "primitive", "group_like")


@dataclass(frozen=True)
class GeneratorDecl:
    """A named polynomial generator with optional markers."""

    name: str
    invertible: bool = False
    hopf_kind: str = "none"

    def __post_init__(self):
        if self.hopf_kind not in HOPF_KINDS:
            raise ValueError(f"unknown hopf_kind {self.hopf_kind!r}")
        if self.hopf_kind == "group_like" and not self.invertible:
            # the antipode must send the generator to its inverse
            raise ValueError(f"group_like generator {self.name!r} must be invertible")
        if self.hopf_kind == "primitive" and self.invertible:
            # counit would send an invertible element to 0
            raise ValueError(f"primitive generator {self.name!r} cannot be invertible")


class CommutativeAlgebra:
    """A commutative (Laurent) polynomial algebra over Q with named generators."""

    def __init__(self, gens):
        gens = tuple(gens)
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        self.gens = gens
        self.index = {g.name: i for i, g in enumerate(gens)}

    @property
    def ngens(self) -> int:
        return len(self.gens)

    @classmethod
    def trivial(cls) -> "CommutativeAlgebra":
        """The base field Q viewed as an algebra with no generators."""
        return cls(())

    def zero(self) -> "LaurentPoly":
        return LaurentPoly(self, {})

    def one(self) -> "LaurentPoly":
        return self.const(1)

    def const(self, q) -> "LaurentPoly":
        q = Fraction(q)
        if q == 0:
            return self.zero()
        return LaurentPoly(self, {(0,) * self.ngens: q})

    def gen(self, which) -> "LaurentPoly":
        """Generator as an element, by name or index."""
        i = self.index[which] if isinstance(which, str) else which
        exps = [0] * self.ngens
        exps[i] = 1
        return LaurentPoly(self, {tuple(exps): Fraction(1)})

    def monomial(self, exps, coeff=1) -> "LaurentPoly":
        coeff = Fraction(coeff)
        if coeff == 0:
            return self.zero()
        return LaurentPoly(self, {tuple(exps): coeff})

    def from_terms(self, terms) -> "LaurentPoly":
        return LaurentPoly(self, dict(terms))

    def tensor_power(self, k: int) -> "CommutativeAlgebra":
        """k-fold tensor product with itself, generators renamed by priming.

        Copy c of generator y is called y followed by c+1 primes.  Slots are
        copy-major: all of copy 0 first, then copy 1, and so on.  Hopf
        markers are not carried over (the product Hopf structure would not
        be generator-wise), invertibility is.
        """
        if k < 1:
            raise ValueError("tensor power needs k >= 1")
        gens = []
        for c in range(k):
            for g in self.gens:
                gens.append(
                    GeneratorDecl(g.name + "'" * (c + 1), invertible=g.invertible)
                )
        return CommutativeAlgebra(gens)

    def monomials_up_to(self, max_degree: int):
        """All monomials of total absolute degree <= max_degree.

        Invertible slots range over negative exponents too.  Yields
        LaurentPoly values, starting with 1.
        """
        ranges = []
        for g in self.gens:
            lo = -max_degree if g.invertible else 0
            ranges.append(range(lo, max_degree + 1))
        for exps in itertools.product(*ranges):
            if sum(abs(e) for e in exps) <= max_degree:
                yield self.monomial(exps)

    def __eq__(self, other):
        return isinstance(other, CommutativeAlgebra) and self.gens == other.gens

    def __hash__(self):
        return hash(self.gens)

    def __repr__(self):
        if not self.gens:
            return "Q"
        parts = [g.name + ("^±1" if g.invertible else "") for g in self.gens]
        return "Q[" + ", ".join(parts) + "]"


class LaurentPoly:
    """A sparse Laurent polynomial: map from exponent tuples to Fractions."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: CommutativeAlgebra, terms: dict):
        clean = {}
        n = algebra.ngens
        for exps, c in terms.items():
            c = Fraction(c)
            if c == 0:
                continue
            exps = tuple(exps)
            if len(exps) != n:
                raise ValueError(f"exponent tuple {exps} has wrong length")
            for i, e in enumerate(exps):
                if e < 0 and not algebra.gens[i].invertible:
                    raise ValueError(
                        f"negative exponent on non-invertible generator "
                        f"{algebra.gens[i].name!r}"
                    )
            clean[exps] = c
        self.algebra = algebra
        self.terms = clean

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def as_constant(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values()))

    def constant_coefficient(self) -> Fraction:
        return self.terms.get((0,) * self.algebra.ngens, Fraction(0))

    def is_unit(self) -> bool:
        """True when the element is invertible in the algebra: a single
        monomial supported on invertible slots."""
        if len(self.terms) != 1:
            return False
        exps = next(iter(self.terms))
        return all(
            e == 0 or self.algebra.gens[i].invertible for i, e in enumerate(exps)
        )

    def inverse(self) -> "LaurentPoly":
        if not self.is_unit():
            raise ValueError(f"{self} is not a unit")
        exps, c = next(iter(self.terms.items()))
        return LaurentPoly(self.algebra, {tuple(-e for e in exps): 1 / c})

    def total_degree(self) -> int:
        """Max over terms of the sum of exponents; 0 for the zero element."""
        if not self.terms:
            return 0
        return max(sum(exps) for exps in self.terms)

    # -- arithmetic ---------------------------------------------------------

    def _check_compatible(self, other: "LaurentPoly"):
        if self.algebra != other.algebra:
            raise ValueError("elements of different algebras")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.const(other)
        self._check_compatible(other)
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            terms[exps] = terms.get(exps, Fraction(0)) + c
        return LaurentPoly(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.algebra, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self.algebra.zero()
            return LaurentPoly(
                self.algebra, {e: c * other for e, c in self.terms.items()}
            )
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check_compatible(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                terms[key] = terms.get(key, Fraction(0)) + c1 * c2
        return LaurentPoly(self.algebra, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("exponent must be an integer")
        if n < 0:
            return self.inverse() ** (-n)
        result = self.algebra.one()
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash((self.algebra, frozenset(self.terms.items())))

    # -- printing -----------------------------------------------------------

    def _sorted_terms(self):
        # graded lexicographic, highest first, so output is deterministic
        return sorted(
            self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True
        )

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for exps, c in self._sorted_terms():
            factors = []
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                name = self.algebra.gens[i].name
                factors.append(name if e == 1 else f"{name}^{e}")
            mono = "*".join(factors)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            if not chunks:
                chunks.append(body if c > 0 else "-" + body)
            else:
                chunks.append(("+ " if c > 0 else "- ") + body)
        return " ".join(chunks)

    def __repr__(self):
        return f"<{self}>"


def coeff_str(p: LaurentPoly) -> str:
    """Render a coefficient for use in front of a noncommutative word,
    parenthesised when it has more than one term."""
    s = str(p)
    if len(p.terms) > 1:
        return "(" + s + ")"
    return s


# -- tensor bookkeeping ------------------------------------------------------


def split_exponents(exps, n: int):
    """Cut a flat exponent tuple into blocks of length n."""
    if n == 0:
        return ()
    if len(exps) % n:
        raise ValueError("exponent tuple length is not a multiple of the block size")
    return tuple(tuple(exps[i : i + n]) for i in range(0, len(exps), n))

def merge_exponents(blocks):
    return tuple(e for block in blocks for e in block)


def spread_copies(p: LaurentPoly, base: CommutativeAlgebra, copies, target: CommutativeAlgebra) -> LaurentPoly:
    """Reinterpret p, an element of a tensor power of `base`, inside a larger
    tensor power by sending source copy c to target copy copies[c]."""
    n = base.ngens
    copies = tuple(copies)
    if p.algebra.ngens != n * len(copies):
        raise ValueError("copy list does not match the source algebra")
    tn = target.ngens // n if n else 0
    terms: dict = {}
    for exps, c in p.terms.items():
        blocks = split_exponents(exps, n) if n else ()
        out = [(0,) * n for _ in range(tn)]
        for block, dest in zip(blocks, copies):
            out[dest] = tuple(a + b for a, b in zip(out[dest], block))
        key = merge_exponents(out) if n else ()
        terms[key] = terms.get(key, Fraction(0)) + c
    return LaurentPoly(target, terms)


def tensor_embed(p: LaurentPoly, copy: int, target: CommutativeAlgebra) -> LaurentPoly:
    """Place an element of the base algebra into one copy of a tensor power."""
    return spread_copies(p, p.algebra, (copy,), target)


# -- morphisms ---------------------------------------------------------------


class AlgebraMorphism:
    """A unital algebra map determined by generator images.

    Invertible generators must map to units so that negative exponents
    stay meaningful.
    """

    def __init__(self, source: CommutativeAlgebra, target: CommutativeAlgebra, images):
        images = tuple(images)
        if len(images) != source.ngens:
            raise ValueError("need one image per generator")
        for g, img in zip(source.gens, images):
            if img.algebra != target:
                raise ValueError(f"image of {g.name!r} lives in the wrong algebra")
            if g.invertible and not img.is_unit():
                raise ValueError(f"invertible generator {g.name!r} must map to a unit")
        self.source = source
        self.target = target
        self.images = images

    def __call__(self, p: LaurentPoly) -> LaurentPoly:
        if p.algebra != self.source:
            raise ValueError("argument lives in the wrong algebra")
        result = self.target.zero()
        for exps, c in p.terms.items():
            term = self.target.const(c)
            for img, e in zip(self.images, exps):
                if e:
                    term = term * img**e
            result = result + term
        return result

    def then(self, other: "AlgebraMorphism") -> "AlgebraMorphism":
        """Composite: apply self first, then other."""
        if other.source != self.target:
            raise ValueError("morphisms do not compose")
        return AlgebraMorphism(
            self.source, other.target, [other(img) for img in self.images]
        )

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraMorphism)
            and self.source == other.source
            and self.target == other.target
            and self.images == other.images
        )

    def __repr__(self):
        body = ", ".join(
            f"{g.name} -> {img}" for g, img in zip(self.source.gens, self.images)
        )
        return f"AlgebraMorphism({body})"


def identity_morphism(alg: CommutativeAlgebra) -> AlgebraMorphism:
    return AlgebraMorphism(alg, alg, [alg.gen(i) for i in range(alg.ngens)])


def inclusion_of_scalars(alg: CommutativeAlgebra) -> AlgebraMorphism:
    return AlgebraMorphism(CommutativeAlgebra.trivial(), alg, [])


def multiplication_morphism(alg: CommutativeAlgebra) -> AlgebraMorphism:
    """A tensor A -> A, both copies of a generator to the generator itself."""
    doubled = alg.tensor_power(2)
    images = [alg.gen(i % alg.ngens) for i in range(2 * alg.ngens)]
    return AlgebraMorphism(doubled, alg, images)


def _require_hopf_kinds(alg: CommutativeAlgebra):
    missing = [g.name for g in alg.gens if g.hopf_kind == "none"]
    if missing:
        raise ValueError(
            "no Hopf structure declared for generator(s): " + ", ".join(missing)
        )


def comultiplication(alg: CommutativeAlgebra) -> AlgebraMorphism:
    """Generator-wise coproduct A -> A tensor A from the Hopf markers."""
    _require_hopf_kinds(alg)
    doubled = alg.tensor_power(2)
    images = []
    for i, g in enumerate(alg.gens):
        left = tensor_embed(alg.gen(i), 0, doubled)
        right = tensor_embed(alg.gen(i), 1, doubled)
        if g.hopf_kind == "primitive":
            images.append(left + right)
        else:  # group_like
            images.append(left * right)
    return AlgebraMorphism(alg, doubled, images)


def counit_morphism(alg: CommutativeAlgebra) -> AlgebraMorphism:
    """Counit A -> Q (the trivial algebra)."""
    _require_hopf_kinds(alg)
    triv = CommutativeAlgebra.trivial()
    images = []
    for g in alg.gens:
        images.append(triv.zero() if g.hopf_kind == "primitive" else triv.one())
    return AlgebraMorphism(alg, triv, images)


def antipode_morphism(alg: CommutativeAlgebra) -> AlgebraMorphism:
    """Antipode A -> A: negation on primitives, inversion on group-likes."""
    _require_hopf_kinds(alg)
    images = []
    for i, g in enumerate(alg.gens):
        x = alg.gen(i)
        images.append(-x if g.hopf_kind == "primitive" else x.inverse())
    return AlgebraMorphism(alg, alg, images)


def counit_into(alg: CommutativeAlgebra) -> AlgebraMorphism:
    """Counit followed by the unit, as a map A -> A."""
    return counit_morphism(alg).then(inclusion_of_scalars(alg))


# The handful of tensor-leg maps needed to state the Hopf axioms.


def _tensor_leg_maps(alg, delta, eps, anti):
    doubled = alg.tensor_power(2)
    tripled = alg.tensor_power(3)
    n = alg.ngens

    def images_on_doubled(f0, f1):
        # f0 consumes copy 0 generators, f1 copy 1; both return target elements
        return [f0(i) for i in range(n)] + [f1(i) for i in range(n)]

    delta_left = AlgebraMorphism(
        doubled,
        tripled,
        images_on_doubled(
            lambda i: spread_copies(delta(alg.gen(i)), alg, (0, 1), tripled),
            lambda i: tensor_embed(alg.gen(i), 2, tripled),
        ),
    )
    delta_right = AlgebraMorphism(
        doubled,
        tripled,
        images_on_doubled(
            lambda i: tensor_embed(alg.gen(i), 0, tripled),
            lambda i: spread_copies(delta(alg.gen(i)), alg, (1, 2), tripled),
        ),
    )
    triv_inc = inclusion_of_scalars(alg)
    eps_left = AlgebraMorphism(
        doubled,
        alg,
        images_on_doubled(lambda i: triv_inc(eps(alg.gen(i))), lambda i: alg.gen(i)),
    )
    eps_right = AlgebraMorphism(
        doubled,
        alg,
        images_on_doubled(lambda i: alg.gen(i), lambda i: triv_inc(eps(alg.gen(i)))),
    )
    anti_left = AlgebraMorphism(
        doubled,
        doubled,
        images_on_doubled(
            lambda i: tensor_embed(anti(alg.gen(i)), 0, doubled),
            lambda i: tensor_embed(alg.gen(i), 1, doubled),
        ),
    )
    anti_right = AlgebraMorphism(
        doubled,
        doubled,
        images_on_doubled(
            lambda i: tensor_embed(alg.gen(i), 0, doubled),
            lambda i: tensor_embed(anti(alg.gen(i)), 1, doubled),
        ),
    )
    return delta_left, delta_right, eps_left, eps_right, anti_left, anti_right


def check_hopf_axioms(
    alg: CommutativeAlgebra,
    *,
    max_degree: int = 3,
    seed: int = 0,
    samples: int = 40,
    antipode: AlgebraMorphism | None = None,
) -> Report:
    """Verify the Hopf algebra axioms on A exhaustively on small monomials
    and on seeded random elements.

    An explicit antipode may be passed in to test a candidate map; by
    default the one derived from the generator markers is used.
    """
    from . import sampling

    delta = comultiplication(alg)
    eps = counit_morphism(alg)
    anti = antipode if antipode is not None else antipode_morphism(alg)
    if anti.source != alg or anti.target != alg:
        raise ValueError("antipode must be a self-map of the algebra")

    dl, dr, el, er, sl, sr = _tensor_leg_maps(alg, delta, eps, anti)
    mult = multiplication_morphism(alg)
    eta_eps = counit_morphism(alg).then(inclusion_of_scalars(alg))

    elements = list(alg.monomials_up_to(max_degree))
    rng = sampling.make_rng(seed)
    for _ in range(samples):
        elements.append(sampling.random_poly(rng, alg, max_degree=max_degree))

    report = Report()

    def law(name, f, g):
        for p in elements:
            lhs, rhs = f(p), g(p)
            if lhs != rhs:
                report.add(name, False, f"at {p}: {lhs} != {rhs}")
                return
        report.add(name, True)

    law("coassociativity", lambda p: dl(delta(p)), lambda p: dr(delta(p)))
    law("counit-left", lambda p: el(delta(p)), lambda p: p)
    law("counit-right", lambda p: er(delta(p)), lambda p: p)
    law("antipode-left", lambda p: mult(sl(delta(p))), eta_eps)
    law("antipode-right", lambda p: mult(sr(delta(p))), eta_eps)
    law("antipode-involutive", lambda p: anti(anti(p)), lambda p: p)
    return report


# -- derivations -------------------------------------------------------------


class Derivation:
    """A Q-linear derivation of the algebra, stored by generator values."""

    def __init__(self, algebra: CommutativeAlgebra, values):
        values = tuple(values)
        if len(values) != algebra.ngens:
            raise ValueError("need one value per generator")
        for v in values:
            if v.algebra != algebra:
                raise ValueError("derivation values live in the wrong algebra")
        self.algebra = algebra
        self.values = values

    @classmethod
    def zero(cls, algebra: CommutativeAlgebra) -> "Derivation":
        return cls(algebra, [algebra.zero()] * algebra.ngens)

    def __call__(self, p: LaurentPoly) -> LaurentPoly:
        if p.algebra != self.algebra:
            raise ValueError("argument lives in the wrong algebra")
        result = self.algebra.zero()
        for exps, c in p.terms.items():
            for i, e in enumerate(exps):
                if e == 0 or self.values[i].is_zero():
                    continue
                # d(g^e) = e g^(e-1) dg, valid for negative e on Laurent slots
                lowered = list(exps)
                lowered[i] -= 1
                result = result + self.algebra.monomial(lowered, c * e) * self.values[i]
        return result

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def __add__(self, other: "Derivation") -> "Derivation":
        if self.algebra != other.algebra:
            raise ValueError("derivations of different algebras")
        return Derivation(
            self.algebra, [a + b for a, b in zip(self.values, other.values)]
        )

    def __sub__(self, other: "Derivation") -> "Derivation":
        return self + (-other)

    def __neg__(self) -> "Derivation":
        return Derivation(self.algebra, [-v for v in self.values])

    def __rmul__(self, a) -> "Derivation":
        # module structure: (a·D)(p) = a * D(p)
        if isinstance(a, (int, Fraction)):
            a = self.algebra.const(a)
        if not isinstance(a, LaurentPoly):
            return NotImplemented
        return Derivation(self.algebra, [a * v for v in self.values])

    def commutator(self, other: "Derivation") -> "Derivation":
        if self.algebra != other.algebra:
            raise ValueError("derivations of different algebras")
        return Derivation(
            self.algebra,
            [self(other.values[i]) - other(self.values[i]) for i in range(self.algebra.ngens)],
        )

    def tensor_lift(self, copy: int, power_alg: CommutativeAlgebra) -> "Derivation":
        """Extend to a tensor power of the algebra, acting on one copy only."""
        n = self.algebra.ngens
        k = power_alg.ngens // n if n else 1
        values = []
        for c in range(k):
            for i in range(n):
                if c == copy:
                    values.append(tensor_embed(self.values[i], copy, power_alg))
                else:
                    values.append(power_alg.zero())
        return Derivation(power_alg, values)

    def __eq__(self, other):
        return (
            isinstance(other, Derivation)
            and self.algebra == other.algebra
            and self.values == other.values
        )

    def __repr__(self):
        body = ", ".join(
            f"d({g.name})={v}"
            for g, v in zip(self.algebra.gens, self.values)
            if not v.is_zero()
        )
        return f"Derivation({body or '0'})"
