"""Comultiplication, counit and antipode on the enveloping algebra.

The tensor square of the enveloping algebra is realized as the enveloping
algebra of a doubled structure: coefficients live in the tensor square of
A, and the module basis is two commuting copies of the original basis,
each acting on its own tensor leg.  Words stay segregated because copy 0
letters sort before copy 1 letters.

On that realization:
  * a coefficient comultiplies through the generator markers of A;
  * a basis letter e goes to e' + e'' (one letter in each copy);
  * the counit keeps the empty-word coefficient and applies the counit
    of A;
  * the antipode reverses words, signs them by length, and applies the
    antipode of A to coefficients.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import (
    AlgebraMorphism,
    LaurentPoly,
    antipode_morphism,
    coeff_str,
    comultiplication,
    counit_morphism,
    inclusion_of_scalars,
    split_exponents,
    spread_copies,
    tensor_embed,
    check_hopf_axioms,
)
from .enveloping import EnvElement, _add_term
from .lie_rinehart import LieRinehartAlgebra, check_bi_lr
from .report import Report


def tensor_power_structure(S: LieRinehartAlgebra, k: int) -> LieRinehartAlgebra:
    """k commuting copies of the structure over the k-fold tensor power of
    its coefficients.  Copy c of a basis element acts on tensor leg c only;
    brackets across copies vanish.  Cached on the structure."""
    cached = S._tensor_cache.get(k)
    if cached is not None:
        return cached
    m = S.rank
    base = S.algebra
    alg = base.tensor_power(k)
    names = [name + "'" * (c + 1) for c in range(k) for name in S.basis_names]
    table = {}
    for c in range(k):
        off = c * m
        for (i, j), coeffs in S.bracket_table.items():
            row = [alg.zero()] * (k * m)
            for t, coeff in enumerate(coeffs):
                if not coeff.is_zero():
                    row[off + t] = tensor_embed(coeff, c, alg)
            table[(off + i, off + j)] = tuple(row)
    anchor = [
        S.anchor[i].tensor_lift(c, alg) for c in range(k) for i in range(m)
    ]
    # valid whenever S is: copies bracket to zero and act on disjoint slots
    T = LieRinehartAlgebra(alg, names, table, anchor, validate=False)
    S._tensor_cache[k] = T
    return T


def _split_flat_word(word, m: int):
    w1 = tuple(l for l in word if l < m)
    w2 = tuple(l - m for l in word if l >= m)
    return w1, w2


class TensorEnvElement:
    """An element of the tensor square of the enveloping algebra: a map
    from word pairs to coefficients in the tensor square of A."""

    __slots__ = ("structure", "tpow", "terms")

    def __init__(self, structure: LieRinehartAlgebra, terms: dict):
        tpow = tensor_power_structure(structure, 2)
        clean = {}
        for (w1, w2), c in terms.items():
            w1, w2 = tuple(w1), tuple(w2)
            for w in (w1, w2):
                if any(w[t] > w[t + 1] for t in range(len(w) - 1)):
                    raise ValueError(f"word {w} is not nondecreasing")
                if any(not (0 <= i < structure.rank) for i in w):
                    raise ValueError(f"word {w} uses letters outside the basis")
            if not isinstance(c, LaurentPoly):
                c = tpow.algebra.const(c)
            if c.algebra != tpow.algebra:
                raise ValueError("coefficient must live in the tensor square of A")
            if not c.is_zero():
                key = (w1, w2)
                clean[key] = clean.get(key, tpow.algebra.zero()) + c
        self.structure = structure
        self.tpow = tpow
        self.terms = {k: c for k, c in clean.items() if not c.is_zero()}

    @classmethod
    def zero(cls, structure) -> "TensorEnvElement":
        return cls(structure, {})

    @classmethod
    def from_flat(cls, structure, u: EnvElement) -> "TensorEnvElement":
        m = structure.rank
        return cls(
            structure,
            {_split_flat_word(w, m): c for w, c in u.terms.items()},
        )

    def to_flat(self) -> EnvElement:
        m = self.structure.rank
        terms = {}
        for (w1, w2), c in self.terms.items():
            terms[w1 + tuple(l + m for l in w2)] = c
        return EnvElement(self.tpow, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other):
        if self.structure != other.structure:
            raise ValueError("tensor elements over different structures")

    def __add__(self, other: "TensorEnvElement") -> "TensorEnvElement":
        self._check(other)
        acc = dict(self.terms)
        for key, c in other.terms.items():
            _add_term(acc, key, c)
        return TensorEnvElement(self.structure, acc)

    def __neg__(self):
        return TensorEnvElement(
            self.structure, {k: -c for k, c in self.terms.items()}
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TensorEnvElement(
                self.structure, {k: c * other for k, c in self.terms.items()}
            )
        if isinstance(other, LaurentPoly):
            return TensorEnvElement.from_flat(
                self.structure, self.to_flat() * other
            )
        if not isinstance(other, TensorEnvElement):
            return NotImplemented
        self._check(other)
        return TensorEnvElement.from_flat(
            self.structure, self.to_flat() * other.to_flat()
        )

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, TensorEnvElement):
            return NotImplemented
        return self.structure == other.structure and self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        S = self.structure
        n = S.algebra.ngens
        pieces = []
        ordered = sorted(
            self.terms.items(),
            key=lambda kv: (len(kv[0][0]) + len(kv[0][1]), kv[0]),
            reverse=True,
        )
        for (w1, w2), c in ordered:
            for exps, q in sorted(
                c.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True
            ):
                if n:
                    b1, b2 = split_exponents(exps, n)
                else:
                    b1 = b2 = ()
                left = EnvElement(S, {w1: S.algebra.monomial(b1, abs(q))})
                right = EnvElement(S, {w2: S.algebra.monomial(b2, 1)})
                pieces.append((q < 0, f"{left} (x) {right}"))
        out = ("-" if pieces[0][0] else "") + pieces[0][1]
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return f"<{self}>"


def tensor_pair(u1: EnvElement, u2: EnvElement) -> TensorEnvElement:
    """The elementary tensor of two enveloping algebra elements."""
    if u1.structure != u2.structure:
        raise ValueError("tensor factors over different structures")
    S = u1.structure
    alg2 = tensor_power_structure(S, 2).algebra
    terms: dict = {}
    for w1, c1 in u1.terms.items():
        for w2, c2 in u2.terms.items():
            coeff = tensor_embed(c1, 0, alg2) * tensor_embed(c2, 1, alg2)
            _add_term(terms, (w1, w2), coeff)
    return TensorEnvElement(S, terms)


class CoproductLikeMap:
    """A candidate comultiplication on the enveloping algebra determined by
    the coefficient comultiplication and a tensor-square image per basis
    letter.  The standard coproduct sends a letter e to e' + e''; the
    conjecture probe perturbs these images.

    Whether such a map is actually well behaved (multiplicative,
    coassociative, counital) is exactly what the batteries measure."""

    def __init__(self, S: LieRinehartAlgebra, letter_images, label: str = "coproduct"):
        self.S = S
        self.label = label
        self.T2 = tensor_power_structure(S, 2)
        self.delta_A = comultiplication(S.algebra)
        images = []
        for img in letter_images:
            if isinstance(img, TensorEnvElement):
                img = img.to_flat()
            if img.structure != self.T2:
                raise ValueError("letter image outside the tensor square")
            images.append(img)
        if len(images) != S.rank:
            raise ValueError("need one image per basis letter")
        self.flat_images = images
        self._lifted = {}

    def __call__(self, u: EnvElement) -> TensorEnvElement:
        if u.structure != self.S:
            raise ValueError("argument in the wrong enveloping algebra")
        total = EnvElement.zero(self.T2)
        for w, a in u.terms.items():
            cur = EnvElement.from_poly(self.T2, self.delta_A(a))
            for letter in w:
                cur = cur * self.flat_images[letter]
            total = total + cur
        return TensorEnvElement.from_flat(self.S, total)

    # -- one-leg application, for coassociativity ---------------------------

    def _leg_data(self, leg: int):
        cached = self._lifted.get(leg)
        if cached is not None:
            return cached
        S = self.S
        A = S.algebra
        m = S.rank
        n = A.ngens
        T3 = tensor_power_structure(S, 3)
        A2, A3 = self.T2.algebra, T3.algebra
        if leg == 0:
            coeff_map = AlgebraMorphism(
                A2,
                A3,
                [spread_copies(self.delta_A(A.gen(i)), A, (0, 1), A3) for i in range(n)]
                + [tensor_embed(A.gen(i), 2, A3) for i in range(n)],
            )
            first = [
                _reinterpret(S, self.flat_images[i], (0, 1), T3) for i in range(m)
            ]
            second = [EnvElement.generator(T3, 2 * m + j) for j in range(m)]
        else:
            coeff_map = AlgebraMorphism(
                A2,
                A3,
                [tensor_embed(A.gen(i), 0, A3) for i in range(n)]
                + [spread_copies(self.delta_A(A.gen(i)), A, (1, 2), A3) for i in range(n)],
            )
            first = [EnvElement.generator(T3, i) for i in range(m)]
            second = [
                _reinterpret(S, self.flat_images[j], (1, 2), T3) for j in range(m)
            ]
        data = (T3, coeff_map, first, second)
        self._lifted[leg] = data
        return data

    def apply_to_leg(self, t: TensorEnvElement, leg: int) -> EnvElement:
        """Apply the map to one leg of a tensor element, producing an
        element of the triple tensor power (flattened)."""
        T3, coeff_map, first, second = self._leg_data(leg)
        out = EnvElement.zero(T3)
        for (w1, w2), c in t.terms.items():
            cur = EnvElement.from_poly(T3, coeff_map(c))
            for i in w1:
                cur = cur * first[i]
            for j in w2:
                cur = cur * second[j]
            out = out + cur
        return out


def _reinterpret(S, u: EnvElement, copies, T3) -> EnvElement:
    """View an element of the doubled structure inside the tripled one,
    with the two copies landing on the given pair of legs."""
    m = S.rank
    offset = copies[0] * m
    terms = {}
    for w, c in u.terms.items():
        terms[tuple(l + offset for l in w)] = spread_copies(
            c, S.algebra, copies, T3.algebra
        )
    return EnvElement(T3, terms)


def standard_coproduct(S: LieRinehartAlgebra) -> CoproductLikeMap:
    """Basis letters go to the sum of their two copies.  Cached."""
    cached = S._tensor_cache.get("std")
    if cached is not None:
        return cached
    T2 = tensor_power_structure(S, 2)
    m = S.rank
    images = [
        EnvElement.generator(T2, i) + EnvElement.generator(T2, m + i)
        for i in range(m)
    ]
    dmap = CoproductLikeMap(S, images)
    S._tensor_cache["std"] = dmap
    return dmap


def coproduct(u: EnvElement) -> TensorEnvElement:
    return standard_coproduct(u.structure)(u)


def counit(u: EnvElement) -> Fraction:
    return u.counit()


def antipode(u: EnvElement) -> EnvElement:
    """Reverse each word, multiply back together, sign by length, and send
    the coefficient through the antipode of A."""
    S = u.structure
    anti_A = S._tensor_cache.get("antiA")
    if anti_A is None:
        anti_A = antipode_morphism(S.algebra)
        S._tensor_cache["antiA"] = anti_A
    out = EnvElement.zero(S)
    for w, a in u.terms.items():
        cur = EnvElement.from_poly(S, anti_A(a))
        for letter in w:
            # building e_reversed left to right: each letter lands on the left
            cur = EnvElement.generator(S, letter) * cur
        out = out + (cur if len(w) % 2 == 0 else -cur)
    return out


# -- collapsing maps used to state the axioms ---------------------------------


def counit_collapse(t: TensorEnvElement, leg: int) -> EnvElement:
    """Apply the counit to one leg of a tensor element."""
    S = t.structure
    A = S.algebra
    key = ("eps-collapse", leg)
    cm = S._tensor_cache.get(key)
    if cm is None:
        eps = counit_morphism(A)
        inc = inclusion_of_scalars(A)
        gens = [A.gen(i) for i in range(A.ngens)]
        killed = [inc(eps(g)) for g in gens]
        images = killed + gens if leg == 0 else gens + killed
        cm = AlgebraMorphism(t.tpow.algebra, A, images)
        S._tensor_cache[key] = cm
    out: dict = {}
    for (w1, w2), c in t.terms.items():
        dead, kept = (w1, w2) if leg == 0 else (w2, w1)
        if dead:
            continue
        _add_term(out, kept, cm(c))
    return EnvElement(S, out)


def antipode_convolution(t: TensorEnvElement, leg: int) -> EnvElement:
    """Multiply the two legs together after applying the antipode to one:
    the convolution products appearing in the antipode axioms."""
    S = t.structure
    A = S.algebra
    n = A.ngens
    out = EnvElement.zero(S)
    for (w1, w2), c in t.terms.items():
        for exps, q in c.terms.items():
            if n:
                b1, b2 = split_exponents(exps, n)
            else:
                b1 = b2 = ()
            u1 = EnvElement(S, {w1: A.monomial(b1, q)})
            u2 = EnvElement(S, {w2: A.monomial(b2, 1)})
            if leg == 0:
                out = out + antipode(u1) * u2
            else:
                out = out + u1 * antipode(u2)
    return out


# -- batteries -----------------------------------------------------------------


def _unit_words(S, max_word: int):
    """All normal words up to the length bound, as elements."""
    import itertools

    out = []
    for p in range(max_word + 1):
        for w in itertools.combinations_with_replacement(range(S.rank), p):
            out.append(EnvElement(S, {w: S.algebra.one()}))
    return out


def _sample_elements(S, rng, count, max_word, max_degree):
    from . import sampling

    return [
        sampling.random_env_element(rng, S, max_word, max_degree)
        for _ in range(count)
    ]


def check_bialgebra(S: LieRinehartAlgebra, *, seed: int = 0, samples: int = 200,
                    max_word: int = 3, max_degree: int = 2) -> Report:
    """Comultiplication and counit on the enveloping algebra: the coproduct
    is an algebra map (exhaustively on short words, then on random pairs),
    coassociative, counital, and its leading terms split words like the
    symmetric coalgebra."""
    from . import sampling

    report = Report()
    dmap = standard_coproduct(S)
    rng = sampling.make_rng(seed)
    words = _unit_words(S, max_word)
    randoms = _sample_elements(S, rng, max(1, samples // 8), max_word, max_degree)

    witness = None
    for u in words:
        for v in words:
            if dmap(u * v) != dmap(u) * dmap(v):
                witness = f"at u={u}, v={v}"
                break
        if witness:
            break
    report.add("coproduct-multiplicative-words", witness is None, witness)

    witness = None
    for _ in range(samples):
        u = sampling.random_env_element(rng, S, max_word, max_degree)
        v = sampling.random_env_element(rng, S, max_word, max_degree)
        if dmap(u * v) != dmap(u) * dmap(v):
            witness = f"at u={u}, v={v}"
            break
    report.add("coproduct-multiplicative-random", witness is None, witness)

    witness = None
    for u in words + randoms:
        t = dmap(u)
        if dmap.apply_to_leg(t, 0) != dmap.apply_to_leg(t, 1):
            witness = f"at u={u}"
            break
    report.add("coproduct-coassociative", witness is None, witness)

    witness = None
    for u in words + randoms:
        t = dmap(u)
        left = counit_collapse(t, 0)
        right = counit_collapse(t, 1)
        if left != u:
            witness = f"left counit law at u={u}: got {left}"
            break
        if right != u:
            witness = f"right counit law at u={u}: got {right}"
            break
    report.add("coproduct-counital", witness is None, witness)

    witness = None
    for _ in range(samples):
        u = sampling.random_env_element(rng, S, max_word, max_degree)
        v = sampling.random_env_element(rng, S, max_word, max_degree)
        if (u * v).counit() != u.counit() * v.counit():
            witness = f"at u={u}, v={v}"
            break
    report.add("counit-multiplicative", witness is None, witness)

    # leading terms of the coproduct of a pure word: all multiset splits
    # with multiplicity a product of binomial coefficients
    import math
    from collections import Counter
    import itertools as it

    witness = None
    for u in words:
        (w, _), = u.terms.items() if u.terms else (((), None),)
        p = len(w)
        counts = Counter(w)
        letters = sorted(counts)
        expected: dict = {}
        choices = [range(counts[l] + 1) for l in letters]
        for pick in it.product(*choices):
            left = []
            right = []
            mult = 1
            for l, k in zip(letters, pick):
                left.extend([l] * k)
                right.extend([l] * (counts[l] - k))
                mult *= math.comb(counts[l], k)
            key = (tuple(left), tuple(right))
            expected[key] = expected.get(key, 0) + mult
        top = {
            key: c
            for key, c in dmap(u).terms.items()
            if len(key[0]) + len(key[1]) == p
        }
        want = {
            key: dmap.T2.algebra.const(mult) for key, mult in expected.items()
        }
        if top != want:
            witness = f"leading split of word {w} is off"
            break
    report.add("coproduct-leading-split", witness is None, witness)
    return report


def check_antipode(S: LieRinehartAlgebra, *, seed: int = 0, samples: int = 100,
                   max_word: int = 3, max_degree: int = 2) -> Report:
    """Both antipode convolution identities against the counit, and the
    anti-homomorphism property."""
    from . import sampling

    report = Report()
    dmap = standard_coproduct(S)
    rng = sampling.make_rng(seed)
    words = _unit_words(S, max_word)
    randoms = _sample_elements(S, rng, max(1, samples // 8), max_word, max_degree)

    witness = None
    for u in words + randoms:
        t = dmap(u)
        target = EnvElement.from_poly(S, S.algebra.const(u.counit()))
        left = antipode_convolution(t, 0)
        if left != target:
            witness = f"left antipode law at u={u}: got {left}, want {target}"
            break
        right = antipode_convolution(t, 1)
        if right != target:
            witness = f"right antipode law at u={u}: got {right}, want {target}"
            break
    report.add("antipode-convolution", witness is None, witness)

    witness = None
    for _ in range(samples):
        u = sampling.random_env_element(rng, S, max_word, max_degree)
        v = sampling.random_env_element(rng, S, max_word, max_degree)
        if antipode(u * v) != antipode(v) * antipode(u):
            witness = f"at u={u}, v={v}"
            break
    report.add("antipode-antihomomorphism", witness is None, witness)

    witness = None
    for u in words + randoms:
        if antipode(u).counit() != u.counit():
            witness = f"at u={u}"
            break
    report.add("antipode-preserves-counit", witness is None, witness)
    return report


def check_hopf_lr(S: LieRinehartAlgebra, *, seed: int = 0, samples: int = 200,
                  max_word: int = 3, max_degree: int = 2,
                  coefficient_antipode=None) -> Report:
    """The full battery: Hopf axioms on the coefficients, compatibility of
    the coalgebra with the module action, equivariance of the coefficient
    antipode, and the bialgebra/antipode axioms upstairs.

    A candidate coefficient antipode may be passed in to exercise failure
    reporting; the enveloping-algebra antipode always uses the derived one.
    """
    report = Report()
    report.extend(
        check_hopf_axioms(
            S.algebra,
            max_degree=max_degree + 1,
            seed=seed,
            samples=max(10, samples // 5),
            antipode=coefficient_antipode,
        ),
        prefix="coefficients.",
    )
    report.extend(
        check_bi_lr(S, seed=seed, samples=max(10, samples // 4), max_degree=max_degree),
        prefix="module.",
    )

    anti_A = coefficient_antipode
    if anti_A is None:
        anti_A = antipode_morphism(S.algebra)
    witness = None
    for i in range(S.rank):
        for g in range(S.algebra.ngens):
            a = S.algebra.gen(g)
            lhs = anti_A(S.anchor[i](a))
            rhs = S.anchor[i](anti_A(a))
            if lhs != rhs:
                witness = (
                    f"{S.basis_names[i]} on {S.algebra.gens[g].name}: "
                    f"antipode of the value is {lhs}, action on the antipode is {rhs}"
                )
                break
        if witness:
            break
    report.add("antipode-equivariance", witness is None, witness)

    report.extend(
        check_bialgebra(
            S, seed=seed, samples=samples, max_word=max_word, max_degree=max_degree
        )
    )
    report.extend(
        check_antipode(
            S,
            seed=seed,
            samples=max(20, samples // 2),
            max_word=max_word,
            max_degree=max_degree,
        )
    )
    return report
