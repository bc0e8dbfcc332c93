"""Cyclotomic Sergeev algebras in their PBW basis.

The algebra is generated by even ``s_1..s_{n-1}``, ``x_1..x_n`` and odd
``c_1..c_n`` modulo the degenerate affine Hecke-Clifford relations and
``g(x_1) = 0`` for a monic ``g`` of degree ``d`` whose exponents all have the
parity of ``d``.  Basis elements are ``x^alpha c_I w`` with ``alpha_i < d``,
``I`` a subset of ``[n]`` (a bitmask, bit ``k-1`` for ``c_k``) and ``w`` a
permutation in one-line notation.  They are numbered so that integer order is
lexicographic order on ``(alpha, I, w)``.

Normal forms come from left multiplication by single generators.  A product
is first straightened in the affine algebra, where exponents are unbounded
and ``s_i`` passes through ``x_i^a x_{i+1}^b`` by the usual rules, and then
every exponent ``>= d`` is cut down with a precomputed normal form of
``x_k^d``.  That last step strictly lowers total x-degree, so it terminates.
"""

from __future__ import annotations

from itertools import permutations
from math import factorial
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from .combinatorics import Token, format_word
from .linalg import Q, Rational, axpy, format_rational

GENERATOR_KINDS = ("s", "x", "c", "s0")


class ContextError(ValueError):
    pass


# -- Clifford bookkeeping ---------------------------------------------------

def _popcount(x: int) -> int:
    return bin(x).count("1")


def cliff_mul(J: int, K: int) -> tuple[int, int]:
    """c_J c_K = sign * c_{J xor K} for increasing products c_J, c_K."""
    swaps = 0
    k = K
    while k:
        low = k & -k
        pos = low.bit_length()  # c_pos, bit pos-1
        swaps += _popcount(J >> pos)
        k ^= low
    return (-1 if swaps & 1 else 1), J ^ K


def cliff_from_sequence(J: int, seq: Iterable[int]) -> tuple[int, int]:
    """c_J c_{k_1} c_{k_2} ... for an arbitrary index sequence."""
    sign = 1
    for k in seq:
        s, J = cliff_mul(J, 1 << (k - 1))
        sign *= s
    return sign, J


def cliff_indices(I: int) -> list[int]:
    out, k = [], 1
    while I:
        if I & 1:
            out.append(k)
        I >>= 1
        k += 1
    return out


def cliff_mask(indices: Iterable[int]) -> int:
    m = 0
    for k in indices:
        m |= 1 << (k - 1)
    return m


def perm_act_on_cliff(w: Sequence[int], I: int) -> tuple[int, int]:
    """w c_I = sign * c_{w(I)} w."""
    return cliff_from_sequence(0, (w[k - 1] for k in cliff_indices(I)))


def _swap_values(w: tuple, i: int) -> tuple:
    # s_i composed on the left: exchange the values i and i+1
    return tuple(i + 1 if v == i else i if v == i + 1 else v for v in w)


def _swap_positions(w: tuple, i: int) -> tuple:
    # w composed with s_i on the right: exchange positions i and i+1
    w = list(w)
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def compose(u: Sequence[int], w: Sequence[int]) -> tuple:
    """One-line notation of u o w."""
    return tuple(u[v - 1] for v in w)


def reduced_word(w: Sequence[int]) -> list[int]:
    """Indices i_1..i_l with w = s_{i_1} ... s_{i_l}, found by bubble sort."""
    w = list(w)
    right = []
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                w[i], w[i + 1] = w[i + 1], w[i]
                right.append(i + 1)
                changed = True
    return right[::-1]


# -- local straightening of s_i past x_i^a x_{i+1}^b ------------------------

_LOCAL: dict[tuple[int, int], dict] = {}


def _local(a: int, b: int) -> dict:
    """s_i x_i^a x_{i+1}^b as {(p, q, e, f): coef} meaning x_i^p x_{i+1}^q (c_i c_{i+1})^e s_i^f."""
    key = (a, b)
    hit = _LOCAL.get(key)
    if hit is not None:
        return hit
    out: dict = {}
    if a == 0 and b == 0:
        out[(0, 0, 0, 1)] = 1
    elif a > 0:
        # s x_i = x_{i+1} s - 1 - c_i c_{i+1}; c_i c_{i+1} anticommutes with x_i, x_{i+1}
        for (p, q, e, f), c in _local(a - 1, b).items():
            _acc(out, (p, q + 1, e, f), c)
        deg = a - 1 + b
        _acc(out, (a - 1, b, 0, 0), -1)
        _acc(out, (a - 1, b, 1, 0), -(-1) ** deg)
    else:
        # s x_{i+1} = x_i s + 1 - c_i c_{i+1}
        for (p, q, e, f), c in _local(0, b - 1).items():
            _acc(out, (p + 1, q, e, f), c)
        _acc(out, (0, b - 1, 0, 0), 1)
        _acc(out, (0, b - 1, 1, 0), -(-1) ** (b - 1))
    _LOCAL[key] = out
    return out


def _acc(d: dict, key, val):
    v = d.get(key, 0) + val
    if v:
        d[key] = v
    else:
        d.pop(key, None)


# -- the context ------------------------------------------------------------

class AlgebraContext:
    """Immutable description of one cyclotomic Sergeev algebra.

    ``coeffs`` maps an exponent ``k`` to ``a_k``; only ``k = d - 2t`` with
    ``t >= 1`` may be set (``a_d = 1`` is implicit).  Internal caches are
    filled on demand and never change a result once computed.
    """

    def __init__(self, n: int, d: int, coeffs: Mapping[int, object] | None = None):
        if not isinstance(d, int) or d < 1:
            raise ContextError("level must be >= 1")
        if not isinstance(n, int) or n < 0:
            raise ContextError("n must be >= 1")
        clean: dict[int, Rational] = {}
        for k, v in (coeffs or {}).items():
            k = int(k)
            v = Q(v)
            if k == d:
                if v != 1:
                    raise ContextError("leading coefficient a_d must be 1")
                continue
            if k < 0 or k > d:
                raise ContextError(f"coefficient a_{k} outside 0..{d}")
            if (d - k) % 2:
                raise ContextError(f"coefficient a_{k} sits at an odd offset from d={d}")
            if v:
                clean[k] = v
        self.n = n
        self.d = d
        self.m = d // 2
        self.coeffs = dict(sorted(clean.items()))
        self.perms = sorted(permutations(range(1, n + 1)))
        self.perm_index = {w: i for i, w in enumerate(self.perms)}
        self.identity_perm = tuple(range(1, n + 1))
        self.nperm = factorial(n)
        self.ncliff = 2 ** n
        self.dim = d ** n * self.ncliff * self.nperm
        self.key = (n, d, tuple((k, format_rational(v)) for k, v in self.coeffs.items()))
        self._basis = None
        self._lmul: dict[Token, list] = {}
        self._xpow: dict[int, dict] = {}
        self._pw_cache: dict[tuple[int, int], dict] = {}
        self._wx_cache: dict[tuple[int, int], dict] = {}
        self._words: dict[int, list] = {}

    # identity / hashing
    def __eq__(self, other):
        return isinstance(other, AlgebraContext) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"AlgebraContext(n={self.n}, d={self.d}, g={self.polynomial_str()})"

    def coefficient(self, k: int) -> Rational:
        if k == self.d:
            return mpq(1)
        return self.coeffs.get(k, mpq(0))

    def polynomial_str(self) -> str:
        parts = [f"x^{self.d}"]
        for k in sorted(self.coeffs, reverse=True):
            parts.append(f"({format_rational(self.coeffs[k])})x^{k}")
        return " + ".join(parts)

    @property
    def coeffs_are_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.coeffs.values())

    # indexing
    def index(self, alpha: Sequence[int], cliff: int, perm: Sequence[int]) -> int:
        d = self.d
        code = 0
        for a in alpha:
            if not 0 <= a < d:
                raise ContextError(f"exponent {a} outside [0, {d})")
            code = code * d + a
        if len(alpha) != self.n:
            raise ContextError("exponent vector has the wrong length")
        return (code * self.ncliff + cliff) * self.nperm + self.perm_index[tuple(perm)]

    def unpack(self, idx: int) -> tuple[tuple, int, tuple]:
        return self.basis[idx]

    @property
    def basis(self) -> list[tuple[tuple, int, tuple]]:
        if self._basis is None:
            out = []
            n, d = self.n, self.d
            for code in range(d ** n):
                alpha, c = [], code
                for _ in range(n):
                    alpha.append(c % d)
                    c //= d
                alpha = tuple(reversed(alpha))
                for cliff in range(self.ncliff):
                    for w in self.perms:
                        out.append((alpha, cliff, w))
            self._basis = out
        return self._basis

    def parity_of(self, idx: int) -> int:
        return _popcount(self.basis[idx][1]) & 1

    def even_indices(self) -> list[int]:
        return [i for i, (_, c, _) in enumerate(self.basis) if not _popcount(c) & 1]

    def top_index(self) -> int:
        return self.index((self.d - 1,) * self.n, 0, self.identity_perm)

    def one_index(self) -> int:
        return self.index((0,) * self.n, 0, self.identity_perm)

    def check_token(self, tok: Token):
        kind, i = tok
        n = self.n
        ok = (
            (kind == "s" and 1 <= i < n)
            or (kind in ("x", "c") and 1 <= i <= n)
            or (kind == "s0" and i >= 1 and n >= 1)
        )
        if not ok:
            raise ContextError(f"generator {tok} out of range for n={n}")

    def generators(self) -> list[Token]:
        """The 3n-1 algebra generators s_i, x_k, c_k."""
        n = self.n
        return ([Token("s", i) for i in range(1, n)] + [Token("x", k) for k in range(1, n + 1)]
                + [Token("c", k) for k in range(1, n + 1)])

    # affine straightening
    def _aff_lmul(self, tok: Token, alpha: tuple, cliff: int, perm: tuple, coef, out: dict):
        kind, i = tok
        if kind == "x":
            a = list(alpha)
            a[i - 1] += 1
            _acc(out, (tuple(a), cliff, perm), coef)
        elif kind == "c":
            sign = -1 if alpha[i - 1] & 1 else 1
            s, J = cliff_mul(1 << (i - 1), cliff)
            _acc(out, (alpha, J, perm), sign * s * coef)
        elif kind == "s":
            a, b = alpha[i - 1], alpha[i]
            swapped_cliff = None
            for (p, q, e, f), c in _local(a, b).items():
                al = list(alpha)
                al[i - 1], al[i] = p, q
                if f:
                    if swapped_cliff is None:
                        sgn, J = cliff_from_sequence(
                            0, (i + 1 if k == i else i if k == i + 1 else k for k in cliff_indices(cliff)))
                        swapped_cliff = (sgn, J, _swap_values(perm, i))
                    sgn, J, w = swapped_cliff
                else:
                    sgn, J, w = 1, cliff, perm
                if e:
                    s2, J = cliff_mul((1 << (i - 1)) | (1 << i), J)
                    sgn *= s2
                _acc(out, (tuple(al), J, w), sgn * c * coef)
        elif kind == "s0":
            cur = {(alpha, cliff, perm): coef}
            for _ in range(i):
                nxt: dict = {}
                for (al, cl, w), cc in cur.items():
                    self._aff_lmul(Token("x", 1), al, cl, w, cc, nxt)
                cur = nxt
            for key, val in cur.items():
                _acc(out, key, val)
        else:
            raise ContextError(f"unknown generator kind {kind!r}")

    def _x_power(self, k: int) -> dict:
        """Normal form of x_k^d, as affine terms with every exponent below d."""
        hit = self._xpow.get(k)
        if hit is not None:
            return hit
        n, d = self.n, self.d
        ident = self.identity_perm
        out: dict = {}
        if k == 1:
            for e, a in self.coeffs.items():
                alpha = [0] * n
                alpha[0] = e
                _acc(out, (tuple(alpha), 0, ident), -a)
        else:
            # x_k^d = s_{k-1} x_{k-1}^d s_{k-1}
            #         + sum_j (x_{k-1}^j x_k^{d-1-j} + (-x_{k-1})^j x_k^{d-1-j} c_{k-1} c_k) s_{k-1}
            inner: dict = {}
            for (al, cl, w), c in self._x_power(k - 1).items():
                self._aff_lmul(Token("s", k - 1), al, cl, w, c, inner)
            for (al, cl, w), c in inner.items():
                _acc(out, (al, cl, _swap_positions(w, k - 1)), c)
            sk = _swap_values(ident, k - 1)
            cc = (1 << (k - 2)) | (1 << (k - 1))
            for j in range(d):
                alpha = [0] * n
                alpha[k - 2], alpha[k - 1] = j, d - 1 - j
                _acc(out, (tuple(alpha), 0, sk), 1)
                _acc(out, (tuple(alpha), cc, sk), (-1) ** j)
        for (al, _, _) in out:
            assert max(al, default=0) < d, "x^d normal form left the PBW range"
        self._xpow[k] = out
        return out

    def reduce_affine(self, terms: Mapping) -> dict:
        """Cyclotomic normal form (index -> coef) of affine terms (alpha, I, w) -> coef."""
        d = self.d
        by_degree: dict[int, dict] = {}
        for key, c in terms.items():
            if c:
                _acc(by_degree.setdefault(sum(key[0]), {}), key, c)
        out: dict = {}
        while by_degree:
            deg = max(by_degree)
            layer = by_degree.pop(deg)
            for (alpha, cliff, perm), coef in layer.items():
                if not coef:
                    continue
                k = next((j for j, a in enumerate(alpha) if a >= d), None)
                if k is None:
                    idx = self.index(alpha, cliff, perm)
                    _acc(out, idx, coef)
                    continue
                beta = list(alpha)
                beta[k] -= d
                for (gamma, J, u), pc in self._x_power(k + 1).items():
                    sgn, K = perm_act_on_cliff(u, cliff)
                    s2, K = cliff_mul(J, K)
                    new_alpha = tuple(b + g for b, g in zip(beta, gamma))
                    new_key = (new_alpha, K, compose(u, perm))
                    _acc(by_degree.setdefault(sum(new_alpha), {}), new_key, sgn * s2 * pc * coef)
            for deg_key in [k for k, v in by_degree.items() if not v]:
                del by_degree[deg_key]
        return {k: Q(v) for k, v in out.items() if v}

    # left multiplication tables
    def lmul_table(self, tok: Token) -> list:
        tok = Token(*tok)
        self.check_token(tok)
        table = self._lmul.get(tok)
        if table is None:
            table = self._lmul[tok] = [None] * self.dim
        return table

    def lmul_basis(self, tok: Token, idx: int) -> dict:
        """Normal form of tok * (basis element idx), as index -> coef. Cached."""
        table = self.lmul_table(tok)
        hit = table[idx]
        if hit is None:
            if tok[0] == "s0":
                cur = {idx: mpq(1)}
                for _ in range(tok[1]):
                    cur = self.apply(Token("x", 1), cur)
                hit = cur
            else:
                alpha, cliff, perm = self.basis[idx]
                aff: dict = {}
                self._aff_lmul(tok, alpha, cliff, perm, 1, aff)
                hit = self.reduce_affine(aff)
            table[idx] = hit
        return hit

    def apply(self, tok: Token, vec: Mapping) -> dict:
        out: dict = {}
        for b, c in vec.items():
            axpy(out, c, self.lmul_basis(tok, b))
        return out

    def apply_word(self, word: Sequence[Token], vec: Mapping) -> dict:
        """word * vec, the rightmost letter acting first."""
        out = dict(vec)
        for tok in reversed(word):
            out = self.apply(tok, out)
        return out

    def basis_word(self, idx: int) -> list[Token]:
        """x_1^a1 ... x_n^an c_{i1} ... c_{ik} s_{j1} ... s_{jl} spelling basis element idx."""
        hit = self._words.get(idx)
        if hit is None:
            alpha, cliff, perm = self.basis[idx]
            hit = []
            for k, a in enumerate(alpha, start=1):
                hit += [Token("x", k)] * a
            hit += [Token("c", k) for k in cliff_indices(cliff)]
            hit += [Token("s", i) for i in reduced_word(perm)]
            self._words[idx] = hit
        return hit

    def _perm_times_basis(self, pidx: int, v: int) -> dict:
        key = (pidx, v)
        hit = self._pw_cache.get(key)
        if hit is None:
            word = [Token("s", i) for i in reduced_word(self.perms[pidx])]
            hit = self.apply_word(word, {v: mpq(1)})
            self._pw_cache[key] = hit
        return hit

    def basis_product(self, u: int, v: int) -> dict:
        alpha, cliff, perm = self.basis[u]
        vec = self._perm_times_basis(self.perm_index[perm], v)
        prefix = self.basis_word(u)
        nperm_letters = len(reduced_word(perm))
        head = prefix[: len(prefix) - nperm_letters]
        return self.apply_word(head, vec)

    def rmul_basis(self, idx: int, tok: Token) -> dict:
        """Normal form of (basis element idx) * tok."""
        tok = Token(*tok)
        self.check_token(tok)
        alpha, cliff, perm = self.basis[idx]
        kind, i = tok
        if kind == "s":
            return {self.index(alpha, cliff, _swap_positions(perm, i)): mpq(1)}
        if kind == "c":
            sgn, J = cliff_mul(cliff, 1 << (perm[i - 1] - 1))
            return {self.index(alpha, J, perm): mpq(sgn)}
        if kind == "s0":
            return self.multiply_dicts({idx: mpq(1)}, self.power_x1(i))
        # w x_k, cached per (w, k), then x^alpha c_I on the left
        pidx = self.perm_index[perm]
        key = (pidx, i)
        wx = self._wx_cache.get(key)
        if wx is None:
            xk = [0] * self.n
            xk[i - 1] = 1
            start = self.reduce_affine({(tuple(xk), 0, self.identity_perm): 1})
            word = [Token("s", j) for j in reduced_word(perm)]
            wx = self._wx_cache[key] = self.apply_word(word, start)
        prefix = self.basis_word(idx)
        head = prefix[: len(prefix) - len(reduced_word(perm))]
        return self.apply_word(head, wx)

    def power_x1(self, l: int) -> dict:
        out = {self.one_index(): mpq(1)}
        for _ in range(l):
            out = self.apply(Token("x", 1), out)
        return out

    def multiply_dicts(self, u: Mapping, v: Mapping) -> dict:
        out: dict = {}
        for bu, cu in u.items():
            for bv, cv in v.items():
                axpy(out, cu * cv, self.basis_product(bu, bv))
        return out

    # element constructors
    def element(self, terms: Mapping | None = None) -> "Element":
        return Element(self, terms or {})

    def basis_element(self, alpha=None, cliff: int | Iterable[int] = 0, perm=None) -> "Element":
        alpha = tuple(alpha) if alpha is not None else (0,) * self.n
        if not isinstance(cliff, int):
            cliff = cliff_mask(cliff)
        perm = tuple(perm) if perm is not None else self.identity_perm
        return Element(self, {self.index(alpha, cliff, perm): mpq(1)})

    def one(self) -> "Element":
        return Element(self, {self.one_index(): mpq(1)})

    def zero(self) -> "Element":
        return Element(self, {})

    def gen(self, kind: str, i: int) -> "Element":
        tok = Token(kind, i)
        self.check_token(tok)
        return Element(self, self.apply(tok, {self.one_index(): mpq(1)}))

    def s(self, i):
        return self.gen("s", i)

    def x(self, k):
        return self.gen("x", k)

    def c(self, k):
        return self.gen("c", k)

    def g_of_x1(self) -> "Element":
        """g(x_1) evaluated by repeated multiplication; zero in a correct engine."""
        out = self.zero()
        power = self.one()
        x1 = self.x(1)
        for k in range(self.d + 1):
            a = self.coefficient(k)
            if a:
                out = out + a * power
            power = x1 * power
        return out


class Element:
    """Sparse exact linear combination of PBW basis elements of one context."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: AlgebraContext, terms: Mapping):
        self.ctx = ctx
        self.terms = {k: Q(v) for k, v in terms.items() if v}

    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            if other.ctx != self.ctx:
                raise ContextError("elements live in different algebras")
            return other
        return Element(self.ctx, {self.ctx.one_index(): Q(other)} if other else {})

    def __add__(self, other):
        other = self._coerce(other)
        return Element(self.ctx, axpy(dict(self.terms), 1, other.terms))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return Element(self.ctx, axpy(dict(self.terms), -1, other.terms))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return Element(self.ctx, {k: -v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self.ctx, self, other)
        c = Q(other)
        return Element(self.ctx, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, other):
        c = Q(other)
        return Element(self.ctx, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.ctx == other.ctx and self.terms == other.terms
        if isinstance(other, (int, Rational)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.key, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coefficient(self, idx: int) -> Rational:
        return self.terms.get(idx, mpq(0))

    @property
    def parity(self) -> int | None:
        """0 or 1 for homogeneous elements (zero counts as even), None otherwise."""
        pars = {self.ctx.parity_of(i) for i in self.terms}
        if len(pars) > 1:
            return None
        return pars.pop() if pars else 0

    def even_part(self) -> "Element":
        return Element(self.ctx, {k: v for k, v in self.terms.items() if not self.ctx.parity_of(k)})

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{format_rational(c)} * {format_basis(self.ctx, i)}"
                          for i, c in sorted(self.terms.items()))

    __repr__ = __str__


def format_basis(ctx: AlgebraContext, idx: int) -> str:
    alpha, cliff, perm = ctx.basis[idx]
    a = ",".join(map(str, alpha))
    I = ",".join(map(str, cliff_indices(cliff)))
    w = "".join(map(str, perm)) if ctx.n < 10 else ",".join(map(str, perm))
    return f"x^({a}) c{{{I}}} w[{w}]"


def basis_term_json(ctx: AlgebraContext, idx: int, coef) -> dict:
    alpha, cliff, perm = ctx.basis[idx]
    return {"coeff": format_rational(coef), "alpha": list(alpha),
            "cliff": cliff_indices(cliff), "perm": list(perm)}


# -- public operations ------------------------------------------------------

def new_context(n: int, d: int, coeffs: Mapping[int, object] | None = None) -> AlgebraContext:
    return AlgebraContext(n, d, coeffs)


def lmul_generator(ctx: AlgebraContext, g: Token, b: int | Element) -> Element:
    if isinstance(b, Element):
        if b.ctx != ctx:
            raise ContextError("context mismatch")
        return Element(ctx, ctx.apply(Token(*g), b.terms))
    return Element(ctx, ctx.lmul_basis(Token(*g), b))


def multiply(ctx: AlgebraContext, u: Element, v: Element) -> Element:
    if u.ctx != ctx or v.ctx != ctx:
        raise ContextError("context mismatch")
    return Element(ctx, ctx.multiply_dicts(u.terms, v.terms))


def evaluate_word(ctx: AlgebraContext, word: Sequence[Token], mask: Iterable[int] = ()) -> Element:
    """Product of the word's letters (s0 -> x_1), then times c_i for i in mask, increasing."""
    for tok in word:
        ctx.check_token(Token(*tok))
    mask = sorted(mask)
    for k in mask:
        ctx.check_token(Token("c", k))
    right = [Token("c", k) for k in mask]
    vec = ctx.apply_word(list(word) + right, {ctx.one_index(): mpq(1)})
    return Element(ctx, vec)


def commutator(ctx: AlgebraContext, u: Element, v: Element, graded: bool = False) -> Element:
    uv = multiply(ctx, u, v)
    vu = multiply(ctx, v, u)
    if not graded:
        return uv - vu
    pu, pv = u.parity, v.parity
    if pu is None or pv is None:
        raise ContextError("graded commutator needs homogeneous arguments")
    return uv - vu if not (pu and pv) else uv + vu


def word_element_str(ctx: AlgebraContext, word: Sequence[Token]) -> str:
    return format_word(word)
