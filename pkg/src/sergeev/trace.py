"""The Frobenius form t_{n,d} and its (super)symmetry.

Two independent routes to the same linear form:

* the closed formula: ``t(x^alpha c_I w)`` is 1 on the single basis element
  ``x_1^{d-1} ... x_n^{d-1}`` and 0 elsewhere;
* the tower of projections ``theta_1 o ... o theta_n``, where ``theta_{k+1}``
  reads off the ``x_{k+1}^{d-1}`` coefficient of an element of ``H_{k+1}``
  written in the free right ``H_k``-module basis
  ``x_j^a c_j^b s_j ... s_k`` (``1 <= j <= k+1``, ``a < d``, ``b in {0,1}``).
  Those coordinates come from one exact inversion per level.
"""

from __future__ import annotations

import random
import time
from typing import Sequence

from gmpy2 import mpq

from .algebra import AlgebraContext, Element, Token, new_context
from .linalg import (
    InverseSolver, Q, RowReducer, axpy, determinant_of_dicts,
    is_power_of_two_unit, kernel_from_reducer, rank_of_dicts, two_adic_exponent,
)
from .report import Expected, VerificationReport


def trace(ctx: AlgebraContext, elem: Element | dict) -> mpq:
    terms = elem.terms if isinstance(elem, Element) else elem
    return terms.get(ctx.top_index(), mpq(0))


def iota_index(small: AlgebraContext, big: AlgebraContext, idx: int) -> int:
    """Index in H_{k+1} of a basis element of H_k (pad alpha with 0, fix k+1)."""
    alpha, cliff, perm = small.basis[idx]
    return big.index(alpha + (0,), cliff, perm + (big.n,))


def iota(small: AlgebraContext, big: AlgebraContext, elem: Element) -> Element:
    return Element(big, {iota_index(small, big, i): c for i, c in elem.terms.items()})


class ThetaSolver:
    """Free-module coordinates of H_{k+1} over H_k, and the projection theta_{k+1}."""

    def __init__(self, small: AlgebraContext, big: AlgebraContext, keep_all: bool = False):
        if big.n != small.n + 1 or big.d != small.d or big.coeffs != small.coeffs:
            raise ValueError("ThetaSolver needs contexts H_k and H_{k+1} with the same g")
        self.small, self.big = small, big
        k, d, dim_k = small.n, small.d, small.dim
        columns = []
        self.labels = []
        for j in range(1, k + 2):
            tail = [Token("s", i) for i in range(j, k + 1)]
            for a in range(d):
                for b in (0, 1):
                    head = [Token("x", j)] * a + [Token("c", j)] * b
                    for h in range(dim_k):
                        vec = {iota_index(small, big, h): mpq(1)}
                        vec = big.apply_word(head + tail, vec)
                        columns.append(vec)
                        self.labels.append((j, a, b, h))
        if len(columns) != big.dim:
            raise AssertionError("free basis size disagrees with dim H_{k+1}")
        rows = [dict() for _ in range(big.dim)]
        for col, vec in enumerate(columns):
            for i, v in vec.items():
                rows[i][col] = v
        keep = None if keep_all else [self.column(k + 1, d - 1, 0, h) for h in range(dim_k)]
        self.inverse = InverseSolver(rows, big.dim, keep=keep)

    def column(self, j: int, a: int, b: int, h: int) -> int:
        return (((j - 1) * self.small.d + a) * 2 + b) * self.small.dim + h

    def coordinates(self, y: Element) -> dict:
        """All free-module coordinates (needs keep_all=True)."""
        return self.inverse.solve(y.terms)

    def project(self, y: Element | dict) -> Element:
        terms = y.terms if isinstance(y, Element) else y
        if isinstance(y, Element) and y.ctx != self.big:
            raise ValueError("element does not live in H_{k+1}")
        k1, d = self.small.n + 1, self.small.d
        out = {}
        for h in range(self.small.dim):
            v = self.inverse.coordinate(self.column(k1, d - 1, 0, h), terms)
            if v:
                out[h] = v
        return Element(self.small, out)


def theta_project(solver: ThetaSolver, y: Element) -> Element:
    return solver.project(y)


def build_tower(n: int, d: int, coeffs=None) -> list[ThetaSolver]:
    """Solvers for H_0 -> H_1, ..., H_{n-1} -> H_n."""
    ctxs = [new_context(k, d, coeffs) for k in range(n + 1)]
    return [ThetaSolver(ctxs[k], ctxs[k + 1]) for k in range(n)]


def trace_via_theta(tower: Sequence[ThetaSolver], elem: Element) -> mpq:
    if not tower or tower[-1].big != elem.ctx:
        raise ValueError("tower does not end at the element's algebra")
    if tower[0].small.n != 0 or any(a.big != b.small for a, b in zip(tower, tower[1:])):
        raise ValueError("tower is incomplete")
    y = elem
    for solver in reversed(tower):
        y = solver.project(y)
    return y.terms.get(0, mpq(0))


# -- Gram matrices ----------------------------------------------------------

def _transposed_table(ctx: AlgebraContext, tok: Token) -> list[dict]:
    out = [dict() for _ in range(ctx.dim)]
    for v in range(ctx.dim):
        for b, c in ctx.lmul_basis(tok, v).items():
            out[b][v] = c
    return out


def functional_rows(ctx: AlgebraContext, functional: dict) -> list[dict]:
    """Rows u -> {v: f(u v)} of the bilinear form (u, v) -> f(uv).

    f o L_u is built letter by letter along the PBW word of u, sharing
    prefixes, with transposed left-multiplication tables.
    """
    tables: dict[Token, list[dict]] = {}
    memo: dict[tuple, dict] = {(): dict(functional)}

    def rows_for(word: tuple) -> dict:
        hit = memo.get(word)
        if hit is not None:
            return hit
        prev = rows_for(word[:-1])
        tok = word[-1]
        table = tables.get(tok)
        if table is None:
            table = tables[tok] = _transposed_table(ctx, tok)
        out: dict = {}
        for b, c in prev.items():
            axpy(out, c, table[b])
        memo[word] = out
        return out

    return [rows_for(tuple(ctx.basis_word(u))) for u in range(ctx.dim)]


def gram_matrix(ctx: AlgebraContext) -> list[dict]:
    """G[u][v] = t(u v) in the context's basis order, as sparse rows."""
    return functional_rows(ctx, {ctx.top_index(): mpq(1)})


def gram_determinant(ctx: AlgebraContext, gram: list[dict] | None = None) -> mpq:
    gram = gram_matrix(ctx) if gram is None else gram
    return determinant_of_dicts(gram, ctx.dim)


def gram_report(ctx: AlgebraContext) -> VerificationReport:
    t0 = time.perf_counter()
    gram = gram_matrix(ctx)
    det = gram_determinant(ctx, gram)
    params = {"n": ctx.n, "d": ctx.d, "g": ctx.polynomial_str()}
    details = {"dim": ctx.dim}
    ok = det != 0
    if ctx.coeffs_are_integral:
        unit = is_power_of_two_unit(det)
        details["power_of_two"] = unit
        if unit:
            details["k"] = two_adic_exponent(det)
        ok = ok and unit
        expected = Expected("+-2^k", "DERIVED", "nondegenerate over Z[1/2]: t-hat is an isomorphism, units are +-2^k")
    else:
        expected = Expected("nonzero", "DERIVED", "nondegeneracy of the Frobenius form")
    return VerificationReport(
        "gram_determinant", params, computed=det, expected=expected,
        status="pass" if ok else "fail",
        witness=None if ok else {"determinant": det},
        elapsed_ms=(time.perf_counter() - t0) * 1e3, details=details,
    )


def check_trace_symmetry(ctx: AlgebraContext, gram: list[dict] | None = None,
                         max_failures: int = 5) -> VerificationReport:
    """t(uv) = (-1)^{(d-1)|u||v|} t(vu) over every ordered pair of basis elements."""
    t0 = time.perf_counter()
    gram = gram_matrix(ctx) if gram is None else gram
    odd_level = ctx.d % 2 == 1
    par = [ctx.parity_of(i) for i in range(ctx.dim)]
    failures = []
    odd_support = []
    zero = mpq(0)
    for u, row in enumerate(gram):
        for v, val in row.items():
            sign = -1 if (not odd_level and par[u] and par[v]) else 1
            if gram[v].get(u, zero) * sign != val:
                failures.append({"u": u, "v": v, "t(uv)": val, "t(vu)": gram[v].get(u, zero)})
            if par[u] != par[v]:
                odd_support.append((u, v))
        # entries with gram[v][u] != 0 but gram[u][v] == 0 are caught from the v side
    params = {"n": ctx.n, "d": ctx.d, "coeffs": ctx.key[2]}
    ok = not failures and not odd_support
    witness = None
    if not ok:
        from .algebra import format_basis
        witness = [
            {"u": format_basis(ctx, f["u"]), "v": format_basis(ctx, f["v"]),
             "t(uv)": f["t(uv)"], "t(vu)": f["t(vu)"]}
            for f in failures[:max_failures]
        ] + [{"odd_pair": [format_basis(ctx, u), format_basis(ctx, v)]} for u, v in odd_support[:max_failures]]
    return VerificationReport(
        "trace_symmetry", params, computed=len(failures),
        expected=Expected(0, "PAPER", "t(xy) = (-1)^{(d-1)|x||y|} t(yx) for homogeneous x, y"),
        status="pass" if ok else "fail", witness=witness,
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
        details={"pairs_tested": ctx.dim * ctx.dim, "sign": "plain" if odd_level else "graded",
                 "failures": len(failures)},
    )


# -- even symmetric trace forms (the even-level obstruction) ----------------

def structure_constants(ctx: AlgebraContext) -> list[list[dict]]:
    return [[ctx.basis_product(u, v) for v in range(ctx.dim)] for u in range(ctx.dim)]


def even_traceform_space(ctx: AlgebraContext, samples: int = 8, seed: int = 0):
    """(dimension of the space of even symmetric trace forms, max Gram rank found, dim A).

    The space is {tr : tr(A_1) = 0, tr(ab) = tr(ba)}; the maximum rank of
    (u, v) -> tr(uv) is searched over a basis of the space and random
    rational combinations of it.
    """
    dim = ctx.dim
    red = RowReducer(dim)
    for i in range(dim):
        if ctx.parity_of(i):
            red.add({i: mpq(1)})
    for a in range(dim):
        for g in ctx.generators():
            row = axpy(dict(ctx.rmul_basis(a, g)), -1, ctx.lmul_basis(g, a))
            if row:
                red.add(row)
    forms = kernel_from_reducer(red, dim)
    if not forms:
        return 0, 0, dim
    consts = structure_constants(ctx)

    def gram_rank(f: dict) -> int:
        rows = []
        for u in range(dim):
            row = {}
            for v in range(dim):
                val = sum((c * f[b] for b, c in consts[u][v].items() if b in f), mpq(0))
                if val:
                    row[v] = val
            rows.append(row)
        return rank_of_dicts(rows, dim)

    rng = random.Random(seed)
    best = max(gram_rank(f) for f in forms)
    for _ in range(samples):
        combo: dict = {}
        for f in forms:
            axpy(combo, Q(rng.randint(-9, 9), rng.randint(1, 9)), f)
        if combo:
            best = max(best, gram_rank(combo))
    return len(forms), best, dim


def counterexample_report(ctx: AlgebraContext) -> VerificationReport:
    t0 = time.perf_counter()
    space_dim, best, dim = even_traceform_space(ctx)
    params = {"n": ctx.n, "d": ctx.d, "g": ctx.polynomial_str()}
    if ctx.d % 2 == 0:
        ok = best < dim
        verdict = "no symmetrizing form exists at even level" if ok else "a nondegenerate symmetric form was found"
        expected = Expected(f"< {dim}", "PAPER", "at even level every even symmetric trace kills x_1 and is degenerate")
    else:
        ok = best == dim
        verdict = "nondegenerate symmetric form exists at odd level" if ok else "no nondegenerate symmetric form found"
        expected = Expected(dim, "PAPER", "odd level: the algebra is symmetric")
    return VerificationReport(
        "even_symmetric_traceforms", params, computed=best, expected=expected,
        status="pass" if ok else "fail", witness=None if ok else {"space_dim": space_dim, "max_rank": best},
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
        details={"space_dim": space_dim, "dim": dim, "verdict": verdict},
    )


def theta_agreement_report(ctx: AlgebraContext, tower: Sequence[ThetaSolver] | None = None) -> VerificationReport:
    """trace_via_theta against the closed formula on every basis element."""
    t0 = time.perf_counter()
    tower = build_tower(ctx.n, ctx.d, ctx.coeffs) if tower is None else tower
    from .algebra import format_basis
    top = ctx.top_index()
    mismatches = []
    for i in range(ctx.dim):
        got = trace_via_theta(tower, Element(ctx, {i: mpq(1)}))
        if got != (1 if i == top else 0):
            mismatches.append({"basis": format_basis(ctx, i), "theta": got})
    return VerificationReport(
        "theta_agreement", {"n": ctx.n, "d": ctx.d, "g": ctx.polynomial_str()}, computed=len(mismatches),
        expected=Expected(0, "DERIVED", "closed-formula trace is the oracle for the composed projections"),
        status="fail" if mismatches else "pass", witness=mismatches[:3] or None,
        elapsed_ms=(time.perf_counter() - t0) * 1e3, details={"basis_elements": ctx.dim},
    )


def theta_conjugation_report(tower: Sequence[ThetaSolver]) -> VerificationReport:
    """theta_N(s_{N-1} x s_{N-1}) = iota(theta_{N-1}(x)) for every basis element x of H_{N-1}."""
    t0 = time.perf_counter()
    if len(tower) < 2:
        raise ValueError("needs a tower reaching H_2 at least")
    outer, inner = tower[-1], tower[-2]
    big, mid, low = outer.big, outer.small, inner.small
    from .algebra import format_basis
    N = big.n
    s = Token("s", N - 1)
    failures = []
    for h in range(mid.dim):
        y = big.apply(s, big.multiply_dicts({iota_index(mid, big, h): mpq(1)}, big.lmul_basis(s, big.one_index())))
        lhs = outer.project(y)
        rhs = iota(low, mid, inner.project(Element(mid, {h: mpq(1)})))
        if lhs != rhs:
            failures.append({"x": format_basis(mid, h), "lhs": str(lhs), "rhs": str(rhs)})
    return VerificationReport(
        "theta_conjugation", {"n": N, "d": big.d, "g": big.polynomial_str()}, computed=len(failures),
        expected=Expected(0, "PAPER", "theta_{n+1}(s_n x s_n) = iota(theta_n(x)) for x in H_n"),
        status="fail" if failures else "pass", witness=failures[:3] or None,
        elapsed_ms=(time.perf_counter() - t0) * 1e3, details={"basis_elements": mid.dim},
    )
