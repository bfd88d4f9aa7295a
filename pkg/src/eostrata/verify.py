"""
Verification suites: each formula is checked against an independent
brute-force computation.  Used by ``eostrata verify`` and the acceptance tests.
"""

from __future__ import annotations

import time
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from math import comb
from typing import Callable

from . import dieudonne, strata, weyl
from .fields import gf
from .fields import BUILTIN_MODULI

SUITES = ("weyl", "strata", "dieudonne", "census")


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteResult:
    name: str
    checks: list[Check] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))

    def summary(self) -> str:
        n_ok = sum(c.passed for c in self.checks)
        head = f"{'PASS' if self.passed else 'FAIL'} {self.name}: {n_ok}/{len(self.checks)} checks"
        lines = [head] + [f"  ok   {c.name}" if c.passed else f"  FAIL {c.name}: {c.detail}"
                          for c in self.checks]
        return "\n".join(lines)


def product_poly(g: int) -> list[int]:
    """Coefficients of prod_{i=1..g} (1 + q^i)."""
    coeffs = [1]
    for i in range(1, g + 1):
        new = coeffs + [0] * i
        for k, c in enumerate(coeffs):
            new[k + i] += c
        coeffs = new
    return coeffs


def _first_failure(items, pred: Callable) -> object | None:
    return next((x for x in items if not pred(x)), None)


# ---------------------------------------------------------------- suites


def weyl_suite(max_g: int = 4) -> SuiteResult:
    res = SuiteResult("weyl")
    for g in range(1, min(max_g, 4) + 1):
        C = weyl.type_C(g)
        elems = weyl.group_elements(C)
        res.add(f"C{g} order", len(elems) == C.order, f"{len(elems)} != {C.order}")
        bad = _first_failure(elems, lambda w: weyl.length(w) == weyl.cayley_bfs_length(w))
        res.add(f"C{g} length == BFS distance", bad is None, f"w={bad}")
        bad = _first_failure(elems, lambda w: weyl.length(w) == weyl.length(weyl.inverse(w)))
        res.add(f"C{g} length(w) == length(w^-1)", bad is None, f"w={bad}")
        bad = _first_failure(elems, lambda w: all(
            abs(weyl.length(weyl.right_mul_simple(w, i)) - weyl.length(w)) == 1 for i in range(g)))
        res.add(f"C{g} length(w s_i) = length(w) +- 1", bad is None, f"w={bad}")
        res.add(f"C{g} longest element has length g^2",
                weyl.cayley_bfs_length(weyl.longest_element(C)) == g * g)
        # each coset W_J w has exactly one element without left descents in J
        J = set(range(1, g))
        cosets: dict = defaultdict(list)
        for w in elems:
            cosets[weyl.min_rep(w, J)].append(w)
        ok = all(
            [w for w in members if not (weyl.descents(w, "left", C) & J)] == [rep]
            for rep, members in cosets.items())
        res.add(f"C{g} unique minimal element per coset", ok and len(cosets) == 2**g)
    for g in range(1, min(max_g, 8) + 1):
        C = weyl.type_C(g)
        reps = weyl.min_coset_reps(C, range(1, g))
        res.add(f"C{g} |min reps| == 2^g", len(reps) == 2**g, f"{len(reps)}")
        pq = weyl.poincare_quotient(C, range(1, g))
        res.add(f"C{g} Poincare quotient == prod(1+q^i)", pq == product_poly(g), f"{pq}")
    for g in range(1, min(max_g, 3) + 1):
        C = weyl.type_C(g)
        elems = weyl.group_elements(C)
        ups = {u: weyl.bruhat_upset_oracle(u, C) for u in elems}
        bad = next(((u, w) for u in elems for w in elems if weyl.bruhat_leq(u, w) != (w in ups[u])), None)
        res.add(f"C{g} Bruhat subword == reflection-cover closure", bad is None, f"pair={bad}")
    return res


def strata_suite(max_g: int = 6) -> SuiteResult:
    res = SuiteResult("strata")
    for g in range(1, min(max_g, 8) + 1):
        records = strata.all_strata(g)
        res.add(f"g={g} count == 2^g", len(records) == 2**g, f"{len(records)}")
        dims = Counter(r.dim for r in records)
        target = product_poly(g)
        res.add(f"g={g} dimensions == coefficients of prod(1+q^i)",
                [dims[k] for k in range(len(target))] == target and sum(dims.values()) == sum(target))
        res.add(f"g={g} top dimension g(g+1)/2", max(dims) == g * (g + 1) // 2)
        zero = [r for r in records if r.dim == 0]
        res.add(f"g={g} unique 0-dim stratum is phi=0", len(zero) == 1 and not any(zero[0].phi.phi))
        bad = _first_failure(records, lambda r: (
            r.a_number + r.p_rank <= g
            and (r.dim == g * (g + 1) // 2) == (r.p_rank == g)
            and (r.dim == 0) == (r.a_number == g)))
        res.add(f"g={g} a/f/dim relations", bad is None, f"phi={bad and bad.phi}")
        if g <= 6:
            reps = weyl.min_coset_reps(weyl.type_C(g), range(1, g))
            image = [r.w_min for r in records]
            res.add(f"g={g} phi -> w_min is a bijection onto min reps",
                    len(set(image)) == len(image) and set(image) == set(reps))
            bad = _first_failure(records, lambda r: weyl.length(r.w_min) == r.dim
                                 and (g > 4 or weyl.cayley_bfs_length(r.w_min) == r.dim))
            res.add(f"g={g} length(w_min) == sum(phi)" + (" (BFS)" if g <= 4 else ""),
                    bad is None, f"phi={bad and bad.phi}")
            bad = _first_failure(records, lambda r: all(
                perm[i] + perm[2 * g - 1 - i] == 2 * g + 1
                for perm in (r.frobenius_perm, r.coset_perm) for i in range(2 * g)))
            res.add(f"g={g} permutations are symplectic", bad is None, f"phi={bad and bad.phi}")
            bad = _first_failure(records, lambda r: (
                sum(len(k.letters) * k.multiplicity for k in r.kraft) == 2 * g
                and sum(k.letters.count("F") * k.multiplicity for k in r.kraft) == g))
            res.add(f"g={g} Kraft words have g letters F and g letters V", bad is None)
            bad = _first_failure(records, lambda r: r.psi.psi[:g] == r.phi.phi and r.psi.is_self_dual())
            res.add(f"g={g} final sequence restricts to phi and is self-dual", bad is None)
        if g <= 4:
            cmp = strata.compare_posets(g, records)
            res.add(f"g={g} pointwise and Bruhat Hasse diagrams agree", cmp.agree, cmp.report())
    for n in range(1, min(8, max(2, 2 * max_g)) + 1):
        for d in range(n + 1):
            rows = strata.grassmannian_strata(n, d)
            lengths = Counter(l for _, l in rows)
            gb = strata.gaussian_binomial(n, d)
            ok = (len(rows) == comb(n, d) and [lengths[k] for k in range(len(gb))] == gb
                  and max(lengths) == d * (n - d))
            if n <= 6:
                ok = ok and rows == strata.grassmannian_strata_bruteforce(n, d)
            res.add(f"Grassmannian ({n},{d}) matches Gaussian binomial", ok)
    return res


def dieudonne_suite(max_g: int = 4, primes=(2, 3, 5)) -> SuiteResult:
    res = SuiteResult("dieudonne")
    fields = []
    for p in primes:
        fields.append(gf(p))
        if (p, 2) in BUILTIN_MODULI:
            fields.append(gf(p, 2))
    for K in fields:
        for g in range(1, min(max_g, 4) + 1):
            failures = []
            for phi in strata.enumerate_elementary(g):
                try:
                    m = dieudonne.standard_module(phi, K)
                    flag = dieudonne.canonical_filtration(m)
                    t = dieudonne.final_type(m, flag)
                except dieudonne.ClassificationError as exc:
                    failures.append(f"({phi}): {exc}")
                    continue
                if t.phi != phi:
                    failures.append(f"({phi}) classified as ({t.phi})")
                if dieudonne.a_number(m) != strata.a_number(phi) or dieudonne.p_rank(m) != strata.p_rank(phi):
                    failures.append(f"({phi}): a/f mismatch")
                for M in flag.members:
                    for S in (dieudonne.semilinear_image(K, m.Fmap, M), dieudonne.semilinear_preimage(K, m.Vmap, M)):
                        if S not in flag.members:
                            failures.append(f"({phi}): flag not stable")
            res.add(f"{K} g={g} round trip, a-number and p-rank", not failures, "; ".join(failures[:3]))
    return res


def census_suite(max_g: int = 2, primes=(2,), jobs: int = 1) -> SuiteResult:
    res = SuiteResult("census")
    for p in primes:
        # g = 2 only over F_2; 3^16 candidates is out of desk range
        for g in ((1, 2) if p == 2 else (1,)):
            if g > max_g or p ** (4 * g * g) > dieudonne.DEFAULT_CENSUS_BUDGET:
                continue
            rep = dieudonne.brute_force_census(p, g, jobs=jobs)
            expected = set(strata.enumerate_elementary(g))
            res.add(f"F_{p} g={g}: {rep.candidates} candidates, {rep.valid} valid, types {len(rep.realized)}",
                    rep.realized == expected and not rep.failures and rep.candidates == p ** (4 * g * g),
                    f"realized {sorted(map(str, rep.realized))}, {len(rep.failures)} unclassified")
    return res


def run(suites, max_g: int, primes, jobs: int = 1) -> list[SuiteResult]:
    out = []
    for name in suites:
        t = time.perf_counter()
        if name == "weyl":
            r = weyl_suite(max_g)
        elif name == "strata":
            r = strata_suite(max_g)
        elif name == "dieudonne":
            r = dieudonne_suite(max_g, primes)
        elif name == "census":
            r = census_suite(max_g, primes, jobs)
        else:
            raise ValueError(f"unknown suite {name!r}")
        r.seconds = time.perf_counter() - t
        out.append(r)
    return out
