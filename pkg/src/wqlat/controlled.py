"""Verification engine for controlled maps between ordered groups.

A morphism is checked against two axiom styles on a finite ball:

* minimal-element style: each fiber over the target cone is covered from
  below by a set Sigma_q of elements whose pairwise joins are infinite;
* decreasing-chain style: each fiber splits into classes S_lambda, each
  the union of the upper sets of a decreasing chain s_n.

Witness data is supplied per family; verification never synthesises it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .order import Ball, LeqTable, Presentation

# sigma witness: (q, ball) -> list of source elements
SigmaWitness = Callable
# lambda witness: (q, ball) -> list of (label, chain) with chain(n) a source element
LambdaWitness = Callable


@dataclass
class Morphism:
    """Group homomorphism with ordered source and target."""

    name: str
    source: Presentation
    target: Presentation
    fn: Callable

    def __call__(self, x):
        return self.fn(x)


def fibers(mor: Morphism, ball: Ball) -> dict:
    out: dict = {}
    for x in ball:
        out.setdefault(mor(x), []).append(x)
    return out


def check_order_preserving(mor: Morphism, ball: Ball, table: LeqTable | None = None) -> list:
    """Pairs x <= y in the ball whose images are not ordered."""
    table = table or LeqTable(ball)
    failures = []
    for i, x in enumerate(ball.elements):
        row = table.row(i)
        fx = mor(x)
        for j in row.nonzero()[0]:
            if not mor.target.leq(fx, mor(ball.elements[int(j)])):
                failures.append((x, ball.elements[int(j)]))
    return failures


def check_join_preserving(mor: Morphism, ball: Ball) -> dict:
    """mu(x v y) = mu(x) v mu(y) over ball pairs with a finite structural join."""
    failures = []
    inconclusive = 0
    els = ball.elements
    for i, x in enumerate(els):
        for y in els[i:]:
            r = mor.source.join(x, y)
            if r.is_inconclusive:
                inconclusive += 1
                continue
            if not r.is_finite:
                continue
            tgt = mor.target.join(mor(x), mor(y))
            if not (tgt.is_finite and tgt.value == mor(r.value)):
                failures.append((x, y))
    return {"failures": failures, "inconclusive": inconclusive, "ok": not failures}


def check_sigma_axioms(mor: Morphism, witness: SigmaWitness, ball: Ball) -> dict:
    """Minimal-element axioms: fiber coverage from below, pairwise infinite joins."""
    coverage_failures = []
    separation_failures = []
    src = mor.source
    for q, members in sorted(fibers(mor, ball).items(), key=lambda kv: str(kv[0])):
        sigma = list(witness(q, ball))
        for x in members:
            if not any(src.leq(s, x) for s in sigma):
                coverage_failures.append((q, x))
        for a_pos, s in enumerate(sigma):
            for t in sigma[a_pos + 1:]:
                if s != t and not src.join(s, t).is_infinite:
                    separation_failures.append((q, s, t))
    return {
        "coverage_failures": coverage_failures,
        "separation_failures": separation_failures,
        "ok": not coverage_failures and not separation_failures,
    }


def check_decreasing_cover(mor: Morphism, witness: LambdaWitness, ball: Ball, depth: int) -> dict:
    """Decreasing-chain axioms at chain depth ``depth``.

    Verifies the chains decrease, that every fiber element lies above some
    chain entry of exactly one class, and that elements of distinct classes
    have infinite join.  An uncovered element is flagged as needing a larger
    depth rather than reported as a violation.
    """
    src = mor.source
    chain_failures = []
    disjointness_failures = []
    separation_failures = []
    uncovered = []
    for q, members in sorted(fibers(mor, ball).items(), key=lambda kv: str(kv[0])):
        classes = list(witness(q, ball))
        for label, chain in classes:
            for n in range(depth):
                if not src.leq(chain(n + 1), chain(n)):
                    chain_failures.append((q, label, n))
        assignment = {}
        for x in members:
            matched = [
                label
                for label, chain in classes
                if any(src.leq(chain(n), x) for n in range(depth + 1))
            ]
            if not matched:
                uncovered.append((q, x))
            elif len(matched) > 1:
                disjointness_failures.append((q, x, matched))
            else:
                assignment[x] = matched[0]
        for i, x in enumerate(members):
            for y in members[i + 1:]:
                lx, ly = assignment.get(x), assignment.get(y)
                if lx is not None and ly is not None and lx != ly:
                    if not src.join(x, y).is_infinite:
                        separation_failures.append((q, x, y))
    return {
        "chain_failures": chain_failures,
        "disjointness_failures": disjointness_failures,
        "separation_failures": separation_failures,
        "uncovered": uncovered,
        "increase_depth": bool(uncovered),
        "ok": not (chain_failures or disjointness_failures or separation_failures or uncovered),
    }


def sigma_to_lambda(witness: SigmaWitness) -> LambdaWitness:
    """Constant chains: every minimal-element witness is a chain witness."""

    def wrapped(q, ball):
        out = []
        for k, s in enumerate(witness(q, ball)):
            out.append((f"const{k}", lambda n, s=s: s))
        return out

    return wrapped


def kernel_cone(mor: Morphism, ball: Ball) -> list:
    """Ball elements in the kernel of the morphism; order and join inherit."""
    e = mor.target.identity()
    return [x for x in ball if mor(x) == e]
