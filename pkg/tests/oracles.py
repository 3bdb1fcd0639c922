"""Independent brute-force oracles the tests freeze expected values from.

Everything here enumerates sequences with itertools and evaluates cochains
by explicit double/triple loops, deliberately avoiding the library's
prefix-sharing numpy enumeration, so agreement is meaningful.
"""

from __future__ import annotations

import itertools

from wittcoh.ordinary import Cochain2Ord, Cochain3Ord
from wittcoh.restricted import Cochain2Res
from wittcoh.witt import WittElement, basis_element, bracket_chain


def star_sum_naive(phi: Cochain2Ord, g: WittElement, h: WittElement) -> int:
    """Literal sequence sum over the 2^{p-2} choices, no sharing."""
    p = phi.field.p
    field = phi.field
    total = 0
    for choice in itertools.product([g, h], repeat=p - 2):
        seq = [g, h, *choice]
        chain = bracket_chain(seq[0], seq[1 : p - 1])
        last = seq[p - 1]
        count = sum(1 for s in seq if s is g)
        val = 0
        for i in chain.support():
            for j in last.support():
                val += chain.coeff(i) * last.coeff(j) * phi.value(i, j)
        total += field.inv(count) * val
    return total % p


def starstar_sum_naive(
    alpha: Cochain3Ord, g: WittElement, h1: WittElement, h2: WittElement
) -> int:
    p = alpha.field.p
    field = alpha.field
    total = 0
    for choice in itertools.product([1, 2], repeat=p - 2):
        labels = [1, 2, *choice]
        hs = [h1 if l == 1 else h2 for l in labels]
        chain = bracket_chain(hs[0], hs[1 : p - 1])
        last = hs[p - 1]
        count = sum(1 for l in labels if l == 1)
        val = 0
        for m in g.support():
            for i in chain.support():
                for j in last.support():
                    val += g.coeff(m) * chain.coeff(i) * last.coeff(j) * alpha.value(m, i, j)
        total += field.inv(count) * val
    return total % p


def omega_by_enumeration(c: Cochain2Res, g: WittElement) -> int:
    """omega(g) by head-vs-rest recursion with the naive star sum.

    Splits off the leading basis term and recurses on the remainder, the
    opposite association from the library's left-accumulating fold.
    """
    field = c.field
    p = field.p
    support = g.support()
    if not support:
        return 0
    i = support[0]
    a = g.coeff(i)
    head = basis_element(field, i, a)
    head_value = pow(a, p, p) * c.omega_value(i) % p
    if len(support) == 1:
        return head_value
    rest = g - head
    return (
        head_value + omega_by_enumeration(c, rest) + star_sum_naive(c.phi, head, rest)
    ) % p
