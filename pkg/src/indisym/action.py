"""Induced action of unnamed-type permutations on arbitrary values."""

from __future__ import annotations

import itertools
from typing import Mapping

from .perm import DirectProductElem, Permutation
from .values import MatrixV, MSetV, TupleV, UnnamedV


def transform(p: Permutation, v):
    """Image of ``v`` under ``p``.

    Atoms of ``p``'s type are mapped, other atoms are fixed, tuples and
    multisets map elementwise. A matrix entry at index ``i`` is taken from
    the preimage of ``i`` and then mapped itself.
    """
    if p.is_identity():
        return v
    return _apply(v, {p.tag: p})


def transform_dp(e: DirectProductElem, v):
    """Image of ``v`` under a direct-product element.

    The components act on disjoint atoms and commute, so they are applied in
    a single pass; this equals applying them one after another in any order.
    """
    if e.is_identity():
        return v
    return _apply(v, e.as_dict())


def _apply(v, perms: Mapping[str, Permutation]):
    if isinstance(v, UnnamedV):
        p = perms.get(v.tag)
        return v if p is None else UnnamedV(v.tag, p(v.index))
    if isinstance(v, TupleV):
        return TupleV(tuple(_apply(x, perms) for x in v.items))
    if isinstance(v, MSetV):
        return MSetV(tuple(_apply(x, perms) for x in v.items), kind=v.kind)
    if isinstance(v, MatrixV):
        return _apply_matrix(v, perms)
    return v  # bool, int and enum atoms are fixed


def _apply_matrix(m: MatrixV, perms: Mapping[str, Permutation]) -> MatrixV:
    # For each dimension, the source position feeding each target position.
    sources = []
    moved = False
    for idx in m.index_lists:
        tag = idx[0].tag if idx and isinstance(idx[0], UnnamedV) else None
        p = perms.get(tag) if tag is not None else None
        if p is None:
            sources.append(range(len(idx)))
            continue
        moved = True
        pos = {a.index: k for k, a in enumerate(idx)}
        inv = p.inverse.forward
        sources.append([pos[inv[a.index - 1]] for a in idx])
    entries = m.entries
    if moved:
        strides = m._strides
        entries = tuple(entries[sum(s * st for s, st in zip(combo, strides))]
                        for combo in itertools.product(*sources))
    return MatrixV(m.index_lists, tuple(_apply(x, perms) for x in entries))
