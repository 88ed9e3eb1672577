"""PBW straightening for enveloping algebras of Lie algebras.

An element is a dict ``{word: Fraction}`` where a word is a tuple of
generators.  Generators are any hashable, totally ordered values; the
canonical form keeps every word weakly increasing.  The Lie algebra enters
only through ``bracket(x, y)``, which returns ``(linear_part, scalar)`` with
``[x, y] = sum(c * g for g, c in linear_part) + scalar * 1``.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Dict, Hashable, Tuple

Word = Tuple[Hashable, ...]
Terms = Dict[Word, Fraction]
Bracket = Callable[[Hashable, Hashable], Tuple[Dict[Hashable, Fraction], Fraction]]

ONE: Word = ()


def add_into(acc: dict, terms: dict, scale=1) -> None:
    for w, c in terms.items():
        v = acc.get(w, 0) + scale * c
        if v:
            acc[w] = v
        else:
            acc.pop(w, None)


def scaled(terms: dict, scale) -> dict:
    if scale == 0:
        return {}
    return {w: c * scale for w, c in terms.items()}


class PBWEngine:
    """Normal ordering with memoized ``sorted word * generator`` products."""

    def __init__(self, bracket: Bracket):
        self._bracket = bracket
        self._bracket_cache: dict = {}
        self._cache: dict = {}

    def bracket(self, x, y):
        key = (x, y)
        hit = self._bracket_cache.get(key)
        if hit is None:
            hit = self._bracket(x, y)
            self._bracket_cache[key] = hit
        return hit

    def word_times_gen(self, w: Word, g) -> Terms:
        if not w or w[-1] <= g:
            return {w + (g,): Fraction(1)}
        key = (w, g)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        head, x = w[:-1], w[-1]
        out: dict = {}
        # w g = head x g = head g x + head [x, g]
        for v, c in self.word_times_gen(head, g).items():
            add_into(out, self.word_times_gen(v, x), c)
        linear, scalar = self.bracket(x, g)
        for h, c in linear.items():
            add_into(out, self.word_times_gen(head, h), c)
        if scalar:
            add_into(out, {head: Fraction(1)}, scalar)
        self._cache[key] = out
        return out

    def times_gen(self, terms: Terms, g) -> Terms:
        out: dict = {}
        for w, c in terms.items():
            add_into(out, self.word_times_gen(w, g), c)
        return out

    def times_word(self, terms: Terms, word: Word) -> Terms:
        for g in word:
            terms = self.times_gen(terms, g)
        return terms

    def mul(self, a: Terms, b: Terms) -> Terms:
        out: dict = {}
        for w, c in b.items():
            add_into(out, self.times_word(a, w), c)
        return out

    def normal_form(self, terms: Terms) -> Terms:
        out: dict = {}
        for w, c in terms.items():
            if c:
                add_into(out, self.times_word({ONE: Fraction(1)}, w), c)
        return out

    def normal_form_random(self, terms: Terms, rng: random.Random) -> Terms:
        """Straighten by rewriting randomly chosen adjacent inversions.

        Independent of the memoized path; used to check that the canonical
        form does not depend on the reduction order.
        """
        pending = {w: c for w, c in terms.items() if c}
        done: dict = {}
        while pending:
            w = rng.choice(sorted(pending, key=repr))
            c = pending.pop(w)
            inversions = [k for k in range(len(w) - 1) if w[k] > w[k + 1]]
            if not inversions:
                add_into(done, {w: c})
                continue
            k = rng.choice(inversions)
            x, y = w[k], w[k + 1]
            swapped = w[:k] + (y, x) + w[k + 2:]
            add_into(pending, {swapped: c})
            linear, scalar = self.bracket(x, y)
            for h, v in linear.items():
                add_into(pending, {w[:k] + (h,) + w[k + 2:]: c * v})
            if scalar:
                add_into(pending, {w[:k] + w[k + 2:]: c * scalar})
        return done
