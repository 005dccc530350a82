"""Shared frame builders and paths for the test suite."""

import os
import random
from fractions import Fraction
from typing import List

import pytest

from freedist.geometry import VectorField
from freedist.polynomials import Polynomial, chart
from freedist.scalars import ExactScalar

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


def data_path(name: str) -> str:
    return os.path.join(DATA_DIR, name)


def flat_fields(l: int) -> List[VectorField]:
    """The flat model: each single field translates and twists by the
    later coordinates only."""
    ch = chart(l)
    out = []
    for i in range(1, l + 1):
        comps = [Polynomial.zero(ch) for _ in range(ch.ncoords)]
        comps[ch.x_index(i)] = Polynomial.const(ch, ExactScalar.one())
        for p in range(i + 1, l + 1):
            comps[ch.y_index(i, p)] = -Polynomial.coordinate(
                ch, ch.x_index(p))
        out.append(VectorField(ch, comps))
    return out


def armstrong_fields(l: int) -> List[VectorField]:
    """The flat model plus the single quadratic twist on the first field."""
    ch = chart(l)
    fields = flat_fields(l)
    first = list(fields[0].components)
    first[ch.y_index(3, 4)] = first[ch.y_index(3, 4)] + \
        Polynomial.coordinate(ch, ch.y_index(1, 2))
    return [VectorField(ch, first)] + list(fields[1:])


def random_sparse_fields(l: int, rng: random.Random) -> List[VectorField]:
    """A random sparse candidate frame: the flat model plus one to three
    monomial perturbations in the pair directions."""
    ch = chart(l)
    fields = flat_fields(l)
    comps = [list(f.components) for f in fields]
    pairs = [(j, k) for j in range(1, l + 1) for k in range(j + 1, l + 1)]
    for _ in range(rng.randint(1, 3)):
        fi = rng.randrange(l)
        ci = ch.y_index(*pairs[rng.randrange(len(pairs))])
        exps = [0] * ch.ncoords
        for _ in range(rng.randint(1, 3)):
            if rng.random() < 0.5:
                exps[ch.x_index(rng.randint(1, l))] += 1
            else:
                exps[ch.y_index(*pairs[rng.randrange(len(pairs))])] += 1
        coef = ExactScalar.of(rng.choice([1, -1, 2, -2, Fraction(1, 2)]))
        comps[fi][ci] = comps[fi][ci] + Polynomial(ch, {tuple(exps): coef})
    return [VectorField(ch, c) for c in comps]


@pytest.fixture(scope="session")
def flat4():
    return flat_fields(4)


@pytest.fixture(scope="session")
def armstrong4():
    return armstrong_fields(4)
