import random

import pytest

from qpoints.realize import generic_point_of_node
from qpoints.lattice import closure
from qpoints.scalars import GroupScalar, NameSupply, QMatrix
from qpoints.triples import TripleSet, all_triples

PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
          67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131]

GEN_POOL = ["a", "b", "c", "d", "e", "f"]


def random_qmatrix(rng: random.Random, n: int, torsion: bool = True) -> QMatrix:
    """Unstructured random symbolic matrix over a few named generators."""
    upper = {}
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            exps = {}
            for g in rng.sample(GEN_POOL, rng.randint(0, 3)):
                e = rng.randint(-2, 2)
                if e:
                    exps[g] = e
            t = rng.randint(0, 1) if torsion else 0
            upper[(i, j)] = GroupScalar.from_dict(exps, t, 2)
    return QMatrix(n, upper)


def random_structured_qmatrix(rng: random.Random, n: int) -> QMatrix:
    """Matrix whose good set is the closure of a random triple set; these
    exercise nontrivial point varieties much more often than raw noise."""
    trips = all_triples(n)
    k = rng.randint(0, min(4, len(trips)))
    J = TripleSet.of(n, rng.sample(trips, k))
    return generic_point_of_node(closure(J), NameSupply("s"))


def prime_assignment(Q: QMatrix) -> dict[str, int]:
    """Distinct primes per generator; exactness makes this a faithful
    numeric oracle (unique factorization)."""
    return {g: PRIMES[i] for i, g in enumerate(Q.table.names)}


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240817)
