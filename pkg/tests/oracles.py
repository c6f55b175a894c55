"""Independent oracles the Groebner path is checked against: brute-force
ideal membership by linear algebra over monomials up to a degree bound, and
seeded random polynomial generation."""

import random
from itertools import product

from pairkit.linalg import ExactMatrix
from pairkit.poly import Polynomial, PolyRing


def monomials_up_to(ring: PolyRing, degree: int):
    out = []
    for exps in product(range(degree + 1), repeat=ring.nvars):
        if sum(exps) <= degree:
            out.append(exps)
    return sorted(out)


def in_ideal_bruteforce(f: Polynomial, gens, degree: int) -> bool:
    """Is f a combination sum q_i g_i with deg(q_i g_i) <= degree?  Solved as
    an exact linear system over the monomial basis (no division algorithm)."""
    ring = f.ring
    columns = []
    for g in gens:
        if g.is_zero():
            continue
        room = degree - g.total_degree()
        if room < 0:
            continue
        for exps in monomials_up_to(ring, room):
            columns.append(g.mul_monomial(exps, ring.field.one()))
    rows_index = monomials_up_to(ring, degree)
    if f.total_degree() > degree:
        return False
    index = {e: i for i, e in enumerate(rows_index)}
    matrix = [[ring.field.zero()] * (len(columns) + 1) for _ in rows_index]
    for j, col in enumerate(columns):
        for exps, coeff in col.terms.items():
            matrix[index[exps]][j] = coeff
    for exps, coeff in f.terms.items():
        matrix[index[exps]][len(columns)] = coeff
    _, pivots = ExactMatrix(ring.field, matrix).rref()
    return len(columns) not in pivots


def random_polynomial(ring: PolyRing, rng: random.Random, degree: int,
                      terms: int, coeff_bound: int = 3) -> Polynomial:
    pool = monomials_up_to(ring, degree)
    out = ring.zero()
    for _ in range(terms):
        exps = pool[rng.randrange(len(pool))]
        c = rng.randint(-coeff_bound, coeff_bound)
        out = out + Polynomial(ring, {exps: ring.field.from_int(c)})
    return out


def _random_monomial(ring, rng, max_degree):
    pool = [e for e in monomials_up_to(ring, max_degree) if sum(e) >= 1]
    exps = pool[rng.randrange(len(pool))]
    return ring.one().mul_monomial(exps, ring.field.one())


def random_rational_tuple(ring, rng: random.Random):
    """Random tuple of <= 3 rational functions of degree <= 3.

    Mixes monomial quotients, one sparse numerator per tuple (binomial cubic
    or trinomial quadratic), constants, and engineered algebraically
    dependent tuples, so trdeg values 0..3 and nonzero relation ideals all
    occur.  Several simultaneous dense numerators are excluded: that is an
    implicitization workload beyond the desk-scale Groebner engine.
    """
    from pairkit.poly import RationalFunction

    count = rng.randint(1, 3)
    if count >= 2 and rng.random() < 0.4:
        # dependent tuple: two sparse linear forms and a product/power
        l1 = random_polynomial(ring, rng, 1, 2)
        l2 = random_polynomial(ring, rng, 1, 2)
        if l1.is_zero():
            l1 = ring.var(ring.names[0])
        if l2.is_zero():
            l2 = ring.var(ring.names[-1])
        third = l1 * l2 if rng.random() < 0.5 else l1 * l1
        den = _random_monomial(ring, rng, 1) if rng.random() < 0.5 else ring.one()
        fs = [RationalFunction(l1, ring.one()),
              RationalFunction(l2, ring.one()),
              RationalFunction(third, den)]
        return fs[:count]

    fs = []
    heavy_used = False
    for _ in range(count):
        roll = rng.random()
        if roll < 0.45 and not heavy_used:
            heavy_used = True
            num = random_polynomial(ring, rng, 3, 2) if rng.random() < 0.5 \
                else random_polynomial(ring, rng, 2, 3)
            den = _random_monomial(ring, rng, 1) if rng.random() < 0.6 \
                else ring.one()
        elif roll < 0.85:
            num = _random_monomial(ring, rng, 3).scale(
                ring.field.from_int(rng.choice([-3, -2, -1, 1, 2, 3])))
            den = _random_monomial(ring, rng, 2) if rng.random() < 0.5 \
                else ring.one()
        else:
            num = ring.const(ring.field.from_int(rng.randint(-3, 3)))
            den = ring.one()
        fs.append(RationalFunction(num, den))
    return fs
