"""Scramble the basis-one triple by random affine maps and recognize it again.

    python3 scripts/recognition_demo.py --q 3 --d 4 --seed 11
"""
import argparse
import random
from fractions import Fraction

from equitable.exactla import ExactMatrix
from equitable.matrixio import format_table
from equitable.recognize import ShapeTriple, irreducibility_certificate, recognize_triple
from equitable.repkit import BasisId, Generator, SpaceId, rep
from equitable.scalars import format_scalar


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--q", default="2")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)
    q, d = Fraction(args.q), args.d
    rng = random.Random(args.seed)
    basis = BasisId.parse("[x]row")
    mats = []
    for g in (Generator.x, Generator.y, Generator.z):
        a1 = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        a2 = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 4))
        m = rep(SpaceId.V, basis, g, d, q)
        mats.append(ExactMatrix.identity(d + 1) * a1 + m * a2)
        print(f"{g.value} -> {a1} + ({a2})*{g.value}")
    for name, m in zip("XYZ", mats):
        print(f"\n{name} =\n{format_table(m)}")
    res = recognize_triple(ShapeTriple(*mats))
    print(f"\nbranch {res.branch.value}, b = {format_scalar(res.b)}, q = {format_scalar(res.q)}")
    for name, (a1, a2) in res.affine.items():
        print(f"  {name}: subtract {format_scalar(a1)}, divide by {format_scalar(a2)}")
    print(f"certificate: {res.certificate.summary()}")
    print(f"irreducible: {irreducibility_certificate(res.normalized_triple)}")


if __name__ == "__main__":
    main()
