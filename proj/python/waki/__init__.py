import json
from fractions import Fraction

from . import _waki

suite_names = _waki.suite_names
certificate = _waki.certificate
golden = _waki.golden


def reg(expr, invert=False):
    return Fraction(_waki.reg(expr, invert)["reg"])


def realize(series, generator, cutoff=4, order="neg,cart,pos", doubled=False):
    return json.loads(_waki.realize(series, generator, cutoff, order, doubled))


def solve_phi(series="A1", range=2, cutoff=10):
    return json.loads(_waki.solve_phi(series, range, cutoff))


def first_product(series, a, b, cutoff=10, range=2):
    r = _waki.first_product(series, a, b, cutoff, range)
    r["regularized"] = Fraction(r["regularized"])
    return r


def sl2_example():
    r = _waki.sl2_example()
    r["regularized"] = Fraction(r["regularized"])
    return r


def lempi(series, a, b, c, d, n):
    r = _waki.lempi(series, a, b, c, d, n)
    return {k: (v if k == "exact" else Fraction(v)) for k, v in r.items()}


def suite(name, series="A1", cutoff=None, range=None, seed=0, samples=50):
    return json.loads(_waki.suite(name, series, cutoff, range, seed, samples))
