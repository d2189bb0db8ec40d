"""Tests for the exact composition calculus of reflection operators."""

import numpy as np

from dunklqm.refcalc import CoeffFn, FirstOrderRefOp, ProbeFn

U = ProbeFn(
    lambda x: np.exp(-x**2) * (1 + x),
    lambda x: np.exp(-x**2) * (1 - 2 * x * (1 + x)),
    lambda x: np.exp(-x**2) * (-2 * (1 + x) - 2 * x - 2 * x * (1 - 2 * x * (1 + x))),
)

X = np.linspace(-1.2, 1.2, 41)


def num_apply(op, u, x, h=1e-6):
    """First-order op applied by high-order numerical differentiation."""

    def du(t):
        return (u.f(t + h) - u.f(t - h)) / (2 * h)

    return (op.p.f(x) * du(x) + op.q.f(x) * u.f(x) + op.r.f(x) * u.f(-x)
            - op.s.f(x) * du(-x))


def test_first_order_apply_matches_numerics():
    op = FirstOrderRefOp.build(
        p=CoeffFn.const(2.0),
        q=CoeffFn.tan().scale(0.5),
        r=CoeffFn.const(-1.5),
        s=CoeffFn.const(0.7),
    )
    exact = op.apply(U, X)
    approx = num_apply(op, U, X)
    assert np.abs(exact - approx).max() < 1e-8


def test_composition_matches_nested_numerics():
    a = FirstOrderRefOp.build(p=CoeffFn.const(1.0),
                              q=CoeffFn.sec().scale(-0.3),
                              r=CoeffFn.tan().scale(0.4))
    b = FirstOrderRefOp.build(q=CoeffFn.const(0.2),
                              r=CoeffFn.const(1.1),
                              s=CoeffFn.const(-0.6))
    comp = b.compose(a)
    # nested application with tight central differences on the inner result
    h = 1e-5
    xs = np.linspace(-1.0, 1.0, 21)

    def a_of(t):
        return a.apply(U, np.atleast_1d(t))[0]

    vals = []
    for x in xs:
        v = b.q.f(x) * a_of(x) + b.r.f(x) * a_of(-x) \
            - b.s.f(x) * (a_of(-x + h) - a_of(-x - h)) / (2 * h)
        vals.append(v)
    exact = comp.apply(U, xs)
    assert np.abs(exact - np.asarray(vals)).max() < 1e-7


def test_reflection_conjugation_rule():
    op = FirstOrderRefOp.build(p=CoeffFn.tan(), q=CoeffFn.const(0.3),
                               r=CoeffFn.sec(), s=CoeffFn.const(0.5))
    conj = op.conjugated_by_reflection()
    # R A R applied to u equals (A (Ru)) reflected
    lhs = conj.apply(U, X)
    ru = ProbeFn(lambda x: U.f(-x), lambda x: -U.d1(-x), lambda x: U.d2(-x))
    rhs = op.apply(ru, -X)
    assert np.abs(lhs - rhs).max() < 1e-12


def test_coeff_reflection_derivative():
    c = CoeffFn.tan()
    cref = c.reflected()
    xs = np.linspace(-0.9, 0.9, 11)
    assert np.allclose(cref.f(xs), np.tan(-xs))
    assert np.allclose(cref.df(xs), -1.0 / np.cos(xs) ** 2)
