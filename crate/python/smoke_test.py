"""Smoke test for the futaki extension module.

Build and install first:
    pip install maturin patchelf
    maturin build --release -m crates/python/Cargo.toml
    pip install target/wheels/futaki-*.whl
"""

from fractions import Fraction

import futaki

CUBIC = "-(1/48)*t^-2*exp(-4*t) + (1/16)*t^-2*exp(4*t) - (1/24)*t^-2*exp(8*t)"


def main():
    cubic = futaki.Variety(3, [3], [[[1, 2, 0, 0], [0, 0, 2, 1], [0, 0, 1, 2]]])
    v = futaki.Field(cubic, [-7, 5, 1, 1])
    f = futaki.f_function(cubic, v)
    assert str(f) == CUBIC, f
    assert f.limit_at_zero() == -1
    assert futaki.fut_derivative(cubic, v, v) == f.euler_derivative()

    exact = float(f.eval(Fraction(1, 4)))
    numeric = float(futaki.f_numeric(cubic, v, "1/4"))
    assert abs(exact - numeric) < 1e-12
    print(f"F(1/4) = {exact:.15f}")

    pair = futaki.Variety(4, [2, 2], [[[1, 1, 0, 0, 0], [0, 0, 2, 0, 0]], [[0, 2, 0, 0, 0], [0, 0, 0, 1, 1]]])
    print("quadric pair:", futaki.f_function(pair, futaki.Field(pair, [-7, 3, -2, 5, 1])))

    sol = futaki.find_soliton(cubic, tol=1e-12)
    t = float(sol["coefficients"][0])
    assert abs(t + 0.42282935470924861) < 1e-12
    print(f"soliton t* = {t:.16f}, |grad| = {sol['gradient_norm']:.2e}")

    n32 = int(cubic.nk(32))
    ratio = float(futaki.fk(cubic, v, 32, "1/4")) / (32 * n32)
    print(f"F_32/(32 N_32) = {ratio:.6f}")
    assert abs(ratio - exact) < 0.05

    try:
        futaki.Variety(3, [4])
    except futaki.FutakiError as e:
        print("rejected:", e)
    else:
        raise AssertionError("non-Fano input accepted")
    print("smoke test passed")


if __name__ == "__main__":
    main()
