"""Parse rational functions and measure the dimension of their doubling image.

A function f(x_1, ..., x_n) satisfies an algebraic constraint exactly when
the image of its doubling map has dimension below 2n.  The doubling map
collects the 2^n functions obtained by renaming each variable independently
to one of two fresh copies; its image dimension is the generic rank of the
Jacobian, measured by exact sampling modulo two large primes.
"""

from ratforms import doubling_map, image_dimension, parse

CASES = (
    ("x + y", ("x", "y")),
    ("x*y", ("x", "y")),
    ("x + y + x^2*y^3", ("x", "y")),
    ("(x + y)/(y + z)", ("x", "y", "z")),
    ("x + y + z + x^2*y^2*z^2", ("x", "y", "z")),
)


def main() -> None:
    for expr, names in CASES:
        f = parse(expr, names)
        n = f.arity
        dim = image_dimension(f, seed=0)
        verdict = "constrained" if dim < 2 * n else "no constraint"
        print(f"{expr:28s} dim = {dim} of {2 * n}  ->  {verdict}")

    print()
    f = parse("x + y", ("x", "y"))
    dm = doubling_map(f)
    copies = ("x0", "y0", "x1", "y1")
    print("doubling components of x + y (variables x0, y0 and x1, y1):")
    for comp in dm.components:
        print("   ", comp.to_str(copies))


if __name__ == "__main__":
    main()
