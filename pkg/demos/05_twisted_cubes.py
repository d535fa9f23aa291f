"""Spot-check the three value-cube identities of the twisted form.

For f of the shape (a(x) + b(y))/(b(y) + c(z)) the eight values
t_ijk = f(x_i, y_j, z_k) on any value cube (x_1, x_2 | y_1, y_2 | z_1, z_2)
satisfy three exact identities; the first is

    t_211 / t_111 = t_212 / t_112.

cube_identities samples random integer cubes with entries in [1, 10^6],
skips poles, and reports one exact boolean per identity.  Non-twisted
functions fail identity (1) almost surely, so the check is a cheap
falsification filter in front of the exact fitter.
"""

from ratforms import cube_identities, parse

TRI = ("x", "y", "z")

CASES = (
    "(x + y)/(y + z)",
    "(x^2 + y)/(y + z^3)",
    "(2*x + y^2 - 1)/(y^2 + 3*z)",
    "x + y + z",
    "x*y + z",
)


def main() -> None:
    for expr in CASES:
        flags = cube_identities(parse(expr, TRI), trials=100, seed=0)
        shown = ", ".join(f"({i + 1}) {v}" for i, v in enumerate(flags))
        print(f"{expr:28s} identities: {shown}")


if __name__ == "__main__":
    main()
