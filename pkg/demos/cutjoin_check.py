"""Check the framing cut-and-join equation on a window of recursion output."""

from __future__ import annotations

from framedvertex.curve import Framing
from framedvertex.cutjoin import PhiSource, assemble_C, check_cutjoin, check_symmetrized_cutjoin
from framedvertex.recursion import RecursionPlan, run_plan


def main() -> None:
    g_max, degree = 1, 5
    result = run_plan(Framing.symbol(), RecursionPlan(g_max, 3, degree))
    C = assemble_C(result.amplitudes, g_max, degree)
    residual = check_cutjoin(C, g_max, degree)
    print(f"partition-level residual, g <= {g_max}, |mu| <= {degree}: {'zero' if residual.ok else residual.records()}")
    source = PhiSource(result.amplitudes, result.engine.chart, degree)
    for g, n in [(0, 3), (0, 4), (1, 1), (1, 2)]:
        out = check_symmetrized_cutjoin(g, n, degree, result.amplitudes, result.engine.chart, source)
        print(f"symmetrized equation at (g,n)=({g},{n}): {'zero' if out.is_zero() else 'NONZERO'}")
    literal = check_symmetrized_cutjoin(0, 3, degree, result.amplitudes, result.engine.chart, source, literal=True)
    print(f"without the 1/2 on the repeated disk-annulus product, (0,3) is {'zero' if literal.is_zero() else 'nonzero'}")


if __name__ == "__main__":
    main()
