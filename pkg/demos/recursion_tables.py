"""Run the recursion on a small plan and print correlators and amplitudes, symbolic in a."""

from __future__ import annotations

import sys

from framedvertex.curve import Framing
from framedvertex.recursion import RecursionPlan, run_plan


def main(argv: list[str]) -> None:
    g_max = int(argv[0]) if argv else 1
    plan = RecursionPlan(g_max, 3, 4)
    result = run_plan(Framing.symbol(), plan)
    print("Hodge correlators <prod tau_b T_g(a)>:")
    for (g, b), v in sorted(result.correlators.entries.items()):
        if v:
            print(f"  g={g} b={b}: {v}")
    print("amplitudes W_{g,mu}(a):")
    for (g, mu), w in sorted(result.amplitudes.entries.items(), key=lambda kv: (kv[0][0], kv[0][1].parts)):
        print(f"  g={g} mu={mu.parts}: {w}")


if __name__ == "__main__":
    main(sys.argv[1:])
