"""Walk through the framed mirror curve: inverse series, involution, Airy chart and xi polynomials."""

from __future__ import annotations

from framedvertex.curve import Framing, build_chart, involution_series, xi_hat


def show(label: str, series, upto: int) -> None:
    print(label)
    for k, c in series.terms():
        if k <= upto:
            print(f"  [{k:>2}] {c}")


def main() -> None:
    a = Framing.symbol()
    chart = build_chart(a, 8, 10)
    show("u(x) by Lagrange inversion of the curve equation:", chart.u_x, 4)
    show("deck involution P(z) near the ramification point:", involution_series(chart).P, 4)
    show("t in the Airy coordinate vhat:", chart.t_v, 3)
    for b in range(3):
        print(f"xi_hat_{b}(t) = {xi_hat(b, a)}")
    one = build_chart(Framing.rational(1), 8, 10)
    show("at a = 1 the inverse series has Catalan-type coefficients:", one.u_x, 6)


if __name__ == "__main__":
    main()
