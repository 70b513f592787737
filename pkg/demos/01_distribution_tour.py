"""Tour of the Wright-type Poisson distribution.

Builds a few distributions, prints their pmf tables, and shows how the
family interpolates around the classical Poisson at alpha = beta = 1.
"""

import math

import numpy as np

from wright_poisson import new_wright_poisson


def pmf_table(alpha, beta, m, r_max=10):
    d = new_wright_poisson(alpha, beta, m)
    print(f"\nalpha={alpha}, beta={beta}, m={m}")
    print(f"{'r':>3} {'pmf':>14} {'cdf':>14}")
    cdf = 0.0
    for r in range(r_max + 1):
        p = d.pmf(r)
        cdf += p
        print(f"{r:>3} {p:>14.8f} {cdf:>14.8f}")
    return d


def main():
    # Classical Poisson: alpha = beta = 1 recovers m^r e^-m / r!
    d = pmf_table(1.0, 1.0, 2.0)
    assert math.isclose(d.pmf(3), 2.0**3 * math.exp(-2.0) / 6.0, rel_tol=1e-12)

    # alpha > 1 thins the tail (gamma grows faster than m^r)
    pmf_table(2.0, 1.0, 2.0)

    # alpha < 1 fattens the tail
    pmf_table(0.5, 1.5, 2.0)

    # Quantiles invert the cdf
    d = new_wright_poisson(0.5, 1.5, 2.0)
    for q in (0.05, 0.5, 0.95):
        print(f"quantile({q}) = {d.quantile(q)}")

    # The pmf always sums to one regardless of shape
    for alpha, beta in [(0.5, 0.5), (3.0, 2.0), (1.5, 1.0)]:
        d = new_wright_poisson(alpha, beta, 5.0)
        total = float(np.sum(d.support_pmf()))
        print(f"sum pmf (alpha={alpha}, beta={beta}, m=5): {total:.15f}")


if __name__ == "__main__":
    main()
