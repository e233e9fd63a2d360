"""Smoke test for the markov_spectra extension module.

Build and install first, e.g.

    maturin develop -m crates/python/Cargo.toml --release
    python python/smoke_test.py
"""

import cmath
import math
import sys

import markov_spectra as ms


def check(cond, what):
    if not cond:
        raise AssertionError(what)
    print(f"ok  {what}")


def main():
    law = ms.EntryLaw("bernoulli:p=0.5")
    check(abs(law.effective_radius - 1.0) < 1e-15, "bernoulli(1/2) has radius sigma/m = 1")
    check(str(ms.EntryLaw("exponential")) == "exponential:rate=1", "law round trip")

    s = ms.sample_markov(60, "exponential", seed=7)
    check(all(abs(sum(row) - 1.0) < 1e-12 for row in s.m), "rows of M sum to one")
    again = ms.sample_markov(60, "exponential", seed=7)
    check(s.x == again.x, "sampling is deterministic")

    ev = s.eigenvalues()
    check(abs(ev[0] - 1.0) < 1e-9, "Perron eigenvalue is 1")
    check(all(abs(z) <= 1.0 + 1e-9 for z in ev), "spectrum lies in the unit disc")

    sv = ms.singular_values([[3.0, 0.0], [0.0, -4.0]])
    check(sv == [4.0, 3.0], "singular values of a diagonal matrix")
    rot = ms.eigenvalues([[0.0, -1.0], [1.0, 0.0]])
    check(sorted(round(z.imag, 12) for z in rot) == [-1.0, 1.0], "rotation has eigenvalues +-i")

    check(abs(ms.quartercircular_cdf(2.0, 1.0) - 1.0) < 1e-15, "quartercircular CDF reaches 1 at 2 sigma")
    ks = ms.quartercircular_distance(s.scaled_singular_values()[1:], 1.0)
    check(0.0 <= ks < 0.25, f"bulk Kolmogorov distance {ks:.3f}")
    pts = [cmath.rect(math.sqrt((k + 0.5) / 400), 2.4 * k) for k in range(400)]
    check(ms.radial_distance(pts, 1.0) < 0.01, "radial distance of a uniform disc lattice")

    r = ms.check_lemma("weyl", instances=100, seed=3)
    check(r.passed and r.instances == 100, f"lemma campaign: {r}")
    sp = ms.check_special_matrix(100, 1 + 1j)
    check(sp.passed, "special matrix closed form")

    rep = ms.run_experiment("extremes", n="40,80", replicas=2, seed=5)
    check(rep.experiment_id == "extremes" and rep.rows, "experiment report has rows")
    check(rep.summary_csv().startswith("n,statistic,value,reference,tolerance,pass,source"), "summary CSV header")

    try:
        ms.EntryLaw("gamma")
    except ValueError:
        print("ok  unknown law raises ValueError")
    else:
        raise AssertionError("unknown law accepted")
    return 0


if __name__ == "__main__":
    sys.exit(main())
